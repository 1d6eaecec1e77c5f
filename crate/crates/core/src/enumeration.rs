//! Enumeration of `Cayley(S)` and its restrictions as abstract semigroups.
//!
//! Elements are produced in shortlex order of their application words (the
//! generator applied first comes first), so each witness is the shortlex
//! least word for its element. The closure runs Froidure–Pin on the opposite
//! semigroup: extending a word by a letter `a` is `φ_a ∘ u`.
//!
//! New elements are recognised cheaply by output signatures on a fixed set of
//! probe words. A new signature proves a new element. Equal signatures are
//! either resolved exactly, or, in the fast pass, merged and verified
//! afterwards by checking the closure with canonical forms; a failed
//! verification reruns the closure with exact resolution.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::{Canonical, CayleyMachine, Mode, DEFAULT_STATE_BUDGET};
use crate::semigroup::{aperiodicity_index_of, ElementId, FiniteSemigroup};

pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;

const NONE: u32 = u32::MAX;
const PROBE_SEED: u64 = 0x00c0_ffee_5eed;
const RANDOM_PROBES: usize = 16;
const RANDOM_PROBE_LEN: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnumStatus {
    Complete,
    /// More than this many elements exist.
    Exceeded(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub max_elements: usize,
    pub state_budget: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_elements: DEFAULT_MAX_ELEMENTS,
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }
}

impl EnumOptions {
    pub fn with_max(max_elements: usize) -> Self {
        EnumOptions {
            max_elements,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumResult {
    machine: Arc<CayleyMachine>,
    /// Generator word of each element, most recently applied first.
    pub witnesses: Vec<Vec<ElementId>>,
    /// `generator_map[s]` is the index of `φ_s`.
    pub generator_map: Vec<usize>,
    pub closure_depth: usize,
    pub status: EnumStatus,
    canonical: Vec<Canonical>,
    index: HashMap<Canonical, usize>,
    table: Vec<u32>,
    /// `φ_s ∘ u` for element `u` and generator `s`, indexed by `u·|S| + s`.
    left_by_generator: Vec<u32>,
}

pub fn enumerate(s: &FiniteSemigroup, mode: Mode, options: &EnumOptions) -> Result<EnumResult> {
    let machine = CayleyMachine::new(s, mode)?.with_state_budget(options.state_budget);
    enumerate_machine(Arc::new(machine), options.max_elements)
}

pub fn enumerate_machine(machine: Arc<CayleyMachine>, max_elements: usize) -> Result<EnumResult> {
    let fast = Closure::run(&machine, max_elements, false)?;
    if fast.exceeded {
        return fast.finish(machine, max_elements, Vec::new());
    }
    match fast.verify(&machine)? {
        Some(canonical) => fast.finish(machine, max_elements, canonical),
        None => {
            let exact = Closure::run(&machine, max_elements, true)?;
            if exact.exceeded {
                return exact.finish(machine, max_elements, Vec::new());
            }
            let canonical = exact.verify(&machine)?.ok_or_else(|| {
                Error::WitnessMismatch("exact closure failed verification".into())
            })?;
            exact.finish(machine, max_elements, canonical)
        }
    }
}

/// Probe words and the signature arithmetic over them.
struct Probes {
    words: Vec<Vec<u16>>,
    len: usize,
}

impl Probes {
    fn new(alphabet: usize) -> Self {
        let mut words: Vec<Vec<u16>> = (0..alphabet as u16).map(|a| vec![a]).collect();
        if alphabet <= 16 {
            for a in 0..alphabet as u16 {
                for b in 0..alphabet as u16 {
                    words.push(vec![a, b]);
                }
            }
        }
        for a in 0..alphabet as u16 {
            words.push(vec![a; RANDOM_PROBE_LEN]);
        }
        // Each random probe draws from a random sub-alphabet, so letters that
        // absorb everything (a zero, say) do not mask the rest.
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
        for _ in 0..RANDOM_PROBES {
            let mut pool: Vec<u16> = (0..alphabet as u16).filter(|_| rng.gen_bool(0.5)).collect();
            if pool.is_empty() {
                pool.push(rng.gen_range(0..alphabet as u16));
            }
            words.push((0..RANDOM_PROBE_LEN).map(|_| pool[rng.gen_range(0..pool.len())]).collect());
        }
        let len = words.iter().map(Vec::len).sum();
        Probes { words, len }
    }

    /// Signature of `φ_s ∘ u` from the signature of `u`, or of `φ_s` when
    /// `inner` is `None`.
    fn apply(&self, machine: &CayleyMachine, s: u16, inner: Option<&[u16]>, out: &mut Vec<u16>) {
        out.clear();
        let mut offset = 0;
        for word in &self.words {
            let mut state = s;
            for (i, &a) in word.iter().enumerate() {
                let letter = match inner {
                    Some(sig) => sig[offset + i],
                    None => a,
                };
                state = machine.op(state, machine.letter_value(letter as usize));
                out.push(machine.letter_of(state) as u16);
            }
            offset += word.len();
        }
    }
}

struct Closure {
    /// Representative base element of each generator letter.
    gens: Vec<ElementId>,
    generator_map: Vec<usize>,
    first: Vec<u32>,
    last: Vec<u32>,
    prefix: Vec<u32>,
    length: Vec<u32>,
    right: Vec<u32>,
    created: Vec<bool>,
    exceeded: bool,
}

impl Closure {
    fn run(machine: &CayleyMachine, max_elements: usize, exact: bool) -> Result<Closure> {
        let base = machine.base();
        let probes = Probes::new(machine.alphabet_len());
        let sig_len = probes.len;
        let mut sigs: Vec<u16> = Vec::new();
        let mut buckets: HashMap<u64, Vec<u32>> = HashMap::new();
        let mut canonical: Vec<Option<Canonical>> = Vec::new();
        let mut scratch = Vec::with_capacity(sig_len);

        let hash = |sig: &[u16]| {
            let mut h = DefaultHasher::new();
            sig.hash(&mut h);
            h.finish()
        };

        // Deduplicated generators: the least element realising each φ_s.
        let mut gens: Vec<ElementId> = Vec::new();
        let mut generator_map = vec![0; base.order()];
        for s in base.elements() {
            probes.apply(machine, s.index() as u16, None, &mut scratch);
            let key = hash(&scratch);
            let mut found = None;
            for &g in buckets.get(&key).into_iter().flatten() {
                let g = g as usize;
                if sigs[g * sig_len..(g + 1) * sig_len] == scratch[..]
                    && machine.generator(gens[g])? == machine.generator(s)?
                {
                    found = Some(g);
                    break;
                }
            }
            generator_map[s.index()] = match found {
                Some(g) => g,
                None => {
                    let g = gens.len();
                    gens.push(s);
                    sigs.extend_from_slice(&scratch);
                    buckets.entry(key).or_default().push(g as u32);
                    canonical.push(Some(machine.generator(s)?.clone()));
                    g
                }
            };
        }
        let k = gens.len();
        let mut c = Closure {
            gens,
            generator_map,
            first: (0..k as u32).collect(),
            last: (0..k as u32).collect(),
            prefix: vec![NONE; k],
            length: vec![1; k],
            right: Vec::new(),
            created: Vec::new(),
            exceeded: false,
        };
        let mut suffix: Vec<u32> = vec![NONE; k];
        let mut reduced: Vec<bool> = Vec::new();
        let mut left: Vec<u32> = Vec::new();
        let mut level_start = 0usize;
        let mut level = 1u32;
        let mut u = 0usize;

        while u < c.first.len() {
            if c.length[u] > level {
                c.fill_left(&mut left, level_start, u, k);
                level_start = u;
                level = c.length[u];
            }
            c.right.resize((u + 1) * k, NONE);
            c.created.resize((u + 1) * k, false);
            reduced.resize((u + 1) * k, false);
            let b = c.first[u] as usize;
            let s = suffix[u];
            for a in 0..k {
                if s != NONE && !reduced[s as usize * k + a] {
                    let r = c.right[s as usize * k + a] as usize;
                    c.right[u * k + a] = if c.length[r] == 1 {
                        c.right[b * k + c.last[r] as usize]
                    } else {
                        let bp = left[c.prefix[r] as usize * k + b] as usize;
                        c.right[bp * k + c.last[r] as usize]
                    };
                    continue;
                }
                let inner = &sigs[u * sig_len..(u + 1) * sig_len];
                probes.apply(machine, c.gens[a].index() as u16, Some(inner), &mut scratch);
                let key = hash(&scratch);
                let mut found = None;
                let mut candidate: Option<Canonical> = None;
                for &v in buckets.get(&key).into_iter().flatten() {
                    let v = v as usize;
                    if sigs[v * sig_len..(v + 1) * sig_len] != scratch[..] {
                        continue;
                    }
                    if !exact {
                        found = Some(v);
                        break;
                    }
                    if candidate.is_none() {
                        let inner = c.canonical_of(machine, &mut canonical, u)?;
                        candidate = Some(machine.compose(machine.generator(c.gens[a])?, &inner)?);
                    }
                    if c.canonical_of(machine, &mut canonical, v)? == *candidate.as_ref().unwrap() {
                        found = Some(v);
                        break;
                    }
                }
                match found {
                    Some(v) => c.right[u * k + a] = v as u32,
                    None => {
                        let v = c.first.len();
                        c.first.push(b as u32);
                        c.last.push(a as u32);
                        c.prefix.push(u as u32);
                        c.length.push(c.length[u] + 1);
                        suffix.push(if s == NONE { a as u32 } else { c.right[s as usize * k + a] });
                        sigs.extend_from_slice(&scratch);
                        buckets.entry(key).or_default().push(v as u32);
                        canonical.push(candidate.take());
                        c.right[u * k + a] = v as u32;
                        c.created[u * k + a] = true;
                        reduced[u * k + a] = true;
                        if c.first.len() > max_elements {
                            c.exceeded = true;
                            return Ok(c);
                        }
                    }
                }
            }
            u += 1;
        }
        Ok(c)
    }

    /// `left[u][a]`, the element with word `a` followed by `u`'s word, for
    /// every `u` in one length level.
    fn fill_left(&self, left: &mut Vec<u32>, from: usize, to: usize, k: usize) {
        left.resize(to * k, NONE);
        for u in from..to {
            for a in 0..k {
                left[u * k + a] = if self.length[u] == 1 {
                    self.right[a * k + self.last[u] as usize]
                } else {
                    let p = left[self.prefix[u] as usize * k + a] as usize;
                    self.right[p * k + self.last[u] as usize]
                };
            }
        }
    }

    fn canonical_of(&self, machine: &CayleyMachine, cache: &mut [Option<Canonical>], u: usize) -> Result<Canonical> {
        let mut chain = Vec::new();
        let mut v = u;
        while cache[v].is_none() {
            chain.push(v);
            v = self.prefix[v] as usize;
        }
        for &w in chain.iter().rev() {
            let inner = cache[self.prefix[w] as usize].as_ref().unwrap();
            let g = machine.generator(self.gens[self.last[w] as usize])?;
            cache[w] = Some(machine.compose(g, inner)?);
        }
        Ok(cache[u].clone().unwrap())
    }

    /// Canonical forms of all elements, or `None` if some merged product is
    /// not actually equal to its representative.
    fn verify(&self, machine: &CayleyMachine) -> Result<Option<Vec<Canonical>>> {
        let n = self.first.len();
        let k = self.gens.len();
        let mut canonical: Vec<Option<Canonical>> = vec![None; n];
        for (slot, &g) in canonical.iter_mut().zip(&self.gens) {
            *slot = Some(machine.generator(g)?.clone());
        }
        // Elements of one length depend only on shorter ones.
        let mut start = k;
        while start < n {
            let len = self.length[start];
            let end = (start..n).find(|&v| self.length[v] != len).unwrap_or(n);
            let level: Vec<Canonical> = (start..end)
                .into_par_iter()
                .map(|v| {
                    let inner = canonical[self.prefix[v] as usize].as_ref().unwrap();
                    machine.compose(machine.generator(self.gens[self.last[v] as usize])?, inner)
                })
                .collect::<Result<_>>()?;
            for (i, c) in level.into_iter().enumerate() {
                canonical[start + i] = Some(c);
            }
            start = end;
        }
        let canonical: Vec<Canonical> = canonical.into_iter().map(Option::unwrap).collect();
        let ok = (0..n)
            .into_par_iter()
            .map(|u| -> Result<bool> {
                for a in 0..k {
                    if self.created[u * k + a] {
                        continue;
                    }
                    let product = machine.compose(machine.generator(self.gens[a])?, &canonical[u])?;
                    if product != canonical[self.right[u * k + a] as usize] {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        Ok(ok.then_some(canonical))
    }

    fn witness(&self, mut u: usize) -> Vec<ElementId> {
        let mut word = Vec::with_capacity(self.length[u] as usize);
        loop {
            word.push(self.gens[self.last[u] as usize]);
            if self.prefix[u] == NONE {
                return word;
            }
            u = self.prefix[u] as usize;
        }
    }

    fn finish(self, machine: Arc<CayleyMachine>, max_elements: usize, canonical: Vec<Canonical>) -> Result<EnumResult> {
        let n = if self.exceeded { max_elements } else { self.first.len() };
        let k = self.gens.len();
        let witnesses: Vec<Vec<ElementId>> = (0..n).map(|u| self.witness(u)).collect();
        let closure_depth = witnesses.iter().map(Vec::len).max().unwrap_or(0);
        let generator_map = self.generator_map.clone();
        if self.exceeded {
            return Ok(EnumResult {
                machine,
                witnesses,
                generator_map,
                closure_depth,
                status: EnumStatus::Exceeded(max_elements),
                canonical,
                index: HashMap::new(),
                table: Vec::new(),
                left_by_generator: Vec::new(),
            });
        }
        // table[i][j] = i ∘ j: run j first, then the letters of i in order.
        let table: Vec<u32> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let word = &witnesses[i];
                let right = &self.right;
                let letters: Vec<usize> = word.iter().rev().map(|s| self.generator_map[s.index()]).collect();
                (0..n).map(move |j| letters.iter().fold(j, |x, &a| right[x * k + a] as usize) as u32)
            })
            .collect();
        let order = machine.base().order();
        let mut left_by_generator = vec![0u32; n * order];
        for u in 0..n {
            for s in 0..order {
                left_by_generator[u * order + s] = self.right[u * k + self.generator_map[s]];
            }
        }
        let index = canonical.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(EnumResult {
            machine,
            witnesses,
            generator_map,
            closure_depth,
            status: EnumStatus::Complete,
            canonical,
            index,
            table,
            left_by_generator,
        })
    }
}

impl EnumResult {
    pub fn machine(&self) -> &CayleyMachine {
        &self.machine
    }

    pub fn machine_arc(&self) -> Arc<CayleyMachine> {
        Arc::clone(&self.machine)
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumStatus::Complete
    }

    fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::IncompleteEnumeration)
        }
    }

    /// Canonical forms, available when complete.
    pub fn canonical(&self, i: usize) -> Result<&Canonical> {
        self.require_complete()?;
        Ok(&self.canonical[i])
    }

    /// Index of the element with this canonical form.
    pub fn find(&self, c: &Canonical) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// `i ∘ j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.len() + j] as usize
    }

    /// `φ_s ∘ u`.
    pub fn left_generator(&self, s: ElementId, u: usize) -> usize {
        self.left_by_generator[u * self.machine.base().order() + s.index()] as usize
    }

    /// The element of a generator word `[s_n, …, s_1]`, by folding the table.
    pub fn evaluate(&self, word: &[ElementId]) -> Result<usize> {
        self.require_complete()?;
        let (&first, rest) = word.split_last().ok_or(Error::EmptyWord)?;
        let order = self.machine.base().order();
        let check = |s: ElementId| if s.index() < order { Ok(s) } else { Err(Error::NotAGenerator(s)) };
        let mut x = self.generator_map[check(first)?.index()];
        for &s in rest.iter().rev() {
            x = self.left_generator(check(s)?, x);
        }
        Ok(x)
    }

    pub fn table(&self) -> Result<Vec<Vec<usize>>> {
        self.require_complete()?;
        let n = self.len();
        Ok((0..n).map(|i| (0..n).map(|j| self.mul(i, j)).collect()).collect())
    }

    pub fn witness_name(&self, i: usize) -> String {
        let base = self.machine.base();
        self.witnesses[i]
            .iter()
            .map(|&s| base.element_name(s))
            .collect::<Vec<_>>()
            .join("·")
    }

    /// The enumerated semigroup as a table, elements named by witness.
    pub fn to_semigroup(&self) -> Result<FiniteSemigroup> {
        self.require_complete()?;
        let n = self.len();
        let names = (0..n).map(|i| self.witness_name(i)).collect();
        let name = format!("Cayley({})", self.machine.base().name());
        FiniteSemigroup::from_fn(name, names, |i, j| self.mul(i, j))
    }

    pub fn aperiodicity_index(&self) -> Result<Option<usize>> {
        self.require_complete()?;
        Ok(aperiodicity_index_of(self.len(), |i, j| self.mul(i, j)))
    }
}

/// Aperiodicity index of a complete enumeration.
pub fn cayley_aperiodicity_index(e: &EnumResult) -> Result<Option<usize>> {
    e.aperiodicity_index()
}

/// Verifies that a surjective morphism `F: S → T` induces a morphism
/// `Cayley(S) → Cayley(T)` and returns it as element indices.
pub fn induced_morphism(f: &[ElementId], es: &EnumResult, et: &EnumResult) -> Result<Vec<usize>> {
    es.require_complete()?;
    et.require_complete()?;
    let (s, t) = (es.machine.base(), et.machine.base());
    s.check_surjective_morphism(t, f)?;
    let map: Vec<usize> = (0..es.len())
        .map(|u| {
            let image: Vec<ElementId> = es.witnesses[u].iter().map(|s| f[s.index()]).collect();
            et.evaluate(&image)
        })
        .collect::<Result<_>>()?;
    for (u, &m) in map.iter().enumerate() {
        let image: Vec<ElementId> = es.witnesses[u].iter().map(|s| f[s.index()]).collect();
        if et.machine.canonicalize(&image)? != et.canonical[m] {
            return Err(Error::WitnessMismatch(es.witness_name(u)));
        }
    }
    check_multiplicative(es, et, &map)?;
    let mut hit = vec![false; et.len()];
    for &m in &map {
        hit[m] = true;
    }
    if hit.contains(&false) {
        return Err(Error::NotAMorphism("induced map is not surjective".into()));
    }
    Ok(map)
}

fn check_multiplicative(es: &EnumResult, et: &EnumResult, map: &[usize]) -> Result<()> {
    let bad = (0..es.len()).into_par_iter().find_first(|&i| {
        (0..es.len()).any(|j| map[es.mul(i, j)] != et.mul(map[i], map[j]))
    });
    match bad {
        Some(i) => Err(Error::NotAMorphism(format!("product with {} is not preserved", es.witness_name(i)))),
        None => Ok(()),
    }
}

/// For a subsemigroup `T ⊆ S`, restricts the subsemigroup of `Cayley(S)`
/// generated by `{φ_t}` to `(T¹)*` and verifies that the restriction is a
/// morphism onto `Cayley(T)`. Returns `(size of the generated part, map)`.
pub fn sub_division_check(
    s: &FiniteSemigroup,
    t_set: &crate::set::ElementSet,
    es: &EnumResult,
) -> Result<(usize, Vec<(usize, usize)>)> {
    es.require_complete()?;
    let (t, emb) = s.subsemigroup(t_set)?;
    let et = enumerate(&t, Mode::Full, &EnumOptions::default())?;
    et.require_complete()?;

    // Closure of the φ_t inside Cayley(S), each element with a word over T.
    let mut word_of: HashMap<usize, Vec<ElementId>> = HashMap::new();
    let mut order = Vec::new();
    for ti in t.elements() {
        let x = es.generator_map[emb[ti.index()].index()];
        if let std::collections::hash_map::Entry::Vacant(e) = word_of.entry(x) {
            e.insert(vec![ti]);
            order.push(x);
        }
    }
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for ti in t.elements() {
            let y = es.left_generator(emb[ti.index()], x);
            if !word_of.contains_key(&y) {
                let mut w = vec![ti];
                w.extend_from_slice(&word_of[&x]);
                word_of.insert(y, w);
                order.push(y);
            }
        }
        i += 1;
    }

    // Restriction computed from the word; checked against direct evaluation
    // of the Cayley(S) element on letters of T¹.
    let letters_s = es.machine.alphabet();
    let letters_t = et.machine.alphabet();
    let to_s_letter = |v: ElementId| -> ElementId {
        if v.index() < t.order() {
            emb[v.index()]
        } else {
            // The identity letter of T¹ acts as the identity letter of S¹.
            s.identity().unwrap_or_else(|| *letters_s.last().unwrap())
        }
    };
    let map: Vec<(usize, usize)> = order
        .iter()
        .map(|&x| Ok((x, et.evaluate(&word_of[&x])?)))
        .collect::<Result<_>>()?;
    for &(x, y) in &map {
        for a in &letters_t {
            for b in &letters_t {
                let input_t = [*a, *b];
                let input_s: Vec<ElementId> = input_t.iter().map(|&v| to_s_letter(v)).collect();
                let out_s = es.machine.eval(&es.canonical[x], &input_s)?;
                let out_t: Vec<ElementId> = et
                    .machine
                    .eval(&et.canonical[y], &input_t)?
                    .into_iter()
                    .map(to_s_letter)
                    .collect();
                if out_s != out_t {
                    return Err(Error::NotAMorphism(format!(
                        "restriction of {} disagrees on T-words",
                        es.witness_name(x)
                    )));
                }
            }
        }
    }
    let image: std::collections::HashSet<usize> = map.iter().map(|&(_, y)| y).collect();
    if image.len() != et.len() {
        return Err(Error::NotAMorphism("restriction is not onto Cayley(T)".into()));
    }
    let mut position = HashMap::new();
    for &(x, y) in &map {
        position.insert(x, y);
    }
    for &(x, y) in &map {
        for &(x2, y2) in &map {
            if position.get(&es.mul(x, x2)) != Some(&et.mul(y, y2)) {
                return Err(Error::NotAMorphism("restriction is not multiplicative".into()));
            }
        }
    }
    Ok((order.len(), map))
}

/// Verifies the map `Cayley(S × T) → Cayley(S) × Cayley(T)` sending
/// `Π φ_{(s_i, t_i)}` to `(Π φ_{s_i}, Π φ_{t_i})`: it is multiplicative and
/// injective. Returns the image pairs by element of `Cayley(S × T)`.
pub fn product_embedding(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    options: &EnumOptions,
) -> Result<Vec<(usize, usize)>> {
    let es = enumerate(s, Mode::Full, options)?;
    let et = enumerate(t, Mode::Full, options)?;
    es.require_complete()?;
    et.require_complete()?;
    let st = s.direct_product(t);
    let ep = enumerate(&st, Mode::Full, options)?;
    ep.require_complete()?;
    let m = t.order();
    let image: Vec<(usize, usize)> = (0..ep.len())
        .map(|u| {
            let w = &ep.witnesses[u];
            let ws: Vec<ElementId> = w.iter().map(|p| ElementId::new(p.index() / m)).collect();
            let wt: Vec<ElementId> = w.iter().map(|p| ElementId::new(p.index() % m)).collect();
            Ok((es.evaluate(&ws)?, et.evaluate(&wt)?))
        })
        .collect::<Result<_>>()?;
    let distinct: std::collections::HashSet<_> = image.iter().collect();
    if distinct.len() != image.len() {
        return Err(Error::NotAMorphism("product map is not injective".into()));
    }
    for i in 0..ep.len() {
        for j in 0..ep.len() {
            let (a, b) = (image[i], image[j]);
            if image[ep.mul(i, j)] != (es.mul(a.0, b.0), et.mul(a.1, b.1)) {
                return Err(Error::NotAMorphism("product map is not multiplicative".into()));
            }
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::semigroup::find_isomorphism;

    #[test]
    fn catalog_orders() {
        for s in [catalog::s1(), catalog::s2(), catalog::s3(), catalog::s4()] {
            let e = enumerate(&s, Mode::Full, &EnumOptions::with_max(10)).unwrap();
            assert!(e.is_complete());
            assert!(find_isomorphism(&e.to_semigroup().unwrap(), &s).is_some(), "{}", s.name());
        }
    }

    #[test]
    fn cyclic_group_exceeds() {
        let e = enumerate(&catalog::s5(), Mode::Full, &EnumOptions::with_max(62)).unwrap();
        assert_eq!(e.status, EnumStatus::Exceeded(62));
        assert_eq!(e.len(), 62);
        assert_eq!(e.closure_depth, 5);
    }

    #[test]
    fn incomplete_has_no_index() {
        let e = enumerate(&catalog::s5(), Mode::Full, &EnumOptions::with_max(4)).unwrap();
        assert_eq!(e.aperiodicity_index(), Err(Error::IncompleteEnumeration));
    }
}

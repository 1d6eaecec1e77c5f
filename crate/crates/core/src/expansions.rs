//! The memory semigroup `mem(S)`, the Rhodes expansion word arithmetic, and
//! the bounded division check `Cayley(S, I) ≺ mem(S)`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{self, GreenStructure};
use crate::machine::{CayleyMachine, Mode};
use crate::semigroup::{aperiodicity_index_of, ElementId, FiniteSemigroup};
use crate::set::ElementSet;

/// `(s, α)` with `α ⊆ S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemElement {
    pub element: ElementId,
    pub memory: ElementSet,
}

impl MemElement {
    pub fn new(element: ElementId, memory: impl IntoIterator<Item = ElementId>) -> Self {
        MemElement {
            element,
            memory: memory.into_iter().collect(),
        }
    }

    pub fn display<'a>(&'a self, s: &'a FiniteSemigroup) -> impl fmt::Display + 'a {
        MemDisplay { m: self, s }
    }
}

struct MemDisplay<'a> {
    m: &'a MemElement,
    s: &'a FiniteSemigroup,
}

impl fmt::Display for MemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.m.memory.iter().map(|x| self.s.element_name(x)).collect();
        write!(f, "({}, {{{}}})", self.s.element_name(self.m.element), names.join(","))
    }
}

/// `(s, α)(t, β) = (st, αt ∪ {t} ∪ β)`.
pub fn mem_mul(s: &FiniteSemigroup, x: &MemElement, y: &MemElement) -> MemElement {
    let t = y.element;
    let mut memory: ElementSet = x.memory.iter().map(|a| s.mul(a, t)).collect();
    memory.insert(t);
    memory.union_with(&y.memory);
    MemElement {
        element: s.mul(x.element, t),
        memory,
    }
}

/// `[s_n, …, s_1] ↦ (s_n⋯s_1, {s_{n-1}⋯s_1, …, s_2s_1, s_1})`.
pub fn phi_mem(s: &FiniteSemigroup, word: &[ElementId]) -> Result<MemElement> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(&bad) = word.iter().find(|x| x.index() >= s.order()) {
        return Err(Error::UnknownElement(bad.index()));
    }
    let mut memory = ElementSet::new();
    let mut suffix = *word.last().unwrap();
    for &x in word.iter().rev().skip(1) {
        memory.insert(suffix);
        suffix = s.mul(x, suffix);
    }
    Ok(MemElement {
        element: suffix,
        memory,
    })
}

/// Largest base order for which `mem(S)` is materialized as a table.
pub const MAX_MEM_TABLE_ORDER: usize = 12;

fn mem_encode(n: usize, m: &MemElement) -> usize {
    let mask: usize = m.memory.iter().map(|x| 1usize << x.index()).sum();
    (m.element.index() << n) | mask
}

fn mem_decode(n: usize, code: usize) -> MemElement {
    MemElement::new(
        ElementId::new(code >> n),
        (0..n).filter(|i| code & (1 << i) != 0).map(ElementId::new),
    )
}

/// `mem(S)` as a table on `|S|·2^|S|` elements; element `(s, α)` has id
/// `s·2^|S| + Σ_{a∈α} 2^a`.
pub fn mem_semigroup(s: &FiniteSemigroup) -> Result<FiniteSemigroup> {
    let n = s.order();
    if n > MAX_MEM_TABLE_ORDER {
        return Err(Error::TooLarge {
            order: n,
            limit: MAX_MEM_TABLE_ORDER,
        });
    }
    let size = n << n;
    let decoded: Vec<MemElement> = (0..size).map(|c| mem_decode(n, c)).collect();
    let names = decoded.iter().map(|m| m.display(s).to_string()).collect();
    FiniteSemigroup::from_fn(format!("mem({})", s.name()), names, |a, b| {
        mem_encode(n, &mem_mul(s, &decoded[a], &decoded[b]))
    })
}

/// Aperiodicity index of `mem(S)`, computed without materializing a table.
pub fn mem_aperiodicity_index(s: &FiniteSemigroup) -> Result<Option<usize>> {
    let n = s.order();
    if n >= usize::BITS as usize - 8 {
        return Err(Error::TooLarge {
            order: n,
            limit: usize::BITS as usize - 8,
        });
    }
    Ok(aperiodicity_index_of(n << n, |a, b| {
        mem_encode(n, &mem_mul(s, &mem_decode(n, a), &mem_decode(n, b)))
    }))
}

/// A reduced chain `[x_1, …, x_m]` of the Rhodes expansion: each entry is a
/// right multiple of its predecessor and no two neighbours are R-related.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExpansionWord {
    pub chain: Vec<ElementId>,
}

/// Checks that every entry lies in `x_{i-1}·S`.
pub fn check_chain(s: &FiniteSemigroup, chain: &[ElementId]) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::EmptyWord);
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !s.elements().any(|t| s.mul(w[0], t) == w[1]) {
            return Err(Error::NotAChain { index: i + 1 });
        }
    }
    Ok(())
}

/// Positions `i` at which the one-step reduction applies (entry `i-1` is
/// R-related to entry `i`).
pub fn reducible_positions(g: &GreenStructure, chain: &[ElementId]) -> Vec<usize> {
    (1..chain.len()).filter(|&i| g.r_related(chain[i - 1], chain[i])).collect()
}

/// Deletes entry `i-1`, which must be R-related to entry `i`.
pub fn reduce_at(chain: &mut Vec<ElementId>, i: usize) {
    chain.remove(i - 1);
}

pub fn rhodes_reduce(s: &FiniteSemigroup, chain: &[ElementId]) -> Result<ExpansionWord> {
    check_chain(s, chain)?;
    let g = green::green(s);
    Ok(reduce_with(&g, chain.to_vec()))
}

fn reduce_with(g: &GreenStructure, mut chain: Vec<ElementId>) -> ExpansionWord {
    while let Some(&i) = reducible_positions(g, &chain).first() {
        reduce_at(&mut chain, i);
    }
    ExpansionWord { chain }
}

/// `u·v = red(u_1, …, u_m, u_m v_1, …, u_m v_k)`.
pub fn rhodes_mul(s: &FiniteSemigroup, u: &ExpansionWord, v: &ExpansionWord) -> Result<ExpansionWord> {
    check_chain(s, &u.chain)?;
    check_chain(s, &v.chain)?;
    let last = *u.chain.last().unwrap();
    let mut chain = u.chain.clone();
    chain.extend(v.chain.iter().map(|&x| s.mul(last, x)));
    Ok(reduce_with(&green::green(s), chain))
}

/// The chain `[s_1, s_1s_2, …, s_1⋯s_n]` of a letter sequence.
pub fn chain_of(s: &FiniteSemigroup, letters: &[ElementId]) -> Vec<ElementId> {
    let mut acc: Option<ElementId> = None;
    letters
        .iter()
        .map(|&x| {
            let next = acc.map_or(x, |a| s.mul(a, x));
            acc = Some(next);
            next
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionVerdict {
    pub words_checked: usize,
    pub mem_classes: usize,
    /// First pair with equal `mem` image but different `Cayley(S, I)` value.
    pub counterexample: Option<(Vec<ElementId>, Vec<ElementId>)>,
}

impl DivisionVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// All generator words over `S` of length `1..=max_len`, shortlex.
pub fn all_words(order: usize, max_len: usize) -> Vec<Vec<ElementId>> {
    let mut words = Vec::new();
    let mut level: Vec<Vec<ElementId>> = vec![Vec::new()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w| {
                (0..order).map(move |x| {
                    let mut w = w.clone();
                    w.push(ElementId::new(x));
                    w
                })
            })
            .collect();
        words.extend(level.iter().cloned());
    }
    words
}

/// For `S` aperiodic with 0 and 1 and `I` a regular 0-minimal ideal, checks
/// that generator words of length at most `max_len` with equal `mem` images
/// are equal in `Cayley(S, I)`.
pub fn division_check(s: &FiniteSemigroup, ideal: &ElementSet, max_len: usize) -> Result<DivisionVerdict> {
    let zero = s.zero().ok_or_else(|| Error::PreconditionViolated("S has no zero".into()))?;
    if s.identity().is_none() {
        return Err(Error::PreconditionViolated("S has no identity".into()));
    }
    if !s.is_aperiodic() {
        return Err(Error::PreconditionViolated("S is not aperiodic".into()));
    }
    let minimal = green::zero_minimal_ideals(s)?;
    let regular_ideal = minimal.iter().any(|(j, regular)| {
        let mut candidate: ElementSet = j.iter().copied().collect();
        candidate.insert(zero);
        *regular && &candidate == ideal
    });
    if !regular_ideal {
        return Err(Error::PreconditionViolated("I is not a regular 0-minimal ideal".into()));
    }
    let machine = CayleyMachine::new(s, Mode::Ideal(ideal.clone()))?;
    let words = all_words(s.order(), max_len);
    let keyed: Vec<(MemElement, crate::machine::Canonical)> = words
        .par_iter()
        .map(|w| Ok((phi_mem(s, w)?, machine.canonicalize(w)?)))
        .collect::<Result<_>>()?;
    let mut first_in_class: HashMap<&MemElement, usize> = HashMap::new();
    let mut counterexample = None;
    for (i, (m, c)) in keyed.iter().enumerate() {
        match first_in_class.get(m) {
            Some(&r) => {
                if counterexample.is_none() && keyed[r].1 != *c {
                    counterexample = Some((words[r].clone(), words[i].clone()));
                }
            }
            None => {
                first_in_class.insert(m, i);
            }
        }
    }
    Ok(DivisionVerdict {
        words_checked: words.len(),
        mem_classes: first_in_class.len(),
        counterexample,
    })
}

//! Stable words, trace projections and the semidirect-product embedding of
//! the stable-word quotient for an ideal `T` and a J-class `J` directly
//! above it.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{enumerate, EnumOptions};
use crate::error::{Error, Result};
use crate::expansions::all_words;
use crate::green::{self, ExtendedMatrix};
use crate::machine::{Canonical, CayleyMachine, Mode};
use crate::semigroup::{find_isomorphism, ElementId, FiniteSemigroup};
use crate::set::ElementSet;

/// A normalized semigroup with an ideal `T` and a J-class `J` such that
/// `J ∪ T` is an ideal.
#[derive(Clone, Debug)]
pub struct TowerContext {
    s: FiniteSemigroup,
    t: ElementSet,
    j: ElementSet,
    zero: ElementId,
    /// Whether adjoining 1 or 0 changed the input semigroup.
    pub normalized: bool,
    full: CayleyMachine,
    below: CayleyMachine,
    trace: CayleyMachine,
}

impl TowerContext {
    /// Normalizes `S` to `(S¹)⁰`, keeping existing ids. A newly adjoined zero
    /// is added to `T`.
    pub fn new(s: &FiniteSemigroup, t: &ElementSet, j: &ElementSet) -> Result<Self> {
        let normal = s.with_identity_and_zero();
        let zero = normal.zero().expect("normalized semigroups have a zero");
        let mut t = t.clone();
        if normal.order() > s.order() && s.zero().is_none() {
            t.insert(zero);
        }
        normal.check_ideal(&t)?;
        if !green::is_j_class(&normal, j) {
            return Err(Error::NotAJClass);
        }
        if j.iter().any(|x| t.contains(x)) {
            return Err(Error::PreconditionViolated("J meets T".into()));
        }
        let mut union = t.clone();
        union.union_with(j);
        if !normal.is_ideal(&union) {
            return Err(Error::PreconditionViolated("J ∪ T is not an ideal".into()));
        }
        Ok(TowerContext {
            full: CayleyMachine::new(&normal, Mode::Ideal(union))?,
            below: CayleyMachine::new(&normal, Mode::Ideal(t.clone()))?,
            trace: CayleyMachine::new(&normal, Mode::Trace(j.clone()))?,
            normalized: normal.order() != s.order(),
            s: normal,
            t,
            j: j.clone(),
            zero,
        })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.s
    }

    pub fn ideal(&self) -> &ElementSet {
        &self.t
    }

    pub fn j_class(&self) -> &ElementSet {
        &self.j
    }

    /// `Cayley(S, J ∪ T)`.
    pub fn full_machine(&self) -> &CayleyMachine {
        &self.full
    }

    /// `Cayley(S, T)`.
    pub fn ideal_machine(&self) -> &CayleyMachine {
        &self.below
    }

    /// `Cayley(S, J^tr)`.
    pub fn trace_machine(&self) -> &CayleyMachine {
        &self.trace
    }

    fn check_word(&self, w: &[ElementId]) -> Result<()> {
        match w.iter().find(|&&x| !self.full.is_letter(x)) {
            Some(&x) => Err(Error::AlphabetMismatch(x)),
            None => Ok(()),
        }
    }

    /// Length of the longest prefix of `w` inside `J`.
    pub fn j_prefix_len(&self, w: &[ElementId]) -> Result<usize> {
        self.check_word(w)?;
        Ok(w.iter().take_while(|&&x| self.j.contains(x)).count())
    }

    /// `w` is stable for `f` when `f(w)` keeps the J-prefix length of `w`.
    pub fn is_stable(&self, f: &[ElementId], w: &[ElementId]) -> Result<bool> {
        let image = self.full.apply(f, w)?;
        Ok(self.j_prefix_len(&image)? == self.j_prefix_len(w)?)
    }

    /// `f^tr`, the action of `f` on `(J^tr)*`.
    pub fn trace_project(&self, f: &[ElementId]) -> Result<Canonical> {
        self.trace.canonicalize(f)
    }

    /// Maps a word over `J ∪ T` to `J^tr` by sending `T` to θ.
    pub fn to_trace_word(&self, w: &[ElementId]) -> Result<Vec<ElementId>> {
        self.check_word(w)?;
        let theta = self.trace.extra_value().expect("trace mode has θ");
        Ok(w.iter().map(|&x| if self.j.contains(x) { x } else { theta }).collect())
    }

    fn in_j_letters(&self, machine: &CayleyMachine) -> Vec<bool> {
        machine.alphabet().iter().map(|&x| self.j.contains(x)).collect()
    }

    /// Decides `f ∼ g`: the same stable words, and equal values on them.
    pub fn st_equal(&self, f: &[ElementId], g: &[ElementId]) -> Result<bool> {
        let (mf, mg) = (self.full.canonicalize(f)?, self.full.canonicalize(g)?);
        Ok(st_equal_machines(&mf, &mg, &self.in_j_letters(&self.full)))
    }

    /// `∼` on trace elements, with θ playing the role of `T`.
    pub fn st_equal_trace(&self, f: &Canonical, g: &Canonical) -> bool {
        st_equal_machines(f, g, &self.in_j_letters(&self.trace))
    }

    /// `f̂`: for each letter of `J^tr` (J ascending, then θ) a canonical
    /// element of `Cayley(S, T)`.
    pub fn hat(&self, f: &[ElementId]) -> Result<Vec<Canonical>> {
        let zero_map = self.below.generator(self.zero)?.clone();
        let mut hat = Vec::with_capacity(self.j.len() + 1);
        for j in self.j.iter() {
            let image = self.full.apply(f, &[j])?;
            if self.j.contains(image[0]) {
                let restricted = self.full.restrict(f, &[j])?;
                hat.push(self.below.canonicalize(&restricted)?);
            } else {
                hat.push(zero_map.clone());
            }
        }
        hat.push(self.below.canonicalize(f)?);
        Ok(hat)
    }

    pub fn pi_embed(&self, f: &[ElementId]) -> Result<StableClass> {
        Ok(StableClass {
            trace: self.trace_project(f)?,
            hat: self.hat(f)?,
        })
    }

    /// `(f^tr, f̂)(g^tr, ĝ) = (f^tr g^tr, f̂^{g^tr} ĝ)`, where
    /// `H^g(j) = H(g(j))` if `g(j) ∈ J`, the zero map otherwise, and
    /// `H^g(θ) = H(θ)`.
    pub fn semidirect_mul(&self, x: &StableClass, y: &StableClass) -> Result<StableClass> {
        let trace = self.trace.compose(&x.trace, &y.trace)?;
        let zero_map = self.below.generator(self.zero)?;
        let letters = self.trace.alphabet();
        let theta = letters.len() - 1;
        let hat = (0..letters.len())
            .map(|i| {
                let acted = if i == theta {
                    &x.hat[theta]
                } else {
                    let image = self.trace.eval(&y.trace, &[letters[i]])?[0];
                    match letters.iter().position(|&l| l == image) {
                        Some(k) if k != theta => &x.hat[k],
                        _ => zero_map,
                    }
                };
                self.below.compose(acted, &y.hat[i])
            })
            .collect::<Result<_>>()?;
        Ok(StableClass { trace, hat })
    }

    /// Equality of embedded values: trace parts up to `∼`, suffix maps exactly.
    pub fn pi_equal(&self, x: &StableClass, y: &StableClass) -> bool {
        x.hat == y.hat && self.st_equal_trace(&x.trace, &y.trace)
    }

    /// Checks the morphism law and that `Π(f) = Π(g) ⟺ f ∼ g` over all
    /// generator words of length at most `max_len`.
    pub fn verify_embedding(&self, max_len: usize) -> Result<EmbeddingVerdict> {
        if max_len == 0 {
            return Err(Error::PreconditionViolated("max_len must be positive".into()));
        }
        let words = all_words(self.s.order(), max_len);
        let images: Vec<StableClass> = words.par_iter().map(|w| self.pi_embed(w)).collect::<Result<_>>()?;
        let full: Vec<Canonical> = words.par_iter().map(|w| self.full.canonicalize(w)).collect::<Result<_>>()?;
        let in_j = self.in_j_letters(&self.full);
        let n = words.len();

        let morphism = (0..n * n)
            .into_par_iter()
            .map(|p| -> Result<Option<usize>> {
                let (i, k) = (p / n, p % n);
                let product = self.semidirect_mul(&images[i], &images[k])?;
                let mut fg = words[i].clone();
                fg.extend_from_slice(&words[k]);
                Ok((product != self.pi_embed(&fg)?).then_some(p))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();

        let injectivity = (0..n * n).into_par_iter().find_first(|&p| {
            let (i, k) = (p / n, p % n);
            self.pi_equal(&images[i], &images[k]) != st_equal_machines(&full[i], &full[k], &in_j)
        });

        let pair = |p: usize| (words[p / n].clone(), words[p % n].clone());
        Ok(EmbeddingVerdict {
            words_checked: n,
            morphism_counterexample: morphism.map(pair),
            injectivity_counterexample: injectivity.map(pair),
        })
    }

    /// `new_a(s_n, …, s_1)`: the positions `i` at which
    /// `π_a(i) = s_{i-1}⋯s_1·a` takes a value not seen before.
    pub fn new_a(&self, action: &ExtendedMatrix, word: &[ElementId], a: usize) -> Result<Vec<usize>> {
        new_a(action, word, a)
    }

    /// Aperiodicity indices of `Cayley(S, T ∪ J)`, `Cayley(S, T)` and
    /// `Cayley(S, J^tr)`.
    pub fn indices(&self, options: &EnumOptions) -> Result<(Option<usize>, Option<usize>, Option<usize>)> {
        let mut union = self.t.clone();
        union.union_with(&self.j);
        let index = |mode: Mode| -> Result<Option<usize>> {
            enumerate(&self.s, mode, options)?.aperiodicity_index()
        };
        Ok((
            index(Mode::Ideal(union))?,
            index(Mode::Ideal(self.t.clone()))?,
            index(Mode::Trace(self.j.clone()))?,
        ))
    }

    /// Checks `Cayley(S, J^tr) ≅ Cayley(S/T, (J ∪ T)/T)`.
    pub fn trace_matches_quotient(&self, options: &EnumOptions) -> Result<bool> {
        let traced = enumerate(&self.s, Mode::Trace(self.j.clone()), options)?;
        let (quotient, map) = self.s.rees_quotient(&self.t)?;
        let image: ElementSet = self.t.iter().chain(self.j.iter()).map(|x| map[x.index()]).collect();
        let quoted = enumerate(&quotient, Mode::Ideal(image), options)?;
        Ok(find_isomorphism(&traced.to_semigroup()?, &quoted.to_semigroup()?).is_some())
    }
}

/// The embedded value `(f^tr, f̂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableClass {
    pub trace: Canonical,
    pub hat: Vec<Canonical>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingVerdict {
    pub words_checked: usize,
    pub morphism_counterexample: Option<(Vec<ElementId>, Vec<ElementId>)>,
    pub injectivity_counterexample: Option<(Vec<ElementId>, Vec<ElementId>)>,
}

impl EmbeddingVerdict {
    pub fn holds(&self) -> bool {
        self.morphism_counterexample.is_none() && self.injectivity_counterexample.is_none()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Phase {
    InPrefix,
    Decided,
}

/// Decides `∼` on two machines over the same alphabet, where `in_j[a]`
/// marks the letters of `J`.
///
/// While the input is still inside its J-prefix, both outputs in `J` must
/// agree, both outside `J` make every extension unstable for both maps, and
/// a mixed pair separates the stable sets. The first letter outside `J`
/// fixes stability; from then on the outputs must simply agree.
pub fn st_equal_machines(f: &Canonical, g: &Canonical, in_j: &[bool]) -> bool {
    let k = f.letters();
    let start = (0usize, 0usize, Phase::InPrefix);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q, phase)) = queue.pop_front() {
        for a in 0..k {
            let (of, og) = (f.output(p, a), g.output(q, a));
            let next_phase = match phase {
                Phase::Decided => {
                    if of != og {
                        return false;
                    }
                    Phase::Decided
                }
                Phase::InPrefix if in_j[a] => match (in_j[of], in_j[og]) {
                    (true, true) if of == og => Phase::InPrefix,
                    (false, false) => continue,
                    _ => return false,
                },
                Phase::InPrefix => {
                    if of != og {
                        return false;
                    }
                    Phase::Decided
                }
            };
            let next = (f.next(p, a), g.next(q, a), next_phase);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// `new_a(s_n, …, s_1)` from the left action on rows; positions are 1-based.
pub fn new_a(action: &ExtendedMatrix, word: &[ElementId], a: usize) -> Result<Vec<usize>> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let killed = word.iter().rev().try_fold(a, |row, &s| action.act(s, Some(row)));
    if killed.is_none() {
        return Err(Error::ActionKilled { a });
    }
    let mut seen = Vec::new();
    let mut fresh = Vec::new();
    let mut row = a;
    for (i, &s) in word.iter().rev().enumerate() {
        if !seen.contains(&row) {
            seen.push(row);
            fresh.push(i + 1);
        }
        row = action.act(s, Some(row)).expect("checked above");
    }
    Ok(fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(i: usize) -> ElementId {
        ElementId::new(i)
    }

    fn set(ids: &[usize]) -> ElementSet {
        ids.iter().map(|&i| e(i)).collect()
    }

    fn s3_context() -> TowerContext {
        TowerContext::new(&catalog::s3(), &set(&[0]), &set(&[1])).unwrap()
    }

    #[test]
    fn stability_examples() {
        let ctx = s3_context();
        let (zero, one) = (e(0), e(1));
        assert!(ctx.is_stable(&[one], &[one, zero]).unwrap());
        assert!(!ctx.is_stable(&[zero], &[one, zero]).unwrap());
        assert!(ctx.is_stable(&[zero], &[zero, zero]).unwrap());
        assert_eq!(ctx.j_prefix_len(&[one, one, zero]).unwrap(), 2);
    }

    #[test]
    fn st_equal_examples() {
        let ctx = s3_context();
        let (zero, one) = (e(0), e(1));
        assert!(ctx.st_equal(&[one], &[one]).unwrap());
        assert!(ctx.st_equal(&[one], &[one, one]).unwrap());
        assert!(!ctx.st_equal(&[zero], &[one]).unwrap());
    }

    #[test]
    fn new_a_single_letter() {
        let s1z = catalog::s1().adjoin_zero();
        let m = green::extended_matrix(&s1z, &set(&[0, 1])).unwrap();
        assert_eq!(new_a(&m, &[e(0)], 1).unwrap(), vec![1]);
        assert_eq!(new_a(&m, &[e(2)], 0), Err(Error::ActionKilled { a: 0 }));
    }
}

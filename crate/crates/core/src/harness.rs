//! Exhaustive check, for all semigroups of a small order, that `S` is
//! aperiodic exactly when `Cayley(S)` is finite exactly when `Cayley(S)` is
//! aperiodic.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{all_semigroups_of_order, MAX_GENERATED_ORDER};
use crate::enumeration::{enumerate, EnumOptions, EnumStatus};
use crate::error::{Error, Result};
use crate::expansions::all_words;
use crate::machine::{CayleyMachine, Mode};
use crate::semigroup::{ElementId, FiniteSemigroup};

/// Largest order accepted by [`verify_theorem`].
pub const MAX_THEOREM_ORDER: usize = 3;

/// Word length up to which generator words of a subgroup must stay distinct.
pub const FREE_GROWTH_LEN: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeGrowth {
    /// Elements of a non-trivial cyclic subgroup.
    pub subgroup: Vec<ElementId>,
    pub words_checked: usize,
    pub distinct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub index: usize,
    pub table: Vec<Vec<usize>>,
    pub aperiodic: bool,
    pub aperiodicity_index: Option<usize>,
    pub status: EnumStatus,
    /// Elements found, exact when complete.
    pub cayley_elements: usize,
    pub closure_depth: usize,
    pub cayley_aperiodicity_index: Option<usize>,
    pub free_growth: Option<FreeGrowth>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub order: usize,
    pub max_elements: usize,
    pub cases: Vec<CaseReport>,
    pub aperiodic_cases: usize,
    pub passed: bool,
}

impl TheoremReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

pub fn verify_theorem(order: usize, options: &EnumOptions) -> Result<TheoremReport> {
    if order == 0 || order > MAX_THEOREM_ORDER.min(MAX_GENERATED_ORDER) {
        return Err(Error::BoundExceeded {
            requested: order,
            limit: MAX_THEOREM_ORDER,
        });
    }
    let semigroups = all_semigroups_of_order(order)?;
    let cases = semigroups
        .par_iter()
        .enumerate()
        .map(|(index, s)| check_case(index, s, options))
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremReport {
        order,
        max_elements: options.max_elements,
        aperiodic_cases: cases.iter().filter(|c| c.aperiodic).count(),
        passed: cases.iter().all(|c| c.passed),
        cases,
    })
}

pub fn check_case(index: usize, s: &FiniteSemigroup, options: &EnumOptions) -> Result<CaseReport> {
    let aperiodic = s.is_aperiodic();
    let result = enumerate(s, Mode::Full, options)?;
    let cayley_index = if result.is_complete() {
        result.aperiodicity_index()?
    } else {
        None
    };
    let free_growth = if aperiodic { None } else { free_growth(s)? };
    let growth_ok = free_growth.as_ref().map_or(aperiodic, |g| g.distinct);
    let passed = aperiodic == result.is_complete() && aperiodic == cayley_index.is_some() && growth_ok;
    Ok(CaseReport {
        index,
        table: s.rows(),
        aperiodic,
        aperiodicity_index: s.aperiodicity_index(),
        status: result.status,
        cayley_elements: result.len(),
        closure_depth: result.closure_depth,
        cayley_aperiodicity_index: cayley_index,
        free_growth,
        passed,
    })
}

/// The cyclic subgroup `{x^k : k ≥ index}` of the first element with period
/// at least 2.
pub fn nontrivial_subgroup(s: &FiniteSemigroup) -> Option<Vec<ElementId>> {
    s.elements().find_map(|x| {
        let mut powers = vec![x];
        loop {
            let next = s.mul(*powers.last().expect("non-empty"), x);
            if let Some(start) = powers.iter().position(|&p| p == next) {
                let cycle = powers.split_off(start);
                return (cycle.len() >= 2).then(|| {
                    let mut cycle = cycle;
                    cycle.sort();
                    cycle
                });
            }
            powers.push(next);
        }
    })
}

/// Checks that all words of length at most [`FREE_GROWTH_LEN`] over a
/// non-trivial subgroup give distinct elements of `Cayley(S)`.
pub fn free_growth(s: &FiniteSemigroup) -> Result<Option<FreeGrowth>> {
    let Some(subgroup) = nontrivial_subgroup(s) else {
        return Ok(None);
    };
    let machine = CayleyMachine::full(s);
    let words: Vec<Vec<ElementId>> = all_words(subgroup.len(), FREE_GROWTH_LEN)
        .into_iter()
        .map(|w| w.iter().map(|i| subgroup[i.index()]).collect())
        .collect();
    let canonical = words
        .par_iter()
        .map(|w| machine.canonicalize(w))
        .collect::<Result<Vec<_>>>()?;
    let distinct = canonical.iter().collect::<HashSet<_>>().len() == canonical.len();
    Ok(Some(FreeGrowth {
        subgroup,
        words_checked: words.len(),
        distinct,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn subgroup_of_z2() {
        let z2 = catalog::s5();
        assert_eq!(nontrivial_subgroup(&z2).unwrap().len(), 2);
        assert!(nontrivial_subgroup(&catalog::m5()).is_none());
        let g = free_growth(&z2).unwrap().unwrap();
        assert_eq!(g.words_checked, 62);
        assert!(g.distinct);
    }

    #[test]
    fn orders_one_and_two() {
        let one = verify_theorem(1, &EnumOptions::default()).unwrap();
        assert!(one.passed);
        assert_eq!(one.cases.len(), 1);
        let two = verify_theorem(2, &EnumOptions::with_max(2000)).unwrap();
        assert!(two.passed);
        assert_eq!((two.cases.len(), two.aperiodic_cases), (5, 4));
    }

    #[test]
    fn rejects_large_orders() {
        assert!(verify_theorem(4, &EnumOptions::default()).is_err());
    }
}

//! Built-in semigroups.

use crate::semigroup::{monogenic, FiniteSemigroup};

/// Facts recorded for a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    /// `|Cayley(S)|`, or `None` when it is infinite.
    pub cayley_order: Option<usize>,
    /// Whether `Cayley(S) ≅ S`.
    pub cayley_is_self: bool,
    /// Aperiodicity index of `Cayley(S)`, `None` when it is infinite.
    pub aperiodicity_index: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub semigroup: FiniteSemigroup,
    pub expected: Expected,
}

fn named(name: &str, names: &[&str], rows: &[Vec<usize>]) -> FiniteSemigroup {
    let names = names.iter().map(|n| n.to_string()).collect();
    FiniteSemigroup::new(name, names, rows).expect("catalog tables are valid")
}

/// Left zero semigroup `{a, b}`.
pub fn s1() -> FiniteSemigroup {
    named("S1", &["a", "b"], &[vec![0, 0], vec![1, 1]])
}

/// Right zero semigroup `{a, b}`.
pub fn s2() -> FiniteSemigroup {
    named("S2", &["a", "b"], &[vec![0, 1], vec![0, 1]])
}

/// Two-element semilattice `{0, 1}`.
pub fn s3() -> FiniteSemigroup {
    named("S3", &["0", "1"], &[vec![0, 0], vec![0, 1]])
}

/// Nil semigroup `⟨x | x² = 0⟩`.
pub fn s4() -> FiniteSemigroup {
    named("S4", &["x", "0"], &[vec![1, 1], vec![1, 1]])
}

/// Cyclic group of order 2.
pub fn s5() -> FiniteSemigroup {
    named("S5", &["1", "x"], &[vec![0, 1], vec![1, 0]])
}

/// `⟨x | x⁵ = x⁶⟩`.
pub fn m5() -> FiniteSemigroup {
    monogenic(5, 1).expect("valid parameters").with_name("M5")
}

pub fn trivial() -> FiniteSemigroup {
    named("trivial", &["e"], &[vec![0]])
}

pub fn catalog() -> Vec<CatalogEntry> {
    let entry = |key, description, semigroup, cayley_order, cayley_is_self, aperiodicity_index| CatalogEntry {
        key,
        description,
        semigroup,
        expected: Expected {
            cayley_order,
            cayley_is_self,
            aperiodicity_index,
        },
    };
    vec![
        entry("S1", "left zero semigroup of order 2", s1(), Some(2), true, Some(1)),
        entry("S2", "right zero semigroup of order 2", s2(), Some(2), true, Some(1)),
        entry("S3", "two-element semilattice", s3(), Some(2), true, Some(1)),
        entry("S4", "nil semigroup <x | x^2 = 0>", s4(), Some(2), true, Some(2)),
        entry("S5", "cyclic group of order 2", s5(), None, false, None),
        entry("M5", "monogenic semigroup <x | x^5 = x^6>", m5(), Some(9), false, Some(5)),
        entry("trivial", "one-element semigroup", trivial(), Some(1), true, Some(1)),
    ]
}

pub fn lookup(key: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.key.eq_ignore_ascii_case(key))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(lookup("S1").unwrap().semigroup.rows(), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(lookup("S5").unwrap().semigroup.rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(lookup("M5").unwrap().semigroup.rows(), monogenic(5, 1).unwrap().rows());
        assert!(lookup("S9").is_none());
    }
}

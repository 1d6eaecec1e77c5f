//! Exhaustive generation of small semigroups up to isomorphism.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

pub const MAX_GENERATED_ORDER: usize = 4;

/// All semigroups of order `n` up to isomorphism, each given by its
/// canonical table (the lexicographically least relabelling), in ascending
/// order of that table.
pub fn all_semigroups_of_order(n: usize) -> Result<Vec<FiniteSemigroup>> {
    if n > MAX_GENERATED_ORDER {
        return Err(Error::BoundExceeded {
            requested: n,
            limit: MAX_GENERATED_ORDER,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let perms = permutations(n);
    // Partition the search by the value of the first cell.
    let mut tables: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut table = vec![UNSET; n * n];
            table[0] = first;
            let mut found = Vec::new();
            if consistent(&table, n) {
                search(&mut table, n, 1, &mut found);
            }
            found.into_iter().map(|t| canonical_table(&t, n, &perms)).collect::<Vec<_>>()
        })
        .collect();
    tables.sort();
    tables.dedup();
    Ok(tables
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            let rows: Vec<Vec<usize>> = t.chunks(n).map(<[usize]>::to_vec).collect();
            let names = (0..n).map(|i| i.to_string()).collect();
            FiniteSemigroup::new(format!("order{n}#{k}"), names, &rows).expect("generated tables are associative")
        })
        .collect())
}

const UNSET: usize = usize::MAX;

fn search(table: &mut Vec<usize>, n: usize, cell: usize, found: &mut Vec<Vec<usize>>) {
    if cell == n * n {
        found.push(table.clone());
        return;
    }
    for v in 0..n {
        table[cell] = v;
        if consistent(table, n) {
            search(table, n, cell + 1, found);
        }
    }
    table[cell] = UNSET;
}

/// Checks every triple whose four products are already assigned.
fn consistent(t: &[usize], n: usize) -> bool {
    for x in 0..n {
        for y in 0..n {
            let xy = t[x * n + y];
            if xy == UNSET {
                continue;
            }
            for z in 0..n {
                let yz = t[y * n + z];
                if yz == UNSET {
                    continue;
                }
                let (l, r) = (t[xy * n + z], t[x * n + yz]);
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The least table `T'` over all permutations `π`, with
/// `T'[π i][π j] = π(T[i][j])`.
pub(crate) fn canonical_table(t: &[usize], n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let mut relabelled = vec![0; n * n];
    for p in perms {
        for i in 0..n {
            for j in 0..n {
                relabelled[p[i] * n + p[j]] = p[t[i * n + j]];
            }
        }
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled.clone());
        }
    }
    best.expect("at least one permutation")
}

/// Canonical table of a semigroup of order at most the generation bound.
pub fn canonical_form(s: &FiniteSemigroup) -> Result<Vec<usize>> {
    let n = s.order();
    if n > MAX_GENERATED_ORDER + 2 {
        return Err(Error::BoundExceeded {
            requested: n,
            limit: MAX_GENERATED_ORDER + 2,
        });
    }
    let flat: Vec<usize> = s.rows().concat();
    Ok(canonical_table(&flat, n, &permutations(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(all_semigroups_of_order(1).unwrap().len(), 1);
        assert_eq!(all_semigroups_of_order(2).unwrap().len(), 5);
        assert!(matches!(all_semigroups_of_order(5), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
    }
}

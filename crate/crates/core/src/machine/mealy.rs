//! Minimal Mealy machines over a fixed letter-indexed alphabet.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// A minimized, canonically numbered Mealy machine.
///
/// Letters are indices into the owning alphabet; outputs are letter indices
/// too, since every output of a Cayley machine lies in its alphabet. State 0
/// is initial and states are numbered in breadth-first discovery order over
/// letters in ascending order, so structural equality is functional equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canonical {
    letters: u16,
    trans: Vec<u32>,
    out: Vec<u16>,
}

impl Canonical {
    pub fn letters(&self) -> usize {
        self.letters as usize
    }

    pub fn states(&self) -> usize {
        self.trans.len() / self.letters()
    }

    #[inline]
    pub fn next(&self, q: usize, a: usize) -> usize {
        self.trans[q * self.letters() + a] as usize
    }

    #[inline]
    pub fn output(&self, q: usize, a: usize) -> usize {
        self.out[q * self.letters() + a] as usize
    }

    /// Runs the machine from its initial state over letter indices.
    pub fn run(&self, input: &[usize]) -> Vec<usize> {
        let mut q = 0;
        input
            .iter()
            .map(|&a| {
                let o = self.output(q, a);
                q = self.next(q, a);
                o
            })
            .collect()
    }

    /// State reached after reading `input`.
    pub fn state_after(&self, input: &[usize]) -> usize {
        input.iter().fold(0, |q, &a| self.next(q, a))
    }

    /// True when one more round of refinement would not merge any states.
    pub fn is_minimal(&self) -> bool {
        let partition = refine(self.states(), self.letters(), &self.trans, &self.out);
        partition.iter().max().map_or(0, |&c| c as usize + 1) == self.states()
    }

    /// The machine restarted from state `q`, renumbered canonically.
    pub fn from_state(&self, q: usize) -> Canonical {
        minimize(self.states(), self.letters(), &self.trans, &self.out, q as u32)
    }
}

/// Moore-style refinement: classes start from output rows and are split by
/// successor classes until the class count stops growing.
fn refine(n: usize, k: usize, trans: &[u32], out: &[u16]) -> Vec<u32> {
    let mut class = vec![0u32; n];
    let mut ids: HashMap<&[u16], u32> = HashMap::new();
    for q in 0..n {
        let next = ids.len() as u32;
        class[q] = *ids.entry(&out[q * k..(q + 1) * k]).or_insert(next);
    }
    let mut count = ids.len();
    let mut key = Vec::with_capacity(k + 1);
    loop {
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(count * 2);
        let mut next_class = vec![0u32; n];
        for q in 0..n {
            key.clear();
            key.push(class[q]);
            key.extend(trans[q * k..(q + 1) * k].iter().map(|&t| class[t as usize]));
            let fresh = ids.len() as u32;
            next_class[q] = *ids.entry(key.clone()).or_insert(fresh);
        }
        class = next_class;
        if ids.len() == count {
            return class;
        }
        count = ids.len();
    }
}

/// Minimizes the part of a machine reachable from `init` and renumbers it.
pub(crate) fn minimize(n: usize, k: usize, trans: &[u32], out: &[u16], init: u32) -> Canonical {
    let class = refine(n, k, trans, out);
    let classes = class.iter().max().map_or(0, |&c| c as usize + 1);
    let mut rep = vec![u32::MAX; classes];
    for (q, &c) in class.iter().enumerate() {
        let c = c as usize;
        if rep[c] == u32::MAX {
            rep[c] = q as u32;
        }
    }
    let mut number = vec![u32::MAX; classes];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let start = class[init as usize];
    number[start as usize] = 0;
    order.push(start);
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        let q = rep[c as usize] as usize;
        for a in 0..k {
            let d = class[trans[q * k + a] as usize];
            if number[d as usize] == u32::MAX {
                number[d as usize] = order.len() as u32;
                order.push(d);
                queue.push_back(d);
            }
        }
    }
    let mut new_trans = Vec::with_capacity(order.len() * k);
    let mut new_out = Vec::with_capacity(order.len() * k);
    for &c in &order {
        let q = rep[c as usize] as usize;
        for a in 0..k {
            new_trans.push(number[class[trans[q * k + a] as usize] as usize]);
            new_out.push(out[q * k + a]);
        }
    }
    Canonical {
        letters: k as u16,
        trans: new_trans,
        out: new_out,
    }
}

/// Explores a deterministic machine whose states are hashable keys, then
/// minimizes it. `step` returns the successor key and output letter.
pub(crate) fn explore<K, F>(k: usize, init: K, budget: usize, mut step: F) -> Result<Canonical>
where
    K: Clone + Eq + std::hash::Hash,
    F: FnMut(&K, usize) -> (K, u16),
{
    let mut index: HashMap<K, u32> = HashMap::new();
    let mut keys = vec![init.clone()];
    index.insert(init, 0);
    let mut trans = Vec::new();
    let mut out = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let key = keys[i].clone();
        for a in 0..k {
            let (next, o) = step(&key, a);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if keys.len() >= budget {
                        return Err(Error::StateBudgetExceeded(budget));
                    }
                    let id = keys.len() as u32;
                    index.insert(next.clone(), id);
                    keys.push(next);
                    id
                }
            };
            trans.push(id);
            out.push(o);
        }
        i += 1;
    }
    Ok(minimize(keys.len(), k, &trans, &out, 0))
}

/// Canonical form of `f ∘ g`: `g` reads the input, `f` reads `g`'s output.
pub fn compose(f: &Canonical, g: &Canonical, budget: usize) -> Result<Canonical> {
    if f.letters != g.letters {
        return Err(Error::MachineMismatch);
    }
    explore(g.letters(), (0u32, 0u32), budget, |&(qg, qf), a| {
        let (qg, qf) = (qg as usize, qf as usize);
        let b = g.output(qg, a);
        let next = (g.next(qg, a) as u32, f.next(qf, b) as u32);
        (next, f.output(qf, b) as u16)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimize_merges_equivalent_states() {
        // Two states with identical behavior collapse to one.
        let trans = [1, 1, 0, 0];
        let out = [0, 1, 0, 1];
        let m = minimize(2, 2, &trans, &out, 0);
        assert_eq!(m.states(), 1);
        assert!(m.is_minimal());
    }

    #[test]
    fn minimize_keeps_distinct_states_and_renumbers_from_init() {
        let trans = [0, 1, 1, 1];
        let out = [0, 0, 1, 1];
        let a = minimize(2, 2, &trans, &out, 0);
        let b = minimize(2, 2, &trans, &out, 1);
        assert_eq!(a.states(), 2);
        assert_eq!(b.states(), 1);
        assert_eq!(a.from_state(1), b);
    }
}

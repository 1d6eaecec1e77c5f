#![allow(dead_code)]

pub mod structure;

use cayley::catalog;
use cayley::classify::all_semigroups_of_order;
use cayley::tower::TowerContext;
use cayley::{ElementId, ElementSet, FiniteSemigroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn e(i: usize) -> ElementId {
    ElementId::new(i)
}

pub fn set(ids: &[usize]) -> ElementSet {
    ids.iter().map(|&i| e(i)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, letters: &[ElementId], max_len: usize) -> Vec<ElementId> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

pub fn random_generators(rng: &mut ChaCha8Rng, s: &FiniteSemigroup, max_len: usize) -> Vec<ElementId> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| e(rng.gen_range(0..s.order()))).collect()
}

/// The chain `1 > e > 0`.
pub fn chain3() -> FiniteSemigroup {
    FiniteSemigroup::new(
        "C3",
        vec!["1".into(), "e".into(), "0".into()],
        &[vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
    )
    .unwrap()
}

/// `S4¹ = {x, 0, 1}`.
pub fn s4_one() -> FiniteSemigroup {
    catalog::s4().adjoin_identity()
}

/// The tower contexts used by the acceptance checks.
pub fn tower_contexts() -> Vec<(&'static str, TowerContext)> {
    vec![
        ("S3, T={0}, J={1}", TowerContext::new(&catalog::s3(), &set(&[0]), &set(&[1])).unwrap()),
        ("S4^1, T={0}, J={x}", TowerContext::new(&s4_one(), &set(&[1]), &set(&[0])).unwrap()),
        ("C3, T={0}, J={e}", TowerContext::new(&chain3(), &set(&[2]), &set(&[1])).unwrap()),
        ("C3, T={e,0}, J={1}", TowerContext::new(&chain3(), &set(&[1, 2]), &set(&[0])).unwrap()),
    ]
}

pub fn semigroups_up_to(order: usize) -> Vec<FiniteSemigroup> {
    (1..=order).flat_map(|n| all_semigroups_of_order(n).unwrap()).collect()
}

/// `S¹` multiplication on ids, the adjoined identity taking id `|S|`.
pub fn mul_one(s: &FiniteSemigroup, x: usize, y: usize) -> usize {
    let n = s.order();
    if s.is_monoid() {
        s.mul(e(x), e(y)).index()
    } else if x == n {
        y
    } else if y == n {
        x
    } else {
        s.mul(e(x), e(y)).index()
    }
}

/// `φ_{s_n} ∘ ⋯ ∘ φ_{s_1}` by prefix products, one generator at a time.
pub fn naive_apply(s: &FiniteSemigroup, word: &[ElementId], input: &[ElementId]) -> Vec<ElementId> {
    let mut current: Vec<usize> = input.iter().map(|x| x.index()).collect();
    for g in word.iter().rev() {
        let mut acc = g.index();
        current = current
            .iter()
            .map(|&a| {
                acc = mul_one(s, acc, a);
                acc
            })
            .collect();
    }
    current.into_iter().map(e).collect()
}

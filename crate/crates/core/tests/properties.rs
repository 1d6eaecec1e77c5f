mod common;

use cayley::catalog;
use cayley::classify::all_semigroups_of_order;
use cayley::expansions::{self, mem_mul, reducible_positions, rhodes_mul, rhodes_reduce, MemElement};
use cayley::format;
use cayley::green::{self, extended_matrix};
use cayley::tower::new_a;
use cayley::{CayleyMachine, ElementId, FiniteSemigroup, Mode};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn pool() -> Vec<FiniteSemigroup> {
    catalog::catalog()
        .into_iter()
        .map(|c| c.semigroup)
        .chain(all_semigroups_of_order(3).unwrap())
        .collect()
}

fn to_ids(raw: &[usize], modulus: usize) -> Vec<ElementId> {
    raw.iter().map(|&x| e(x % modulus)).collect()
}

fn instance(k: usize, f: &[usize], v: &[usize]) -> (FiniteSemigroup, CayleyMachine, Vec<ElementId>, Vec<ElementId>) {
    let pool = pool();
    let s = pool[k % pool.len()].clone();
    let m = CayleyMachine::full(&s);
    let alphabet = m.alphabet();
    let word = to_ids(f, s.order());
    let input = v.iter().map(|&x| alphabet[x % alphabet.len()]).collect();
    (s, m, word, input)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn outputs_preserve_length_and_prefixes(
        k in 0usize..64,
        f in prop::collection::vec(0usize..8, 1..6),
        v in prop::collection::vec(0usize..8, 0..8),
        w in prop::collection::vec(0usize..8, 0..8),
    ) {
        let (_, m, word, v) = instance(k, &f, &v);
        let (_, _, _, w) = instance(k, &f, &w);
        let fv = m.apply(&word, &v).unwrap();
        let fvw = m.apply(&word, &[v.as_slice(), &w].concat()).unwrap();
        prop_assert_eq!(fvw.len(), v.len() + w.len());
        prop_assert_eq!(&fvw[..v.len()], fv.as_slice());
    }

    #[test]
    fn fractalness(
        k in 0usize..64,
        f in prop::collection::vec(0usize..8, 1..6),
        v in prop::collection::vec(0usize..8, 0..6),
        w in prop::collection::vec(0usize..8, 0..6),
    ) {
        let (_, m, word, v) = instance(k, &f, &v);
        let (_, _, _, w) = instance(k, &f, &w);
        let restricted = m.restrict(&word, &v).unwrap();
        let expected = [m.apply(&word, &v).unwrap(), m.apply(&restricted, &w).unwrap()].concat();
        prop_assert_eq!(m.apply(&word, &[v.as_slice(), &w].concat()).unwrap(), expected);
    }

    #[test]
    fn composition_of_canonicals(
        k in 0usize..64,
        f in prop::collection::vec(0usize..8, 1..5),
        g in prop::collection::vec(0usize..8, 1..5),
        v in prop::collection::vec(0usize..8, 0..8),
    ) {
        let (s, m, fw, v) = instance(k, &f, &v);
        let gw = to_ids(&g, s.order());
        let fg = [fw.as_slice(), &gw].concat();
        let composed = m.compose(&m.canonicalize(&fw).unwrap(), &m.canonicalize(&gw).unwrap()).unwrap();
        prop_assert_eq!(&composed, &m.canonicalize(&fg).unwrap());
        prop_assert!(composed.is_minimal());
        prop_assert_eq!(m.apply(&fg, &v).unwrap(), m.apply(&fw, &m.apply(&gw, &v).unwrap()).unwrap());
    }

    #[test]
    fn equal_canonicals_act_equally(
        k in 0usize..64,
        f in prop::collection::vec(0usize..8, 1..5),
        g in prop::collection::vec(0usize..8, 1..5),
        v in prop::collection::vec(0usize..8, 0..10),
    ) {
        let (s, m, fw, v) = instance(k, &f, &v);
        let gw = to_ids(&g, s.order());
        if m.equal(&fw, &gw).unwrap() {
            prop_assert_eq!(m.apply(&fw, &v).unwrap(), m.apply(&gw, &v).unwrap());
        }
    }

    #[test]
    fn mem_is_associative(k in 0usize..64, a in 0usize..8, b in 0usize..8, c in 0usize..8, masks in (0u8..8, 0u8..8, 0u8..8)) {
        let pool = pool();
        let s = &pool[k % pool.len()];
        let n = s.order();
        let element = |x: usize, mask: u8| {
            MemElement::new(e(x % n), (0..n.min(8)).filter(|i| mask >> i & 1 == 1).map(e))
        };
        let (x, y, z) = (element(a, masks.0), element(b, masks.1), element(c, masks.2));
        prop_assert_eq!(mem_mul(s, &mem_mul(s, &x, &y), &z), mem_mul(s, &x, &mem_mul(s, &y, &z)));
    }

    #[test]
    fn rhodes_words_stay_reduced(k in 0usize..64, u in prop::collection::vec(0usize..8, 1..5), v in prop::collection::vec(0usize..8, 1..5), w in prop::collection::vec(0usize..8, 1..5)) {
        let pool = pool();
        let s = &pool[k % pool.len()];
        let chain = |raw: &[usize]| {
            let letters = to_ids(raw, s.order());
            rhodes_reduce(s, &expansions::chain_of(s, &letters)).unwrap()
        };
        let (u, v, w) = (chain(&u), chain(&v), chain(&w));
        let left = rhodes_mul(s, &rhodes_mul(s, &u, &v).unwrap(), &w).unwrap();
        let right = rhodes_mul(s, &u, &rhodes_mul(s, &v, &w).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(reducible_positions(&green::green(s), &left.chain).is_empty());
    }
}

#[test]
fn ideal_and_trace_outputs_stay_in_range() {
    let mut rng = rng(3);
    for s in all_semigroups_of_order(3).unwrap().iter().filter(|s| s.is_aperiodic()) {
        let g = green::green(s);
        for class in 0..g.j_classes.len() {
            let ideal = g.ideal_below(class);
            let m = CayleyMachine::new(s, Mode::Ideal(ideal.clone())).unwrap();
            let j = g.j_classes[class].iter().copied().collect();
            let t = CayleyMachine::new(s, Mode::Trace(j)).unwrap();
            let theta = t.extra_value().unwrap();
            for _ in 0..50 {
                let word = random_generators(&mut rng, s, 4);
                let out = m.apply(&word, &random_word(&mut rng, &m.alphabet(), 6)).unwrap();
                assert!(out.iter().all(|&x| ideal.contains(x)));
                let out = t.apply(&word, &random_word(&mut rng, &t.alphabet(), 6)).unwrap();
                if let Some(p) = out.iter().position(|&x| x == theta) {
                    assert!(out[p..].iter().all(|&x| x == theta));
                }
            }
        }
    }
}

#[test]
fn j_prefix_never_grows() {
    let mut rng = rng(17);
    for (name, ctx) in tower_contexts() {
        let m = ctx.full_machine();
        for _ in 0..500 {
            let f = random_generators(&mut rng, ctx.semigroup(), 5);
            let w = random_word(&mut rng, &m.alphabet(), 7);
            let image = m.apply(&f, &w).unwrap();
            assert!(ctx.j_prefix_len(&image).unwrap() <= ctx.j_prefix_len(&w).unwrap(), "{name}");
        }
    }
}

#[test]
fn trace_projection_is_a_morphism() {
    let mut rng = rng(19);
    for (name, ctx) in tower_contexts() {
        for _ in 0..300 {
            let f = random_generators(&mut rng, ctx.semigroup(), 4);
            let g = random_generators(&mut rng, ctx.semigroup(), 4);
            let fg = [f.as_slice(), &g].concat();
            let composed = ctx
                .trace_machine()
                .compose(&ctx.trace_project(&f).unwrap(), &ctx.trace_project(&g).unwrap())
                .unwrap();
            assert_eq!(ctx.trace_project(&fg).unwrap(), composed, "{name}");
        }
    }
}

#[test]
fn stable_equivalence_is_a_congruence() {
    for (name, ctx) in tower_contexts() {
        let words = expansions::all_words(ctx.semigroup().order(), 2);
        let related: Vec<(usize, usize)> = (0..words.len())
            .flat_map(|i| (0..words.len()).map(move |k| (i, k)))
            .filter(|&(i, k)| ctx.st_equal(&words[i], &words[k]).unwrap())
            .collect();
        for &(f, f2) in &related {
            for &(g, g2) in related.iter().step_by(3) {
                let fg = [words[f].as_slice(), &words[g]].concat();
                let fg2 = [words[f2].as_slice(), &words[g2]].concat();
                assert!(ctx.st_equal(&fg, &fg2).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn new_a_is_bounded_by_rows() {
    let s = catalog::s1().adjoin_zero();
    let j = set(&[0, 1]);
    let action = extended_matrix(&s, &j).unwrap();
    let rows = green::rees_coordinates(&s, &j).unwrap().a_index.len();
    let mut rng = rng(23);
    let mut checked = 0;
    while checked < 1000 {
        let word = random_generators(&mut rng, &s, 8);
        let a = rng.gen_range(0..rows);
        match new_a(&action, &word, a) {
            Ok(fresh) => {
                assert!(!fresh.is_empty() && fresh[0] == 1);
                assert!(fresh.len() <= rows);
                checked += 1;
            }
            Err(cayley::Error::ActionKilled { .. }) => {}
            Err(other) => panic!("{other}"),
        }
    }
}

#[test]
fn new_a_of_a_fixing_word_is_the_first_position() {
    let s = catalog::s1().adjoin_zero();
    let action = extended_matrix(&s, &set(&[0, 1])).unwrap();
    let a = e(0);
    assert_eq!(s.mul(a, a), a);
    assert_eq!(new_a(&action, &[a, a, a, a], 0).unwrap(), vec![1]);
}

#[test]
fn file_format_round_trips() {
    for s in semigroups_up_to(3) {
        assert_eq!(format::parse(&format::emit(&s)).unwrap(), s);
    }
}

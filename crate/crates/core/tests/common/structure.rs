//! Structural checks shared by the structure tests and the acceptance run.
//! Each returns the number of cases examined, or a description of the first
//! failure.

use cayley::enumeration::{enumerate, EnumOptions, EnumResult};
use cayley::expansions::all_words;
use cayley::green::{self, rees_coordinates, zero_minimal_ideals, ReesData, ReesKind};
use cayley::{catalog, CayleyMachine, Canonical, ElementId, ElementSet, FiniteSemigroup, Mode};

use super::semigroups_up_to;

type Check = Result<usize, String>;

fn full(s: &FiniteSemigroup) -> EnumResult {
    enumerate(s, Mode::Full, &EnumOptions::default()).unwrap()
}

/// `s ↦ φ_s` is an isomorphism `S → Cayley(S)` for idempotent `S`.
pub fn idempotent_isomorphism() -> Check {
    let mut cases = 0;
    for s in semigroups_up_to(3).iter().filter(|s| s.is_idempotent_semigroup()) {
        let c = full(s);
        if !c.is_complete() || c.len() != s.order() {
            return Err(format!("{:?}: |Cayley| = {}", s.rows(), c.len()));
        }
        for x in s.elements() {
            for y in s.elements() {
                let (gx, gy) = (c.generator_map[x.index()], c.generator_map[y.index()]);
                if c.mul(gx, gy) != c.generator_map[s.mul(x, y).index()] {
                    return Err(format!("{:?}: φ_{x}φ_{y} != φ_{x}{y}", s.rows()));
                }
            }
        }
        cases += 1;
    }
    Ok(cases)
}

/// `Cayley(S)` of a nilpotent `S` is nilpotent of no larger index, and its
/// size obeys the bound for nilpotent semigroups generated by `|S|` elements.
pub fn nilpotent_bounds() -> Check {
    let mut pool = semigroups_up_to(3);
    pool.push(catalog::m5());
    let mut cases = 0;
    for s in pool.iter().filter(|s| s.nilpotency_index().is_some()) {
        let n = s.nilpotency_index().unwrap();
        let c = full(s).to_semigroup().unwrap();
        let Some(m) = c.nilpotency_index() else {
            return Err(format!("{:?}: Cayley(S) is not nilpotent", s.rows()));
        };
        if m > n {
            return Err(format!("{:?}: index {m} > {n}", s.rows()));
        }
        let x = s.order();
        let bound = if x == 1 { m } else { (x.pow(m as u32) - 1) / (x - 1) + 1 };
        if c.order() > bound {
            return Err(format!("{:?}: |Cayley| = {} > {bound}", s.rows(), c.order()));
        }
        cases += 1;
    }
    Ok(cases)
}

fn acts_trivially(c: &Canonical) -> bool {
    c.states() == 1 && (0..c.letters()).all(|a| c.output(0, a) == a)
}

/// Both characterizations of `φ_1` over aperiodic monoids.
pub fn monoid_identity_theorems() -> Check {
    let mut cases = 0;
    for s in semigroups_up_to(3).iter().filter(|s| s.is_monoid() && s.is_aperiodic()) {
        let one = s.identity().unwrap();
        let c = full(s);
        let g1 = c.generator_map[one.index()];
        let trivial_one = acts_trivially(c.canonical(g1).unwrap());
        let cayley = c.to_semigroup().unwrap();
        let trivial_identity = cayley
            .identity()
            .is_some_and(|i| acts_trivially(c.canonical(i.index()).unwrap()));
        let singleton = s.order() == 1;
        if trivial_one != singleton || trivial_identity != singleton {
            return Err(format!("{:?}: identity conditions disagree", s.rows()));
        }
        let idempotent = c.mul(g1, g1) == g1;
        let regular = (0..c.len()).any(|f| c.mul(c.mul(g1, f), g1) == g1);
        let band = s.is_idempotent_semigroup();
        if idempotent != band || regular != band {
            return Err(format!("{:?}: φ_1 idempotent {idempotent}, regular {regular}, band {band}", s.rows()));
        }
        cases += 1;
    }
    Ok(cases)
}

/// In the trace of every J-class, a product is θ exactly when some adjacent
/// pair multiplies to θ.
pub fn zero_product_law() -> Check {
    let mut cases = 0;
    for s in semigroups_up_to(3).iter().filter(|s| s.is_aperiodic()) {
        let g = green::green(s);
        for class in &g.j_classes {
            let j: ElementSet = class.iter().copied().collect();
            let (t, _) = green::trace(s, &j).unwrap();
            let theta = t.zero().unwrap();
            let letters: Vec<ElementId> = t.elements().filter(|&x| x != theta).collect();
            for word in all_words(letters.len(), 4).iter().filter(|w| w.len() >= 2) {
                let w: Vec<ElementId> = word.iter().map(|i| letters[i.index()]).collect();
                let zero = t.product(&w).unwrap() == theta;
                let adjacent = w.windows(2).any(|p| t.mul(p[0], p[1]) == theta);
                if zero != adjacent {
                    return Err(format!("{:?}, J {:?}: {w:?}", s.rows(), class));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// Regular 0-minimal ideals of normalized aperiodic semigroups of order at
/// most 3, with their Rees coordinates.
pub fn regular_minimal_ideals() -> Vec<(FiniteSemigroup, ElementSet, ReesData)> {
    let mut out = Vec::new();
    for s in semigroups_up_to(3).iter().filter(|s| s.is_aperiodic()) {
        let normal = s.with_identity_and_zero();
        let zero = normal.zero().unwrap();
        for (j, regular) in zero_minimal_ideals(&normal).unwrap() {
            if !regular {
                continue;
            }
            let members: ElementSet = j.iter().copied().collect();
            let rees = rees_coordinates(&normal, &members).unwrap();
            assert_eq!(rees.kind, ReesKind::Regular);
            let mut ideal = members;
            ideal.insert(zero);
            out.push((normal.clone(), ideal, rees));
        }
    }
    out
}

fn nonzero_words(rees: &ReesData, max_len: usize) -> Vec<Vec<ElementId>> {
    let members: Vec<ElementId> = rees.coordinates.iter().map(|&(x, _)| x).collect();
    all_words(members.len(), max_len)
        .into_iter()
        .map(|w| w.iter().map(|i| members[i.index()]).collect())
        .collect()
}

/// Outputs on a regular 0-minimal ideal are `[(a,b_1),…,(a,b_k),0,…,0]`
/// with `b_i` the columns of the input and `a` given by the left action of
/// the product of the generators.
pub fn almost_simple_shape() -> Check {
    let mut cases = 0;
    for (s, ideal, rees) in regular_minimal_ideals() {
        let zero = s.zero().unwrap();
        let m = CayleyMachine::new(&s, Mode::Ideal(ideal.clone())).unwrap();
        let members = ideal.to_vec();
        let inputs: Vec<Vec<ElementId>> = all_words(members.len(), 3)
            .into_iter()
            .map(|w| w.iter().map(|i| members[i.index()]).collect())
            .collect();
        for f in all_words(s.order(), 3) {
            let p = s.product(&f).unwrap();
            for w in &inputs {
                let out = m.apply(&f, w).unwrap();
                let k = out.iter().take_while(|&&x| x != zero).count();
                let fail = || format!("{:?}: f {f:?} w {w:?} -> {out:?}", s.rows());
                if out[k..].iter().any(|&x| x != zero) || w[..k].contains(&zero) {
                    return Err(fail());
                }
                if k > 0 {
                    let row = rees.coordinate(s.mul(p, w[0])).map(|c| c.0);
                    for i in 0..k {
                        let (a, b) = rees.coordinate(out[i]).ok_or_else(fail)?;
                        if Some(a) != row || b != rees.coordinate(w[i]).unwrap().1 {
                            return Err(fail());
                        }
                    }
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// A generator creates a zero right after a non-zero output exactly when
/// `C(b_i, a_{i+1}) = 0`; a word is sent to all zeros exactly when the
/// product of its generators kills the first letter.
pub fn end_cases() -> Check {
    let mut cases = 0;
    for (s, ideal, rees) in regular_minimal_ideals() {
        let zero = s.zero().unwrap();
        let m = CayleyMachine::new(&s, Mode::Ideal(ideal)).unwrap();
        let inputs = nonzero_words(&rees, 4);
        for g in s.elements() {
            for w in &inputs {
                let out = m.apply(&[g], w).unwrap();
                for i in 0..w.len().saturating_sub(1) {
                    if out[i] == zero {
                        break;
                    }
                    let (_, b) = rees.coordinate(w[i]).unwrap();
                    let (a, _) = rees.coordinate(w[i + 1]).unwrap();
                    if (out[i + 1] == zero) != (rees.c_matrix[b][a] == 0) {
                        return Err(format!("{:?}: φ_{g} on {w:?} at {i}", s.rows()));
                    }
                    cases += 1;
                }
            }
        }
        for f in all_words(s.order(), 3) {
            let p = s.product(&f).unwrap();
            for w in inputs.iter().filter(|w| w.len() <= 3) {
                let all_zero = m.apply(&f, w).unwrap().iter().all(|&x| x == zero);
                if all_zero != (s.mul(p, w[0]) == zero) {
                    return Err(format!("{:?}: {f:?} on {w:?}", s.rows()));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

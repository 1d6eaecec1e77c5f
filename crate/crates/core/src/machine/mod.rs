//! The Cayley machine of a finite semigroup and the transducers built from it.
//!
//! A generator word is stored most-recently-applied first: `[s_n, …, s_1]`
//! denotes `φ_{s_n} ∘ ⋯ ∘ φ_{s_1}`. Input words are sequences of domain
//! values. Domain values extend the element ids of the base semigroup by at
//! most one extra id equal to its order: the adjoined identity letter in
//! [`Mode::Full`] when the base is not a monoid, or the trace zero θ in
//! [`Mode::Trace`].

mod mealy;
mod portrait;

use std::collections::{HashSet, VecDeque};

pub use mealy::{compose, Canonical};
pub use portrait::{Portrait, PortraitNode};


use crate::error::{Error, Result};
use crate::green;
use crate::semigroup::{ElementId, FiniteSemigroup};
use crate::set::ElementSet;

pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

const NOT_A_LETTER: u16 = u16::MAX;

/// Which words the generators act on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Words over `S¹`.
    Full,
    /// Words over an ideal `T`, with no adjoined identity.
    Ideal(ElementSet),
    /// Words over the trace `J ∪ {θ}` of a J-class.
    Trace(ElementSet),
}

/// The machine of `S` in a given mode.
#[derive(Clone, Debug)]
pub struct CayleyMachine {
    base: FiniteSemigroup,
    mode: Mode,
    values: usize,
    extra: Option<String>,
    op: Vec<u16>,
    letters: Vec<u16>,
    letter_index: Vec<u16>,
    generators: Vec<Canonical>,
    state_budget: usize,
}

impl CayleyMachine {
    pub fn new(base: &FiniteSemigroup, mode: Mode) -> Result<Self> {
        let n = base.order();
        let mul = |x: usize, y: usize| base.mul(ElementId::new(x), ElementId::new(y)).index();
        let (values, extra, letters, op): (usize, Option<String>, Vec<usize>, Vec<usize>) = match &mode {
            Mode::Full => match base.identity() {
                Some(_) => (n, None, (0..n).collect(), table(n, mul)),
                None => {
                    let op = table(n + 1, |x, y| match (x == n, y == n) {
                        (true, _) => y,
                        (_, true) => x,
                        _ => mul(x, y),
                    });
                    (n + 1, Some(identity_name(base)), (0..=n).collect(), op)
                }
            },
            Mode::Ideal(ideal) => {
                base.check_ideal(ideal)?;
                (n, None, ideal.iter().map(ElementId::index).collect(), table(n, mul))
            }
            Mode::Trace(j) => {
                if !green::is_j_class(base, j) {
                    return Err(Error::NotAJClass);
                }
                let op = table(n + 1, |x, y| {
                    if x == n || y == n {
                        return n;
                    }
                    let p = mul(x, y);
                    if j.contains(ElementId::new(p)) {
                        p
                    } else {
                        n
                    }
                });
                let mut letters: Vec<usize> = j.iter().map(ElementId::index).collect();
                letters.push(n);
                (n + 1, Some(theta_name(base)), letters, op)
            }
        };
        let mut letter_index = vec![NOT_A_LETTER; values];
        for (i, &l) in letters.iter().enumerate() {
            letter_index[l] = i as u16;
        }
        let mut machine = CayleyMachine {
            base: base.clone(),
            mode,
            values,
            extra,
            op: op.into_iter().map(|v| v as u16).collect(),
            letters: letters.into_iter().map(|v| v as u16).collect(),
            letter_index,
            generators: Vec::new(),
            state_budget: DEFAULT_STATE_BUDGET,
        };
        machine.generators = base
            .elements()
            .map(|s| machine.canonicalize(&[s]))
            .collect::<Result<_>>()?;
        Ok(machine)
    }

    pub fn full(base: &FiniteSemigroup) -> Self {
        Self::new(base, Mode::Full).expect("full mode has no preconditions")
    }

    pub fn with_state_budget(mut self, budget: usize) -> Self {
        self.state_budget = budget.max(1);
        self
    }

    pub fn state_budget(&self) -> usize {
        self.state_budget
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    /// Number of domain values (base elements plus any extra letter).
    pub fn values(&self) -> usize {
        self.values
    }

    /// The extra domain value, if any: the identity letter or θ.
    pub fn extra_value(&self) -> Option<ElementId> {
        self.extra.as_ref().map(|_| ElementId::new(self.base.order()))
    }

    /// Input letters in ascending id order.
    pub fn alphabet(&self) -> Vec<ElementId> {
        self.letters.iter().map(|&l| ElementId::new(l as usize)).collect()
    }

    pub fn alphabet_len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_letter(&self, v: ElementId) -> bool {
        self.letter_index.get(v.index()).is_some_and(|&i| i != NOT_A_LETTER)
    }

    pub fn value_name(&self, v: ElementId) -> &str {
        if v.index() < self.base.order() {
            self.base.element_name(v)
        } else {
            self.extra.as_deref().expect("value in range")
        }
    }

    /// Resolves a domain value by name; θ is also accepted as `theta`.
    pub fn find_value(&self, name: &str) -> Option<ElementId> {
        if let Some(e) = self.base.find(name) {
            return Some(e);
        }
        let extra = self.extra.as_deref()?;
        let alias = extra == "θ" && name == "theta";
        (extra == name || alias).then(|| ElementId::new(self.base.order()))
    }

    #[inline]
    pub(crate) fn op(&self, x: u16, y: u16) -> u16 {
        self.op[x as usize * self.values + y as usize]
    }

    #[inline]
    pub(crate) fn letter_value(&self, a: usize) -> u16 {
        self.letters[a]
    }

    #[inline]
    pub(crate) fn letter_of(&self, v: u16) -> usize {
        let i = self.letter_index[v as usize];
        debug_assert_ne!(i, NOT_A_LETTER, "output outside the alphabet");
        i as usize
    }

    pub fn letter_indices(&self, word: &[ElementId]) -> Result<Vec<usize>> {
        word.iter()
            .map(|&v| {
                if self.is_letter(v) {
                    Ok(self.letter_index[v.index()] as usize)
                } else {
                    Err(Error::AlphabetMismatch(v))
                }
            })
            .collect()
    }

    pub fn letters_to_values(&self, word: &[usize]) -> Vec<ElementId> {
        word.iter().map(|&a| ElementId::new(self.letters[a] as usize)).collect()
    }

    fn check_generators(&self, word: &[ElementId]) -> Result<()> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        match word.iter().find(|g| g.index() >= self.base.order()) {
            Some(&g) => Err(Error::NotAGenerator(g)),
            None => Ok(()),
        }
    }

    /// Initial cascade state `(s_1, …, s_n)` of `[s_n, …, s_1]`.
    fn initial_state(word: &[ElementId]) -> Vec<u16> {
        word.iter().rev().map(|s| s.index() as u16).collect()
    }

    /// One cascade step on a domain value; returns the emitted value.
    #[inline]
    pub(crate) fn cascade_step(&self, state: &mut [u16], a: u16) -> u16 {
        let mut carry = a;
        for u in state.iter_mut() {
            *u = self.op(*u, carry);
            carry = *u;
        }
        carry
    }

    /// `φ_{s_n} ∘ ⋯ ∘ φ_{s_1}` applied to `input`.
    pub fn apply(&self, word: &[ElementId], input: &[ElementId]) -> Result<Vec<ElementId>> {
        self.check_generators(word)?;
        self.letter_indices(input)?;
        let mut state = Self::initial_state(word);
        Ok(input
            .iter()
            .map(|&a| ElementId::new(self.cascade_step(&mut state, a.index() as u16) as usize))
            .collect())
    }

    /// The Pascal array of generators `[s_1, …, s_n]` (rows, listed in
    /// application order) against `[a_1, …, a_k]` (columns). Entry `[0][0]` is
    /// empty; row 0 holds the input and column 0 the generators.
    pub fn pascal_array(&self, rows: &[ElementId], input: &[ElementId]) -> Result<Vec<Vec<Option<ElementId>>>> {
        if input.is_empty() {
            return Err(Error::EmptyWord);
        }
        self.check_generators(rows)?;
        self.letter_indices(input)?;
        let (n, k) = (rows.len(), input.len());
        let mut t = vec![vec![0u16; k + 1]; n + 1];
        for (c, a) in input.iter().enumerate() {
            t[0][c + 1] = a.index() as u16;
        }
        for r in 1..=n {
            t[r][0] = rows[r - 1].index() as u16;
            for c in 1..=k {
                t[r][c] = self.op(t[r][c - 1], t[r - 1][c]);
            }
        }
        Ok(t.into_iter()
            .enumerate()
            .map(|(r, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(c, v)| (r + c > 0).then(|| ElementId::new(v as usize)))
                    .collect()
            })
            .collect())
    }

    /// The generator word for `f_v`, the restriction of `f` below `v`.
    pub fn restrict(&self, word: &[ElementId], v: &[ElementId]) -> Result<Vec<ElementId>> {
        self.check_generators(word)?;
        self.letter_indices(v)?;
        let mut state = Self::initial_state(word);
        for a in v {
            self.cascade_step(&mut state, a.index() as u16);
        }
        let restricted: Vec<ElementId> = state.iter().rev().map(|&u| ElementId::new(u as usize)).collect();
        self.check_generators(&restricted)?;
        Ok(restricted)
    }

    /// The reachable cascade of a generator word as an explicit machine, in
    /// discovery order with state 0 initial. Not minimized.
    pub fn cascade(&self, word: &[ElementId]) -> Result<Cascade> {
        self.check_generators(word)?;
        let k = self.alphabet_len();
        let init = Self::initial_state(word);
        let mut index = std::collections::HashMap::new();
        index.insert(init.clone(), 0u32);
        let mut states = vec![init];
        let mut trans = Vec::new();
        let mut out = Vec::new();
        let mut i = 0;
        while i < states.len() {
            for a in 0..k {
                let mut next = states[i].clone();
                let o = self.cascade_step(&mut next, self.letters[a]);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= self.state_budget {
                            return Err(Error::StateBudgetExceeded(self.state_budget));
                        }
                        let id = states.len() as u32;
                        index.insert(next.clone(), id);
                        states.push(next);
                        id
                    }
                };
                trans.push(id);
                out.push(self.letter_of(o) as u16);
            }
            i += 1;
        }
        Ok(Cascade {
            letters: k,
            states,
            trans,
            out,
        })
    }

    /// Canonical form of a generator word.
    pub fn canonicalize(&self, word: &[ElementId]) -> Result<Canonical> {
        self.check_generators(word)?;
        if word.len() == 1 && !self.generators.is_empty() {
            return Ok(self.generators[word[0].index()].clone());
        }
        mealy::explore(self.alphabet_len(), Self::initial_state(word), self.state_budget, |state, a| {
            let mut next = state.clone();
            let o = self.cascade_step(&mut next, self.letters[a]);
            (next, self.letter_of(o) as u16)
        })
    }

    /// Canonical form of `φ_s`.
    pub fn generator(&self, s: ElementId) -> Result<&Canonical> {
        self.generators.get(s.index()).ok_or(Error::NotAGenerator(s))
    }

    /// Canonical form of `f ∘ g`.
    pub fn compose(&self, f: &Canonical, g: &Canonical) -> Result<Canonical> {
        self.check_machine(f)?;
        self.check_machine(g)?;
        mealy::compose(f, g, self.state_budget)
    }

    fn check_machine(&self, f: &Canonical) -> Result<()> {
        if f.letters() == self.alphabet_len() {
            Ok(())
        } else {
            Err(Error::MachineMismatch)
        }
    }

    /// Decides `f = g` as functions on all words by canonical identity.
    pub fn equal(&self, f: &[ElementId], g: &[ElementId]) -> Result<bool> {
        Ok(self.canonicalize(f)? == self.canonicalize(g)?)
    }

    /// Decides `f = g` by exploring pairs of cascade states, independently of
    /// minimization.
    pub fn bisimilar(&self, f: &[ElementId], g: &[ElementId]) -> Result<bool> {
        self.check_generators(f)?;
        self.check_generators(g)?;
        let start = (Self::initial_state(f), Self::initial_state(g));
        let mut seen = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            for &a in &self.letters {
                let (mut p2, mut q2) = (p.clone(), q.clone());
                if self.cascade_step(&mut p2, a) != self.cascade_step(&mut q2, a) {
                    return Ok(false);
                }
                let pair = (p2, q2);
                if !seen.contains(&pair) {
                    if seen.len() >= self.state_budget {
                        return Err(Error::StateBudgetExceeded(self.state_budget));
                    }
                    seen.insert(pair.clone());
                    queue.push_back(pair);
                }
            }
        }
        Ok(true)
    }

    /// Evaluates a canonical machine on a word of domain values.
    pub fn eval(&self, f: &Canonical, input: &[ElementId]) -> Result<Vec<ElementId>> {
        self.check_machine(f)?;
        let letters = self.letter_indices(input)?;
        Ok(f.run(&letters)
            .into_iter()
            .map(|o| ElementId::new(self.letters[o] as usize))
            .collect())
    }

    /// The portrait of `f` down to depth `depth`: one letter map per node
    /// address of length below `depth`, in shortlex order of addresses.
    pub fn portrait(&self, f: &Canonical, depth: usize) -> Result<Portrait> {
        self.check_machine(f)?;
        Ok(portrait::build(self, f, depth))
    }

    /// The Cayley automaton itself: states `S`, edges `q --a/qa--> qa`.
    pub fn cayley_dot(&self) -> String {
        let mut dot = String::from("digraph cayley {\n  rankdir=LR;\n");
        for q in self.base.elements() {
            dot.push_str(&format!("  q{} [label=\"{}\"];\n", q.index(), escape(self.base.element_name(q))));
        }
        for q in self.base.elements() {
            for &a in &self.letters {
                let r = self.op(q.index() as u16, a);
                dot.push_str(&format!(
                    "  q{} -> q{} [label=\"{}/{}\"];\n",
                    q.index(),
                    r,
                    escape(self.value_name(ElementId::new(a as usize))),
                    escape(self.value_name(ElementId::new(r as usize)))
                ));
            }
        }
        dot.push_str("}\n");
        dot
    }

    /// DOT text for a canonical machine; edges are labelled `a/output`.
    pub fn machine_dot(&self, f: &Canonical) -> String {
        let mut dot = String::from("digraph machine {\n  rankdir=LR;\n  start [shape=point];\n  start -> m0;\n");
        for q in 0..f.states() {
            dot.push_str(&format!("  m{q} [label=\"{q}\"];\n"));
        }
        for q in 0..f.states() {
            for a in 0..f.letters() {
                dot.push_str(&format!(
                    "  m{} -> m{} [label=\"{}/{}\"];\n",
                    q,
                    f.next(q, a),
                    escape(self.value_name(ElementId::new(self.letters[a] as usize))),
                    escape(self.value_name(ElementId::new(self.letters[f.output(q, a)] as usize)))
                ));
            }
        }
        dot.push_str("}\n");
        dot
    }
}

/// An explicit reachable cascade; states are the tuples `(u_1, …, u_n)`.
#[derive(Clone, Debug)]
pub struct Cascade {
    letters: usize,
    states: Vec<Vec<u16>>,
    trans: Vec<u32>,
    out: Vec<u16>,
}

impl Cascade {
    pub fn states(&self) -> usize {
        self.states.len()
    }

    pub fn tuple(&self, q: usize) -> Vec<ElementId> {
        self.states[q].iter().map(|&u| ElementId::new(u as usize)).collect()
    }

    pub fn next(&self, q: usize, a: usize) -> usize {
        self.trans[q * self.letters + a] as usize
    }

    pub fn output(&self, q: usize, a: usize) -> usize {
        self.out[q * self.letters + a] as usize
    }

    pub fn minimize(&self) -> Canonical {
        mealy::minimize(self.states.len(), self.letters, &self.trans, &self.out, 0)
    }
}

fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    (0..n * n).map(|i| f(i / n, i % n)).collect()
}

fn identity_name(base: &FiniteSemigroup) -> String {
    ["1", "1'", "e", "id"]
        .into_iter()
        .find(|c| base.find(c).is_none())
        .unwrap_or("identity")
        .to_string()
}

fn theta_name(base: &FiniteSemigroup) -> String {
    if base.find("θ").is_none() {
        "θ".into()
    } else {
        "theta'".into()
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn apply_left_zero_is_constant() {
        let s1 = catalog::s1();
        let m = CayleyMachine::full(&s1);
        let (a, b) = (e(0), e(1));
        assert_eq!(m.apply(&[a], &[b, a, b]).unwrap(), vec![a, a, a]);
        assert_eq!(m.apply(&[a, b], &[]).unwrap(), vec![]);
    }

    #[test]
    fn apply_semilattice_finds_first_zero() {
        let s3 = catalog::s3();
        let m = CayleyMachine::full(&s3);
        assert_eq!(m.apply(&[e(1)], &[e(1), e(0), e(1)]).unwrap(), vec![e(1), e(0), e(0)]);
    }

    #[test]
    fn identity_letter_in_full_mode() {
        let s4 = catalog::s4();
        let m = CayleyMachine::full(&s4);
        let one = m.extra_value().unwrap();
        assert_eq!(m.value_name(one), "1");
        assert_eq!(m.alphabet_len(), 3);
        assert_eq!(m.apply(&[e(0)], &[one, one]).unwrap(), vec![e(0), e(0)]);
        assert_eq!(m.apply(&[e(0)], &[e(0), one]).unwrap(), vec![e(1), e(1)]);
        assert_eq!(m.apply(&[one], &[one]), Err(Error::NotAGenerator(one)));
    }

    #[test]
    fn alphabet_mismatch_in_ideal_mode() {
        let s3 = catalog::s3();
        let m = CayleyMachine::new(&s3, Mode::Ideal([e(0)].into_iter().collect())).unwrap();
        assert_eq!(m.apply(&[e(1)], &[e(1)]), Err(Error::AlphabetMismatch(e(1))));
        assert_eq!(m.apply(&[e(1)], &[e(0)]).unwrap(), vec![e(0)]);
    }

    #[test]
    fn pascal_bottom_row_matches_apply() {
        let m5 = catalog::m5();
        let m = CayleyMachine::full(&m5);
        let one = m.extra_value().unwrap();
        let t = m.pascal_array(&[e(0), e(1)], &[one, one]).unwrap();
        assert_eq!(t[2][1..], [Some(e(2)), Some(e(3))]);
        assert_eq!(t[0][0], None);
    }

    #[test]
    fn restrict_examples() {
        let s3 = catalog::s3();
        let m = CayleyMachine::full(&s3);
        assert_eq!(m.restrict(&[e(1)], &[]).unwrap(), vec![e(1)]);
        assert_eq!(m.restrict(&[e(1)], &[e(0)]).unwrap(), vec![e(0)]);
    }

    #[test]
    fn canonical_and_bisimulation_agree_on_m5() {
        let m5 = catalog::m5();
        let m = CayleyMachine::full(&m5);
        let (x, x2) = (e(0), e(1));
        assert!(!m.equal(&[x, x2], &[x2, x]).unwrap());
        assert!(!m.bisimilar(&[x, x2], &[x2, x]).unwrap());
        assert!(m.equal(&[x, x], &[x, x]).unwrap());
        let c = m.canonicalize(&[x, x2]).unwrap();
        assert!(c.is_minimal());
        assert_eq!(m.cascade(&[x, x2]).unwrap().minimize(), c);
    }

    #[test]
    fn trace_mode_sends_outside_products_to_theta() {
        let m5 = catalog::m5();
        let m = CayleyMachine::new(&m5, Mode::Trace([e(0)].into_iter().collect())).unwrap();
        let theta = m.extra_value().unwrap();
        assert_eq!(m.alphabet(), vec![e(0), theta]);
        assert_eq!(m.apply(&[e(0)], &[e(0)]).unwrap(), vec![theta]);
    }
}

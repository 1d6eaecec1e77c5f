//! Finite semigroups given by multiplication tables.
//!
//! Elements are dense ids `0..order`; names are display metadata only. Every
//! constructor in this module returns a table whose associativity has been
//! established, either by a full check or by construction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Largest order a table may have.
pub const MAX_ORDER: usize = u16::MAX as usize;

/// Index of an element in a multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(u16);

impl ElementId {
    pub const fn new(index: usize) -> Self {
        assert!(index <= MAX_ORDER);
        ElementId(index as u16)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite semigroup as a multiplication table, `table[i][j] = i·j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    name: String,
    names: Vec<String>,
    table: Vec<ElementId>,
    identity: Option<ElementId>,
    zero: Option<ElementId>,
}

/// Returns the first triple `(i, j, k)` in lexicographic order violating
/// associativity, if any.
pub fn associativity_violation(order: usize, mul: impl Fn(usize, usize) -> usize) -> Option<(usize, usize, usize)> {
    for i in 0..order {
        for j in 0..order {
            let ij = mul(i, j);
            for k in 0..order {
                if mul(ij, k) != mul(i, mul(j, k)) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Least `n ≥ 1` with `x^n = x^(n+1)` for every element, or `None` when some
/// element generates a non-trivial cyclic group.
pub fn aperiodicity_index_of(order: usize, mul: impl Fn(usize, usize) -> usize) -> Option<usize> {
    let mut worst = 1;
    for x in 0..order {
        let mut power = x;
        let mut found = None;
        // The index of a single element never exceeds the order.
        for n in 1..=order {
            let next = mul(power, x);
            if next == power {
                found = Some(n);
                break;
            }
            power = next;
        }
        worst = worst.max(found?);
    }
    Some(worst)
}

fn check_rows(rows: &[Vec<usize>]) -> Result<usize> {
    let order = rows.len();
    if order == 0 {
        return Err(Error::NotSquare { rows: 0, cols: 0 });
    }
    if order > MAX_ORDER {
        return Err(Error::TooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != order {
            return Err(Error::NotSquare {
                rows: order,
                cols: r.len(),
            });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= order {
                return Err(Error::OutOfRangeEntry {
                    row,
                    col,
                    value,
                    order,
                });
            }
        }
    }
    Ok(order)
}

/// Checks a candidate table and returns the semigroup with identity and zero
/// detected. Elements are named by their ids.
pub fn validate(rows: &[Vec<usize>]) -> Result<FiniteSemigroup> {
    let order = check_rows(rows)?;
    let names = (0..order).map(|i| i.to_string()).collect();
    FiniteSemigroup::new("S", names, rows)
}

/// The first associativity violation of a square in-range table, for
/// reporting on tables that were accepted as plain magmas.
pub fn magma_violation(rows: &[Vec<usize>]) -> Result<Option<(usize, usize, usize)>> {
    check_rows(rows)?;
    Ok(associativity_violation(rows.len(), |i, j| rows[i][j]))
}

impl FiniteSemigroup {
    pub fn new(name: impl Into<String>, names: Vec<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let order = check_rows(rows)?;
        if let Some((i, j, k)) = associativity_violation(order, |a, b| rows[a][b]) {
            return Err(Error::NotAssociative { i, j, k });
        }
        let table = rows.iter().flatten().map(|&v| ElementId::new(v)).collect();
        Self::from_parts(name.into(), names, table)
    }

    /// Builds from a flat table already known to be associative.
    pub(crate) fn from_parts(name: String, names: Vec<String>, table: Vec<ElementId>) -> Result<Self> {
        let order = names.len();
        debug_assert_eq!(table.len(), order * order);
        let mut seen = std::collections::HashSet::new();
        if !names.iter().all(|n| !n.is_empty() && seen.insert(n.as_str())) {
            return Err(Error::BadNames);
        }
        let mut s = FiniteSemigroup {
            name,
            names,
            table,
            identity: None,
            zero: None,
        };
        s.identity = s.elements().find(|&e| s.elements().all(|x| s.mul(e, x) == x && s.mul(x, e) == x));
        s.zero = s.elements().find(|&z| s.elements().all(|x| s.mul(z, x) == z && s.mul(x, z) == z));
        Ok(s)
    }

    /// Builds from a multiplication closure on `0..order`, checking
    /// associativity in debug builds only.
    pub(crate) fn from_fn(name: String, names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let order = names.len();
        if order > MAX_ORDER {
            return Err(Error::TooLarge {
                order,
                limit: MAX_ORDER,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                table.push(ElementId::new(mul(i, j)));
            }
        }
        debug_assert!(associativity_violation(order, |a, b| table[a * order + b].index()).is_none());
        Self::from_parts(name, names, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.order()).map(ElementId::new)
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a.index() * self.order() + b.index()]
    }

    /// Product of a non-empty sequence, left to right.
    pub fn product(&self, word: &[ElementId]) -> Option<ElementId> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }

    pub fn power(&self, x: ElementId, n: usize) -> ElementId {
        assert!(n >= 1);
        (1..n).fold(x, |acc, _| self.mul(acc, x))
    }

    pub fn identity(&self) -> Option<ElementId> {
        self.identity
    }

    pub fn zero(&self) -> Option<ElementId> {
        self.zero
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, e: ElementId) -> &str {
        &self.names[e.index()]
    }

    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId::new)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order())
            .map(|r| r.iter().map(|e| e.index()).collect())
            .collect()
    }

    pub fn is_idempotent(&self, x: ElementId) -> bool {
        self.mul(x, x) == x
    }

    /// `s² = s` for every element.
    pub fn is_idempotent_semigroup(&self) -> bool {
        self.elements().all(|x| self.is_idempotent(x))
    }

    pub fn aperiodicity_index(&self) -> Option<usize> {
        aperiodicity_index_of(self.order(), |a, b| self.mul(ElementId::new(a), ElementId::new(b)).index())
    }

    pub fn is_aperiodic(&self) -> bool {
        self.aperiodicity_index().is_some()
    }

    /// Least `n` such that every product of `n` elements is the zero, searched
    /// up to `order + 1`. `None` without a zero or when no such `n` exists.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let zero = self.zero?;
        let mut products: ElementSet = self.elements().collect();
        for n in 1..=self.order() + 1 {
            if products.len() == 1 && products.contains(zero) {
                return Some(n);
            }
            products = products
                .iter()
                .flat_map(|p| self.elements().map(move |x| (p, x)))
                .map(|(p, x)| self.mul(p, x))
                .collect();
        }
        None
    }

    /// `S¹`: unchanged when already a monoid, otherwise a new element acting
    /// as two-sided identity is appended with the name `1`.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.is_monoid() {
            return self.clone();
        }
        let n = self.order();
        let mut names = self.names.clone();
        names.push(fresh_name(&self.names, &["1", "1'", "e", "id"]));
        FiniteSemigroup::from_fn(format!("{}^1", self.name), names, |a, b| match (a == n, b == n) {
            (true, _) => b,
            (_, true) => a,
            _ => self.mul(ElementId::new(a), ElementId::new(b)).index(),
        })
        .expect("adjoining an identity preserves validity")
    }

    /// `S⁰`: unchanged when a zero exists, otherwise a new absorbing element
    /// named `0` is appended.
    pub fn adjoin_zero(&self) -> FiniteSemigroup {
        if self.zero.is_some() {
            return self.clone();
        }
        let n = self.order();
        let mut names = self.names.clone();
        names.push(fresh_name(&self.names, &["0", "0'", "θ", "z"]));
        FiniteSemigroup::from_fn(format!("{}^0", self.name), names, |a, b| {
            if a == n || b == n {
                n
            } else {
                self.mul(ElementId::new(a), ElementId::new(b)).index()
            }
        })
        .expect("adjoining a zero preserves validity")
    }

    /// `(S¹)⁰`, the normal form used by the ideal tower machinery.
    pub fn with_identity_and_zero(&self) -> FiniteSemigroup {
        self.adjoin_identity().adjoin_zero()
    }

    /// Componentwise product; element `(s, t)` has id `s·|T| + t`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let m = other.order();
        let names = self
            .elements()
            .flat_map(|s| other.elements().map(move |t| (s, t)))
            .map(|(s, t)| format!("{}:{}", self.element_name(s), other.element_name(t)))
            .collect();
        FiniteSemigroup::from_fn(format!("{}x{}", self.name, other.name), names, |a, b| {
            let s = self.mul(ElementId::new(a / m), ElementId::new(b / m));
            let t = other.mul(ElementId::new(a % m), ElementId::new(b % m));
            s.index() * m + t.index()
        })
        .expect("direct product of semigroups is a semigroup")
    }

    /// Checks `S¹·I·S¹ ⊆ I`; on failure returns the first offending product.
    pub fn check_ideal(&self, ideal: &ElementSet) -> Result<()> {
        if ideal.is_empty() {
            return Err(Error::EmptySet);
        }
        self.check_members(ideal)?;
        for i in ideal.iter() {
            for s in self.elements() {
                if !ideal.contains(self.mul(s, i)) {
                    return Err(Error::NotAnIdeal { left: s, right: i });
                }
                if !ideal.contains(self.mul(i, s)) {
                    return Err(Error::NotAnIdeal { left: i, right: s });
                }
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self, set: &ElementSet) -> bool {
        self.check_ideal(set).is_ok()
    }

    pub(crate) fn check_members(&self, set: &ElementSet) -> Result<()> {
        match set.iter().find(|e| e.index() >= self.order()) {
            Some(e) => Err(Error::UnknownElement(e.index())),
            None => Ok(()),
        }
    }

    /// The Rees quotient `S/I`: elements outside `I` keep their relative
    /// order and `I` collapses to a zero placed last. Returns the quotient and
    /// the quotient map indexed by element id of `S`.
    pub fn rees_quotient(&self, ideal: &ElementSet) -> Result<(FiniteSemigroup, Vec<ElementId>)> {
        self.check_ideal(ideal)?;
        let kept: Vec<ElementId> = self.elements().filter(|e| !ideal.contains(*e)).collect();
        let zero = kept.len();
        let mut map = vec![ElementId::new(zero); self.order()];
        for (i, &e) in kept.iter().enumerate() {
            map[e.index()] = ElementId::new(i);
        }
        let mut names: Vec<String> = kept.iter().map(|&e| self.element_name(e).to_string()).collect();
        let zero_name = if ideal.len() == 1 {
            self.element_name(ideal.min().unwrap()).to_string()
        } else {
            fresh_name(&names, &["0", "θ", "z"])
        };
        names.push(zero_name);
        let quotient = FiniteSemigroup::from_fn(format!("{}/I", self.name), names, |a, b| {
            if a == zero || b == zero {
                zero
            } else {
                map[self.mul(kept[a], kept[b]).index()].index()
            }
        })?;
        Ok((quotient, map))
    }

    /// Checks that a subset is closed under multiplication.
    pub fn check_closed(&self, set: &ElementSet) -> Result<()> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        self.check_members(set)?;
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotClosed { left: a, right: b });
                }
            }
        }
        Ok(())
    }

    /// The subsemigroup on a closed subset, with its embedding into `self`.
    pub fn subsemigroup(&self, set: &ElementSet) -> Result<(FiniteSemigroup, Vec<ElementId>)> {
        self.check_closed(set)?;
        let members = set.to_vec();
        let mut position = vec![usize::MAX; self.order()];
        for (i, e) in members.iter().enumerate() {
            position[e.index()] = i;
        }
        let names = members.iter().map(|&e| self.element_name(e).to_string()).collect();
        let sub = FiniteSemigroup::from_fn(format!("{}|sub", self.name), names, |a, b| {
            position[self.mul(members[a], members[b]).index()]
        })?;
        Ok((sub, members))
    }

    /// Checks that `map` (indexed by ids of `self`) is a semigroup morphism
    /// onto `target`.
    pub fn check_surjective_morphism(&self, target: &FiniteSemigroup, map: &[ElementId]) -> Result<()> {
        if map.len() != self.order() || map.iter().any(|m| m.index() >= target.order()) {
            return Err(Error::NotAMorphism("map has the wrong shape".into()));
        }
        for a in self.elements() {
            for b in self.elements() {
                let lhs = map[self.mul(a, b).index()];
                let rhs = target.mul(map[a.index()], map[b.index()]);
                if lhs != rhs {
                    return Err(Error::NotAMorphism(format!(
                        "F({}·{}) != F({})·F({})",
                        self.element_name(a),
                        self.element_name(b),
                        self.element_name(a),
                        self.element_name(b)
                    )));
                }
            }
        }
        let image: ElementSet = map.iter().copied().collect();
        if image.len() != target.order() {
            return Err(Error::NotAMorphism("map is not surjective".into()));
        }
        Ok(())
    }

    /// Relabels elements: element `i` of the result is element `perm[i]`.
    pub fn relabel(&self, perm: &[ElementId]) -> FiniteSemigroup {
        let mut inverse = vec![0; self.order()];
        for (i, p) in perm.iter().enumerate() {
            inverse[p.index()] = i;
        }
        let names = perm.iter().map(|&p| self.element_name(p).to_string()).collect();
        FiniteSemigroup::from_fn(self.name.clone(), names, |a, b| inverse[self.mul(perm[a], perm[b]).index()])
            .expect("relabelling preserves validity")
    }
}

/// Searches for an isomorphism `S → T`, returned as images indexed by ids of `S`.
pub fn find_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Vec<ElementId>> {
    if s.order() != t.order() {
        return None;
    }
    let n = s.order();
    // Cheap invariant to prune: idempotency and the index of each element.
    let signature = |g: &FiniteSemigroup, x: ElementId| {
        let idem = g.is_idempotent(x);
        let square_is_x = g.mul(x, x) == x;
        let left_fix = g.elements().filter(|&y| g.mul(x, y) == y).count();
        let right_fix = g.elements().filter(|&y| g.mul(y, x) == y).count();
        (idem, square_is_x, left_fix, right_fix)
    };
    let sig_s: Vec<_> = s.elements().map(|x| signature(s, x)).collect();
    let sig_t: Vec<_> = t.elements().map(|x| signature(t, x)).collect();
    let mut image = vec![None::<ElementId>; n];
    let mut used = vec![false; n];

    fn consistent(s: &FiniteSemigroup, t: &FiniteSemigroup, image: &[Option<ElementId>], x: usize) -> bool {
        let ix = ElementId::new(x);
        for y in 0..=x {
            let iy = ElementId::new(y);
            let (Some(fx), Some(fy)) = (image[x], image[y]) else {
                continue;
            };
            for (a, b, fa, fb) in [(ix, iy, fx, fy), (iy, ix, fy, fx)] {
                if let Some(fab) = image[s.mul(a, b).index()] {
                    if fab != t.mul(fa, fb) {
                        return false;
                    }
                }
            }
        }
        // Products landing on x from already-mapped pairs.
        for a in 0..x {
            for b in 0..x {
                let (ia, ib) = (ElementId::new(a), ElementId::new(b));
                if s.mul(ia, ib).index() == x {
                    let (fa, fb) = (image[a].unwrap(), image[b].unwrap());
                    if t.mul(fa, fb) != image[x].unwrap() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(
        s: &FiniteSemigroup,
        t: &FiniteSemigroup,
        x: usize,
        image: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
        sig_s: &[(bool, bool, usize, usize)],
        sig_t: &[(bool, bool, usize, usize)],
    ) -> bool {
        if x == s.order() {
            return true;
        }
        for y in 0..t.order() {
            if used[y] || sig_s[x] != sig_t[y] {
                continue;
            }
            image[x] = Some(ElementId::new(y));
            used[y] = true;
            if consistent(s, t, image, x) && search(s, t, x + 1, image, used, sig_s, sig_t) {
                return true;
            }
            used[y] = false;
            image[x] = None;
        }
        false
    }

    if search(s, t, 0, &mut image, &mut used, &sig_s, &sig_t) {
        Some(image.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// The monogenic semigroup `⟨x | x^m = x^(m+p)⟩` on `x, x², …, x^(m+p-1)`.
pub fn monogenic(index: usize, period: usize) -> Result<FiniteSemigroup> {
    if index == 0 || period == 0 {
        return Err(Error::PreconditionViolated("index and period must be at least 1".into()));
    }
    let order = index + period - 1;
    if order > MAX_ORDER {
        return Err(Error::TooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    let names = (1..=order)
        .map(|k| if k == 1 { "x".to_string() } else { format!("x^{k}") })
        .collect();
    // Exponent k (1-based) reduces into [m, m+p) once it reaches m+p.
    let reduce = |k: usize| if k < index + period { k } else { index + (k - index) % period };
    let name = if period == 1 {
        format!("<x|x^{index}=x^{}>", index + 1)
    } else {
        format!("<x|x^{index}=x^{}>", index + period)
    };
    FiniteSemigroup::from_fn(name, names, |a, b| reduce(a + 1 + b + 1) - 1)
}

fn fresh_name(existing: &[String], candidates: &[&str]) -> String {
    for c in candidates {
        if !existing.iter().any(|n| n == c) {
            return c.to_string();
        }
    }
    let mut k = 0;
    loop {
        let c = format!("new{k}");
        if !existing.contains(&c) {
            return c;
        }
        k += 1;
    }
}

//! Green's relations, the J-order, Rees coordinates and traces.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{ElementId, FiniteSemigroup};
use crate::set::ElementSet;

/// R, L and J classes of a semigroup. Classes are sorted internally and
/// listed in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenStructure {
    pub r_classes: Vec<Vec<ElementId>>,
    pub l_classes: Vec<Vec<ElementId>>,
    pub j_classes: Vec<Vec<ElementId>>,
    r_of: Vec<usize>,
    l_of: Vec<usize>,
    j_of: Vec<usize>,
    /// `j_leq[i][k]` iff `S¹J_iS¹ ⊆ S¹J_kS¹`.
    j_leq: Vec<Vec<bool>>,
    pub regular: Vec<bool>,
    /// J-class indices from the bottom up.
    pub principal_series: Vec<usize>,
}

fn partition(ideals: &[ElementSet]) -> (Vec<Vec<ElementId>>, Vec<usize>) {
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    let mut of = vec![usize::MAX; ideals.len()];
    for x in 0..ideals.len() {
        if of[x] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let members: Vec<ElementId> = (x..ideals.len())
            .filter(|&y| ideals[y] == ideals[x])
            .map(ElementId::new)
            .collect();
        for m in &members {
            of[m.index()] = c;
        }
        classes.push(members);
    }
    (classes, of)
}

/// `xS¹`, `S¹x` and `S¹xS¹` for every element.
fn principal_ideals(s: &FiniteSemigroup) -> (Vec<ElementSet>, Vec<ElementSet>, Vec<ElementSet>) {
    let right: Vec<ElementSet> = s
        .elements()
        .map(|x| std::iter::once(x).chain(s.elements().map(|t| s.mul(x, t))).collect())
        .collect();
    let left: Vec<ElementSet> = s
        .elements()
        .map(|x| std::iter::once(x).chain(s.elements().map(|t| s.mul(t, x))).collect())
        .collect();
    let two_sided = s
        .elements()
        .map(|x| {
            let mut ideal = right[x.index()].clone();
            for y in right[x.index()].iter() {
                ideal.union_with(&left[y.index()]);
            }
            ideal
        })
        .collect();
    (right, left, two_sided)
}

pub fn green(s: &FiniteSemigroup) -> GreenStructure {
    let (right, left, two_sided) = principal_ideals(s);
    let (r_classes, r_of) = partition(&right);
    let (l_classes, l_of) = partition(&left);
    let (j_classes, j_of) = partition(&two_sided);
    let k = j_classes.len();
    let ideal_of = |c: usize| &two_sided[j_classes[c][0].index()];
    let j_leq: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|m| ideal_of(i).is_subset(ideal_of(m))).collect())
        .collect();
    let regular = j_classes.iter().map(|c| c.iter().any(|&x| s.is_idempotent(x))).collect();

    // Kahn's algorithm from the bottom; ties go to the least element id,
    // which is the class index since classes are ordered by least element.
    let mut placed = vec![false; k];
    let mut principal_series = Vec::with_capacity(k);
    while principal_series.len() < k {
        let next = (0..k)
            .find(|&c| !placed[c] && (0..k).all(|d| d == c || placed[d] || !j_leq[d][c]))
            .expect("the J-order is acyclic");
        placed[next] = true;
        principal_series.push(next);
    }

    GreenStructure {
        r_classes,
        l_classes,
        j_classes,
        r_of,
        l_of,
        j_of,
        j_leq,
        regular,
        principal_series,
    }
}

impl GreenStructure {
    pub fn r_class_of(&self, x: ElementId) -> usize {
        self.r_of[x.index()]
    }

    pub fn l_class_of(&self, x: ElementId) -> usize {
        self.l_of[x.index()]
    }

    pub fn j_class_of(&self, x: ElementId) -> usize {
        self.j_of[x.index()]
    }

    pub fn r_related(&self, x: ElementId, y: ElementId) -> bool {
        self.r_of[x.index()] == self.r_of[y.index()]
    }

    pub fn l_related(&self, x: ElementId, y: ElementId) -> bool {
        self.l_of[x.index()] == self.l_of[y.index()]
    }

    /// `J_a ≤ J_b` in the J-order.
    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        self.j_leq[a][b]
    }

    /// `S¹JS¹` as a set.
    pub fn ideal_below(&self, class: usize) -> ElementSet {
        (0..self.j_classes.len())
            .filter(|&d| self.j_leq[d][class])
            .flat_map(|d| self.j_classes[d].iter().copied())
            .collect()
    }

    /// Finds the J-class equal to the given set.
    pub fn find_j_class(&self, set: &ElementSet) -> Option<usize> {
        let first = set.min()?;
        let c = self.j_of.get(first.index()).copied()?;
        (self.j_classes[c].len() == set.len() && self.j_classes[c].iter().all(|&x| set.contains(x))).then_some(c)
    }

    /// Text eggbox: one block per J-class, rows are R-classes, columns are
    /// L-classes, `*` marks idempotents.
    pub fn eggbox(&self, s: &FiniteSemigroup) -> String {
        let mut text = String::new();
        for &c in self.principal_series.iter().rev() {
            let members = &self.j_classes[c];
            let rows = self.classes_within(members, &self.r_of);
            let cols = self.classes_within(members, &self.l_of);
            let cell = |r: usize, l: usize| -> String {
                members
                    .iter()
                    .filter(|&&x| self.r_of[x.index()] == r && self.l_of[x.index()] == l)
                    .map(|&x| {
                        let star = if s.is_idempotent(x) { "*" } else { "" };
                        format!("{star}{}", s.element_name(x))
                    })
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let cells: Vec<Vec<String>> = rows.iter().map(|&r| cols.iter().map(|&l| cell(r, l)).collect()).collect();
            let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1).max(1);
            let kind = if self.regular[c] { "regular" } else { "null" };
            let _ = writeln!(text, "J{c} ({kind})");
            let rule = format!("+{}", format!("{}+", "-".repeat(width + 2)).repeat(cols.len()));
            let _ = writeln!(text, "{rule}");
            for row in &cells {
                let line: String = row
                    .iter()
                    .map(|c| format!(" {c:<width$} |"))
                    .collect();
                let _ = writeln!(text, "|{line}");
                let _ = writeln!(text, "{rule}");
            }
        }
        text
    }

    fn classes_within(&self, members: &[ElementId], of: &[usize]) -> Vec<usize> {
        let mut classes: Vec<usize> = members.iter().map(|x| of[x.index()]).collect();
        classes.sort_unstable();
        classes.dedup();
        classes
    }
}

pub fn is_j_class(s: &FiniteSemigroup, set: &ElementSet) -> bool {
    s.check_members(set).is_ok() && green(s).find_j_class(set).is_some()
}

/// The J-classes `J` such that `J ∪ {0}` is an ideal, with regularity flags,
/// in order of least element.
pub fn zero_minimal_ideals(s: &FiniteSemigroup) -> Result<Vec<(Vec<ElementId>, bool)>> {
    let zero = s.zero().ok_or(Error::NoZero)?;
    let g = green(s);
    Ok(g.j_classes
        .iter()
        .enumerate()
        .filter(|(_, members)| members != &&vec![zero])
        .filter(|(_, members)| {
            let mut ideal: ElementSet = members.iter().copied().collect();
            ideal.insert(zero);
            s.is_ideal(&ideal)
        })
        .map(|(c, members)| (members.clone(), g.regular[c]))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReesKind {
    Regular,
    Null,
}

/// Coordinates of a J-class of an aperiodic semigroup as `A × B`.
///
/// Rows `A` are the R-classes and columns `B` the L-classes of `J`, each in
/// order of least element. `c_matrix[b][a]` is 1 when the product of column
/// `b`'s representative with row `a`'s representative stays in `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesData {
    pub kind: ReesKind,
    pub a_index: Vec<Vec<ElementId>>,
    pub b_index: Vec<Vec<ElementId>>,
    pub c_matrix: Vec<Vec<u8>>,
    /// `(element, (a, b))` for each element of `J`, by ascending id.
    pub coordinates: Vec<(ElementId, (usize, usize))>,
}

impl ReesData {
    pub fn coordinate(&self, x: ElementId) -> Option<(usize, usize)> {
        self.coordinates.iter().find(|(e, _)| *e == x).map(|&(_, c)| c)
    }

    pub fn element(&self, a: usize, b: usize) -> Option<ElementId> {
        self.coordinates.iter().find(|(_, c)| *c == (a, b)).map(|&(e, _)| e)
    }

    pub fn members(&self) -> ElementSet {
        self.coordinates.iter().map(|&(e, _)| e).collect()
    }

    /// The product predicted by the coordinates: `(a₁,b₁)(a₂,b₂) = (a₁,b₂)`
    /// when `C(b₁,a₂) = 1`, otherwise `None` (falls out of `J`).
    pub fn predicted_product(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        let (a1, b1) = self.coordinate(x)?;
        let (a2, b2) = self.coordinate(y)?;
        (self.c_matrix[b1][a2] == 1).then(|| self.element(a1, b2)).flatten()
    }

    pub fn matrix_text(&self) -> String {
        self.c_matrix
            .iter()
            .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn check_class(s: &FiniteSemigroup, j: &ElementSet) -> Result<(GreenStructure, usize)> {
    s.check_members(j)?;
    let g = green(s);
    let c = g.find_j_class(j).ok_or(Error::NotAJClass)?;
    Ok((g, c))
}

/// Rees coordinates of a J-class of an aperiodic semigroup. Products that
/// leave `J` play the role of zero, so any J-class is accepted; a class
/// without an idempotent gets the all-zero null form.
pub fn rees_coordinates(s: &FiniteSemigroup, j: &ElementSet) -> Result<ReesData> {
    if !s.is_aperiodic() {
        return Err(Error::NotAperiodic);
    }
    let (g, c) = check_class(s, j)?;
    let members = &g.j_classes[c];
    let rows = g.classes_within(members, &g.r_of);
    let cols = g.classes_within(members, &g.l_of);
    let a_index: Vec<Vec<ElementId>> = rows
        .iter()
        .map(|&r| members.iter().copied().filter(|x| g.r_of[x.index()] == r).collect())
        .collect();
    let b_index: Vec<Vec<ElementId>> = cols
        .iter()
        .map(|&l| members.iter().copied().filter(|x| g.l_of[x.index()] == l).collect())
        .collect();
    let regular = g.regular[c];
    let c_matrix = b_index
        .iter()
        .map(|col| {
            a_index
                .iter()
                .map(|row| u8::from(regular && j.contains(s.mul(col[0], row[0]))))
                .collect()
        })
        .collect();
    let coordinates = members
        .iter()
        .map(|&x| {
            let a = rows.iter().position(|&r| r == g.r_of[x.index()]).unwrap();
            let b = cols.iter().position(|&l| l == g.l_of[x.index()]).unwrap();
            (x, (a, b))
        })
        .collect();
    Ok(ReesData {
        kind: if regular { ReesKind::Regular } else { ReesKind::Null },
        a_index,
        b_index,
        c_matrix,
        coordinates,
    })
}

/// `C(s, a)` and the left action of `S` on `A ∪ {0}`; `None` stands for 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedMatrix {
    pub c_ext: Vec<Vec<u8>>,
    pub left_action: Vec<Vec<Option<usize>>>,
}

impl ExtendedMatrix {
    pub fn act(&self, s: ElementId, a: Option<usize>) -> Option<usize> {
        a.and_then(|a| self.left_action[s.index()][a])
    }
}

pub fn extended_matrix(s: &FiniteSemigroup, j: &ElementSet) -> Result<ExtendedMatrix> {
    let rees = rees_coordinates(s, j)?;
    let rows = rees.a_index.len();
    let cols = rees.b_index.len();
    let mut c_ext = vec![vec![0u8; rows]; s.order()];
    let mut left_action = vec![vec![None; rows]; s.order()];
    for t in s.elements() {
        for a in 0..rows {
            let mut image: Option<Option<usize>> = None;
            for b in 0..cols {
                let x = rees.element(a, b).expect("aperiodic J-classes are rectangular");
                let p = s.mul(t, x);
                let this = match rees.coordinate(p) {
                    Some((a2, b2)) if b2 == b => Some(a2),
                    Some(_) => return Err(Error::InconsistentAction { s: t, a }),
                    None => None,
                };
                match image {
                    None => image = Some(this),
                    Some(prev) if prev != this => return Err(Error::InconsistentAction { s: t, a }),
                    _ => {}
                }
            }
            let image = image.flatten();
            c_ext[t.index()][a] = u8::from(image.is_some());
            left_action[t.index()][a] = image;
        }
    }
    Ok(ExtendedMatrix { c_ext, left_action })
}

/// The trace `J ∪ {θ}` of a J-class: products inside `J` are kept, all
/// others go to θ. Elements are `J` by ascending id, then θ. The returned
/// map sends each non-θ trace element to its element of `S`.
pub fn trace(s: &FiniteSemigroup, j: &ElementSet) -> Result<(FiniteSemigroup, Vec<ElementId>)> {
    check_class(s, j)?;
    let members = j.to_vec();
    let theta = members.len();
    let mut names: Vec<String> = members.iter().map(|&x| s.element_name(x).to_string()).collect();
    let theta_name = ["θ", "0", "z"]
        .into_iter()
        .find(|c| !names.iter().any(|n| n == c))
        .unwrap_or("theta");
    names.push(theta_name.to_string());
    let rows: Vec<Vec<usize>> = (0..=theta)
        .map(|x| {
            (0..=theta)
                .map(|y| {
                    if x == theta || y == theta {
                        return theta;
                    }
                    let p = s.mul(members[x], members[y]);
                    members.iter().position(|&m| m == p).unwrap_or(theta)
                })
                .collect()
        })
        .collect();
    let tr = FiniteSemigroup::new(format!("{}^tr", s.name()), names, &rows)?;
    Ok((tr, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::semigroup::find_isomorphism;

    fn set(ids: &[usize]) -> ElementSet {
        ids.iter().map(|&i| ElementId::new(i)).collect()
    }

    fn e(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn semilattice_classes() {
        let g = green(&catalog::s3());
        assert_eq!(g.j_classes, vec![vec![e(0)], vec![e(1)]]);
        assert!(g.j_leq(0, 1) && !g.j_leq(1, 0));
        assert_eq!(g.regular, vec![true, true]);
        assert_eq!(g.principal_series, vec![0, 1]);
    }

    #[test]
    fn left_zero_classes() {
        let g = green(&catalog::s1());
        assert_eq!(g.j_classes.len(), 1);
        assert_eq!(g.r_classes.len(), 2);
        assert_eq!(g.l_classes.len(), 1);
        assert_eq!(g.regular, vec![true]);
    }

    #[test]
    fn monogenic_chain() {
        let g = green(&catalog::m5());
        assert_eq!(g.j_classes.len(), 5);
        assert_eq!(g.regular, vec![false, false, false, false, true]);
        assert_eq!(g.principal_series, vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn zero_minimal_examples() {
        assert_eq!(zero_minimal_ideals(&catalog::s3()).unwrap(), vec![(vec![e(1)], true)]);
        assert_eq!(zero_minimal_ideals(&catalog::s4()).unwrap(), vec![(vec![e(0)], false)]);
        let s1z = catalog::s1().adjoin_zero();
        assert_eq!(zero_minimal_ideals(&s1z).unwrap(), vec![(vec![e(0), e(1)], true)]);
        assert_eq!(zero_minimal_ideals(&catalog::s1()), Err(Error::NoZero));
    }

    #[test]
    fn rees_examples() {
        let s1z = catalog::s1().adjoin_zero();
        let r = rees_coordinates(&s1z, &set(&[0, 1])).unwrap();
        assert_eq!((r.a_index.len(), r.b_index.len()), (2, 1));
        assert_eq!(r.c_matrix, vec![vec![1, 1]]);

        let r = rees_coordinates(&catalog::s3(), &set(&[1])).unwrap();
        assert_eq!(r.c_matrix, vec![vec![1]]);

        let r = rees_coordinates(&catalog::s4(), &set(&[0])).unwrap();
        assert_eq!(r.kind, ReesKind::Null);
        assert_eq!(r.c_matrix, vec![vec![0]]);

        assert_eq!(rees_coordinates(&catalog::s5(), &set(&[0, 1])), Err(Error::NotAperiodic));
        assert_eq!(rees_coordinates(&catalog::s3(), &set(&[0, 1])), Err(Error::NotAJClass));
    }

    #[test]
    fn extended_examples() {
        let s1z = catalog::s1().adjoin_zero();
        let m = extended_matrix(&s1z, &set(&[0, 1])).unwrap();
        // Row 1 is the R-class of b; a·b = a lands in row 0.
        assert_eq!(m.left_action[0][1], Some(0));
        let s3 = catalog::s3();
        let m = extended_matrix(&s3, &set(&[1])).unwrap();
        assert_eq!(m.act(e(0), Some(0)), None);
        assert_eq!(m.act(e(1), Some(0)), Some(0));
    }

    #[test]
    fn trace_examples() {
        let (tr, emb) = trace(&catalog::s3(), &set(&[1])).unwrap();
        assert!(find_isomorphism(&tr, &catalog::s3()).is_some());
        assert_eq!(emb, vec![e(1)]);
        let (tr, _) = trace(&catalog::m5(), &set(&[0])).unwrap();
        assert!(find_isomorphism(&tr, &catalog::s4()).is_some());
        let (tr, _) = trace(&catalog::s1(), &set(&[0, 1])).unwrap();
        assert!(find_isomorphism(&tr, &catalog::s1().adjoin_zero()).is_some());
    }
}

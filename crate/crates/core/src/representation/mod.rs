//! Maps from a finite lattice into the partition lattice of a finite ground
//! set.
//!
//! A pseudo-representation sends the bottom to the one-class relation, the
//! top to the all-singletons relation, and joins to intersections:
//! `alpha(x v y) = alpha(x) ^ alpha(y)`. A representation is an injective
//! pseudo-representation.

mod constructions;
mod cpp;
mod ranked_rep;

pub use constructions::{m3_base_rep, pairs_b2_rep, power_rep};
pub use cpp::{
    cpp_certificate_tree, family_closure_check, is_0cpp, is_ncpp, CppCertificate, CppChoice, CppVerdict,
    FamilyClosureReport, FamilyFailure,
};
pub use ranked_rep::{check_ranked_rep, RankedRepViolation, ThresholdRankContext};

use serde::{Deserialize, Serialize};

use crate::eqrel::{meet_eq, restrict_unchecked, EquivalenceRelation};
use crate::error::{check_limit, Error, Result};
use crate::{Budget, Element, FiniteLattice, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    lattice: FiniteLattice,
    ground_size: usize,
    alpha: Vec<EquivalenceRelation>,
    decode: Option<Vec<String>>,
}

impl Representation {
    /// Checks shapes only; the representation laws are checked by
    /// [`verify_pseudo_rep`].
    pub fn new(lattice: FiniteLattice, alpha: Vec<EquivalenceRelation>, decode: Option<Vec<String>>) -> Result<Self> {
        if alpha.len() != lattice.size() {
            return Err(Error::Malformed(format!(
                "{} relations for {} lattice elements",
                alpha.len(),
                lattice.size()
            )));
        }
        let ground_size = alpha[0].ground_size();
        if ground_size == 0 {
            return Err(Error::EmptySubset);
        }
        for a in &alpha {
            if a.ground_size() != ground_size {
                return Err(Error::GroundMismatch {
                    left: ground_size,
                    right: a.ground_size(),
                });
            }
        }
        if let Some(d) = &decode {
            if d.len() != ground_size {
                return Err(Error::Malformed(format!(
                    "{} decode entries for ground size {ground_size}",
                    d.len()
                )));
            }
        }
        Ok(Representation {
            lattice,
            ground_size,
            alpha,
            decode,
        })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn alpha(&self, r: Element) -> &EquivalenceRelation {
        &self.alpha[r]
    }

    pub fn alphas(&self) -> &[EquivalenceRelation] {
        &self.alpha
    }

    pub fn decode(&self) -> Option<&[String]> {
        self.decode.as_deref()
    }

    /// Ground sets with at most one point satisfy every law vacuously.
    pub fn is_degenerate(&self) -> bool {
        self.ground_size <= 1
    }

    /// Moves point `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Representation> {
        if perm.len() != self.ground_size || !is_permutation(perm) {
            return Err(Error::InvalidParameter("not a permutation of the ground set".into()));
        }
        let decode = self.decode.as_ref().map(|d| {
            let mut out = vec![String::new(); d.len()];
            for (x, &p) in perm.iter().enumerate() {
                out[p] = d[x].clone();
            }
            out
        });
        Ok(Representation {
            lattice: self.lattice.clone(),
            ground_size: self.ground_size,
            alpha: self.alpha.iter().map(|a| a.permuted(perm)).collect(),
            decode,
        })
    }

    /// Restriction to `points` (assumed valid and nonempty), renumbered in order.
    pub(crate) fn restrict_points(&self, points: &[usize]) -> Representation {
        Representation {
            lattice: self.lattice.clone(),
            ground_size: points.len(),
            alpha: self.alpha.iter().map(|a| restrict_unchecked(a, points)).collect(),
            decode: self
                .decode
                .as_ref()
                .map(|d| points.iter().map(|&p| d[p].clone()).collect()),
        }
    }

    pub(crate) fn injective(&self) -> bool {
        first_collision(&self.alpha).is_none()
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter()
        .all(|&p| p < perm.len() && !std::mem::replace(&mut seen[p], true))
}

fn first_collision(alpha: &[EquivalenceRelation]) -> Option<(Element, Element)> {
    for x in 0..alpha.len() {
        for y in (x + 1)..alpha.len() {
            if alpha[x] == alpha[y] {
                return Some((x, y));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum PseudoRepViolation {
    BottomNotTrivial,
    TopNotDiscrete,
    /// `alpha(x v y) != alpha(x) ^ alpha(y)`
    JoinToMeet {
        x: Element,
        y: Element,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoRepReport {
    pub violations: Vec<PseudoRepViolation>,
    pub degenerate: bool,
}

impl PseudoRepReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_pseudo_rep(rep: &Representation) -> PseudoRepReport {
    let l = &rep.lattice;
    let mut violations = Vec::new();
    if !rep.alpha[l.bottom()].is_trivial() {
        violations.push(PseudoRepViolation::BottomNotTrivial);
    }
    if !rep.alpha[l.top()].is_discrete() {
        violations.push(PseudoRepViolation::TopNotDiscrete);
    }
    for x in l.elements() {
        for y in x..l.size() {
            let m = meet_eq(&rep.alpha[x], &rep.alpha[y]).expect("same ground");
            if rep.alpha[l.join(x, y)] != m {
                violations.push(PseudoRepViolation::JoinToMeet { x, y });
            }
        }
    }
    PseudoRepReport {
        violations,
        degenerate: rep.is_degenerate(),
    }
}

/// Injectivity of `alpha`; the witness is the first pair of elements with the
/// same image.
pub fn is_representation(rep: &Representation) -> Verdict<(Element, Element)> {
    match first_collision(&rep.alpha) {
        Some(pair) => Verdict::fail(pair),
        None => Verdict::pass(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub rep: Representation,
    /// Whether the restricted map is still injective.
    pub is_representation: bool,
}

/// Pointwise restriction to `subset`, renumbered in the given order.
pub fn restrict_rep(rep: &Representation, subset: &[usize]) -> Result<Restriction> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut seen = vec![false; rep.ground_size];
    for &p in subset {
        if p >= rep.ground_size {
            return Err(Error::IndexOutOfRange {
                index: p,
                size: rep.ground_size,
            });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter(format!("point {p} repeated in subset")));
        }
    }
    let restricted = rep.restrict_points(subset);
    Ok(Restriction {
        is_representation: restricted.injective(),
        rep: restricted,
    })
}

/// The least `r` (in index order) with `alpha(r) = theta`.
pub fn canonical_for(theta: &EquivalenceRelation, rep: &Representation) -> Result<Option<Element>> {
    if theta.ground_size() != rep.ground_size {
        return Err(Error::GroundMismatch {
            left: theta.ground_size(),
            right: rep.ground_size,
        });
    }
    Ok(rep.alpha.iter().position(|a| a == theta))
}

/// A bijection `f` of ground sets with `(x, y) in alpha1(r)` iff
/// `(f x, f y) in alpha2(r)` for every `r`.
pub fn reps_isomorphic(a: &Representation, b: &Representation, budget: &Budget) -> Result<Option<Vec<usize>>> {
    if !a.lattice.same_structure(&b.lattice) {
        return Err(Error::InvalidParameter("representations of different lattices".into()));
    }
    check_limit(
        "representation ground",
        a.ground_size.max(b.ground_size),
        budget.max_search_target,
    )?;
    if a.ground_size != b.ground_size {
        return Ok(None);
    }
    for (x, y) in a.alpha.iter().zip(&b.alpha) {
        if x.stats().class_size_multiset != y.stats().class_size_multiset {
            return Ok(None);
        }
    }
    let sig_a = point_signatures(a);
    let sig_b = point_signatures(b);
    let n = a.ground_size;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_bijection(a, b, &sig_a, &sig_b, &mut map, &mut used, 0).then_some(map))
}

/// For each point, the size of its class under every `alpha(r)`.
fn point_signatures(rep: &Representation) -> Vec<Vec<usize>> {
    let sizes: Vec<Vec<usize>> = rep
        .alpha
        .iter()
        .map(|a| {
            let mut s = vec![0; a.num_classes()];
            for &c in a.class_ids() {
                s[c as usize] += 1;
            }
            s
        })
        .collect();
    (0..rep.ground_size)
        .map(|p| {
            rep.alpha
                .iter()
                .zip(&sizes)
                .map(|(a, s)| s[a.class_of(p) as usize])
                .collect()
        })
        .collect()
}

fn extend_bijection(
    a: &Representation,
    b: &Representation,
    sig_a: &[Vec<usize>],
    sig_b: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
    x: usize,
) -> bool {
    if x == map.len() {
        return true;
    }
    for y in 0..map.len() {
        if used[y] || sig_a[x] != sig_b[y] {
            continue;
        }
        let ok = (0..x).all(|x2| {
            let y2 = map[x2];
            a.alpha
                .iter()
                .zip(&b.alpha)
                .all(|(ra, rb)| ra.related(x, x2) == rb.related(y, y2))
        });
        if !ok {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend_bijection(a, b, sig_a, sig_b, map, used, x + 1) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::m_lattice;
    use crate::eqrel::kernel_of;

    #[test]
    fn m3_base_is_a_representation() {
        let r = m3_base_rep();
        assert!(verify_pseudo_rep(&r).is_valid());
        assert!(is_representation(&r).holds);
        assert_eq!(r.alpha(2).classes(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn swapping_bounds_breaks_both_boundary_laws() {
        let r = m3_base_rep();
        let mut alpha = r.alphas().to_vec();
        alpha.swap(0, 4);
        let bad = Representation::new(m_lattice(3), alpha, None).unwrap();
        let report = verify_pseudo_rep(&bad);
        assert!(report.violations.contains(&PseudoRepViolation::BottomNotTrivial));
        assert!(report.violations.contains(&PseudoRepViolation::TopNotDiscrete));
    }

    #[test]
    fn pairs_rep_is_valid_and_injective() {
        let r = pairs_b2_rep(4).unwrap();
        assert_eq!(r.ground_size(), 6);
        assert!(verify_pseudo_rep(&r).is_valid());
        assert_eq!(r.alpha(1).stats().class_size_multiset, vec![3, 2, 1]);
        let r3 = pairs_b2_rep(3).unwrap();
        assert!(is_representation(&r3).holds);
        let d = pairs_b2_rep(2).unwrap();
        assert!(d.is_degenerate());
        assert!(verify_pseudo_rep(&d).degenerate);
        assert!(pairs_b2_rep(1).is_err());
    }

    #[test]
    fn collapsing_an_atom_onto_bottom() {
        let r = m3_base_rep();
        let mut alpha = r.alphas().to_vec();
        alpha[1] = alpha[0].clone();
        let bad = Representation::new(m_lattice(3), alpha, None).unwrap();
        assert_eq!(is_representation(&bad), Verdict::fail((0, 1)));
    }

    #[test]
    fn restrictions() {
        let r = pairs_b2_rep(4).unwrap();
        let full: Vec<usize> = (0..6).collect();
        let same = restrict_rep(&r, &full).unwrap();
        assert_eq!(same.rep, r);
        assert!(same.is_representation);
        // Pairs with first coordinate 0 are <0,1>, <0,2>, <0,3>.
        let first0 = restrict_rep(&r, &[0, 1, 2]).unwrap();
        assert!(first0.rep.alpha(1).is_trivial());
        assert!(!first0.is_representation);
        assert!(verify_pseudo_rep(&first0.rep).is_valid());
        let single = restrict_rep(&r, &[4]).unwrap();
        assert!(single.rep.alphas().iter().all(|a| a.is_trivial() && a.is_discrete()));
        assert_eq!(restrict_rep(&r, &[]).unwrap_err(), Error::EmptySubset);
    }

    #[test]
    fn canonical_elements() {
        let r = pairs_b2_rep(4).unwrap();
        let t = EquivalenceRelation::trivial(6);
        assert_eq!(canonical_for(&t, &r).unwrap(), Some(0));
        assert_eq!(canonical_for(&EquivalenceRelation::discrete(6), &r).unwrap(), Some(3));
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|x| (x + 1..4).map(move |y| (x, y))).collect();
        let first = kernel_of(pairs.iter().map(|p| p.0)).unwrap();
        assert_eq!(canonical_for(&first, &r).unwrap(), Some(1));
        let odd = kernel_of([0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(canonical_for(&odd, &r).unwrap(), None);
        assert!(canonical_for(&EquivalenceRelation::trivial(3), &r).is_err());
    }

    #[test]
    fn isomorphism_of_relabelings() {
        let b = Budget::default();
        let r = pairs_b2_rep(4).unwrap();
        let id = reps_isomorphic(&r, &r, &b).unwrap().unwrap();
        assert_eq!(id, (0..6).collect::<Vec<_>>());
        let perm = [3, 5, 0, 1, 4, 2];
        let moved = r.relabel(&perm).unwrap();
        let f = reps_isomorphic(&r, &moved, &b).unwrap().unwrap();
        assert_eq!(f, perm);
    }

    #[test]
    fn coordinate_swap_is_isomorphic_via_reversal() {
        // alpha'(a) = second projection, alpha'(b) = first projection.
        let b = Budget::default();
        let r = pairs_b2_rep(4).unwrap();
        let mut alpha = r.alphas().to_vec();
        alpha.swap(1, 2);
        let swapped = Representation::new(r.lattice().clone(), alpha, None).unwrap();
        let f = reps_isomorphic(&r, &swapped, &b).unwrap().expect("<x,y> -> <3-y,3-x>");
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|x| (x + 1..4).map(move |y| (x, y))).collect();
        for (i, &(x, y)) in pairs.iter().enumerate() {
            assert_eq!(pairs[f[i]], (3 - y, 3 - x));
        }
    }
}

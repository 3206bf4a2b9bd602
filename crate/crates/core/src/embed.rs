//! Sublattice embeddings, isomorphism, and the three distributivity tests:
//! forbidden sublattices, the distributive identities, and reconstruction
//! from join-irreducibles.

use serde::{Deserialize, Serialize};

use crate::constructions::{m_lattice, pentagon};
use crate::error::{check_limit, Result};
use crate::{Budget, Element, FiniteLattice};

/// An injective meet- and join-preserving map from `source` into `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEmbedding {
    pub source: FiniteLattice,
    pub target: FiniteLattice,
    /// `map[x]` is the image of source element `x`.
    pub map: Vec<Element>,
}

impl LatticeEmbedding {
    /// Re-checks injectivity and meet/join preservation on every pair.
    pub fn verify(&self) -> bool {
        let n = self.source.size();
        if self.map.len() != n || self.map.iter().any(|&t| t >= self.target.size()) {
            return false;
        }
        let mut seen = vec![false; self.target.size()];
        for &t in &self.map {
            if std::mem::replace(&mut seen[t], true) {
                return false;
            }
        }
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.map[self.source.meet(x, y)] == self.target.meet(self.map[x], self.map[y])
                    && self.map[self.source.join(x, y)] == self.target.join(self.map[x], self.map[y])
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// Image elements in source order.
    pub fn image(&self) -> &[Element] {
        &self.map
    }
}

/// Searches for a copy of `pattern` inside `lattice`, exhaustively. The
/// witness is the first one in the fixed search order.
pub fn find_sublattice_copy(
    lattice: &FiniteLattice,
    pattern: &FiniteLattice,
    budget: &Budget,
) -> Result<Option<LatticeEmbedding>> {
    check_limit("sublattice search target", lattice.size(), budget.max_search_target)?;
    Ok(search_copy(lattice, pattern, false))
}

/// A lattice isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice, budget: &Budget) -> Result<Option<LatticeEmbedding>> {
    check_limit("isomorphism search target", b.size(), budget.max_search_target)?;
    Ok(isomorphism_unbudgeted(a, b))
}

pub fn isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    isomorphism_unbudgeted(a, b).is_some()
}

pub(crate) fn isomorphism_unbudgeted(a: &FiniteLattice, b: &FiniteLattice) -> Option<LatticeEmbedding> {
    if a.size() != b.size() {
        return None;
    }
    let mut da = a.cover_degrees();
    let mut db = b.cover_degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    search_copy(b, a, true)
}

struct CopySearch<'a> {
    target: &'a FiniteLattice,
    pattern: &'a FiniteLattice,
    order: Vec<Element>,
    map: Vec<Option<Element>>,
    used: Vec<bool>,
    /// For isomorphisms only: invariants that must match.
    profile: Option<(Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>)>,
}

fn search_copy(target: &FiniteLattice, pattern: &FiniteLattice, bijective: bool) -> Option<LatticeEmbedding> {
    if pattern.size() > target.size() {
        return None;
    }
    let degree = pattern.cover_degrees();
    let mut order: Vec<Element> = pattern.elements().collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(degree[x]), x));
    let profile = bijective.then(|| {
        (
            degree.clone(),
            target.cover_degrees(),
            pattern.heights(),
            target.heights(),
        )
    });
    let mut search = CopySearch {
        target,
        pattern,
        order,
        map: vec![None; pattern.size()],
        used: vec![false; target.size()],
        profile,
    };
    if search.extend(0) {
        let map = search.map.into_iter().map(|m| m.expect("complete")).collect();
        let emb = LatticeEmbedding {
            source: pattern.clone(),
            target: target.clone(),
            map,
        };
        debug_assert!(emb.verify());
        Some(emb)
    } else {
        None
    }
}

impl CopySearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for t in self.target.elements() {
            if self.used[t] {
                continue;
            }
            if let Some((pd, td, ph, th)) = &self.profile {
                if pd[v] != td[t] || ph[v] != th[t] {
                    continue;
                }
            }
            self.map[v] = Some(t);
            self.used[t] = true;
            if self.consistent(v) && self.extend(depth + 1) {
                return true;
            }
            self.used[t] = false;
            self.map[v] = None;
        }
        false
    }

    /// Checks every meet/join equation among assigned elements that involves `v`.
    fn consistent(&self, v: Element) -> bool {
        let (p, t) = (self.pattern, self.target);
        let assigned: Vec<(Element, Element)> = self
            .map
            .iter()
            .enumerate()
            .filter_map(|(x, m)| m.map(|tx| (x, tx)))
            .collect();
        for &(x, tx) in &assigned {
            for &(y, ty) in &assigned {
                let pm = p.meet(x, y);
                let pj = p.join(x, y);
                if x != v && y != v && pm != v && pj != v {
                    continue;
                }
                if let Some(tm) = self.map[pm] {
                    if tm != t.meet(tx, ty) {
                        return false;
                    }
                }
                if let Some(tj) = self.map[pj] {
                    if tj != t.join(tx, ty) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForbiddenPattern {
    M3,
    N5,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributivityVerdict {
    pub distributive: bool,
    /// A copy of M3 or N5 when not distributive.
    pub witness: Option<(ForbiddenPattern, LatticeEmbedding)>,
}

/// Distributive iff there is no sublattice copy of M3 and none of N5.
pub fn is_distributive(lattice: &FiniteLattice) -> DistributivityVerdict {
    for (kind, pattern) in [(ForbiddenPattern::M3, m_lattice(3)), (ForbiddenPattern::N5, pentagon())] {
        if let Some(emb) = search_copy(lattice, &pattern, false) {
            return DistributivityVerdict {
                distributive: false,
                witness: Some((kind, emb)),
            };
        }
    }
    DistributivityVerdict {
        distributive: true,
        witness: None,
    }
}

/// First triple violating `x ^ (y v z) = (x ^ y) v (x ^ z)`. In a lattice
/// this law is equivalent to its dual, so one identity suffices.
pub fn distributive_law_violation(lattice: &FiniteLattice) -> Option<(Element, Element, Element)> {
    for x in lattice.elements() {
        for y in lattice.elements() {
            for z in lattice.elements() {
                let lhs = lattice.meet(x, lattice.join(y, z));
                let rhs = lattice.join(lattice.meet(x, y), lattice.meet(x, z));
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffVerdict {
    pub distributive: bool,
    pub join_irreducibles: Vec<Element>,
    /// Number of down-sets of the join-irreducible poset.
    pub downset_count: usize,
}

/// Down-sets of the poset on `elements` induced from `lattice`, as bitmasks
/// over positions in `elements`, in increasing numeric order.
fn downsets(lattice: &FiniteLattice, elements: &[Element]) -> Vec<u64> {
    let k = elements.len();
    let below: Vec<u64> = elements
        .iter()
        .map(|&j| {
            elements
                .iter()
                .enumerate()
                .filter(|&(_, &i)| lattice.leq(i, j))
                .fold(0u64, |m, (p, _)| m | 1 << p)
        })
        .collect();
    (0..1u64 << k)
        .filter(|&s| (0..k).all(|p| s >> p & 1 == 0 || below[p] & !s == 0))
        .collect()
}

/// The lattice of down-sets of a finite poset, ordered by inclusion.
/// Returns the lattice together with the bitmask of each element.
pub fn downset_lattice(
    lattice: &FiniteLattice,
    elements: &[Element],
    budget: &Budget,
) -> Result<(FiniteLattice, Vec<u64>)> {
    check_limit("join-irreducibles", elements.len(), budget.max_join_irreducibles)?;
    let sets = downsets(lattice, elements);
    check_limit("elements", sets.len(), budget.max_elements)?;
    let n = sets.len();
    let mut leq = vec![false; n * n];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    let pos = |m: u64| {
        sets.binary_search(&m)
            .expect("down-sets are closed under union and intersection")
    };
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = sets[x] & !sets[y] == 0;
            meet[x * n + y] = pos(sets[x] & sets[y]);
            join[x * n + y] = pos(sets[x] | sets[y]);
        }
    }
    Ok((FiniteLattice::from_parts(n, leq, meet, join), sets))
}

/// Independent distributivity test: `L` is distributive iff it is isomorphic
/// to the down-set lattice of its join-irreducibles via `x -> {j <= x}`.
pub fn birkhoff_oracle(lattice: &FiniteLattice, budget: &Budget) -> Result<BirkhoffVerdict> {
    let irr = lattice.join_irreducibles();
    let (downs, sets) = downset_lattice(lattice, &irr, budget)?;
    let mut verdict = BirkhoffVerdict {
        distributive: false,
        join_irreducibles: irr.clone(),
        downset_count: downs.size(),
    };
    if downs.size() != lattice.size() {
        return Ok(verdict);
    }
    let image: Vec<usize> = lattice
        .elements()
        .map(|x| {
            let mask = irr
                .iter()
                .enumerate()
                .filter(|&(_, &j)| lattice.leq(j, x))
                .fold(0u64, |m, (p, _)| m | 1 << p);
            sets.binary_search(&mask).expect("principal down-sets are down-sets")
        })
        .collect();
    let mut hit = vec![false; downs.size()];
    for &i in &image {
        hit[i] = true;
    }
    let bijective = hit.iter().all(|&h| h);
    let order_iso = lattice.elements().all(|x| {
        lattice
            .elements()
            .all(|y| lattice.leq(x, y) == downs.leq(image[x], image[y]))
    });
    verdict.distributive = bijective && order_iso;
    Ok(verdict)
}

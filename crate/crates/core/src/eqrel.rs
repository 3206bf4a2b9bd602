//! Equivalence relations on `0..n` and the lattice `Eq(n)`.
//!
//! A relation is stored as a class-id vector in canonical first-occurrence
//! form: point 0 is in class 0, and each new class gets the next id the first
//! time one of its points appears. Two relations are equal iff their vectors
//! are equal.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivalenceRelation {
    class_id: Vec<u32>,
    num_classes: usize,
}

impl EquivalenceRelation {
    /// Canonicalizes an arbitrary labelling of points by classes.
    pub fn from_labels<T: Eq + Hash>(labels: impl IntoIterator<Item = T>) -> Self {
        let mut seen: HashMap<T, u32> = HashMap::new();
        let class_id: Vec<u32> = labels
            .into_iter()
            .map(|v| {
                let next = seen.len() as u32;
                *seen.entry(v).or_insert(next)
            })
            .collect();
        EquivalenceRelation {
            num_classes: seen.len(),
            class_id,
        }
    }

    /// Same as [`from_labels`](Self::from_labels) for small integer labels,
    /// without hashing.
    pub(crate) fn from_dense(labels: &[usize]) -> Self {
        let mut map = vec![u32::MAX; labels.len().max(labels.iter().copied().max().map_or(0, |m| m + 1))];
        let mut next = 0u32;
        let class_id = labels
            .iter()
            .map(|&v| {
                if map[v] == u32::MAX {
                    map[v] = next;
                    next += 1;
                }
                map[v]
            })
            .collect();
        EquivalenceRelation {
            class_id,
            num_classes: next as usize,
        }
    }

    /// Builds a relation from explicit classes, which must partition `0..ground`.
    pub fn from_classes(ground: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; ground];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::Malformed(format!("class {c} is empty")));
            }
            for &p in class {
                if p >= ground {
                    return Err(Error::IndexOutOfRange { index: p, size: ground });
                }
                if owner[p] != usize::MAX {
                    return Err(Error::Malformed(format!("point {p} appears in two classes")));
                }
                owner[p] = c;
            }
        }
        if let Some(p) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Malformed(format!("point {p} is in no class")));
        }
        Ok(Self::from_dense(&owner))
    }

    /// One class.
    pub fn trivial(ground: usize) -> Self {
        EquivalenceRelation {
            class_id: vec![0; ground],
            num_classes: usize::from(ground > 0),
        }
    }

    /// All singletons.
    pub fn discrete(ground: usize) -> Self {
        EquivalenceRelation {
            class_id: (0..ground as u32).collect(),
            num_classes: ground,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.class_id.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_ids(&self) -> &[u32] {
        &self.class_id
    }

    pub fn class_of(&self, point: usize) -> u32 {
        self.class_id[point]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_id[x] == self.class_id[y]
    }

    pub fn is_trivial(&self) -> bool {
        self.num_classes <= 1
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes == self.ground_size()
    }

    /// Classes in order of first occurrence, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes];
        for (p, &c) in self.class_id.iter().enumerate() {
            out[c as usize].push(p);
        }
        out
    }

    /// Inclusion of relations as sets of pairs: every `self`-class lies inside
    /// an `other`-class.
    pub fn refines(&self, other: &EquivalenceRelation) -> bool {
        if self.ground_size() != other.ground_size() {
            return false;
        }
        let mut image = vec![u32::MAX; self.num_classes];
        self.class_id.iter().zip(&other.class_id).all(|(&c, &d)| {
            let slot = &mut image[c as usize];
            if *slot == u32::MAX {
                *slot = d;
            }
            *slot == d
        })
    }

    pub fn stats(&self) -> EqStats {
        let mut sizes = vec![0usize; self.num_classes];
        for &c in &self.class_id {
            sizes[c as usize] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        EqStats {
            num_classes: self.num_classes,
            is_trivial: self.is_trivial(),
            is_discrete: self.is_discrete(),
            class_size_multiset: sizes,
        }
    }

    /// Image of the relation under a bijection of the ground set: `x ~ y`
    /// becomes `perm[x] ~ perm[y]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut labels = vec![0u32; self.ground_size()];
        for (x, &c) in self.class_id.iter().enumerate() {
            labels[perm[x]] = c;
        }
        Self::from_labels(labels)
    }
}

/// Common refinement.
pub fn meet_eq(a: &EquivalenceRelation, b: &EquivalenceRelation) -> Result<EquivalenceRelation> {
    same_ground(a, b)?;
    Ok(EquivalenceRelation::from_labels(
        a.class_id.iter().zip(&b.class_id).map(|(&x, &y)| (x, y)),
    ))
}

/// Transitive closure of the union.
pub fn join_eq(a: &EquivalenceRelation, b: &EquivalenceRelation) -> Result<EquivalenceRelation> {
    same_ground(a, b)?;
    let mut uf = UnionFind::new(a.ground_size());
    for rel in [a, b] {
        let mut first = vec![usize::MAX; rel.num_classes];
        for (p, &c) in rel.class_id.iter().enumerate() {
            let f = &mut first[c as usize];
            if *f == usize::MAX {
                *f = p;
            } else {
                uf.union(*f, p);
            }
        }
    }
    Ok(uf.into_relation())
}

/// The relation induced on `subset`, with points renumbered in the order
/// given.
pub fn restrict_eq(rel: &EquivalenceRelation, subset: &[usize]) -> Result<EquivalenceRelation> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    for &p in subset {
        if p >= rel.ground_size() {
            return Err(Error::IndexOutOfRange {
                index: p,
                size: rel.ground_size(),
            });
        }
    }
    Ok(restrict_unchecked(rel, subset))
}

pub(crate) fn restrict_unchecked(rel: &EquivalenceRelation, subset: &[usize]) -> EquivalenceRelation {
    let mut map = vec![u32::MAX; rel.num_classes];
    let mut next = 0u32;
    let class_id = subset
        .iter()
        .map(|&p| {
            let c = rel.class_id[p] as usize;
            if map[c] == u32::MAX {
                map[c] = next;
                next += 1;
            }
            map[c]
        })
        .collect();
    EquivalenceRelation {
        class_id,
        num_classes: next as usize,
    }
}

/// Equivalence classes of `values`: points are related iff their values are equal.
pub fn kernel_of<T: Eq + Hash>(values: impl IntoIterator<Item = T>) -> Result<EquivalenceRelation> {
    let rel = EquivalenceRelation::from_labels(values);
    if rel.ground_size() == 0 {
        return Err(Error::EmptySubset);
    }
    Ok(rel)
}

fn same_ground(a: &EquivalenceRelation, b: &EquivalenceRelation) -> Result<()> {
    if a.ground_size() != b.ground_size() {
        return Err(Error::GroundMismatch {
            left: a.ground_size(),
            right: b.ground_size(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqStats {
    pub num_classes: usize,
    pub is_trivial: bool,
    pub is_discrete: bool,
    /// Class sizes, largest first.
    pub class_size_multiset: Vec<usize>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two classes were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub(crate) fn into_relation(mut self) -> EquivalenceRelation {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        EquivalenceRelation::from_dense(&roots)
    }
}

/// Every partition of `0..n`, once each, as restricted growth strings in
/// lexicographic order.
pub fn all_partitions(n: usize) -> Partitions {
    Partitions {
        n,
        rgs: vec![0; n],
        max_prefix: vec![0; n],
        done: false,
    }
}

pub struct Partitions {
    n: usize,
    rgs: Vec<usize>,
    // max_prefix[i] = max(rgs[0..i]) (0 for i = 0)
    max_prefix: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = EquivalenceRelation;

    fn next(&mut self) -> Option<EquivalenceRelation> {
        if self.done {
            return None;
        }
        let current = EquivalenceRelation {
            class_id: self.rgs.iter().map(|&c| c as u32).collect(),
            num_classes: if self.n == 0 {
                0
            } else {
                self.rgs.iter().copied().max().unwrap_or(0) + 1
            },
        };
        // Advance: rightmost position that can still grow.
        let mut i = self.n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.max_prefix[i] {
                self.rgs[i] += 1;
                for j in (i + 1)..self.n {
                    self.rgs[j] = 0;
                    self.max_prefix[j] = self.max_prefix[j - 1].max(self.rgs[j - 1]);
                }
                break;
            }
        }
        Some(current)
    }
}

/// Bell numbers, saturating.
pub fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().expect("nonempty"));
        for &v in &row {
            let last = *next.last().expect("nonempty");
            next.push(last.saturating_add(v));
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(ids: &[u32]) -> EquivalenceRelation {
        EquivalenceRelation::from_labels(ids.iter().copied())
    }

    #[test]
    fn kernels() {
        assert!(kernel_of([5, 5, 5]).unwrap().is_trivial());
        assert!(kernel_of([1, 2, 3]).unwrap().is_discrete());
        assert_eq!(kernel_of([7, 9, 7, 9]).unwrap().classes(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(kernel_of(Vec::<u8>::new()), Err(Error::EmptySubset));
    }

    #[test]
    fn canonical_form_is_first_occurrence() {
        assert_eq!(rel(&[3, 1, 3, 0]).class_ids(), &[0, 1, 0, 2]);
    }

    #[test]
    fn meet_and_join() {
        let x = rel(&[0, 1, 1, 2]);
        assert_eq!(meet_eq(&EquivalenceRelation::trivial(4), &x).unwrap(), x);
        assert_eq!(join_eq(&EquivalenceRelation::discrete(4), &x).unwrap(), x);
        let a = EquivalenceRelation::from_classes(4, &[vec![0, 1], vec![2], vec![3]]).unwrap();
        let b = EquivalenceRelation::from_classes(4, &[vec![1, 2], vec![0], vec![3]]).unwrap();
        assert_eq!(join_eq(&a, &b).unwrap().classes(), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(
            meet_eq(&a, &EquivalenceRelation::trivial(3)),
            Err(Error::GroundMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn projection_kernels_on_pairs() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|x| (x + 1..4).map(move |y| (x, y))).collect();
        let first = kernel_of(pairs.iter().map(|p| p.0)).unwrap();
        let second = kernel_of(pairs.iter().map(|p| p.1)).unwrap();
        assert!(meet_eq(&first, &second).unwrap().is_discrete());
        assert_eq!(
            first.stats(),
            EqStats {
                num_classes: 3,
                is_trivial: false,
                is_discrete: false,
                class_size_multiset: vec![3, 2, 1]
            }
        );
    }

    #[test]
    fn stats_of_extremes() {
        let t = EquivalenceRelation::trivial(9).stats();
        assert_eq!((t.num_classes, t.is_trivial, t.is_discrete), (1, true, false));
        assert_eq!(t.class_size_multiset, vec![9]);
        let d = EquivalenceRelation::discrete(3).stats();
        assert_eq!((d.num_classes, d.is_trivial, d.is_discrete), (3, false, true));
        assert_eq!(d.class_size_multiset, vec![1, 1, 1]);
    }

    #[test]
    fn restrictions() {
        let y = [1, 3];
        assert!(restrict_eq(&EquivalenceRelation::discrete(4), &y)
            .unwrap()
            .is_discrete());
        assert!(restrict_eq(&EquivalenceRelation::trivial(4), &y).unwrap().is_trivial());
        let r = EquivalenceRelation::from_classes(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let on12 = restrict_eq(&r, &[1, 2]).unwrap();
        assert!(on12.is_discrete());
        assert_eq!(on12.ground_size(), 2);
        assert_eq!(restrict_eq(&r, &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn from_classes_rejects_bad_partitions() {
        assert!(EquivalenceRelation::from_classes(3, &[vec![0, 1]]).is_err());
        assert!(EquivalenceRelation::from_classes(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(EquivalenceRelation::from_classes(2, &[vec![0, 1], vec![]]).is_err());
    }

    #[test]
    fn partition_counts_match_bell() {
        for n in 0..=7 {
            assert_eq!(all_partitions(n).count(), bell(n), "n = {n}");
        }
        assert_eq!(bell(10), 115_975);
        let p: Vec<_> = all_partitions(3).map(|r| r.class_ids().to_vec()).collect();
        assert_eq!(
            p,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn refinement() {
        let d = EquivalenceRelation::discrete(3);
        let t = EquivalenceRelation::trivial(3);
        assert!(d.refines(&t));
        assert!(!t.refines(&d));
        assert!(rel(&[0, 0, 1]).refines(&rel(&[0, 0, 0])));
        assert!(!rel(&[0, 0, 1]).refines(&rel(&[0, 1, 1])));
    }
}

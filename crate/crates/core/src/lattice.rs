//! Finite bounded lattices over dense element indices.
//!
//! A [`FiniteLattice`] stores its order as an `n x n` boolean matrix together
//! with precomputed meet and join tables. Elements are the indices
//! `0..size`; labels are cosmetic and never influence any algorithm.

use crate::error::{Bound, Error, Result};
use crate::Element;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<Element>,
    join: Vec<Element>,
    bottom: Element,
    top: Element,
    labels: Option<Vec<String>>,
}

impl FiniteLattice {
    /// Builds a lattice from an arbitrary set of order pairs `(x, y)` meaning
    /// `x <= y`. The relation is closed reflexively and transitively first, so
    /// cover pairs are enough.
    pub fn from_leq_pairs(size: usize, pairs: &[(Element, Element)]) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("a lattice needs at least one element".into()));
        }
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(x, y) in pairs {
            for e in [x, y] {
                if e >= size {
                    return Err(Error::IndexOutOfRange { index: e, size });
                }
            }
            leq[x * size + y] = true;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if !leq[i * size + k] {
                    continue;
                }
                for j in 0..size {
                    if leq[k * size + j] {
                        leq[i * size + j] = true;
                    }
                }
            }
        }
        Self::from_order_matrix(size, leq)
    }

    /// Builds a lattice from a full order matrix (row-major, `leq[x*n+y]` is
    /// `x <= y`). The matrix must already be reflexive and transitive.
    pub(crate) fn from_order_matrix(size: usize, leq: Vec<bool>) -> Result<Self> {
        debug_assert_eq!(leq.len(), size * size);
        for x in 0..size {
            for y in (x + 1)..size {
                if leq[x * size + y] && leq[y * size + x] {
                    return Err(Error::NotAPartialOrder { x, y });
                }
            }
        }
        let down_count: Vec<usize> = (0..size)
            .map(|x| (0..size).filter(|&z| leq[z * size + x]).count())
            .collect();
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for x in 0..size {
            for y in x..size {
                let m = extremal_bound(size, &leq, &down_count, x, y, Bound::Meet).ok_or(Error::NotALattice {
                    x,
                    y,
                    bound: Bound::Meet,
                })?;
                let j = extremal_bound(size, &leq, &down_count, x, y, Bound::Join).ok_or(Error::NotALattice {
                    x,
                    y,
                    bound: Bound::Join,
                })?;
                meet[x * size + y] = m;
                meet[y * size + x] = m;
                join[x * size + y] = j;
                join[y * size + x] = j;
            }
        }
        let bottom = (0..size).fold(0, |acc, x| meet[acc * size + x]);
        let top = (0..size).fold(0, |acc, x| join[acc * size + x]);
        Ok(FiniteLattice {
            size,
            leq,
            meet,
            join,
            bottom,
            top,
            labels: None,
        })
    }

    /// Assembles a lattice from tables that are correct by construction
    /// (products, sublattices). Skips the cubic bound search.
    pub(crate) fn from_parts(size: usize, leq: Vec<bool>, meet: Vec<Element>, join: Vec<Element>) -> Self {
        let bottom = (0..size).fold(0, |acc, x| meet[acc * size + x]);
        let top = (0..size).fold(0, |acc, x| join[acc * size + x]);
        FiniteLattice {
            size,
            leq,
            meet,
            join,
            bottom,
            top,
            labels: None,
        }
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.size {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    pub fn top(&self) -> Element {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.leq[x * self.size + y]
    }

    #[inline]
    pub fn lt(&self, x: Element, y: Element) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: Element, y: Element) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.size + y]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Element) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Looks an element up by label, falling back to a numeric index.
    pub fn element_named(&self, name: &str) -> Option<Element> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&i| i < self.size)
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                size: self.size,
            })
        }
    }

    /// `true` when `y` covers `x`.
    pub fn covers(&self, x: Element, y: Element) -> bool {
        self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y))
    }

    /// All cover pairs `(lower, upper)` in index order.
    pub fn cover_pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.covers(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// All strict order pairs plus the diagonal.
    pub fn leq_pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Number of neighbours of each element in the Hasse diagram.
    pub fn cover_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.size];
        for (x, y) in self.cover_pairs() {
            deg[x] += 1;
            deg[y] += 1;
        }
        deg
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<Element> = self.elements().collect();
        order.sort_by_key(|&x| (self.elements().filter(|&z| self.leq(z, x)).count(), x));
        let mut h = vec![0; self.size];
        for &y in &order {
            for x in self.elements() {
                if self.covers(x, y) {
                    h[y] = h[y].max(h[x] + 1);
                }
            }
        }
        h
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Element> {
        self.elements()
            .filter(|&y| self.elements().filter(|&x| self.covers(x, y)).count() == 1)
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        self.elements().all(|x| self.elements().all(|y| self.comparable(x, y)))
    }

    /// Same order and tables, ignoring labels.
    pub fn same_structure(&self, other: &FiniteLattice) -> bool {
        self.size == other.size && self.leq == other.leq
    }

    /// Re-checks every lattice axiom exhaustively against the stored tables.
    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        let fail = |msg: String| Err(Error::AxiomViolation(msg));
        for x in 0..n {
            if !self.leq(x, x) {
                return fail(format!("reflexivity fails at {x}"));
            }
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return fail(format!("antisymmetry fails at ({x},{y})"));
                }
                for z in 0..n {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return fail(format!("transitivity fails at ({x},{y},{z})"));
                    }
                }
            }
        }
        for x in 0..n {
            if !self.leq(self.bottom, x) || !self.leq(x, self.top) {
                return fail(format!("bounds fail at {x}"));
            }
            for y in 0..n {
                let m = self.meet(x, y);
                let j = self.join(x, y);
                if !(self.leq(m, x) && self.leq(m, y)) {
                    return fail(format!("meet({x},{y}) is not a lower bound"));
                }
                if !(self.leq(x, j) && self.leq(y, j)) {
                    return fail(format!("join({x},{y}) is not an upper bound"));
                }
                for z in 0..n {
                    if self.leq(z, x) && self.leq(z, y) && !self.leq(z, m) {
                        return fail(format!("meet({x},{y}) is not greatest"));
                    }
                    if self.leq(x, z) && self.leq(y, z) && !self.leq(j, z) {
                        return fail(format!("join({x},{y}) is not least"));
                    }
                    if self.meet(x, self.meet(y, z)) != self.meet(self.meet(x, y), z) {
                        return fail(format!("meet not associative at ({x},{y},{z})"));
                    }
                    if self.join(x, self.join(y, z)) != self.join(self.join(x, y), z) {
                        return fail(format!("join not associative at ({x},{y},{z})"));
                    }
                }
                if m != self.meet(y, x) || j != self.join(y, x) {
                    return fail(format!("commutativity fails at ({x},{y})"));
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return fail(format!("absorption fails at ({x},{y})"));
                }
            }
            if self.meet(x, x) != x || self.join(x, x) != x {
                return fail(format!("idempotence fails at {x}"));
            }
        }
        Ok(())
    }

    /// Relabels elements: element `x` of `self` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[Element]) -> Result<FiniteLattice> {
        let n = self.size;
        if perm.len() != n || !is_permutation(perm) {
            return Err(Error::InvalidParameter("not a permutation of the elements".into()));
        }
        let mut leq = vec![false; n * n];
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (px, py) = (perm[x], perm[y]);
                leq[px * n + py] = self.leq(x, y);
                meet[px * n + py] = perm[self.meet(x, y)];
                join[px * n + py] = perm[self.join(x, y)];
            }
        }
        let mut out = FiniteLattice::from_parts(n, leq, meet, join);
        if let Some(labels) = &self.labels {
            let mut new = vec![String::new(); n];
            for x in 0..n {
                new[perm[x]] = labels[x].clone();
            }
            out.labels = Some(new);
        }
        Ok(out)
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Greatest common lower bound (or least common upper bound) of `x` and `y`,
/// if it exists uniquely.
fn extremal_bound(
    n: usize,
    leq: &[bool],
    down_count: &[usize],
    x: Element,
    y: Element,
    bound: Bound,
) -> Option<Element> {
    let is_bound = |z: Element| match bound {
        Bound::Meet => leq[z * n + x] && leq[z * n + y],
        Bound::Join => leq[x * n + z] && leq[y * n + z],
    };
    let candidate = (0..n).filter(|&z| is_bound(z)).max_by_key(|&z| match bound {
        Bound::Meet => down_count[z] as isize,
        Bound::Join => -(down_count[z] as isize),
    })?;
    let dominates = (0..n).filter(|&z| is_bound(z)).all(|z| match bound {
        Bound::Meet => leq[z * n + candidate],
        Bound::Join => leq[candidate * n + z],
    });
    dominates.then_some(candidate)
}

//! Equivalenced lattices and the reasonableness test.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::eqrel::EquivalenceRelation;
use crate::error::{check_limit, Error, Result};
use crate::{Budget, Element, FiniteLattice};

/// A lattice with an equivalence relation `E` on its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalencedLattice {
    lattice: FiniteLattice,
    e: EquivalenceRelation,
}

impl EquivalencedLattice {
    pub fn new(lattice: FiniteLattice, e: EquivalenceRelation) -> Result<Self> {
        if e.ground_size() != lattice.size() {
            return Err(Error::GroundMismatch {
                left: lattice.size(),
                right: e.ground_size(),
            });
        }
        Ok(EquivalencedLattice { lattice, e })
    }

    /// `E` generated by the given pairs.
    pub fn from_pairs(lattice: FiniteLattice, pairs: &[(Element, Element)]) -> Result<Self> {
        let n = lattice.size();
        let mut uf = crate::eqrel::UnionFind::new(n);
        for &(a, b) in pairs {
            lattice.check_element(a)?;
            lattice.check_element(b)?;
            uf.union(a, b);
        }
        Self::new(lattice, uf.into_relation())
    }

    pub fn equality(lattice: FiniteLattice) -> Self {
        let e = EquivalenceRelation::discrete(lattice.size());
        EquivalencedLattice { lattice, e }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn e(&self) -> &EquivalenceRelation {
        &self.e
    }

    /// Related pairs `(a, b)` with `a < b`.
    pub fn e_pairs(&self) -> Vec<(Element, Element)> {
        self.lattice
            .elements()
            .tuple_combinations()
            .filter(|&(a, b)| self.e.related(a, b))
            .collect()
    }

    fn ideal(&self, a: Element) -> Vec<Element> {
        self.lattice.elements().filter(|&x| self.lattice.leq(x, a)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Related elements whose principal ideals differ in size.
    Cardinality {
        a: Element,
        b: Element,
        ideal_sizes: (usize, usize),
    },
    /// Every linear order fails some related pair.
    Exhaustive { orders_checked: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReasonableVerdict {
    pub reasonable: bool,
    /// Elements listed from least to greatest in the witnessing order.
    pub order: Option<Vec<Element>>,
    pub obstruction: Option<Obstruction>,
}

pub fn cardinality_obstruction(el: &EquivalencedLattice) -> Option<Obstruction> {
    el.e_pairs().into_iter().find_map(|(a, b)| {
        let (i, j) = (el.ideal(a).len(), el.ideal(b).len());
        (i != j).then_some(Obstruction::Cardinality {
            a,
            b,
            ideal_sizes: (i, j),
        })
    })
}

/// Whether the order (listed least first) makes every related pair of
/// principal ideals E-compatibly isomorphic. The isomorphism between two
/// finite linear orders is unique, so it is just the rank-matching map.
pub fn order_witnesses(el: &EquivalencedLattice, order: &[Element]) -> bool {
    let n = el.lattice.size();
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let sorted_ideal = |a| {
        let mut v = el.ideal(a);
        v.sort_by_key(|&x| pos[x]);
        v
    };
    el.e_pairs().into_iter().all(|(a, b)| {
        let (i, j) = (sorted_ideal(a), sorted_ideal(b));
        i.len() == j.len() && i.iter().zip(&j).all(|(&x, &y)| el.e.related(x, y))
    })
}

/// First witnessing order among all permutations in lexicographic order,
/// without the cardinality shortcut.
pub fn reasonable_by_search(el: &EquivalencedLattice, budget: &Budget) -> Result<(Option<Vec<Element>>, usize)> {
    let n = el.lattice.size();
    check_limit("reasonableness lattice", n, budget.max_reasonable_lattice)?;
    let mut checked = 0;
    for order in (0..n).permutations(n) {
        checked += 1;
        if order_witnesses(el, &order) {
            return Ok((Some(order), checked));
        }
    }
    Ok((None, checked))
}

/// The cardinality fast path runs at any size; only the order search is
/// bounded by `max_reasonable_lattice`.
pub fn is_reasonable(el: &EquivalencedLattice, budget: &Budget) -> Result<ReasonableVerdict> {
    if let Some(obstruction) = cardinality_obstruction(el) {
        return Ok(ReasonableVerdict {
            reasonable: false,
            order: None,
            obstruction: Some(obstruction),
        });
    }
    let (order, orders_checked) = reasonable_by_search(el, budget)?;
    Ok(match order {
        Some(order) => ReasonableVerdict {
            reasonable: true,
            order: Some(order),
            obstruction: None,
        },
        None => ReasonableVerdict {
            reasonable: false,
            order: None,
            obstruction: Some(Obstruction::Exhaustive { orders_checked }),
        },
    })
}

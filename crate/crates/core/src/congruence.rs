//! Finite algebras and their congruence lattices.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::constructions::dual;
use crate::embed::{isomorphism_unbudgeted, LatticeEmbedding};
use crate::eqrel::{bell, join_eq, meet_eq, EquivalenceRelation, UnionFind};
use crate::error::{check_limit, Error, Result};
use crate::{Budget, FiniteLattice, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operation {
    pub arity: usize,
    /// Results for all argument tuples in lexicographic order, first
    /// argument most significant.
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    carrier_size: usize,
    ops: Vec<Operation>,
}

impl FiniteAlgebra {
    pub fn new(carrier_size: usize, ops: Vec<Operation>) -> Result<Self> {
        if carrier_size == 0 {
            return Err(Error::InvalidParameter("empty carrier".into()));
        }
        for (i, op) in ops.iter().enumerate() {
            let expected = u32::try_from(op.arity)
                .ok()
                .and_then(|a| carrier_size.checked_pow(a))
                .ok_or_else(|| Error::Malformed(format!("operation {i}: arity too large")))?;
            if op.table.len() != expected {
                return Err(Error::Malformed(format!(
                    "operation {i}: table has {} entries, expected {expected}",
                    op.table.len()
                )));
            }
            if let Some(&v) = op.table.iter().find(|&&v| v >= carrier_size) {
                return Err(Error::Malformed(format!(
                    "operation {i}: value {v} outside carrier of size {carrier_size}"
                )));
            }
        }
        Ok(FiniteAlgebra { carrier_size, ops })
    }

    /// `(Z_n, +)`.
    pub fn cyclic_group(n: usize) -> Self {
        let table = (0..n).cartesian_product(0..n).map(|(x, y)| (x + y) % n).collect();
        FiniteAlgebra::new(n, vec![Operation { arity: 2, table }]).expect("well-formed")
    }

    /// The direct product; both algebras must have the same operation arities.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<Self> {
        if self.ops.len() != other.ops.len() || self.ops.iter().zip(&other.ops).any(|(a, b)| a.arity != b.arity) {
            return Err(Error::InvalidParameter("algebras of different signature".into()));
        }
        let (n1, n2) = (self.carrier_size, other.carrier_size);
        let n = n1 * n2;
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .enumerate()
            .map(|(i, (a, _))| {
                let table = (0..n.pow(a.arity as u32))
                    .map(|t| {
                        let args = decode_tuple(t, n, a.arity);
                        let left: Vec<usize> = args.iter().map(|&x| x / n2).collect();
                        let right: Vec<usize> = args.iter().map(|&x| x % n2).collect();
                        self.apply(i, &left) * n2 + other.apply(i, &right)
                    })
                    .collect();
                Operation { arity: a.arity, table }
            })
            .collect();
        FiniteAlgebra::new(n, ops)
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let o = &self.ops[op];
        debug_assert_eq!(args.len(), o.arity);
        o.table[args.iter().fold(0, |acc, &a| acc * self.carrier_size + a)]
    }
}

fn decode_tuple(mut index: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityWitness {
    pub op: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Whether `theta` is compatible with every operation; the witness is the
/// first pair of componentwise-related argument tuples with unrelated results.
pub fn is_congruence(theta: &EquivalenceRelation, algebra: &FiniteAlgebra) -> Result<Verdict<CompatibilityWitness>> {
    let n = algebra.carrier_size;
    if theta.ground_size() != n {
        return Err(Error::GroundMismatch {
            left: theta.ground_size(),
            right: n,
        });
    }
    let classes = theta.classes();
    for (i, op) in algebra.ops.iter().enumerate() {
        for t in 0..op.table.len() {
            let left = decode_tuple(t, n, op.arity);
            let choices = left
                .iter()
                .map(|&a| classes[theta.class_of(a) as usize].iter().copied());
            for right in choices.multi_cartesian_product() {
                if !theta.related(algebra.apply(i, &left), algebra.apply(i, &right)) {
                    return Ok(Verdict::fail(CompatibilityWitness { op: i, left, right }));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// The least congruence containing `rel`, by closing under every unary
/// polynomial translation `x -> f(c_1, .., x, .., c_k)`.
pub fn congruence_closure(algebra: &FiniteAlgebra, rel: &EquivalenceRelation) -> EquivalenceRelation {
    let n = algebra.carrier_size;
    let mut uf = UnionFind::new(n);
    for class in rel.classes() {
        for w in class.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    loop {
        let mut changed = false;
        for (i, op) in algebra.ops.iter().enumerate() {
            if op.arity == 0 {
                continue;
            }
            for pos in 0..op.arity {
                for rest in 0..n.pow(op.arity as u32 - 1) {
                    let others = decode_tuple(rest, n, op.arity - 1);
                    let mut args: Vec<usize> = others[..pos].to_vec();
                    args.push(0);
                    args.extend_from_slice(&others[pos..]);
                    let mut first_in_class: Vec<Option<usize>> = vec![None; n];
                    for x in 0..n {
                        args[pos] = x;
                        let fx = algebra.apply(i, &args);
                        let root = uf.find(x);
                        match first_in_class[root] {
                            None => first_in_class[root] = Some(fx),
                            Some(fy) => changed |= uf.union(fx, fy),
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    uf.into_relation()
}

pub fn principal_congruence(algebra: &FiniteAlgebra, a: usize, b: usize) -> Result<EquivalenceRelation> {
    let n = algebra.carrier_size;
    for x in [a, b] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, size: n });
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| if x == b { a } else { x }).collect();
    Ok(congruence_closure(algebra, &EquivalenceRelation::from_labels(labels)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattice {
    /// Element `i` is `congruences[i]`; equality is the bottom (index 0) and
    /// the total relation the top (last index).
    pub lattice: FiniteLattice,
    pub congruences: Vec<EquivalenceRelation>,
}

pub(crate) fn relation_label(rel: &EquivalenceRelation) -> String {
    rel.classes()
        .iter()
        .map(|c| c.iter().map(|p| p.to_string()).join(","))
        .join("|")
}

/// All congruences, as the join-closure of the principal congruences and
/// equality, ordered by inclusion.
pub fn congruence_lattice(algebra: &FiniteAlgebra, budget: &Budget) -> Result<CongruenceLattice> {
    let n = algebra.carrier_size;
    check_limit("carrier", n, budget.max_carrier)?;
    let mut found: BTreeSet<EquivalenceRelation> = BTreeSet::new();
    found.insert(EquivalenceRelation::discrete(n));
    for (a, b) in (0..n).tuple_combinations() {
        found.insert(principal_congruence(algebra, a, b)?);
    }
    let mut frontier: Vec<EquivalenceRelation> = found.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        let current: Vec<EquivalenceRelation> = found.iter().cloned().collect();
        for d in current {
            let j = join_eq(&c, &d)?;
            debug_assert!(is_congruence(&j, algebra).map(|v| v.holds).unwrap_or(false));
            let j = congruence_closure(algebra, &j);
            if found.insert(j.clone()) {
                check_limit("congruences", found.len(), budget.max_elements)?;
                frontier.push(j);
            }
        }
    }
    let mut congruences: Vec<EquivalenceRelation> = found.into_iter().collect();
    congruences.sort_by(|x, y| {
        y.num_classes()
            .cmp(&x.num_classes())
            .then_with(|| x.class_ids().cmp(y.class_ids()))
    });
    let k = congruences.len();
    let mut leq = vec![false; k * k];
    for (i, x) in congruences.iter().enumerate() {
        for (j, y) in congruences.iter().enumerate() {
            leq[i * k + j] = x.refines(y);
        }
    }
    let lattice = FiniteLattice::from_order_matrix(k, leq)?.with_labels(congruences.iter().map(relation_label))?;
    debug_assert!(lattice.elements().all(|x| lattice
        .elements()
        .all(|y| meet_eq(&congruences[x], &congruences[y]).ok().as_ref() == Some(&congruences[lattice.meet(x, y)]))));
    Ok(CongruenceLattice { lattice, congruences })
}

/// `L` is isomorphic to the dual of `Cg(A)`; the witness maps `L` into the
/// dual.
pub fn is_congruence_representation(
    lattice: &FiniteLattice,
    algebra: &FiniteAlgebra,
    budget: &Budget,
) -> Result<Verdict<LatticeEmbedding>> {
    let cg = congruence_lattice(algebra, budget)?;
    check_limit("isomorphism search target", cg.lattice.size(), budget.max_search_target)?;
    Ok(match isomorphism_unbudgeted(lattice, &dual(&cg.lattice)) {
        Some(iso) => Verdict::pass_with(iso),
        None => Verdict {
            holds: false,
            witness: None,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraSearch {
    pub max_carrier: usize,
    pub max_unary_ops: usize,
    /// Binary operations are enumerated by full table, so only tiny carriers
    /// are allowed.
    pub max_binary_ops: usize,
    /// Match `Cg(A)` against the dual of the lattice instead.
    pub match_dual: bool,
}

impl Default for AlgebraSearch {
    fn default() -> Self {
        AlgebraSearch {
            max_carrier: 4,
            max_unary_ops: 2,
            max_binary_ops: 0,
            match_dual: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSearchReport {
    pub found: Option<FiniteAlgebra>,
    pub algebras_tried: usize,
    /// Absence within the budget proves nothing about larger algebras.
    pub note: String,
}

const MAX_BINARY_TABLES: usize = 20_000;

/// First algebra in enumeration order whose congruence lattice is isomorphic
/// to `L` (or its dual). Carriers grow from 1; within a carrier, operation
/// counts grow, and operation sets are taken as combinations of the
/// non-constant, non-identity unary maps (then binary tables) in index order.
/// Constant and identity maps are skipped since they preserve every
/// equivalence relation.
pub fn search_algebra(lattice: &FiniteLattice, opts: &AlgebraSearch, budget: &Budget) -> Result<AlgebraSearchReport> {
    check_limit("carrier", opts.max_carrier, budget.max_carrier)?;
    let target = if opts.match_dual {
        dual(lattice)
    } else {
        lattice.clone()
    };
    let mut tried = 0usize;
    for n in 1..=opts.max_carrier {
        if bell(n) < target.size() {
            continue;
        }
        let unary: Vec<Vec<usize>> = (0..n)
            .map(|_| 0..n)
            .multi_cartesian_product()
            .filter(|t| !t.iter().all_equal() && !t.iter().enumerate().all(|(i, &v)| i == v))
            .collect();
        let binary: Vec<Vec<usize>> = if opts.max_binary_ops > 0 {
            let tables = n.checked_pow((n * n) as u32).unwrap_or(usize::MAX);
            check_limit("binary operation tables", tables, MAX_BINARY_TABLES)?;
            (0..n * n).map(|_| 0..n).multi_cartesian_product().collect()
        } else {
            Vec::new()
        };
        for u in 0..=opts.max_unary_ops.min(unary.len()) {
            for b in 0..=opts.max_binary_ops.min(binary.len()) {
                for us in (0..unary.len()).combinations(u) {
                    for bs in (0..binary.len()).combinations(b) {
                        let ops = us
                            .iter()
                            .map(|&i| Operation {
                                arity: 1,
                                table: unary[i].clone(),
                            })
                            .chain(bs.iter().map(|&i| Operation {
                                arity: 2,
                                table: binary[i].clone(),
                            }))
                            .collect();
                        let alg = FiniteAlgebra::new(n, ops)?;
                        tried += 1;
                        let cg = congruence_lattice(&alg, budget)?;
                        if cg.lattice.size() == target.size() && isomorphism_unbudgeted(&target, &cg.lattice).is_some()
                        {
                            return Ok(AlgebraSearchReport {
                                found: Some(alg),
                                algebras_tried: tried,
                                note: "found".into(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(AlgebraSearchReport {
        found: None,
        algebras_tried: tried,
        note: format!(
            "no algebra within carrier <= {}, unary ops <= {}, binary ops <= {}; absence within this budget proves nothing",
            opts.max_carrier, opts.max_unary_ops, opts.max_binary_ops
        ),
    })
}

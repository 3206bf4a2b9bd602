//! Congruences by filtering every partition of the carrier.

use finlat_core::congruence::FiniteAlgebra;
use finlat_core::EquivalenceRelation;
use itertools::Itertools;

use super::cpp::set_partitions;

/// Compatibility checked on every pair of argument tuples.
pub fn compatible(algebra: &FiniteAlgebra, label: &[usize]) -> bool {
    let n = algebra.carrier_size();
    algebra.ops().iter().all(|op| {
        let tuples: Vec<Vec<usize>> = (0..op.arity).map(|_| 0..n).multi_cartesian_product().collect();
        let eval = |t: &[usize]| op.table[t.iter().fold(0, |acc, &x| acc * n + x)];
        tuples.iter().all(|s| {
            tuples.iter().all(|t| {
                let related = s.iter().zip(t).all(|(&a, &b)| label[a] == label[b]);
                !related || label[eval(s)] == label[eval(t)]
            })
        })
    })
}

pub fn congruences_by_filter(algebra: &FiniteAlgebra) -> Vec<EquivalenceRelation> {
    let n = algebra.carrier_size();
    let points: Vec<usize> = (0..n).collect();
    let mut out: Vec<EquivalenceRelation> = set_partitions(&points)
        .into_iter()
        .map(|blocks| {
            let mut label = vec![0; n];
            for (i, b) in blocks.iter().enumerate() {
                for &p in b {
                    label[p] = i;
                }
            }
            label
        })
        .filter(|label| compatible(algebra, label))
        .map(EquivalenceRelation::from_labels)
        .collect();
    out.sort();
    out
}

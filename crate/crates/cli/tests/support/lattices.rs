//! All lattices of a given size, up to isomorphism, from naturally labelled
//! posets on the elements strictly between bottom and top.

use std::collections::HashSet;

use finlat_core::FiniteLattice;
use itertools::Itertools;

/// Order matrix on `0..n` where 0 is bottom, `n - 1` is top and the inner
/// order is `inner[i][j]` (only `i < j` can hold).
fn full_order(m: usize, inner: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = m + 2;
    let mut leq = vec![vec![false; n]; n];
    for x in 0..n {
        leq[0][x] = true;
        leq[x][n - 1] = true;
        leq[x][x] = true;
    }
    for i in 0..m {
        for j in 0..m {
            leq[i + 1][j + 1] |= inner[i][j];
        }
    }
    leq
}

fn least(candidates: &[usize], leq: &[Vec<bool>]) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .find(|&u| candidates.iter().all(|&v| leq[u][v]))
}

fn is_lattice(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    (0..n).tuple_combinations().all(|(x, y)| {
        let ups: Vec<usize> = (0..n).filter(|&u| leq[x][u] && leq[y][u]).collect();
        let downs: Vec<usize> = (0..n).filter(|&d| leq[d][x] && leq[d][y]).collect();
        let geq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq[b][a]).collect()).collect();
        least(&ups, leq).is_some() && least(&downs, &geq).is_some()
    })
}

fn canonical(m: usize, inner: &[Vec<bool>]) -> Vec<bool> {
    (0..m)
        .permutations(m)
        .map(|p| {
            let mut code = vec![false; m * m];
            for i in 0..m {
                for j in 0..m {
                    code[p[i] * m + p[j]] = inner[i][j];
                }
            }
            code
        })
        .min()
        .unwrap_or_default()
}

/// Order matrices of every lattice with exactly `n` elements, one per
/// isomorphism class.
pub fn lattice_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    if n == 1 {
        return vec![vec![vec![true]]];
    }
    let m = n - 2;
    let slots: Vec<(usize, usize)> = (0..m).tuple_combinations().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let mut inner = vec![vec![false; m]; m];
        for (b, &(i, j)) in slots.iter().enumerate() {
            inner[i][j] = mask >> b & 1 == 1;
        }
        let transitive = (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| !(inner[i][j] && inner[j][k]) || inner[i][k])));
        if !transitive {
            continue;
        }
        let leq = full_order(m, &inner);
        if !is_lattice(&leq) {
            continue;
        }
        if seen.insert(canonical(m, &inner)) {
            out.push(leq);
        }
    }
    out
}

pub fn to_lattice(leq: &[Vec<bool>]) -> FiniteLattice {
    let n = leq.len();
    let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).filter(|&(x, y)| leq[x][y]).collect();
    FiniteLattice::from_leq_pairs(n, &pairs).expect("oracle produced a lattice")
}

/// Every lattice with at most `max` elements, up to isomorphism.
pub fn all_lattices(max: usize) -> Vec<FiniteLattice> {
    (1..=max)
        .flat_map(|n| lattice_orders(n))
        .map(|o| to_lattice(&o))
        .collect()
}

/// Distributivity straight from the order: meets and joins recomputed here.
pub fn distributive_by_identity(leq: &[Vec<bool>]) -> bool {
    let n = leq.len();
    let geq: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq[b][a]).collect()).collect();
    let join = |x: usize, y: usize| {
        let ups: Vec<usize> = (0..n).filter(|&u| leq[x][u] && leq[y][u]).collect();
        least(&ups, leq).unwrap()
    };
    let meet = |x: usize, y: usize| {
        let downs: Vec<usize> = (0..n).filter(|&d| leq[d][x] && leq[d][y]).collect();
        least(&downs, &geq).unwrap()
    };
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| meet(x, join(y, z)) == join(meet(x, y), meet(x, z)))))
}

/// Known counts of lattices with 1..=7 elements, up to isomorphism.
pub const LATTICE_COUNTS: [usize; 7] = [1, 1, 1, 2, 5, 15, 53];
/// Known counts of distributive lattices with 1..=7 elements.
pub const DISTRIBUTIVE_COUNTS: [usize; 7] = [1, 1, 1, 2, 3, 5, 8];

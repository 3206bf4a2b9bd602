//! n-CPP straight from the recursive definition, on explicit block lists.

use std::collections::{BTreeSet, HashMap};

use finlat_core::{EquivalenceRelation, FiniteLattice, Representation};
use itertools::Itertools;

pub type Blocks = BTreeSet<BTreeSet<usize>>;

/// Every set partition of `points`, by inserting each point into an
/// existing block or a new one.
pub fn set_partitions(points: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    fn go(points: &[usize], i: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == points.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(points[i]);
            go(points, i + 1, cur, out);
            cur[b].pop();
        }
        cur.push(vec![points[i]]);
        go(points, i + 1, cur, out);
        cur.pop();
    }
    go(points, 0, &mut Vec::new(), &mut out);
    out
}

fn blocks_on(label: &[usize], points: &[usize]) -> Blocks {
    let mut by: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for &p in points {
        by.entry(label[p]).or_default().insert(p);
    }
    by.into_values().collect()
}

pub struct CppOracle {
    /// One class label per ground point, for each lattice element.
    alphas: Vec<Vec<usize>>,
    memo: HashMap<(Vec<usize>, usize), bool>,
}

impl CppOracle {
    pub fn new(rep: &Representation) -> Self {
        let alphas = rep
            .alphas()
            .iter()
            .map(|a| (0..rep.ground_size()).map(|p| a.class_of(p) as usize).collect())
            .collect();
        CppOracle {
            alphas,
            memo: HashMap::new(),
        }
    }

    fn restricted(&self, points: &[usize]) -> Vec<Blocks> {
        self.alphas.iter().map(|a| blocks_on(a, points)).collect()
    }

    pub fn injective_on(&self, points: &[usize]) -> bool {
        self.restricted(points).iter().all_unique()
    }

    /// Whether `theta` restricted to `points` equals some restricted alpha.
    pub fn canonical_on(&self, theta: &[Vec<usize>], points: &[usize]) -> Option<usize> {
        let mut label = HashMap::new();
        for (i, b) in theta.iter().enumerate() {
            for &p in b {
                label.insert(p, i);
            }
        }
        let mut by: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for &p in points {
            by.entry(label[&p]).or_default().insert(p);
        }
        let t: Blocks = by.into_values().collect();
        self.restricted(points).iter().position(|a| *a == t)
    }

    pub fn holds(&mut self, points: &[usize], depth: usize) -> bool {
        if depth == 0 {
            return self.restricted(points).iter().all(|a| a.len() != 2);
        }
        if let Some(&v) = self.memo.get(&(points.to_vec(), depth)) {
            return v;
        }
        let subsets: Vec<Vec<usize>> = (1..=points.len())
            .flat_map(|k| points.iter().copied().combinations(k))
            .collect();
        let mut result = true;
        for theta in set_partitions(points) {
            let ok = subsets
                .iter()
                .any(|y| self.canonical_on(&theta, y).is_some() && self.injective_on(y) && self.holds(y, depth - 1));
            if !ok {
                result = false;
                break;
            }
        }
        self.memo.insert((points.to_vec(), depth), result);
        result
    }
}

fn labels(blocks: &[Vec<usize>], ground: usize) -> Vec<usize> {
    let mut label = vec![0; ground];
    for (i, b) in blocks.iter().enumerate() {
        for &p in b {
            label[p] = i;
        }
    }
    label
}

/// Relabels classes in order of first occurrence.
fn normalized(label: &[usize]) -> Vec<usize> {
    let mut ids = HashMap::new();
    label
        .iter()
        .map(|c| {
            let k = ids.len();
            *ids.entry(*c).or_insert(k)
        })
        .collect()
}

/// Every pseudo-representation of `lattice` on a ground of size `ground`,
/// one per isomorphism class under relabelling the ground.
pub fn all_pseudo_reps(lattice: &FiniteLattice, ground: usize) -> Vec<Representation> {
    let points: Vec<usize> = (0..ground).collect();
    let parts: Vec<Vec<usize>> = set_partitions(&points)
        .iter()
        .map(|b| normalized(&labels(b, ground)))
        .collect();
    let index: HashMap<Vec<usize>, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // meet[i][j]: the common refinement of partitions i and j.
    let meet: Vec<Vec<usize>> = parts
        .iter()
        .map(|a| {
            parts
                .iter()
                .map(|b| index[&normalized(&a.iter().zip(b).map(|(x, y)| x * ground + y).collect::<Vec<_>>())])
                .collect()
        })
        .collect();
    let perms: Vec<Vec<usize>> = (0..ground).permutations(ground).collect();
    // moved[k][i]: partition i with its points renamed by perms[k].
    let moved: Vec<Vec<usize>> = perms
        .iter()
        .map(|perm| {
            parts
                .iter()
                .map(|a| {
                    let mut m = vec![0; ground];
                    for x in 0..ground {
                        m[perm[x]] = a[x];
                    }
                    index[&normalized(&m)]
                })
                .collect()
        })
        .collect();

    let total = index[&vec![0; ground]];
    let discrete = index[&points];
    let mut assign: Vec<Option<usize>> = vec![None; lattice.size()];
    assign[lattice.bottom()] = Some(total);
    assign[lattice.top()] = Some(discrete);
    let free: Vec<usize> = lattice
        .elements()
        .filter(|&x| x != lattice.bottom() && x != lattice.top())
        .collect();
    // Join-to-meet law on every pair whose images are all assigned.
    let consistent = |assign: &[Option<usize>]| {
        lattice.elements().all(|x| {
            lattice
                .elements()
                .all(|y| match (assign[x], assign[y], assign[lattice.join(x, y)]) {
                    (Some(a), Some(b), Some(j)) => meet[a][b] == j,
                    _ => true,
                })
        })
    };

    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0usize)];
    // Iterative backtracking: (free slot, next partition to try).
    while let Some((i, next)) = stack.pop() {
        if i == free.len() {
            let alpha: Vec<usize> = assign.iter().map(|a| a.unwrap()).collect();
            let key = moved
                .iter()
                .map(|m| alpha.iter().map(|&a| m[a]).collect::<Vec<_>>())
                .min()
                .unwrap();
            if seen.insert(key) {
                let alpha = alpha
                    .iter()
                    .map(|&a| EquivalenceRelation::from_labels(parts[a].iter().copied()))
                    .collect();
                out.push(Representation::new(lattice.clone(), alpha, None).expect("shapes match"));
            }
            continue;
        }
        if next == parts.len() {
            assign[free[i]] = None;
            continue;
        }
        stack.push((i, next + 1));
        // Every orbit meets an assignment whose first free image is the
        // least partition of its own orbit.
        if i == 0 && moved.iter().any(|m| m[next] < next) {
            continue;
        }
        assign[free[i]] = Some(next);
        for later in &free[i + 1..] {
            assign[*later] = None;
        }
        if consistent(&assign) {
            stack.push((i + 1, 0));
        }
    }
    out
}

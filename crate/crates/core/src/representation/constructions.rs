use crate::constructions::{boolean_lattice, m_lattice};
use crate::eqrel::EquivalenceRelation;
use crate::error::{check_limit, Error, Result};
use crate::{Budget, Representation};

/// `B2 -> Eq([n]^2)` on the pairs `<x, y>` with `x < y < n`, listed
/// lexicographically: `a` is the kernel of the first coordinate and `b` the
/// kernel of the second.
pub fn pairs_b2_rep(n: usize) -> Result<Representation> {
    if n < 2 {
        return Err(Error::InvalidParameter("pairs representation needs n >= 2".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let ground = pairs.len();
    let alpha = vec![
        EquivalenceRelation::trivial(ground),
        EquivalenceRelation::from_labels(pairs.iter().map(|p| p.0)),
        EquivalenceRelation::from_labels(pairs.iter().map(|p| p.1)),
        EquivalenceRelation::discrete(ground),
    ];
    let decode = pairs.iter().map(|(x, y)| format!("<{x},{y}>")).collect();
    Representation::new(boolean_lattice(2), alpha, Some(decode))
}

/// `M3 -> Eq(3)` with `a = {0 | 1,2}`, `b = {0,2 | 1}`, `c = {0,1 | 2}`.
pub fn m3_base_rep() -> Representation {
    let alpha = vec![
        EquivalenceRelation::trivial(3),
        EquivalenceRelation::from_labels([0, 1, 1]),
        EquivalenceRelation::from_labels([0, 1, 0]),
        EquivalenceRelation::from_labels([0, 0, 1]),
        EquivalenceRelation::discrete(3),
    ];
    let decode = (0..3).map(|i| i.to_string()).collect();
    Representation::new(m_lattice(3), alpha, Some(decode)).expect("static representation")
}

/// The componentwise power on length-`m` sequences over the ground set.
/// Sequence `s` has index `sum s_i * |X|^(m-1-i)`.
pub fn power_rep(rep: &Representation, m: usize, budget: &Budget) -> Result<Representation> {
    if m == 0 {
        return Err(Error::InvalidParameter("power needs m >= 1".into()));
    }
    let base = rep.ground_size();
    let ground = u32::try_from(m)
        .ok()
        .and_then(|m| base.checked_pow(m))
        .unwrap_or(usize::MAX);
    check_limit("power ground", ground, budget.max_power_ground)?;
    let digits = |mut p: usize| {
        let mut d = vec![0; m];
        for slot in d.iter_mut().rev() {
            *slot = p % base;
            p /= base;
        }
        d
    };
    let alpha = rep
        .alphas()
        .iter()
        .map(|a| {
            let k = a.num_classes().max(1);
            let labels: Vec<usize> = (0..ground)
                .map(|p| digits(p).iter().fold(0, |acc, &x| acc * k + a.class_of(x) as usize))
                .collect();
            EquivalenceRelation::from_dense(&labels)
        })
        .collect();
    let decode = rep.decode().map(|d| {
        (0..ground)
            .map(|p| {
                let parts: Vec<&str> = digits(p).iter().map(|&x| d[x].as_str()).collect();
                if parts.iter().all(|s| s.len() == 1) {
                    parts.concat()
                } else {
                    format!("({})", parts.join(","))
                }
            })
            .collect()
    });
    Representation::new(rep.lattice().clone(), alpha, decode)
}

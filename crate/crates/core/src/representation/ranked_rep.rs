use serde::{Deserialize, Serialize};

use super::Representation;
use crate::error::{Error, Result};
use crate::ranked::verify_rank_axioms;
use crate::{Element, Verdict};

/// Finite stand-in for a bounded family: a set of classes is "bounded" when
/// it has at most `bound` members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRankContext {
    bound: usize,
}

impl ThresholdRankContext {
    pub fn new(bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidParameter("threshold bound must be at least 1".into()));
        }
        Ok(ThresholdRankContext { bound })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedRepViolation {
    pub r: Element,
    pub s: Element,
    /// Whether `s <= rho(r)`.
    pub below_rank: bool,
    /// Largest number of `alpha(s)`-classes inside one `alpha(r)`-class.
    pub max_split: usize,
}

/// For every `r <= s`: `s <= rho(r)` iff every `alpha(r)`-class is a union of
/// at most `bound` `alpha(s)`-classes. The witness is the first pair where
/// the two sides disagree.
pub fn check_ranked_rep(
    rep: &Representation,
    rho: &[Element],
    ctx: &ThresholdRankContext,
) -> Result<Verdict<RankedRepViolation>> {
    let l = rep.lattice();
    let report = verify_rank_axioms(l, rho)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidParameter(format!(
            "rank axiom ({}) fails at {:?}",
            v.axiom.number(),
            v.witnesses
        )));
    }
    for r in l.elements() {
        for s in l.elements() {
            if !l.leq(r, s) {
                continue;
            }
            let below_rank = l.leq(s, rho[r]);
            let max_split = max_split(rep, r, s);
            if below_rank != (max_split <= ctx.bound) {
                return Ok(Verdict::fail(RankedRepViolation {
                    r,
                    s,
                    below_rank,
                    max_split,
                }));
            }
        }
    }
    Ok(Verdict::pass())
}

fn max_split(rep: &Representation, r: Element, s: Element) -> usize {
    let (coarse, fine) = (rep.alpha(r), rep.alpha(s));
    let mut seen: Vec<Vec<u32>> = vec![Vec::new(); coarse.num_classes()];
    for p in 0..rep.ground_size() {
        let bucket = &mut seen[coarse.class_of(p) as usize];
        let c = fine.class_of(p);
        if !bucket.contains(&c) {
            bucket.push(c);
        }
    }
    seen.iter().map(Vec::len).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::{m3_base_rep, pairs_b2_rep, power_rep, restrict_rep};
    use crate::Budget;

    #[test]
    fn zero_bound_rejected() {
        assert!(ThresholdRankContext::new(0).is_err());
    }

    #[test]
    fn constant_top_on_powers() {
        let b = Budget::default();
        for m in 1..=3 {
            let rep = power_rep(&m3_base_rep(), m, &b).unwrap();
            let ctx = ThresholdRankContext::new(3usize.pow(m as u32)).unwrap();
            assert!(check_ranked_rep(&rep, &[4; 5], &ctx).unwrap().holds);
        }
    }

    #[test]
    fn mixed_rank_on_truncated_pairs() {
        // rankset {a, 1}: rho(0) = a, rho(a) = a, rho(b) = 1, rho(1) = 1.
        let rho = [1, 1, 3, 3];
        for m in 1..=3 {
            for n in (m + 2)..=7 {
                let rep = pairs_b2_rep(n).unwrap();
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
                let keep: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].0 < m).collect();
                let y = restrict_rep(&rep, &keep).unwrap().rep;
                let ctx = ThresholdRankContext::new(m).unwrap();
                let v = check_ranked_rep(&y, &rho, &ctx).unwrap();
                assert!(v.holds, "m={m} n={n}: {:?}", v.witness);
            }
        }
    }

    #[test]
    fn wrong_rank_is_caught() {
        // Constant top: b <= rho(0), but Y splits into n - 1 second-coordinate classes.
        let n = 6;
        let m = 2;
        let rep = pairs_b2_rep(n).unwrap();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
        let keep: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].0 < m).collect();
        let y = restrict_rep(&rep, &keep).unwrap().rep;
        let ctx = ThresholdRankContext::new(m).unwrap();
        let v = check_ranked_rep(&y, &[3; 4], &ctx).unwrap();
        let w = v.witness.unwrap();
        assert_eq!((w.r, w.s, w.below_rank), (0, 2, true));
        assert_eq!(w.max_split, n - 1);
    }

    #[test]
    fn invalid_rank_is_an_error() {
        let ctx = ThresholdRankContext::new(2).unwrap();
        assert!(check_ranked_rep(&pairs_b2_rep(4).unwrap(), &[0, 1, 2, 3], &ctx).is_err());
    }
}

//! Canonical partition properties.
//!
//! `alpha` is 0-CPP when no `alpha(r)` has exactly two classes. It is
//! (n+1)-CPP when every partition `theta` of the ground set becomes canonical
//! on some nonempty `Y`: `alpha | Y` is still an injective n-CPP
//! representation and `theta` restricted to `Y` equals some `(alpha | Y)(r)`.
//! `Y` may be the whole ground set.
//!
//! Subsets are tried in decreasing size, then lexicographically; partitions
//! in restricted-growth order. The first witness wins.

use std::collections::HashMap;
use std::rc::Rc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{reps_isomorphic, Representation};
use crate::eqrel::{all_partitions, restrict_unchecked, EquivalenceRelation};
use crate::error::{check_limit, Result};
use crate::{Budget, Element, Verdict};

/// First element whose image has exactly two classes.
pub fn is_0cpp(rep: &Representation) -> Verdict<Element> {
    match two_class_element(rep.alphas()) {
        Some(r) => Verdict::fail(r),
        None => Verdict::pass(),
    }
}

fn two_class_element(alphas: &[EquivalenceRelation]) -> Option<Element> {
    alphas.iter().position(|a| a.num_classes() == 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CppChoice {
    /// The partition, as classes of ground points.
    pub theta: Vec<Vec<usize>>,
    /// The subset on which it becomes canonical.
    pub subset: Vec<usize>,
    /// The element whose restricted image it equals.
    pub element: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CppVerdict {
    pub holds: bool,
    pub depth: usize,
    pub degenerate: bool,
    /// Depth 0: the element with exactly two classes, when failing.
    pub two_class_element: Option<Element>,
    /// Depth > 0 and holding: one choice per partition, in enumeration order.
    pub choices: Vec<CppChoice>,
    /// Depth > 0 and failing: the first partition with no witness subset.
    pub failing_theta: Option<Vec<Vec<usize>>>,
}

/// Exhaustive n-CPP check over every partition and every subset.
pub fn is_ncpp(rep: &Representation, depth: usize, budget: &Budget) -> Result<CppVerdict> {
    let mut engine = Engine::new(rep, budget)?;
    let full = engine.full_mask();
    let node = engine.node(full, depth);
    Ok(CppVerdict {
        holds: node.holds,
        depth,
        degenerate: rep.is_degenerate(),
        two_class_element: node.two_class_element,
        choices: node.choices.into_iter().map(|(c, _)| c).collect(),
        failing_theta: node.failing_theta,
    })
}

/// The full certificate: every choice carries the certificate for its
/// restricted representation one level down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CppCertificate {
    pub points: Vec<usize>,
    pub depth: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub two_class_element: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing_theta: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub choices: Vec<CertifiedChoice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedChoice {
    #[serde(flatten)]
    pub choice: CppChoice,
    pub restricted: CppCertificate,
}

pub fn cpp_certificate_tree(rep: &Representation, depth: usize, budget: &Budget) -> Result<CppCertificate> {
    let mut engine = Engine::new(rep, budget)?;
    let full = engine.full_mask();
    Ok(engine.tree(full, depth))
}

struct Node {
    holds: bool,
    two_class_element: Option<Element>,
    choices: Vec<(CppChoice, u64)>,
    failing_theta: Option<Vec<Vec<usize>>>,
}

struct Restricted {
    points: Vec<usize>,
    alphas: Vec<EquivalenceRelation>,
    injective: bool,
    two_class: Option<Element>,
}

struct Engine<'a> {
    rep: &'a Representation,
    restricted: HashMap<u64, Rc<Restricted>>,
    memo: HashMap<(u64, usize), bool>,
    good: HashMap<(u64, usize), Rc<Vec<u64>>>,
    partitions: HashMap<usize, Rc<Vec<EquivalenceRelation>>>,
}

fn mask_points(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

impl<'a> Engine<'a> {
    fn new(rep: &'a Representation, budget: &Budget) -> Result<Self> {
        check_limit("CPP ground", rep.ground_size(), budget.max_cpp_ground.min(63))?;
        Ok(Engine {
            rep,
            restricted: HashMap::new(),
            memo: HashMap::new(),
            good: HashMap::new(),
            partitions: HashMap::new(),
        })
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.rep.ground_size()) - 1
    }

    fn restricted(&mut self, mask: u64) -> Rc<Restricted> {
        if let Some(r) = self.restricted.get(&mask) {
            return r.clone();
        }
        let points = mask_points(mask);
        let alphas: Vec<EquivalenceRelation> = self
            .rep
            .alphas()
            .iter()
            .map(|a| restrict_unchecked(a, &points))
            .collect();
        let injective = alphas.iter().tuple_combinations().all(|(x, y)| x != y);
        let two_class = two_class_element(&alphas);
        let r = Rc::new(Restricted {
            points,
            alphas,
            injective,
            two_class,
        });
        self.restricted.insert(mask, r.clone());
        r
    }

    fn partitions(&mut self, k: usize) -> Rc<Vec<EquivalenceRelation>> {
        self.partitions
            .entry(k)
            .or_insert_with(|| Rc::new(all_partitions(k).collect()))
            .clone()
    }

    fn holds(&mut self, mask: u64, depth: usize) -> bool {
        if let Some(&h) = self.memo.get(&(mask, depth)) {
            return h;
        }
        let h = self.node_inner(mask, depth, false).holds;
        self.memo.insert((mask, depth), h);
        h
    }

    /// Submasks `Z` of `mask` with `alpha | Z` injective and (depth)-CPP, in
    /// search order.
    fn good_subsets(&mut self, mask: u64, depth: usize) -> Rc<Vec<u64>> {
        if let Some(g) = self.good.get(&(mask, depth)) {
            return g.clone();
        }
        let points = mask_points(mask);
        let mut out = Vec::new();
        for size in (1..=points.len()).rev() {
            for combo in points.iter().combinations(size) {
                let z = combo.iter().fold(0u64, |m, &&p| m | 1 << p);
                if self.restricted(z).injective && self.holds(z, depth) {
                    out.push(z);
                }
            }
        }
        let out = Rc::new(out);
        self.good.insert((mask, depth), out.clone());
        out
    }

    fn node(&mut self, mask: u64, depth: usize) -> Node {
        self.node_inner(mask, depth, true)
    }

    fn node_inner(&mut self, mask: u64, depth: usize, record: bool) -> Node {
        let here = self.restricted(mask);
        if depth == 0 {
            return Node {
                holds: here.two_class.is_none(),
                two_class_element: here.two_class,
                choices: Vec::new(),
                failing_theta: None,
            };
        }
        let good = self.good_subsets(mask, depth - 1);
        let partitions = self.partitions(here.points.len());
        let ground = self.rep.ground_size();
        let mut theta_global = vec![0u32; ground];
        let mut choices = Vec::new();
        for theta in partitions.iter() {
            for (i, &p) in here.points.iter().enumerate() {
                theta_global[p] = theta.class_of(i);
            }
            let found = good.iter().find_map(|&z| {
                let sub = self.restricted.get(&z).expect("cached by good_subsets");
                let restricted_theta = EquivalenceRelation::from_labels(sub.points.iter().map(|&p| theta_global[p]));
                sub.alphas.iter().position(|a| *a == restricted_theta).map(|r| (z, r))
            });
            let classes = || {
                theta
                    .classes()
                    .into_iter()
                    .map(|c| c.into_iter().map(|i| here.points[i]).collect())
                    .collect()
            };
            match found {
                Some((z, r)) => {
                    if record {
                        choices.push((
                            CppChoice {
                                theta: classes(),
                                subset: mask_points(z),
                                element: r,
                            },
                            z,
                        ));
                    }
                }
                None => {
                    return Node {
                        holds: false,
                        two_class_element: None,
                        choices: Vec::new(),
                        failing_theta: Some(classes()),
                    }
                }
            }
        }
        Node {
            holds: true,
            two_class_element: None,
            choices,
            failing_theta: None,
        }
    }

    fn tree(&mut self, mask: u64, depth: usize) -> CppCertificate {
        let node = self.node(mask, depth);
        let choices = if depth == 0 {
            Vec::new()
        } else {
            node.choices
                .into_iter()
                .map(|(choice, z)| CertifiedChoice {
                    restricted: self.tree(z, depth - 1),
                    choice,
                })
                .collect()
        };
        CppCertificate {
            points: mask_points(mask),
            depth,
            holds: node.holds,
            two_class_element: node.two_class_element,
            failing_theta: node.failing_theta,
            choices,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFailure {
    pub member: usize,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theta: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClosureReport {
    pub holds: bool,
    pub failures: Vec<FamilyFailure>,
}

/// Closure property of a finite family: every member is an injective 0-CPP
/// representation, and for every member `alpha` and every partition `theta`
/// of its ground set there is a nonempty `Y` with `alpha | Y` isomorphic to a
/// member and `theta` canonical for `alpha | Y`.
pub fn family_closure_check(family: &[Representation], budget: &Budget) -> Result<FamilyClosureReport> {
    let mut failures = Vec::new();
    if family.is_empty() {
        failures.push(FamilyFailure {
            member: 0,
            reason: "family is empty".into(),
            theta: None,
        });
    }
    for rep in family {
        check_limit("CPP ground", rep.ground_size(), budget.max_cpp_ground.min(63))?;
    }
    for (i, rep) in family.iter().enumerate() {
        if !rep.injective() {
            failures.push(FamilyFailure {
                member: i,
                reason: "not injective".into(),
                theta: None,
            });
            continue;
        }
        if let Some(r) = two_class_element(rep.alphas()) {
            failures.push(FamilyFailure {
                member: i,
                reason: format!("not 0-CPP: element {r} has two classes"),
                theta: None,
            });
            continue;
        }
        let n = rep.ground_size();
        let mut in_family: HashMap<Vec<usize>, bool> = HashMap::new();
        let subsets: Vec<Vec<usize>> = (1..=n).rev().flat_map(|s| (0..n).combinations(s)).collect();
        for theta in all_partitions(n) {
            let mut ok = false;
            for y in &subsets {
                let restricted_theta = restrict_unchecked(&theta, y);
                let sub = rep.restrict_points(y);
                if !sub.alphas().contains(&restricted_theta) {
                    continue;
                }
                let member = match in_family.get(y) {
                    Some(&m) => m,
                    None => {
                        let mut m = false;
                        for other in family {
                            if other.lattice().same_structure(rep.lattice())
                                && reps_isomorphic(&sub, other, budget)?.is_some()
                            {
                                m = true;
                                break;
                            }
                        }
                        in_family.insert(y.clone(), m);
                        m
                    }
                };
                if member {
                    ok = true;
                    break;
                }
            }
            if !ok {
                failures.push(FamilyFailure {
                    member: i,
                    reason: "no subset makes theta canonical inside the family".into(),
                    theta: Some(theta.classes()),
                });
                break;
            }
        }
    }
    Ok(FamilyClosureReport {
        holds: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::chain;
    use crate::representation::{m3_base_rep, pairs_b2_rep, power_rep};

    #[test]
    fn zero_cpp_examples() {
        assert_eq!(is_0cpp(&m3_base_rep()), Verdict::fail(1));
        let sq = power_rep(&m3_base_rep(), 2, &Budget::default()).unwrap();
        assert!(is_0cpp(&sq).holds);
        let counts: Vec<_> = sq.alphas().iter().map(|a| a.num_classes()).collect();
        assert_eq!(counts, vec![1, 4, 4, 4, 9]);
        assert_eq!(is_0cpp(&pairs_b2_rep(3).unwrap()), Verdict::fail(1));
    }

    #[test]
    fn depth_zero_delegates() {
        let b = Budget::default();
        let v = is_ncpp(&m3_base_rep(), 0, &b).unwrap();
        assert!(!v.holds);
        assert_eq!(v.two_class_element, Some(1));
        let single = Representation::new(
            chain(2),
            vec![EquivalenceRelation::trivial(1), EquivalenceRelation::discrete(1)],
            None,
        )
        .unwrap();
        let v = is_ncpp(&single, 0, &b).unwrap();
        assert!(v.holds && v.degenerate);
    }

    #[test]
    fn one_cpp_choices_are_sound() {
        let b = Budget::default();
        let rep = pairs_b2_rep(4).unwrap();
        let v = is_ncpp(&rep, 1, &b).unwrap();
        if v.holds {
            assert_eq!(v.choices.len(), 203);
            for c in &v.choices {
                let sub = rep.restrict_points(&c.subset);
                assert!(sub.injective());
                assert!(is_0cpp(&sub).holds);
                let theta = EquivalenceRelation::from_classes(6, &c.theta).unwrap();
                assert_eq!(&restrict_unchecked(&theta, &c.subset), sub.alpha(c.element));
            }
        } else {
            assert!(v.failing_theta.is_some());
        }
    }

    #[test]
    fn ground_budget() {
        let b = Budget {
            max_cpp_ground: 5,
            ..Budget::default()
        };
        assert!(is_ncpp(&pairs_b2_rep(4).unwrap(), 1, &b).is_err());
    }

    #[test]
    fn certificate_tree_matches_verdict() {
        let b = Budget::default();
        let rep = power_rep(&m3_base_rep(), 2, &b).unwrap();
        let tree = cpp_certificate_tree(&rep, 1, &b).unwrap();
        let v = is_ncpp(&rep, 1, &b).unwrap();
        assert_eq!(tree.holds, v.holds);
        if v.holds {
            assert!(tree
                .choices
                .iter()
                .all(|c| c.restricted.holds && c.restricted.depth == 0));
        }
    }

    #[test]
    fn family_of_m3_square() {
        let b = Budget::default();
        let sq = power_rep(&m3_base_rep(), 2, &b).unwrap();
        let report = family_closure_check(&[sq], &b).unwrap();
        // Whatever the answer, failures must name a partition.
        assert_eq!(report.holds, report.failures.is_empty());
        let bad = family_closure_check(&[m3_base_rep()], &b).unwrap();
        assert!(!bad.holds);
        assert!(bad.failures[0].reason.contains("0-CPP"));
        assert!(!family_closure_check(&[], &b).unwrap().holds);
    }
}

//! Finite canonical Ramsey search for functions on pairs.
//!
//! A function `f` on the pairs `<x, y>` (`x < y`) of a subset `X` is
//! canonical on `X` when it is constant, one-to-one, determined exactly by
//! the first coordinate, or determined exactly by the second coordinate.
//! Only the kernel of `f` matters, so functions are stored by kernel.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::eqrel::{all_partitions, bell, EquivalenceRelation};
use crate::error::{check_limit, Error, Result};
use crate::Budget;

/// Number of pairs `<x, y>` with `x < y < n`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `<x, y>` in the lexicographic list of pairs over `0..n`.
pub fn pair_index(n: usize, x: usize, y: usize) -> usize {
    debug_assert!(x < y && y < n);
    x * n - x * (x + 1) / 2 + (y - x - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFunction {
    n: usize,
    kernel: EquivalenceRelation,
    values: Option<Vec<i64>>,
}

impl PairFunction {
    /// `values` lists `f(<x, y>)` in lexicographic pair order.
    pub fn from_values(n: usize, values: Vec<i64>) -> Result<Self> {
        if values.len() != pair_count(n) {
            return Err(Error::Malformed(format!(
                "{} values for the {} pairs of a {n}-set",
                values.len(),
                pair_count(n)
            )));
        }
        Ok(PairFunction {
            n,
            kernel: EquivalenceRelation::from_labels(values.iter().copied()),
            values: Some(values),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let values = pairs(n).into_iter().map(|(x, y)| f(x, y)).collect();
        Self::from_values(n, values).expect("one value per pair")
    }

    pub fn from_kernel(n: usize, kernel: EquivalenceRelation) -> Result<Self> {
        if kernel.ground_size() != pair_count(n) {
            return Err(Error::GroundMismatch {
                left: kernel.ground_size(),
                right: pair_count(n),
            });
        }
        Ok(PairFunction {
            n,
            kernel,
            values: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kernel(&self) -> &EquivalenceRelation {
        &self.kernel
    }

    pub fn values(&self) -> Option<&[i64]> {
        self.values.as_deref()
    }

    fn same(&self, p: (usize, usize), q: (usize, usize)) -> bool {
        self.kernel
            .related(pair_index(self.n, p.0, p.1), pair_index(self.n, q.0, q.1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalForm {
    Constant,
    OneToOne,
    FirstCoordinate,
    SecondCoordinate,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanonicalForm::Constant => "constant",
            CanonicalForm::OneToOne => "one_to_one",
            CanonicalForm::FirstCoordinate => "first_coordinate",
            CanonicalForm::SecondCoordinate => "second_coordinate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForms {
    pub forms: Vec<CanonicalForm>,
    /// `|X| = 2`: a single pair satisfies every form.
    pub degenerate: bool,
}

impl CanonicalForms {
    pub fn is_canonical(&self) -> bool {
        !self.forms.is_empty()
    }

    pub fn contains(&self, form: CanonicalForm) -> bool {
        self.forms.contains(&form)
    }

    /// One representative form, preferring constant, then first coordinate,
    /// then second coordinate, then one-to-one.
    pub fn summary(&self) -> Option<CanonicalForm> {
        [
            CanonicalForm::Constant,
            CanonicalForm::FirstCoordinate,
            CanonicalForm::SecondCoordinate,
            CanonicalForm::OneToOne,
        ]
        .into_iter()
        .find(|f| self.contains(*f))
    }
}

/// Every canonical form `f` takes on the pairs of `subset`.
pub fn canonical_form_on(f: &PairFunction, subset: &[usize]) -> Result<CanonicalForms> {
    if subset.len() < 2 {
        return Err(Error::SubsetTooSmall {
            size: subset.len(),
            min: 2,
        });
    }
    let mut xs = subset.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() != subset.len() {
        return Err(Error::InvalidParameter("subset has repeated points".into()));
    }
    if let Some(&p) = xs.last().filter(|&&p| p >= f.n) {
        return Err(Error::IndexOutOfRange { index: p, size: f.n });
    }
    let ps: Vec<(usize, usize)> = xs.iter().copied().tuple_combinations().collect();
    let holds = |rule: &dyn Fn((usize, usize), (usize, usize)) -> bool| {
        ps.iter()
            .tuple_combinations()
            .all(|(&p, &q)| f.same(p, q) == rule(p, q))
    };
    let mut forms = Vec::new();
    if holds(&|_, _| true) {
        forms.push(CanonicalForm::Constant);
    }
    if holds(&|_, _| false) {
        forms.push(CanonicalForm::OneToOne);
    }
    if holds(&|p, q| p.0 == q.0) {
        forms.push(CanonicalForm::FirstCoordinate);
    }
    if holds(&|p, q| p.1 == q.1) {
        forms.push(CanonicalForm::SecondCoordinate);
    }
    Ok(CanonicalForms {
        forms,
        degenerate: xs.len() == 2,
    })
}

/// The lexicographically least `k`-subset on which `f` is canonical.
pub fn find_canonical_subset(
    f: &PairFunction,
    k: usize,
    budget: &Budget,
) -> Result<Option<(Vec<usize>, CanonicalForms)>> {
    if k < 3 {
        return Err(Error::SubsetTooSmall { size: k, min: 3 });
    }
    check_limit("ramsey base set", f.n, budget.max_ramsey_base)?;
    for subset in (0..f.n).combinations(k) {
        let forms = canonical_form_on(f, &subset)?;
        if forms.is_canonical() {
            return Ok(Some((subset, forms)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    /// Position of the kernel in restricted-growth enumeration order.
    pub kernel_id: usize,
    pub kernel: Vec<u32>,
    pub admits_canonical: bool,
    pub witness: Option<Vec<usize>>,
    pub form: Option<CanonicalForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub n: usize,
    pub k: usize,
    pub kernels: usize,
    pub admitting: usize,
    pub failing: usize,
    pub failing_kernels: Vec<usize>,
    pub rows: Vec<SurveyRow>,
}

/// Visits every kernel of a function on the pairs of `0..n` and records
/// whether it has a canonical `k`-subset. Descriptive only: no threshold is
/// asserted.
pub fn crt2_survey(n: usize, k: usize, budget: &Budget) -> Result<SurveyReport> {
    if k < 3 {
        return Err(Error::SubsetTooSmall { size: k, min: 3 });
    }
    check_limit("ramsey base set", n, budget.max_ramsey_base)?;
    let p = pair_count(n);
    check_limit("survey kernels", bell(p), budget.max_survey_kernels)?;
    let subsets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    let mut rows = Vec::with_capacity(bell(p));
    for (kernel_id, kernel) in all_partitions(p).enumerate() {
        let f = PairFunction::from_kernel(n, kernel)?;
        let mut found = None;
        for s in &subsets {
            let forms = canonical_form_on(&f, s)?;
            if let Some(form) = forms.summary() {
                found = Some((s.clone(), form));
                break;
            }
        }
        rows.push(SurveyRow {
            kernel_id,
            kernel: f.kernel.class_ids().to_vec(),
            admits_canonical: found.is_some(),
            form: found.as_ref().map(|x| x.1),
            witness: found.map(|x| x.0),
        });
    }
    let failing_kernels: Vec<usize> = rows
        .iter()
        .filter(|r| !r.admits_canonical)
        .map(|r| r.kernel_id)
        .collect();
    Ok(SurveyReport {
        n,
        k,
        kernels: rows.len(),
        admitting: rows.len() - failing_kernels.len(),
        failing: failing_kernels.len(),
        failing_kernels,
        rows,
    })
}

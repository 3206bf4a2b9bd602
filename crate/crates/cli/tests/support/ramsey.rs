//! Canonical forms of a pair colouring, decided pair by pair.

use finlat_core::ramsey::{pair_index, CanonicalForm};
use finlat_core::PairFunction;
use itertools::Itertools;

/// Whether `f` has the given form on `subset`, comparing every two pairs.
pub fn has_form(f: &PairFunction, subset: &[usize], form: CanonicalForm) -> bool {
    let n = f.n();
    let k = f.kernel();
    let mut xs = subset.to_vec();
    xs.sort_unstable();
    let pairs: Vec<(usize, usize)> = xs.iter().copied().tuple_combinations().collect();
    pairs.iter().all(|&(a, b)| {
        pairs.iter().all(|&(c, d)| {
            let same = k.related(pair_index(n, a, b), pair_index(n, c, d));
            let want = match form {
                CanonicalForm::Constant => true,
                CanonicalForm::OneToOne => (a, b) == (c, d),
                CanonicalForm::FirstCoordinate => a == c,
                CanonicalForm::SecondCoordinate => b == d,
            };
            same == want
        })
    })
}

pub const FORMS: [CanonicalForm; 4] = [
    CanonicalForm::Constant,
    CanonicalForm::OneToOne,
    CanonicalForm::FirstCoordinate,
    CanonicalForm::SecondCoordinate,
];

pub fn canonical_somewhere(f: &PairFunction, k: usize) -> bool {
    (0..f.n())
        .combinations(k)
        .any(|s| FORMS.iter().any(|&form| has_form(f, &s, form)))
}

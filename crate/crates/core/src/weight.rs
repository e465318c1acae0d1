//! Weights on a finite group: verification, symmetry, and word-length
//! constructions.
//!
//! A weight is a strictly positive function with `w(e) = 1` that is
//! submultiplicative: `w(st) <= w(s) w(t)` for all pairs. Symmetric means
//! `w(s^-1) = w(s)` exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};

/// Relative slack allowed on the submultiplicativity check.
///
/// Weights built from exact identities (e.g. word-length powers with a
/// fractional base) can land a few ulps above `w(s) w(t)` after rounding;
/// genuine violations in practice overshoot by orders of magnitude.
pub const SUBMULT_SLACK: f64 = 1e-12;

/// Outcome of checking a candidate weight vector against a group.
#[derive(Debug, Clone, Serialize)]
pub struct WeightReport {
    /// True when `w(e) = 1` and no pair violates submultiplicativity.
    pub ok: bool,
    /// The pair `(s, t)` maximizing `w(st) / (w(s) w(t))`.
    pub worst_pair: (Element, Element),
    /// That maximal ratio; submultiplicativity means it is `<= 1`.
    pub worst_ratio: f64,
    /// Whether `w(e) == 1` held exactly (folded into `ok`).
    #[serde(skip)]
    pub identity_is_one: bool,
}

/// Scans all `n^2` pairs and reports the worst submultiplicativity ratio.
///
/// Errors only on structurally unusable input (wrong length, nonpositive or
/// non-finite values); a merely invalid weight yields `ok == false`.
pub fn verify_weight(group: &GroupSpec, values: &[f64]) -> Result<WeightReport> {
    let n = group.order();
    if values.len() != n {
        return Err(Error::InvalidWeight(format!(
            "expected {n} values for a group of order {n}, got {}",
            values.len()
        )));
    }
    if let Some((i, &v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v > 0.0))
    {
        return Err(Error::InvalidWeight(format!(
            "value at index {i} must be strictly positive and finite, got {v}"
        )));
    }
    let identity_is_one = values[group.identity().index()] == 1.0;
    let mut worst_ratio = f64::NEG_INFINITY;
    let mut worst_pair = (Element(0), Element(0));
    for s in 0..n {
        for t in 0..n {
            let st = group.compose_idx(s, t);
            let ratio = values[st] / (values[s] * values[t]);
            if ratio > worst_ratio {
                worst_ratio = ratio;
                worst_pair = (Element(s), Element(t));
            }
        }
    }
    Ok(WeightReport {
        ok: identity_is_one && worst_ratio <= 1.0 + SUBMULT_SLACK,
        worst_pair,
        worst_ratio,
        identity_is_one,
    })
}

/// A weight vector, tagged with whether it passed [`verify_weight`] and
/// whether it is symmetric under inversion.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    values: Vec<f64>,
    verified: bool,
    symmetric: bool,
}

impl Weight {
    /// Builds a weight, rejecting anything that fails [`verify_weight`].
    pub fn new(group: &GroupSpec, values: Vec<f64>) -> Result<Self> {
        let report = verify_weight(group, &values)?;
        if !report.identity_is_one {
            return Err(Error::InvalidWeight(format!(
                "w(e) must be exactly 1, got {}",
                values[group.identity().index()]
            )));
        }
        if !report.ok {
            let (s, t) = report.worst_pair;
            return Err(Error::InvalidWeight(format!(
                "not submultiplicative: w(st)/(w(s)w(t)) = {} at (s, t) = ({}, {})",
                report.worst_ratio, s.0, t.0
            )));
        }
        Ok(Self::assemble(group, values, true))
    }

    /// Builds a weight without the submultiplicativity scan (positivity and
    /// length are still enforced). For exploratory use; `is_verified()`
    /// reports `false`.
    pub fn new_unchecked(group: &GroupSpec, values: Vec<f64>) -> Result<Self> {
        let n = group.order();
        if values.len() != n {
            return Err(Error::InvalidWeight(format!(
                "expected {n} values, got {}",
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidWeight(format!(
                "values must be strictly positive and finite, got {v}"
            )));
        }
        Ok(Self::assemble(group, values, false))
    }

    /// The constant weight 1 (the unweighted algebra).
    pub fn trivial(group: &GroupSpec) -> Self {
        Self::assemble(group, vec![1.0; group.order()], true)
    }

    fn assemble(group: &GroupSpec, values: Vec<f64>, verified: bool) -> Self {
        let symmetric = (0..values.len()).all(|s| values[group.inverse_idx(s)] == values[s]);
        Weight {
            values,
            verified,
            symmetric,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, s: Element) -> f64 {
        self.values[s.0]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Exact equality `w(s^-1) == w(s)` for all `s`, computed at construction.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

/// Shape of a word-length weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightForm {
    /// `w(s) = base^len(s)`, `base >= 1`.
    Exponential { base: f64 },
    /// `w(s) = (1 + len(s))^exponent`, `exponent >= 0`.
    Polynomial { exponent: f64 },
}

/// Builds a weight from word length with respect to a generating set that is
/// closed under inversion.
///
/// Closure under inversion makes the length function symmetric, hence the
/// weight symmetric as well; submultiplicativity follows from subadditivity
/// of word length, and [`Weight::new`] re-checks it anyway.
pub fn make_length_weight(
    group: &GroupSpec,
    generators: &[Element],
    form: WeightForm,
) -> Result<Weight> {
    match form {
        WeightForm::Exponential { base } if !(base >= 1.0 && base.is_finite()) => {
            return Err(Error::InvalidParameter(format!(
                "exponential base must be >= 1, got {base}"
            )));
        }
        WeightForm::Polynomial { exponent } if !(exponent >= 0.0 && exponent.is_finite()) => {
            return Err(Error::InvalidParameter(format!(
                "polynomial exponent must be >= 0, got {exponent}"
            )));
        }
        _ => {}
    }
    let n = group.order();
    let mut in_set = vec![false; n];
    for &g in generators {
        if g.0 >= n {
            return Err(Error::InvalidElement {
                index: g.0,
                order: n,
            });
        }
        in_set[g.0] = true;
    }
    for &g in generators {
        if !in_set[group.inverse_idx(g.0)] {
            return Err(Error::InvalidGenerators(format!(
                "generator set is not closed under inversion: missing inverse of {}",
                g.0
            )));
        }
    }

    let mut lengths = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    let e = group.identity().index();
    lengths[e] = 0;
    queue.push_back(e);
    while let Some(x) = queue.pop_front() {
        for &g in generators {
            let y = group.compose_idx(x, g.0);
            if lengths[y] == usize::MAX {
                lengths[y] = lengths[x] + 1;
                queue.push_back(y);
            }
        }
    }
    if lengths.contains(&usize::MAX) {
        return Err(Error::InvalidGenerators(
            "generators do not generate the group".into(),
        ));
    }

    let values: Vec<f64> = lengths
        .iter()
        .map(|&len| match form {
            WeightForm::Exponential { base } => base.powi(len as i32),
            WeightForm::Polynomial { exponent } => ((1 + len) as f64).powf(exponent),
        })
        .collect();
    Weight::new(group, values)
}

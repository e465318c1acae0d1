//! The dual side of cyclic products: characters, the weighted Fourier
//! transform, and the multiplicative functionals it induces.
//!
//! For `G = Z_{m1} x ... x Z_{md}` the characters are indexed by frequency
//! tuples `k`, with `chi_k(s) = exp(2 pi i sum_j k_j s_j / m_j)`. The
//! weighted transform is `fhat(chi) = sum_s f(s) conj(chi(s)) w(s)`, i.e.
//! the classical transform of `sigma(f)`, so the FFT computes it directly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgElement;
use crate::error::{Error, Result};
use crate::fft;
use crate::group::{decompose_mixed_radix, Element, GroupSpec};

/// A character of a cyclic product, as a frequency tuple (one entry per
/// modulus, `k_j < m_j`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character {
    pub frequencies: Vec<usize>,
}

impl Character {
    /// The character whose frequency tuple has mixed-radix index `idx`,
    /// matching the ordering of [`fourier_w`] output.
    pub fn from_index(group: &GroupSpec, idx: usize) -> Result<Self> {
        let moduli = require_moduli(group)?;
        group.element(idx)?;
        let mut frequencies = vec![0; moduli.len()];
        decompose_mixed_radix(moduli, idx, &mut frequencies);
        Ok(Character { frequencies })
    }

    fn validate(&self, moduli: &[usize]) -> Result<()> {
        if self.frequencies.len() != moduli.len() {
            return Err(Error::InvalidParameter(format!(
                "character has {} frequencies, expected {}",
                self.frequencies.len(),
                moduli.len()
            )));
        }
        for (&k, &m) in self.frequencies.iter().zip(moduli) {
            if k >= m {
                return Err(Error::InvalidParameter(format!(
                    "frequency {k} outside [0, {m})"
                )));
            }
        }
        Ok(())
    }
}

fn require_moduli(group: &GroupSpec) -> Result<&[usize]> {
    group.moduli().ok_or_else(|| {
        Error::UnsupportedGroup("harmonic analysis here requires a cyclic_product group".into())
    })
}

/// All characters, in mixed-radix index order.
pub fn dual(group: &GroupSpec) -> Result<Vec<Character>> {
    require_moduli(group)?;
    (0..group.order())
        .map(|i| Character::from_index(group, i))
        .collect()
}

/// `chi(s) = exp(2 pi i sum_j k_j s_j / m_j)`.
pub fn char_value(group: &GroupSpec, chi: &Character, s: Element) -> Result<Complex64> {
    let moduli = require_moduli(group)?;
    chi.validate(moduli)?;
    group.element(s.0)?;
    let mut tuple = vec![0; moduli.len()];
    decompose_mixed_radix(moduli, s.0, &mut tuple);
    let phase: f64 = chi
        .frequencies
        .iter()
        .zip(&tuple)
        .zip(moduli)
        .map(|((&k, &sj), &m)| (k * sj % m) as f64 / m as f64)
        .sum();
    Ok(Complex64::cis(std::f64::consts::TAU * phase))
}

/// The weighted transform by direct summation, `O(n^2)` with per-axis root
/// tables. Output is indexed like [`dual`].
pub fn fourier_w(f: &AlgElement) -> Result<Vec<Complex64>> {
    let group = f.context().group();
    let moduli = require_moduli(group)?.to_vec();
    let n = group.order();
    let d = moduli.len();
    // roots[j][r] = exp(-2 pi i r / m_j)
    let roots: Vec<Vec<Complex64>> = moduli
        .iter()
        .map(|&m| {
            (0..m)
                .map(|r| Complex64::cis(-std::f64::consts::TAU * r as f64 / m as f64))
                .collect()
        })
        .collect();
    let mut tuples = vec![vec![0usize; d]; n];
    for (i, t) in tuples.iter_mut().enumerate() {
        decompose_mixed_radix(&moduli, i, t);
    }
    let sigma_f = f.sigma();
    let p = sigma_f.coeffs();
    let mut out = Vec::with_capacity(n);
    for k_tuple in &tuples {
        let mut acc = Complex64::default();
        for (s, s_tuple) in tuples.iter().enumerate() {
            let mut kernel = Complex64::new(1.0, 0.0);
            for j in 0..d {
                kernel *= roots[j][k_tuple[j] * s_tuple[j] % moduli[j]];
            }
            acc += p[s] * kernel;
        }
        out.push(acc);
    }
    Ok(out)
}

/// The weighted transform through the FFT; agrees with [`fourier_w`] to
/// rounding. `O(n log n)`.
pub fn fourier_w_fast(f: &AlgElement) -> Result<Vec<Complex64>> {
    let group = f.context().group();
    let moduli = require_moduli(group)?;
    let mut data = f.sigma().coeffs().to_vec();
    fft::forward(moduli, &mut data);
    Ok(data)
}

/// Evaluation of the transform at a single character:
/// `d_chi(f) = sum_s f(s) conj(chi(s)) w(s)`, a multiplicative functional.
pub fn mult_functional(chi: &Character, f: &AlgElement) -> Result<Complex64> {
    let group = f.context().group();
    let w = f.context().weight().values();
    let mut acc = Complex64::default();
    for s in group.elements() {
        let kernel = char_value(group, chi, s)?.conj();
        acc += f.coeffs()[s.0] * w[s.0] * kernel;
    }
    Ok(acc)
}

/// Maximum relative gap between two transform outputs, scaled by the larger
/// sup norm; 0 when both vanish.
pub fn rel_sup_error(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} transform values",
            a.len(),
            b.len()
        )));
    }
    let scale = a
        .iter()
        .chain(b)
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let worst = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max);
    Ok(worst / scale)
}

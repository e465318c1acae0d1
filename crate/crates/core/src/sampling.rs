//! Seeded random instances for randomized checks.
//!
//! Everything funnels through a ChaCha8 stream so runs are reproducible from
//! a single `u64` seed across platforms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElement, Context};
use crate::group::{Element, GroupSpec};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform coefficients on the complex square `[-1, 1] x [-1, 1]i`.
pub fn random_function(ctx: &Context, rng: &mut impl Rng) -> AlgElement {
    AlgElement::from_fn(ctx, |_| {
        Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
    })
}

pub fn random_element(group: &GroupSpec, rng: &mut impl Rng) -> Element {
    Element(rng.gen_range(0..group.order()))
}

/// A generic unitary matrix: QR of a random complex matrix, with column
/// phases fixed so the factorization is canonical.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
    });
    let qr = m.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..dim {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 {
            rkk / rkk.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for entry in q.column_mut(k).iter_mut() {
            *entry *= phase;
        }
    }
    q
}

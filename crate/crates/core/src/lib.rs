//! Weighted group algebras on finite groups, with a weight-corrected
//! convolution, the isometry onto the classical group algebra, transported
//! translation operators, a weighted Fourier transform on cyclic products,
//! and the two-way correspondence between unitary group representations and
//! non-degenerate star-representations of the algebra.
//!
//! ```
//! use beurling::{AlgElement, Context, Element, GroupSpec, Weight};
//!
//! let group = GroupSpec::cyclic(4)?;
//! let weight = Weight::new(&group, vec![1.0, 2.0, 2.0, 2.0])?;
//! let ctx = Context::new(group, weight)?;
//! let d1 = AlgElement::delta(&ctx, Element(1))?;
//! let h = d1.conv_w_naive(&d1)?;
//! // The kernel contributes w(1) w(1) / w(2) = 2 at t = 2.
//! assert_eq!(h.coeffs()[2].re, 2.0);
//! assert_eq!(h.norm_w1(), 4.0);
//! # Ok::<(), beurling::Error>(())
//! ```

pub mod algebra;
pub mod error;
mod fft;
pub mod fourier;
pub mod group;
pub mod lemmas;
pub mod representations;
pub mod sampling;
#[cfg(test)]
mod testutil;
pub mod translation;
pub mod weight;

pub use algebra::{relative_w1_error, AlgElement, Context};
pub use error::{Error, Result};
pub use group::{Element, GroupKind, GroupSpec};
pub use weight::{make_length_weight, verify_weight, Weight, WeightForm, WeightReport};

/// Default relative tolerance for identity suites.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Tolerance for FFT-backed paths against their direct-sum references.
pub const TOL_FAST: f64 = 1e-9;
/// Tolerance for identities that are exact up to a handful of rounding steps.
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for representation reconstruction round trips.
pub const TOL_RECONSTRUCT: f64 = 1e-8;

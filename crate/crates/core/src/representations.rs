//! Unitary representations of the group, their integrated action on the
//! weighted algebra, and the reconstruction going the other way.
//!
//! Integration sends `f` to `sum_s f(s) w(s) U(s)`; it is an algebra
//! homomorphism for any weight, compatible with the involution when the
//! weight is symmetric, and non-degenerate because `delta_e` integrates to
//! the identity. Reconstruction inverts it: from the matrices `pi(delta_t)`
//! alone it recovers each `U(s)` by exploiting `U(s) pi(f) = pi(gamma(s, f))`
//! on a spanning family, solving with a pseudo-inverse.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgElement, Context};
use crate::error::{Error, Result};
use crate::fourier::{char_value, Character};
use crate::group::{Element, GroupSpec};
use crate::sampling;
use crate::translation::gamma;

pub type CMatrix = DMatrix<Complex64>;

/// Condition-number ceiling for [`reconstruct`].
pub const COND_LIMIT: f64 = 1e8;

/// Relative singular-value cutoff used for rank decisions.
const RANK_RTOL: f64 = 1e-10;

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

/// A unitary representation: one `dim x dim` unitary matrix per element,
/// multiplicative over the group law.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: GroupSpec,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl UnitaryRep {
    /// Validates shapes, unitarity, the identity, and multiplicativity over
    /// all pairs (so construction costs `O(n^2 d^3)`).
    pub fn new(group: GroupSpec, matrices: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let rep = Self::assemble(group, matrices)?;
        let unit = rep.unitarity_residual();
        if unit > tol {
            return Err(Error::InvalidRepresentation(format!(
                "unitarity residual {unit:.3e} exceeds {tol:.3e}"
            )));
        }
        let id = op_norm(
            &(rep.matrices[rep.group.identity().index()].clone()
                - CMatrix::identity(rep.dim, rep.dim)),
        );
        if id > tol {
            return Err(Error::InvalidRepresentation(format!(
                "matrix at the identity deviates from I by {id:.3e}"
            )));
        }
        let hom = rep.homomorphism_residual();
        if hom > tol {
            return Err(Error::InvalidRepresentation(format!(
                "multiplicativity residual {hom:.3e} exceeds {tol:.3e}"
            )));
        }
        Ok(rep)
    }

    /// Shape checks only; for constructions that are exact by design (e.g.
    /// permutation matrices).
    pub(crate) fn new_unchecked(group: GroupSpec, matrices: Vec<CMatrix>) -> Result<Self> {
        Self::assemble(group, matrices)
    }

    fn assemble(group: GroupSpec, matrices: Vec<CMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        if dim == 0 {
            return Err(Error::InvalidRepresentation(
                "zero-dimensional representation".into(),
            ));
        }
        for m in &matrices {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "expected uniform {dim} x {dim} matrices, found {} x {}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(UnitaryRep {
            group,
            dim,
            matrices,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, s: Element) -> Result<&CMatrix> {
        self.group.element(s.0)?;
        Ok(&self.matrices[s.0])
    }

    /// `max_s || U(s) U(s)* - I ||`.
    pub fn unitarity_residual(&self) -> f64 {
        let id = CMatrix::identity(self.dim, self.dim);
        self.matrices
            .iter()
            .map(|u| op_norm(&(u * u.adjoint() - &id)))
            .fold(0.0, f64::max)
    }

    /// `max_{s,t} || U(st) - U(s) U(t) ||` over all pairs; `O(n^2 d^3)`.
    pub fn homomorphism_residual(&self) -> f64 {
        let n = self.group.order();
        let mut worst = 0.0f64;
        for s in 0..n {
            for t in 0..n {
                let st = self.group.compose_idx(s, t);
                let diff = &self.matrices[s] * &self.matrices[t] - &self.matrices[st];
                worst = worst.max(op_norm(&diff));
            }
        }
        worst
    }

    /// Wire format: matrices as row-major `[re, im]` grids keyed by element
    /// index.
    pub fn to_wire(&self) -> RepWire {
        let matrices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(s, m)| {
                let rows = (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                    .collect();
                (s, rows)
            })
            .collect();
        RepWire {
            dim: self.dim,
            matrices,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RepWire {
    pub dim: usize,
    pub matrices: BTreeMap<usize, Vec<Vec<[f64; 2]>>>,
}

/// `pi(f) = sum_s f(s) w(s) U(s)`.
pub fn integrate(rep: &UnitaryRep, f: &AlgElement) -> Result<CMatrix> {
    if *rep.group() != *f.context().group() {
        return Err(Error::DimensionMismatch(
            "representation and function live on different groups".into(),
        ));
    }
    let w = f.context().weight().values();
    let mut acc = CMatrix::zeros(rep.dim, rep.dim);
    for (s, &c) in f.coeffs().iter().enumerate() {
        if c == Complex64::default() {
            continue;
        }
        acc += &rep.matrices[s] * (c * w[s]);
    }
    Ok(acc)
}

/// A representation of the algebra given by its values on the point masses:
/// `deltas[t] = pi(delta_t)`; everything else follows by linearity.
#[derive(Debug, Clone)]
pub struct AlgebraRep {
    dim: usize,
    deltas: Vec<CMatrix>,
}

impl AlgebraRep {
    pub fn new(deltas: Vec<CMatrix>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::InvalidRepresentation("no delta matrices".into()));
        }
        let dim = deltas[0].nrows();
        if dim == 0 {
            return Err(Error::InvalidRepresentation(
                "zero-dimensional representation".into(),
            ));
        }
        for m in &deltas {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "expected uniform {dim} x {dim} matrices, found {} x {}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(AlgebraRep { dim, deltas })
    }

    /// The integrated form of a unitary representation: `pi(delta_t) = w(t) U(t)`.
    pub fn from_unitary(rep: &UnitaryRep, ctx: &Context) -> Result<Self> {
        if *rep.group() != *ctx.group() {
            return Err(Error::DimensionMismatch(
                "representation and context live on different groups".into(),
            ));
        }
        let w = ctx.weight().values();
        let deltas = rep
            .matrices
            .iter()
            .zip(w)
            .map(|(u, &wv)| u * Complex64::new(wv, 0.0))
            .collect();
        Self::new(deltas)
    }

    pub fn order(&self) -> usize {
        self.deltas.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self, t: Element) -> Result<&CMatrix> {
        self.deltas.get(t.0).ok_or(Error::InvalidElement {
            index: t.0,
            order: self.deltas.len(),
        })
    }

    /// `pi(f) = sum_t f(t) pi(delta_t)`.
    pub fn apply(&self, f: &AlgElement) -> Result<CMatrix> {
        if f.context().order() != self.deltas.len() {
            return Err(Error::DimensionMismatch(format!(
                "function on a group of order {} applied to a representation of order {}",
                f.context().order(),
                self.deltas.len()
            )));
        }
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for (t, &c) in f.coeffs().iter().enumerate() {
            if c == Complex64::default() {
                continue;
            }
            acc += &self.deltas[t] * c;
        }
        Ok(acc)
    }

    /// Columns `pi(delta_t) e_k` side by side: the span witness for
    /// non-degeneracy.
    fn stacked(&self) -> CMatrix {
        let n = self.deltas.len();
        let mut b = CMatrix::zeros(self.dim, n * self.dim);
        for (t, m) in self.deltas.iter().enumerate() {
            b.view_mut((0, t * self.dim), (self.dim, self.dim)).copy_from(m);
        }
        b
    }
}

/// Residuals from randomized *-representation checks. All residuals are
/// relative, scaled by the algebra norms of the inputs floored at 1.
#[derive(Debug, Clone, Serialize)]
pub struct StarRepReport {
    pub trials: usize,
    /// `|| pi(f .* g) - pi(f) pi(g) ||`, worst case.
    pub mult_residual: f64,
    /// `|| pi(f*) - pi(f)* ||`, worst case; `None` when the weight is not
    /// symmetric (the identity is then not expected to hold).
    pub star_residual: Option<f64>,
    /// Worst `|| pi(f) || - ||f||`, positive only if the contraction bound
    /// fails.
    pub norm_excess: f64,
    /// Whether `{ pi(delta_t) e_k }` spans the whole space.
    pub nondegenerate: bool,
    pub rank: usize,
}

/// Randomized check that integration yields a non-degenerate
/// *-representation. Zero trials still reports non-degeneracy.
pub fn check_star_rep(
    rep: &UnitaryRep,
    ctx: &Context,
    trials: usize,
    seed: u64,
) -> Result<StarRepReport> {
    if *rep.group() != *ctx.group() {
        return Err(Error::DimensionMismatch(
            "representation and context live on different groups".into(),
        ));
    }
    let symmetric = ctx.weight().is_symmetric();
    let mut rng = sampling::rng_from_seed(seed);
    let mut mult_residual = 0.0f64;
    let mut star_residual = if symmetric { Some(0.0f64) } else { None };
    let mut norm_excess = 0.0f64;
    for _ in 0..trials {
        let f = sampling::random_function(ctx, &mut rng);
        let g = sampling::random_function(ctx, &mut rng);
        let pf = integrate(rep, &f)?;
        let pg = integrate(rep, &g)?;
        let pfg = integrate(rep, &f.conv_w_naive(&g)?)?;
        let scale = (f.norm_w1() * g.norm_w1()).max(1.0);
        mult_residual = mult_residual.max(op_norm(&(pfg - &pf * &pg)) / scale);
        if let Some(star) = star_residual.as_mut() {
            let ps = integrate(rep, &f.involution())?;
            *star = star.max(op_norm(&(ps - pf.adjoint())) / f.norm_w1().max(1.0));
        }
        norm_excess = norm_excess.max(op_norm(&pf) - f.norm_w1());
    }
    let alg = AlgebraRep::from_unitary(rep, ctx)?;
    let sv = alg.stacked().svd(false, false).singular_values;
    let smax = sv.max();
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > smax * RANK_RTOL).count()
    };
    Ok(StarRepReport {
        trials,
        mult_residual,
        star_residual,
        norm_excess,
        nondegenerate: rank == rep.dim,
        rank,
    })
}

/// Relative residuals of the two intertwining identities
/// `U(s) pi(f) = pi(gamma(s, f))` and `pi(f) U(s) = pi(theta(s^-1, f))`.
#[derive(Debug, Clone, Serialize)]
pub struct IntertwiningResidual {
    pub left: f64,
    pub right: f64,
}

pub fn check_intertwining(
    rep: &UnitaryRep,
    s: Element,
    f: &AlgElement,
) -> Result<IntertwiningResidual> {
    let u = rep.matrix(s)?;
    let pf = integrate(rep, f)?;
    let scale = f.norm_w1().max(1.0);
    let left_target = integrate(rep, &gamma(s, f)?)?;
    let left = op_norm(&(u * &pf - left_target)) / scale;
    let s_inv = f.context().group().inverse(s)?;
    let right_target = integrate(rep, &crate::translation::theta(s_inv, f)?)?;
    let right = op_norm(&(&pf * u - right_target)) / scale;
    Ok(IntertwiningResidual { left, right })
}

/// The regular representation on the weighted `l^2` space, expressed in the
/// normalized point-mass basis `u_t = delta_t / w(t)`, where the action of
/// `gamma` permutes basis vectors: `U(s) u_r = u_{sr}`. The matrices are
/// exact 0/1 permutations, independent of the weight.
pub fn regular_rep(ctx: &Context) -> UnitaryRep {
    let grp = ctx.group();
    let n = grp.order();
    let one = Complex64::new(1.0, 0.0);
    let matrices = (0..n)
        .map(|s| {
            let mut m = CMatrix::zeros(n, n);
            for r in 0..n {
                m[(grp.compose_idx(s, r), r)] = one;
            }
            m
        })
        .collect();
    UnitaryRep::new_unchecked(grp.clone(), matrices).expect("permutation matrices are well formed")
}

/// A random unitary representation of a cyclic product: a random character
/// per dimension, conjugated by a random unitary.
pub fn random_unitary_rep(
    ctx: &Context,
    dim: usize,
    rng: &mut impl Rng,
) -> Result<UnitaryRep> {
    let grp = ctx.group();
    let moduli = grp
        .moduli()
        .ok_or_else(|| {
            Error::UnsupportedGroup("random representations require a cyclic_product group".into())
        })?
        .to_vec();
    if dim == 0 {
        return Err(Error::InvalidParameter(
            "representation dimension must be >= 1".into(),
        ));
    }
    let chars: Vec<Character> = (0..dim)
        .map(|_| Character {
            frequencies: moduli.iter().map(|&m| rng.gen_range(0..m)).collect(),
        })
        .collect();
    let q = sampling::random_unitary(dim, rng);
    let qh = q.adjoint();
    let matrices: Result<Vec<CMatrix>> = grp
        .elements()
        .map(|s| {
            let mut scaled = q.clone();
            for (k, chi) in chars.iter().enumerate() {
                let v = char_value(grp, chi, s)?;
                for entry in scaled.column_mut(k).iter_mut() {
                    *entry *= v;
                }
            }
            Ok(scaled * &qh)
        })
        .collect();
    UnitaryRep::new(grp.clone(), matrices?, 1e-10)
}

/// Recovers the unitary representation underlying a non-degenerate algebra
/// representation.
///
/// Writes `M` for the stacked `pi(delta_t) e_k` columns; since the candidate
/// `U(s)` must satisfy `U(s) M = [pi(gamma(s, delta_t))]`, the right-hand
/// side times the pseudo-inverse of `M` pins it down. Degenerate input (rank
/// below `dim`) and conditioning beyond [`COND_LIMIT`] are rejected; each
/// recovered matrix must be unitary to `tol` and the assembled family is
/// re-validated as a `UnitaryRep`.
pub fn reconstruct(alg: &AlgebraRep, ctx: &Context, tol: f64) -> Result<UnitaryRep> {
    let grp = ctx.group();
    let n = grp.order();
    if alg.order() != n {
        return Err(Error::DimensionMismatch(format!(
            "representation of order {} reconstructed over a group of order {n}",
            alg.order()
        )));
    }
    let d = alg.dim();
    let stacked = alg.stacked();
    let svd = stacked.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let rank = if smax == 0.0 {
        0
    } else {
        svd.singular_values
            .iter()
            .filter(|&&s| s > smax * RANK_RTOL)
            .count()
    };
    if rank < d {
        return Err(Error::DegenerateRepresentation(format!(
            "the vectors pi(delta_t) e_k span rank {rank} < dimension {d}"
        )));
    }
    let smin = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    let cond = smax / smin;
    if cond > COND_LIMIT {
        return Err(Error::IllConditioned {
            cond,
            limit: COND_LIMIT,
        });
    }
    let pinv = svd
        .pseudo_inverse(smax * 1e-14)
        .map_err(|e| Error::InvalidRepresentation(e.into()))?;

    let id = CMatrix::identity(d, d);
    let mut matrices = Vec::with_capacity(n);
    for s in grp.elements() {
        let mut moved = CMatrix::zeros(d, n * d);
        for t in grp.elements() {
            let dt = AlgElement::delta(ctx, t)?;
            let block = alg.apply(&gamma(s, &dt)?)?;
            moved.view_mut((0, t.0 * d), (d, d)).copy_from(&block);
        }
        let u = &moved * &pinv;
        let residual = op_norm(&(&u * u.adjoint() - &id));
        if residual > tol {
            return Err(Error::NotUnitary { residual, tol });
        }
        matrices.push(u);
    }
    UnitaryRep::new(grp.clone(), matrices, tol)
}

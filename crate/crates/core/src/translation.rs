//! Translation operators, classical and weight-corrected.
//!
//! `left_translate` and `right_translate` act by `f(s^-1 t)` and `f(t s)`.
//! Their weighted counterparts `gamma` and `theta` are the conjugates by the
//! `sigma` transport, so they act isometrically on the weighted spaces:
//!
//! - `gamma(s, f)(t) = f(s^-1 t) w(s^-1 t) / w(t)`
//! - `theta(s, f)(t) = f(t s) w(t s) / w(t)`
//!
//! The arithmetic below multiplies by the numerator weight before dividing,
//! matching `sigma`/`sigma_inv` operation for operation, so conjugation
//! identities hold bit for bit, not just to rounding.

use num_complex::Complex64;

use crate::algebra::AlgElement;
use crate::error::Result;
use crate::group::Element;

/// `(L_s f)(t) = f(s^-1 t)`.
pub fn left_translate(s: Element, f: &AlgElement) -> Result<AlgElement> {
    let grp = f.context().group();
    let s_inv = grp.inverse(s)?.index();
    let coeffs: Vec<Complex64> = (0..grp.order())
        .map(|t| f.coeffs()[grp.compose_idx(s_inv, t)])
        .collect();
    AlgElement::new(f.context(), coeffs)
}

/// `(R_s f)(t) = f(t s)`.
pub fn right_translate(s: Element, f: &AlgElement) -> Result<AlgElement> {
    let grp = f.context().group();
    grp.element(s.index())?;
    let coeffs: Vec<Complex64> = (0..grp.order())
        .map(|t| f.coeffs()[grp.compose_idx(t, s.index())])
        .collect();
    AlgElement::new(f.context(), coeffs)
}

/// Weighted left translation `sigma^-1 . L_s . sigma`.
pub fn gamma(s: Element, f: &AlgElement) -> Result<AlgElement> {
    let grp = f.context().group();
    let w = f.context().weight().values();
    let s_inv = grp.inverse(s)?.index();
    let coeffs: Vec<Complex64> = (0..grp.order())
        .map(|t| {
            let j = grp.compose_idx(s_inv, t);
            (f.coeffs()[j] * w[j]) / w[t]
        })
        .collect();
    AlgElement::new(f.context(), coeffs)
}

/// Weighted right translation `sigma^-1 . R_s . sigma`.
pub fn theta(s: Element, f: &AlgElement) -> Result<AlgElement> {
    let grp = f.context().group();
    grp.element(s.index())?;
    let w = f.context().weight().values();
    let coeffs: Vec<Complex64> = (0..grp.order())
        .map(|t| {
            let j = grp.compose_idx(t, s.index());
            (f.coeffs()[j] * w[j]) / w[t]
        })
        .collect();
    AlgElement::new(f.context(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{relative_w1_error, Context};
    use crate::group::GroupSpec;
    use crate::sampling;
    use crate::weight::{make_length_weight, Weight, WeightForm};

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z4_weighted() -> Context {
        let g = GroupSpec::cyclic(4).unwrap();
        let w = Weight::new(&g, vec![1.0, 2.0, 2.0, 2.0]).unwrap();
        Context::new(g, w).unwrap()
    }

    #[test]
    fn classical_translations() {
        let ctx = z4_weighted();
        let d0 = AlgElement::delta(&ctx, Element(0)).unwrap();
        let d1 = AlgElement::delta(&ctx, Element(1)).unwrap();
        assert_eq!(left_translate(Element(1), &d0).unwrap().coeffs()[1], cx(1., 0.));
        assert_eq!(right_translate(Element(1), &d1).unwrap().coeffs()[0], cx(1., 0.));
        let mut rng = sampling::rng_from_seed(1);
        let f = sampling::random_function(&ctx, &mut rng);
        assert_eq!(left_translate(Element(0), &f).unwrap().coeffs(), f.coeffs());
        assert_eq!(right_translate(Element(0), &f).unwrap().coeffs(), f.coeffs());
    }

    #[test]
    fn weighted_translations_frozen_values() {
        let ctx = z4_weighted();
        let d0 = AlgElement::delta(&ctx, Element(0)).unwrap();
        let d1 = AlgElement::delta(&ctx, Element(1)).unwrap();
        // gamma(1, d0)(1) = w(0)/w(1) = 1/2
        let g = gamma(Element(1), &d0).unwrap();
        assert_eq!(g.coeffs(), &[cx(0., 0.), cx(0.5, 0.), cx(0., 0.), cx(0., 0.)]);
        // theta(1, d1)(0) = w(1)/w(0) = 2
        let t = theta(Element(1), &d1).unwrap();
        assert_eq!(t.coeffs(), &[cx(2., 0.), cx(0., 0.), cx(0., 0.), cx(0., 0.)]);
        // Identity translations are bit-exact.
        let mut rng = sampling::rng_from_seed(2);
        let f = sampling::random_function(&ctx, &mut rng);
        assert_eq!(gamma(Element(0), &f).unwrap().coeffs(), f.coeffs());
        assert_eq!(theta(Element(0), &f).unwrap().coeffs(), f.coeffs());
    }

    #[test]
    fn gamma_of_scaled_delta_is_scaled_shifted_delta() {
        // gamma(s, u_r) = u_{sr} where u_t = delta_t / w(t): permutation action.
        let ctx = z4_weighted();
        let w = ctx.weight().values().to_vec();
        for s in 0..4 {
            for r in 0..4 {
                let u_r =
                    &AlgElement::delta(&ctx, Element(r)).unwrap() * cx(1.0 / w[r], 0.0);
                let moved = gamma(Element(s), &u_r).unwrap();
                let sr = ctx.group().compose(Element(s), Element(r)).unwrap();
                let expected =
                    &AlgElement::delta(&ctx, sr).unwrap() * cx(1.0 / w[sr.0], 0.0);
                assert!(relative_w1_error(&moved, &expected).unwrap() < 1e-15);
            }
        }
    }

    #[test]
    fn conjugation_by_sigma_is_bit_exact() {
        let ctx = z4_weighted();
        let mut rng = sampling::rng_from_seed(3);
        for _ in 0..20 {
            let f = sampling::random_function(&ctx, &mut rng);
            let s = sampling::random_element(ctx.group(), &mut rng);
            let via_sigma = left_translate(s, &f.sigma()).unwrap().sigma_inv();
            assert_eq!(gamma(s, &f).unwrap().coeffs(), via_sigma.coeffs());
            let via_sigma_r = right_translate(s, &f.sigma()).unwrap().sigma_inv();
            assert_eq!(theta(s, &f).unwrap().coeffs(), via_sigma_r.coeffs());
        }
    }

    #[test]
    fn composition_laws() {
        // Power-of-two weights make the kernel arithmetic exact, so the
        // composition laws hold bitwise; general weights hold to rounding.
        let g = GroupSpec::cyclic(8).unwrap();
        let gens = [Element(1), Element(7)];
        let w = make_length_weight(&g, &gens, WeightForm::Exponential { base: 2.0 }).unwrap();
        let ctx = Context::new(g, w).unwrap();
        let mut rng = sampling::rng_from_seed(4);
        let f = sampling::random_function(&ctx, &mut rng);
        for s in 0..8 {
            for r in 0..8 {
                let (s, r) = (Element(s), Element(r));
                let sr = ctx.group().compose(s, r).unwrap();
                let g1 = gamma(s, &gamma(r, &f).unwrap()).unwrap();
                assert_eq!(g1.coeffs(), gamma(sr, &f).unwrap().coeffs());
                let t1 = theta(s, &theta(r, &f).unwrap()).unwrap();
                assert_eq!(t1.coeffs(), theta(sr, &f).unwrap().coeffs());
            }
        }
    }

    #[test]
    fn composition_laws_general_weight() {
        let ctx = z4_weighted();
        let mut rng = sampling::rng_from_seed(5);
        let f = sampling::random_function(&ctx, &mut rng);
        for s in 0..4 {
            for r in 0..4 {
                let (s, r) = (Element(s), Element(r));
                let sr = ctx.group().compose(s, r).unwrap();
                let lhs = gamma(s, &gamma(r, &f).unwrap()).unwrap();
                let rhs = gamma(sr, &f).unwrap();
                assert!(relative_w1_error(&lhs, &rhs).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn theta_gamma_invert_on_abelian_groups() {
        let ctx = z4_weighted();
        let mut rng = sampling::rng_from_seed(6);
        let f = sampling::random_function(&ctx, &mut rng);
        for s in ctx.group().elements() {
            let round = theta(s, &gamma(s, &f).unwrap()).unwrap();
            assert!(relative_w1_error(&round, &f).unwrap() < 1e-14);
            let round2 = gamma(s, &theta(s, &f).unwrap()).unwrap();
            assert!(relative_w1_error(&round2, &f).unwrap() < 1e-14);
        }
    }

    #[test]
    fn script_p_isometry_spot() {
        let ctx = z4_weighted();
        let mut rng = sampling::rng_from_seed(7);
        let f = sampling::random_function(&ctx, &mut rng);
        for p in [1.0, 2.0, 3.0] {
            let base = f.norm_script(p).unwrap();
            for s in ctx.group().elements() {
                let th = theta(s, &f).unwrap().norm_script(p).unwrap();
                let ga = gamma(s, &f).unwrap().norm_script(p).unwrap();
                assert!((th - base).abs() < 1e-13 * base);
                assert!((ga - base).abs() < 1e-13 * base);
            }
        }
    }

    #[test]
    fn invalid_element_is_rejected() {
        let ctx = z4_weighted();
        let f = AlgElement::delta(&ctx, Element(0)).unwrap();
        assert!(gamma(Element(9), &f).is_err());
        assert!(theta(Element(9), &f).is_err());
        assert!(left_translate(Element(9), &f).is_err());
        assert!(right_translate(Element(9), &f).is_err());
    }
}

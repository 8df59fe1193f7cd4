//! The two test-function weights of the breakdown arguments: the 3D weight
//! e^{-r}/r (an eigenfunction of the radial Laplacian, Delta w = w) and the
//! modified Bessel function K0, its 2D counterpart.
//!
//! K0 and its derivatives are evaluated from the integral representation
//! K0(r) = int_0^inf e^{-r cosh t} dt by adaptive quadrature with the
//! truncation point chosen so the discarded tail is negligible relative to
//! the value. An independent series/asymptotic evaluation lives in the test
//! suite and cross-checks this path.

use crate::quad::adaptive_simpson;
use crate::{Error, Real, Result};

/// Which weight a dimension uses: e^{-r}/r in 3D, K0(r) in 2D.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    ThreeD,
    TwoDBessel,
}

impl WeightKind {
    /// Weight value at radius `r > 0` (panics on nonpositive radii; grids
    /// only carry strictly positive cell centers).
    pub fn value(&self, r: f64) -> f64 {
        match self {
            WeightKind::ThreeD => w3(r).expect("positive radius"),
            WeightKind::TwoDBessel => k0(r).expect("positive radius"),
        }
    }

    /// First derivative of the weight at radius `r > 0`.
    pub fn derivative(&self, r: f64) -> f64 {
        match self {
            WeightKind::ThreeD => w3_prime(r).expect("positive radius"),
            WeightKind::TwoDBessel => k0_prime(r).expect("positive radius"),
        }
    }
}

fn check_radius<R: Real>(r: R) -> Result<()> {
    if r > R::zero() {
        Ok(())
    } else {
        Err(Error::Domain("weight radius must be positive".into()))
    }
}

fn c<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("scalar conversion")
}

/// e^{-r}/r
pub fn w3<R: Real>(r: R) -> Result<R> {
    check_radius(r)?;
    Ok((-r).exp() / r)
}

/// d/dr e^{-r}/r = -(1+r) e^{-r}/r^2
pub fn w3_prime<R: Real>(r: R) -> Result<R> {
    check_radius(r)?;
    Ok(-(R::one() + r) * (-r).exp() / (r * r))
}

/// d^2/dr^2 e^{-r}/r = (1/r + 2/r^2 + 2/r^3) e^{-r}
pub fn w3_second<R: Real>(r: R) -> Result<R> {
    check_radius(r)?;
    let two = c::<R>(2.0);
    Ok((R::one() / r + two / (r * r) + two / (r * r * r)) * (-r).exp())
}

/// int_0^T e^{-r cosh t} cosh^p t dt with T chosen so the discarded tail is
/// below ~1e-18 of the integrand's e^{-r} scale.
fn cosh_moment<R: Real>(r: R, power: i32) -> R {
    // e^{-r cosh T} cosh^p T <= 1e-20 e^{-r}  <=>  r(cosh T - 1) >= 46 + p ln cosh T
    let ln_cut = c::<R>(46.0);
    let mut x = R::one() + ln_cut / r;
    if power > 0 {
        let extra = c::<R>(power as f64) * x.ln().max(R::zero());
        x = R::one() + (ln_cut + extra) / r;
    }
    let t_max = (x + (x * x - R::one()).sqrt()).ln();
    let tol = c::<R>(1e-12);
    let f = |t: R| (-r * t.cosh()).exp() * t.cosh().powi(power);
    // Split at t = 1: for small r the integrand is flat on [0, 1] and
    // double-exponentially decaying beyond.
    if t_max > R::one() {
        adaptive_simpson(f, R::zero(), R::one(), tol)
            + adaptive_simpson(f, R::one(), t_max, tol)
    } else {
        adaptive_simpson(f, R::zero(), t_max, tol)
    }
}

/// K0(r) = int_0^inf e^{-r cosh t} dt, by adaptive quadrature.
pub fn k0<R: Real>(r: R) -> Result<R> {
    check_radius(r)?;
    Ok(cosh_moment(r, 0))
}

/// K0'(r) = -int_0^inf e^{-r cosh t} cosh t dt; strictly negative.
pub fn k0_prime<R: Real>(r: R) -> Result<R> {
    check_radius(r)?;
    Ok(-cosh_moment(r, 1))
}

/// K0''(r) evaluated from the second integral representation
/// int_0^inf e^{-r cosh t} cosh^2 t dt, independent of the Bessel ODE.
pub fn k0_second<R: Real>(r: R) -> Result<R> {
    check_radius(r)?;
    Ok(cosh_moment(r, 2))
}

#[cfg(test)]
// frozen reference constants keep their full generated precision
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn w3_closed_form_values() {
        assert!((w3(1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!((w3(0.5).unwrap() - 2.0 * (-0.5f64).exp()).abs() < 1e-15);
        assert!(w3(40.0).unwrap() < 1e-17);
        assert!(w3(0.0).is_err());
        assert!(w3(-1.0).is_err());
    }

    #[test]
    fn w3_derivatives_match_closed_forms() {
        assert!((w3_prime(1.0).unwrap() + 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((w3_second(1.0).unwrap() - 5.0 * (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn w3_is_a_radial_eigenfunction() {
        // w'' + (2/r) w' - w = 0 exactly in closed form
        for r in [0.1, 1.0, 5.0] {
            let res: f64 = w3_second(r).unwrap() + 2.0 / r * w3_prime(r).unwrap() - w3(r).unwrap();
            assert!(res.abs() < 1e-12 * w3(r).unwrap(), "r={r} res={res}");
        }
    }

    #[test]
    fn k0_reference_point() {
        // frozen from the series/asymptotic oracle (see tests/)
        assert!((k0(1.0f64).unwrap() / 0.42102443824070833 - 1.0).abs() < 1e-10);
        assert!((k0_prime(1.0f64).unwrap() / -0.60190723019723457 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn k0_small_r_bounds() {
        // K0(r) <= 3/r and |K0'(r)| <= 1/r^2 on (0, 1/2)
        for i in 0..50 {
            let r = 0.5 * (i as f64 + 0.5) / 50.0;
            assert!(k0(r).unwrap() <= 3.0 / r);
            assert!(k0_prime(r).unwrap().abs() <= 1.0 / (r * r));
        }
        assert!(k0(0.25).unwrap() <= 12.0);
    }

    #[test]
    fn k0_rejects_nonpositive() {
        assert!(k0(0.0).is_err());
        assert!(k0_prime(-2.0).is_err());
        assert!(k0_second(0.0).is_err());
    }

    #[test]
    fn bessel_ode_residual() {
        for i in 0..60 {
            let r = 0.05 * (30.0f64 / 0.05).powf(i as f64 / 59.0);
            let v = k0(r).unwrap();
            let res = k0_second(r).unwrap() + k0_prime(r).unwrap() / r - v;
            assert!(res.abs() < 1e-6 * v, "r={r} rel={}", res / v);
        }
    }

    proptest! {
        #[test]
        fn k0_monotone_decreasing(r in 1e-3f64..30.0, step in 0.01f64..2.0) {
            prop_assert!(k0(r + step).unwrap() < k0(r).unwrap());
        }

        #[test]
        fn positivity_kernel(r in 1e-3f64..40.0) {
            // K0(r) - K0'(r)/r > 0 (K0' < 0)
            let kp = k0_prime(r).unwrap();
            prop_assert!(kp < 0.0);
            prop_assert!(k0(r).unwrap() - kp / r > 0.0);
        }
    }
}

//! Polytropic equation of state p = A rho^gamma and the associated sound
//! speed / density conversions.

use crate::{Error, Real, Result};

/// Entropy constant `A` and adiabatic index `gamma` of the polytropic law.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasParams<R> {
    pub a: R,
    pub gamma: R,
}

impl<R: Real> GasParams<R> {
    pub fn new(a: R, gamma: R) -> Result<Self> {
        if !(a > R::zero()) {
            return Err(Error::Domain("entropy constant A must be positive".into()));
        }
        if !(gamma > R::one()) {
            return Err(Error::Domain("adiabatic index gamma must exceed 1".into()));
        }
        Ok(Self { a, gamma })
    }

    /// The breakdown results only need gamma > 1, but the polytropic physical
    /// range is (1, 5/3]. Callers may surface this as a warning.
    pub fn outside_polytropic_range(&self) -> bool {
        self.gamma > R::from_f64(5.0 / 3.0).unwrap()
    }

    /// p = A rho^gamma, with 0^gamma taken to be exactly 0.
    pub fn pressure(&self, rho: R) -> Result<R> {
        if rho < R::zero() {
            return Err(Error::Domain("density must be nonnegative".into()));
        }
        if rho == R::zero() {
            return Ok(R::zero());
        }
        Ok(self.a * rho.powf(self.gamma))
    }

    /// c = sqrt(A gamma) rho^{(gamma-1)/2}; zero at vacuum.
    pub fn sound_speed(&self, rho: R) -> Result<R> {
        if rho < R::zero() {
            return Err(Error::Domain("density must be nonnegative".into()));
        }
        if rho == R::zero() {
            return Ok(R::zero());
        }
        let half = R::from_f64(0.5).unwrap();
        Ok((self.a * self.gamma).sqrt() * rho.powf((self.gamma - R::one()) * half))
    }

    /// Inverse of `sound_speed`: rho = (A gamma)^{-1/(gamma-1)} c^{2/(gamma-1)}.
    pub fn density_from_sound_speed(&self, c: R) -> Result<R> {
        if c < R::zero() {
            return Err(Error::Domain("sound speed must be nonnegative".into()));
        }
        if c == R::zero() {
            return Ok(R::zero());
        }
        let inv_gm1 = R::one() / (self.gamma - R::one());
        Ok((c * c / (self.a * self.gamma)).powf(inv_gm1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: f64, gamma: f64) -> GasParams<f64> {
        GasParams::new(a, gamma).unwrap()
    }

    #[test]
    fn pressure_direct_values() {
        assert_eq!(g(1.0, 1.4).pressure(0.0).unwrap(), 0.0);
        assert!((g(1.0, 2.0).pressure(3.0).unwrap() - 9.0).abs() < 1e-14);
        assert!((g(1.0, 1.4).pressure(1.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sound_speed_direct_values() {
        assert_eq!(g(1.0, 2.0).sound_speed(0.0).unwrap(), 0.0);
        assert!((g(1.0, 2.0).sound_speed(2.0).unwrap() - 2.0).abs() < 1e-14);
        for gamma in [1.2, 1.4, 2.0, 3.0] {
            let gas = g(1.0 / gamma, gamma);
            assert!((gas.sound_speed(1.0).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn density_from_sound_speed_inverts() {
        assert_eq!(g(1.0, 2.0).density_from_sound_speed(0.0).unwrap(), 0.0);
        assert!((g(1.0, 2.0).density_from_sound_speed(2.0).unwrap() - 2.0).abs() < 1e-14);
        for rho in [1e-8, 1.0, 1e3] {
            let gas = g(0.7, 1.4);
            let c = gas.sound_speed(rho).unwrap();
            let back = gas.density_from_sound_speed(c).unwrap();
            assert!((back / rho - 1.0).abs() < 1e-14, "rho={rho} back={back}");
        }
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(GasParams::new(0.0, 2.0).is_err());
        assert!(GasParams::new(1.0, 1.0).is_err());
        assert!(g(1.0, 2.0).pressure(-1.0).is_err());
        assert!(g(1.0, 2.0).sound_speed(-1.0).is_err());
        assert!(g(1.0, 2.0).density_from_sound_speed(-1.0).is_err());
    }

    #[test]
    fn polytropic_range_flag() {
        assert!(!g(1.0, 1.4).outside_polytropic_range());
        assert!(g(1.0, 2.0).outside_polytropic_range());
    }

    proptest! {
        #[test]
        fn pressure_and_sound_speed_increase(
            a in 0.1f64..10.0, gamma in 1.01f64..4.0,
            rho in 1e-6f64..1e3, factor in 1.001f64..10.0)
        {
            let gas = g(a, gamma);
            prop_assert!(gas.pressure(rho * factor).unwrap() > gas.pressure(rho).unwrap());
            prop_assert!(gas.sound_speed(rho * factor).unwrap() > gas.sound_speed(rho).unwrap());
        }

        #[test]
        fn eos_identity_c2_rho_over_gamma(
            a in 0.1f64..10.0, gamma in 1.01f64..4.0, rho in 0.0f64..1e3)
        {
            let gas = g(a, gamma);
            let c = gas.sound_speed(rho).unwrap();
            let p = gas.pressure(rho).unwrap();
            let lhs = c * c * rho / gamma;
            prop_assert!((lhs - p).abs() <= 1e-14 * p.abs().max(1e-300));
        }

        #[test]
        fn round_trip_on_wide_range(
            a in 0.1f64..10.0, gamma in 1.01f64..4.0, rho in 0.0f64..1e6)
        {
            let gas = g(a, gamma);
            let back = gas.density_from_sound_speed(gas.sound_speed(rho).unwrap()).unwrap();
            prop_assert!((back - rho).abs() <= 1e-12 * rho.max(1e-300));
        }
    }
}

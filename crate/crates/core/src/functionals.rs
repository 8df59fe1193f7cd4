//! The weighted functionals F(t) = int rho w dV, their rates, the Riccati
//! constants, the convexity right-hand sides, the blow-up-time bound, and
//! the lower-bound envelope.

use std::sync::Arc;
use std::sync::OnceLock;

use crate::quad::adaptive_simpson_panels;
use crate::radial::{Dim, FluidState, Quadrature, RadialGrid, WeightProfile};
use crate::weights;
use crate::{Error, Gas, Result};

/// A functional sample along a trajectory.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct FunctionalValue {
    pub t: f64,
    pub f: f64,
    pub fdot: f64,
}

/// Cached quadrature and weight samples for one (grid, dim) pair. Evaluating
/// the 2D Bessel weight is quadrature-backed, so hot loops must reuse this.
#[derive(Clone, Debug)]
pub struct WeightedFunctionals {
    quad: Quadrature,
    w: WeightProfile,
    w_prime: WeightProfile,
    dim: Dim,
}

impl WeightedFunctionals {
    pub fn new(grid: Arc<RadialGrid>, dim: Dim) -> Self {
        let quad = Quadrature::new(grid, dim);
        let kind = dim.weight_kind();
        let w = quad.weight_profile(|r| kind.value(r));
        let w_prime = quad.weight_profile(|r| kind.derivative(r));
        Self {
            quad,
            w,
            w_prime,
            dim,
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn quadrature(&self) -> &Quadrature {
        &self.quad
    }

    /// F(t) = int rho w dV.
    pub fn value(&self, state: &FluidState) -> f64 {
        self.quad.integrate(&state.rho, &self.w)
    }

    /// F'(t) = int rho v w'(r) dV, the integration-by-parts form of the rate
    /// obtained from mass conservation.
    pub fn rate(&self, state: &FluidState) -> f64 {
        let flux: Vec<f64> = state
            .rho
            .iter()
            .zip(&state.v)
            .map(|(&rho, &v)| rho * v)
            .collect();
        self.quad.integrate(&flux, &self.w_prime)
    }

    /// Weighted density integral over the ball of radius r0 (localization).
    pub fn value_in_ball(&self, state: &FluidState, r0: f64) -> f64 {
        self.quad.integrate_restricted(&state.rho, &self.w, r0)
    }
}

/// F(t) for a single state; builds the weight cache on the fly.
pub fn f_value(state: &FluidState) -> f64 {
    WeightedFunctionals::new(state.grid.clone(), state.dim).value(state)
}

/// F'(t) for a single state; builds the weight cache on the fly.
pub fn f_rate(state: &FluidState) -> f64 {
    WeightedFunctionals::new(state.grid.clone(), state.dim).rate(state)
}

/// int_{R^2} K0(r) dx = 2 pi int_0^inf r K0(r) dr, evaluated once by
/// quadrature and cached. (The exact value is 2 pi; tests assert that, the
/// pipeline always uses this quadrature result.)
pub fn k0_plane_integral() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let f = |r: f64| {
            if r <= 0.0 {
                0.0
            } else {
                r * weights::k0(r).expect("positive radius")
            }
        };
        2.0 * std::f64::consts::PI
            * adaptive_simpson_panels(f, &[0.0, 0.5, 2.0, 10.0, 40.0], 1e-11)
    })
}

/// The Riccati constant: C0 = sqrt(A / ((gamma+1) (4 pi)^{gamma-1})) in 3D,
/// C1 = sqrt(A / (gamma+1)) (int K0 dx)^{-(gamma-1)/2} in 2D.
pub fn c_const(g: &Gas, dim: Dim) -> f64 {
    let norm = hoelder_norm(dim);
    (g.a / (g.gamma + 1.0)).sqrt() * norm.powf(-(g.gamma - 1.0) / 2.0)
}

/// The weight-mass constant entering the convexity inequality:
/// (4 pi) in 3D (exact), int_{R^2} K0 dx in 2D (cached quadrature).
pub fn hoelder_norm(dim: Dim) -> f64 {
    match dim {
        Dim::Three => 4.0 * std::f64::consts::PI,
        Dim::Two => k0_plane_integral(),
    }
}

/// Right-hand side of the convexity inequality: A F^gamma / norm^{gamma-1}.
pub fn convexity_rhs(f: f64, g: &Gas, dim: Dim) -> f64 {
    if f == 0.0 {
        return 0.0;
    }
    g.a * f.powf(g.gamma) / hoelder_norm(dim).powf(g.gamma - 1.0)
}

/// The explicit Riccati blow-up-time bound 2 F0^{-(gamma-1)/2} / ((gamma-1) C).
pub fn blowup_time_bound(f0: f64, g: &Gas, dim: Dim) -> Result<f64> {
    if !(f0 > 0.0) {
        return Err(Error::Domain("blow-up bound needs F(0) > 0".into()));
    }
    let gm1 = g.gamma - 1.0;
    Ok(2.0 * f0.powf(-gm1 / 2.0) / (gm1 * c_const(g, dim)))
}

/// The proved lower bound (F0^{-(gamma-1)/2} - ((gamma-1)/2) C t)^{-2/(gamma-1)}
/// for F(t); diverges as t approaches the blow-up-time bound.
pub fn envelope(t: f64, f0: f64, g: &Gas, dim: Dim) -> Result<f64> {
    if !(f0 > 0.0) {
        return Err(Error::Domain("envelope needs F(0) > 0".into()));
    }
    if t < 0.0 {
        return Err(Error::Domain("envelope needs t >= 0".into()));
    }
    let gm1 = g.gamma - 1.0;
    let base = f0.powf(-gm1 / 2.0) - 0.5 * gm1 * c_const(g, dim) * t;
    if base <= 0.0 {
        return Err(Error::Domain(
            "envelope diverges at or beyond the blow-up-time bound".into(),
        ));
    }
    Ok(base.powf(-2.0 / gm1))
}

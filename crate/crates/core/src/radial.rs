//! Radial grids, cell-averaged fields, and weighted volume integrals
//! int f w dV in 2D/3D radial symmetry.

use std::sync::Arc;

use crate::{Error, Result};

/// Spatial dimension of the ambient space (2 or 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn ambient(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// |S^{d-1}|: 2 pi in 2D, 4 pi in 3D.
    pub fn sphere_measure(self) -> f64 {
        match self {
            Dim::Two => 2.0 * std::f64::consts::PI,
            Dim::Three => 4.0 * std::f64::consts::PI,
        }
    }

    /// r^{d-1}
    pub fn radial_power(self, r: f64) -> f64 {
        match self {
            Dim::Two => r,
            Dim::Three => r * r,
        }
    }

    pub fn weight_kind(self) -> crate::weights::WeightKind {
        match self {
            Dim::Two => crate::weights::WeightKind::TwoDBessel,
            Dim::Three => crate::weights::WeightKind::ThreeD,
        }
    }
}

impl TryFrom<u8> for Dim {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            other => Err(format!("dim must be 2 or 3, got {other}")),
        }
    }
}

impl From<Dim> for u8 {
    fn from(d: Dim) -> u8 {
        d.ambient() as u8
    }
}

/// Uniform cell-centered grid on (0, r_max]. Cell i covers
/// [i dr, (i+1) dr] with center (i + 1/2) dr; no center touches r = 0.
#[derive(Clone, Debug)]
pub struct RadialGrid {
    pub r_max: f64,
    pub n_cells: usize,
    pub dr: f64,
    centers: Vec<f64>,
}

impl RadialGrid {
    pub fn new(r_max: f64, n_cells: usize) -> Result<Self> {
        if !(r_max > 0.0) {
            return Err(Error::Config("grid r_max must be positive".into()));
        }
        if n_cells < 8 {
            return Err(Error::Config("grid needs at least 8 cells".into()));
        }
        let dr = r_max / n_cells as f64;
        let centers = (0..n_cells).map(|i| (i as f64 + 0.5) * dr).collect();
        Ok(Self {
            r_max,
            n_cells,
            dr,
            centers,
        })
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    /// Radius of face k (k = 0..=n_cells); face 0 sits at the origin.
    pub fn face_radius(&self, k: usize) -> f64 {
        k as f64 * self.dr
    }

    /// Midpoint cell volume |S^{d-1}| r_i^{d-1} dr. This is the discrete
    /// volume the solver conserves against, so mass accounting telescopes
    /// exactly to the boundary flux.
    pub fn midpoint_volume(&self, i: usize, dim: Dim) -> f64 {
        dim.sphere_measure() * dim.radial_power(self.centers[i]) * self.dr
    }
}

/// Radial grid plus cell-averaged density and radial velocity at one time.
#[derive(Clone, Debug)]
pub struct FluidState {
    pub grid: Arc<RadialGrid>,
    pub dim: Dim,
    pub rho: Vec<f64>,
    pub v: Vec<f64>,
    pub time: f64,
}

impl FluidState {
    pub fn new(
        grid: Arc<RadialGrid>,
        dim: Dim,
        rho: Vec<f64>,
        v: Vec<f64>,
        time: f64,
    ) -> Result<Self> {
        if rho.len() != grid.n_cells || v.len() != grid.n_cells {
            return Err(Error::Config("field length must match the cell count".into()));
        }
        if rho.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::Domain("density must be finite and nonnegative".into()));
        }
        Ok(Self {
            grid,
            dim,
            rho,
            v,
            time,
        })
    }
}

const GAUSS_X: [f64; 3] = [-0.7745966692414834, 0.0, 0.7745966692414834];
const GAUSS_W: [f64; 3] = [
    0.5555555555555556,
    0.8888888888888888,
    0.5555555555555556,
];

/// Per-(grid, dim) quadrature for weighted volume integrals. The weight is
/// sampled at three Gauss nodes per cell (resolving e.g. the integrable
/// K0 log singularity near the origin to ~1e-7 relative), while the field is
/// reconstructed per cell by the parabola through three neighboring cell
/// values, giving 4th-order accuracy for smooth integrands.
#[derive(Clone, Debug)]
pub struct Quadrature {
    grid: Arc<RadialGrid>,
    /// Gauss node radii, 3 per cell.
    nodes: Vec<f64>,
    /// gauss weight * (dr/2) * |S^{d-1}| * r_node^{d-1}
    geom: Vec<f64>,
}

impl Quadrature {
    pub fn new(grid: Arc<RadialGrid>, dim: Dim) -> Self {
        let n = grid.n_cells;
        let half = grid.dr / 2.0;
        let omega = dim.sphere_measure();
        let mut nodes = Vec::with_capacity(3 * n);
        let mut geom = Vec::with_capacity(3 * n);
        for i in 0..n {
            let rc = grid.centers()[i];
            for j in 0..3 {
                let r = rc + half * GAUSS_X[j];
                nodes.push(r);
                geom.push(GAUSS_W[j] * half * omega * dim.radial_power(r));
            }
        }
        Self { grid, nodes, geom }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    /// Samples a weight function at the quadrature nodes.
    pub fn weight_profile(&self, w: impl Fn(f64) -> f64) -> WeightProfile {
        WeightProfile(self.nodes.iter().map(|&r| w(r)).collect())
    }

    pub fn unit_profile(&self) -> WeightProfile {
        WeightProfile(vec![1.0; self.nodes.len()])
    }

    /// int f w dV over the whole grid.
    pub fn integrate(&self, f: &[f64], w: &WeightProfile) -> f64 {
        self.integrate_cells(f, w, self.grid.n_cells)
    }

    /// Same, restricted to cells whose center lies below `r0`.
    pub fn integrate_restricted(&self, f: &[f64], w: &WeightProfile, r0: f64) -> f64 {
        let n_inside = self
            .grid
            .centers()
            .iter()
            .take_while(|&&r| r < r0)
            .count();
        self.integrate_cells(f, w, n_inside)
    }

    fn integrate_cells(&self, f: &[f64], w: &WeightProfile, n_cells: usize) -> f64 {
        let n = self.grid.n_cells;
        assert_eq!(f.len(), n, "field length mismatch");
        assert_eq!(w.0.len(), 3 * n, "weight profile mismatch");
        let dr = self.grid.dr;
        let centers = self.grid.centers();
        let mut total = 0.0;
        for i in 0..n_cells {
            let ic = i.clamp(1, n - 2);
            let fm = f[ic - 1];
            let f0 = f[ic];
            let fp = f[ic + 1];
            let c1 = 0.5 * (fp - fm);
            let c2 = 0.5 * (fp - 2.0 * f0 + fm);
            for j in 0..3 {
                let k = 3 * i + j;
                let xi = (self.nodes[k] - centers[ic]) / dr;
                let val = f0 + xi * (c1 + xi * c2);
                total += val * w.0[k] * self.geom[k];
            }
        }
        total
    }
}

/// Weight values sampled at the Gauss nodes of a `Quadrature`.
#[derive(Clone, Debug)]
pub struct WeightProfile(Vec<f64>);

/// One-shot weighted volume integral; builds the quadrature on the fly.
/// Callers in hot loops should hold a `Quadrature` and `WeightProfile`.
pub fn integrate_weighted(
    f: &[f64],
    w: impl Fn(f64) -> f64,
    grid: &Arc<RadialGrid>,
    dim: Dim,
) -> f64 {
    let quad = Quadrature::new(grid.clone(), dim);
    let wp = quad.weight_profile(w);
    quad.integrate(f, &wp)
}

/// Total mass int rho dV, by the same reconstructed quadrature as the
/// weighted functionals (unit weight).
pub fn mass(state: &FluidState) -> f64 {
    let quad = Quadrature::new(state.grid.clone(), state.dim);
    quad.integrate(&state.rho, &quad.unit_profile())
}

/// Total mass in the solver's discrete sense: the midpoint-volume sum
/// Sum_i rho_i V_i that the finite-volume update conserves exactly (up to
/// boundary outflow). Differs from `mass` by O(dr^2) quadrature error.
pub fn discrete_mass(state: &FluidState) -> f64 {
    state
        .rho
        .iter()
        .enumerate()
        .map(|(i, &rho)| rho * state.grid.midpoint_volume(i, state.dim))
        .sum()
}

/// Mass restricted to cells with center < r0.
pub fn mass_in_ball(state: &FluidState, r0: f64) -> Result<f64> {
    if !(r0 > 0.0 && r0 <= state.grid.r_max) {
        return Err(Error::Domain(format!(
            "ball radius {r0} outside (0, r_max]"
        )));
    }
    let quad = Quadrature::new(state.grid.clone(), state.dim);
    Ok(quad.integrate_restricted(&state.rho, &quad.unit_profile(), r0))
}

//! Vacuum-tolerant finite-volume integrator for radially symmetric
//! compressible Euler flow in d = 2, 3:
//!     rho_t + (rho v)_r + ((d-1)/r) rho v = 0,
//!     (rho v)_t + (rho v^2 + p)_r + ((d-1)/r) rho v^2 = 0.
//!
//! The update is written in flux-area form: with cell volumes
//! V_i = |S^{d-1}| r_i^{d-1} dr and face areas A_k = |S^{d-1}| (k dr)^{d-1},
//!     d(rho_i V_i)/dt = -(A_+ F_+ - A_- F_-),
//!     d(m_i V_i)/dt   = -(A_+ G_+ - A_- G_-) + p_i (A_+ - A_-),
//! which is algebraically equivalent to the geometric-source form but makes
//! two discrete statements exact: mass accounting telescopes to the boundary
//! flux, and a uniform state with v = 0 is an exact steady state (the
//! pressure-area source cancels the flux divergence identically).
//!
//! Interface fluxes are Rusanov (local Lax-Friedrichs) with wave speed
//! max(|v_L| + c_L, |v_R| + c_R), which degenerates gracefully at vacuum.
//! No density or pressure floor is applied: exact zeros are representable
//! and velocity is recovered as m/rho with v := 0 where rho = 0.

use crate::functionals::WeightedFunctionals;
use crate::radial::{self, Dim, FluidState, RadialGrid};
use crate::{Error, Gas, Result};

/// Reconstruction order of the interface states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reconstruction {
    /// piecewise-constant, forward Euler in time
    FirstOrder,
    /// piecewise-linear with the minmod limiter, Heun in time
    MusclMinmod,
}

/// Time-integration parameters.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Courant number in (0, 0.9]
    pub cfl: f64,
    pub reconstruction: Reconstruction,
    /// final time; 0 requests a trivial run recording only the initial state
    pub t_end: f64,
    /// steps between recorded snapshots (>= 1)
    pub snapshot_stride: usize,
    /// a time step below this value terminates the run as resolution loss
    pub dt_floor: f64,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 0.9) {
            return Err(Error::Config("cfl must lie in (0, 0.9]".into()));
        }
        if !(self.t_end >= 0.0) {
            return Err(Error::Config("t_end must be nonnegative".into()));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::Config("snapshot_stride must be >= 1".into()));
        }
        if !(self.dt_floor > 0.0) {
            return Err(Error::Config("dt_floor must be positive".into()));
        }
        Ok(())
    }
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    ReachedTEnd,
    DtFloor,
    /// the update produced a negative density; the offending step is dropped
    PositivityFault,
}

/// Per-recorded-time scalar diagnostics, one entry per column of the series
/// CSV (`t,F,Fdot,max_c,max_dvdr,mass,outflow`). Row 0 is the initial state.
#[derive(Clone, Debug, Default, serde::Serialize, serde::Deserialize)]
pub struct Series {
    pub t: Vec<f64>,
    pub f: Vec<f64>,
    pub fdot: Vec<f64>,
    pub max_c: Vec<f64>,
    pub max_dvdr: Vec<f64>,
    pub mass: Vec<f64>,
    /// cumulative mass carried out through the outer boundary
    pub outflow: Vec<f64>,
}

impl Series {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

/// A completed run: stride-recorded snapshots, per-step series, and the
/// reason the run stopped.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub snapshots: Vec<FluidState>,
    pub series: Series,
    pub termination: Termination,
}

/// CFL time step cfl * dr / max_i(|v_i| + c_i). A total vacuum (no waves)
/// yields the dt_floor-capped fallback of the remaining interval.
pub fn cfl_dt(state: &FluidState, g: &Gas, cfg: &SolverConfig) -> f64 {
    let mut speed: f64 = 0.0;
    for (&rho, &v) in state.rho.iter().zip(&state.v) {
        let c = g.sound_speed(rho).unwrap_or(0.0);
        speed = speed.max(v.abs() + c);
    }
    if speed > 0.0 {
        cfg.cfl * state.grid.dr / speed
    } else {
        cfg.t_end.max(cfg.dt_floor)
    }
}

fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

/// Precomputed face areas and cell volumes for one (grid, dim) pair.
struct Geometry {
    /// A_k = |S^{d-1}| (k dr)^{d-1}, k = 0..=n (A_0 = 0 at the origin)
    areas: Vec<f64>,
    /// V_i = |S^{d-1}| r_i^{d-1} dr
    volumes: Vec<f64>,
}

impl Geometry {
    fn new(grid: &RadialGrid, dim: Dim) -> Self {
        let omega = dim.sphere_measure();
        let areas = (0..=grid.n_cells)
            .map(|k| omega * dim.radial_power(grid.face_radius(k)))
            .collect();
        let volumes = (0..grid.n_cells)
            .map(|i| grid.midpoint_volume(i, dim))
            .collect();
        Self { areas, volumes }
    }
}

/// One stage of the update: given cell-centered (rho, m = rho v), returns
/// (d rho/dt, d m/dt, outer-boundary mass flux rate A_n F_n).
fn rhs(
    rho: &[f64],
    mom: &[f64],
    g: &Gas,
    geom: &Geometry,
    recon: Reconstruction,
) -> (Vec<f64>, Vec<f64>, f64) {
    let n = rho.len();
    let v: Vec<f64> = rho
        .iter()
        .zip(mom)
        .map(|(&r, &m)| if r > 0.0 { m / r } else { 0.0 })
        .collect();

    // limited primitive slopes (ghosts: mirror at the origin with rho even /
    // v odd, zero-gradient at the outer boundary; ghost slopes are zero)
    let (srho, sv): (Vec<f64>, Vec<f64>) = match recon {
        Reconstruction::FirstOrder => (vec![0.0; n], vec![0.0; n]),
        Reconstruction::MusclMinmod => {
            let mut srho = vec![0.0; n];
            let mut sv = vec![0.0; n];
            for i in 0..n {
                let (rm, vm) = if i == 0 { (rho[0], -v[0]) } else { (rho[i - 1], v[i - 1]) };
                let (rp, vp) = if i + 1 == n { (rho[n - 1], v[n - 1]) } else { (rho[i + 1], v[i + 1]) };
                srho[i] = minmod(rho[i] - rm, rp - rho[i]);
                sv[i] = minmod(v[i] - vm, vp - v[i]);
            }
            (srho, sv)
        }
    };

    // face states: face k separates cell k-1 (left) and cell k (right)
    let face_state = |cell: isize, side: f64| -> (f64, f64) {
        if cell < 0 {
            (rho[0], -v[0]) // mirror ghost
        } else if cell as usize >= n {
            (rho[n - 1], v[n - 1]) // zero-gradient ghost
        } else {
            let i = cell as usize;
            (rho[i] + side * 0.5 * srho[i], v[i] + side * 0.5 * sv[i])
        }
    };

    let mut drho = vec![0.0; n];
    let mut dmom = vec![0.0; n];
    let mut flux_rho_prev = 0.0;
    let mut flux_mom_prev = 0.0;
    let mut boundary_rate = 0.0;
    for k in 0..=n {
        let (flux_rho, flux_mom) = if geom.areas[k] == 0.0 {
            (0.0, 0.0) // the origin face has zero area
        } else {
            let (rl, vl) = face_state(k as isize - 1, 1.0);
            let (rr, vr) = face_state(k as isize, -1.0);
            let cl = g.sound_speed(rl.max(0.0)).unwrap_or(0.0);
            let cr = g.sound_speed(rr.max(0.0)).unwrap_or(0.0);
            let s = (vl.abs() + cl).max(vr.abs() + cr);
            let pl = g.pressure(rl.max(0.0)).unwrap_or(0.0);
            let pr = g.pressure(rr.max(0.0)).unwrap_or(0.0);
            let f_rho = 0.5 * (rl * vl + rr * vr) - 0.5 * s * (rr - rl);
            let f_mom =
                0.5 * (rl * vl * vl + pl + rr * vr * vr + pr) - 0.5 * s * (rr * vr - rl * vl);
            (f_rho, f_mom)
        };
        if k > 0 {
            let i = k - 1;
            let a_minus = geom.areas[i];
            let a_plus = geom.areas[k];
            let p_i = g.pressure(rho[i]).unwrap_or(0.0);
            drho[i] = -(a_plus * flux_rho - a_minus * flux_rho_prev) / geom.volumes[i];
            dmom[i] = (-(a_plus * flux_mom - a_minus * flux_mom_prev)
                + p_i * (a_plus - a_minus))
                / geom.volumes[i];
        }
        if k == n {
            boundary_rate = geom.areas[n] * flux_rho;
        }
        flux_rho_prev = flux_rho;
        flux_mom_prev = flux_mom;
    }
    (drho, dmom, boundary_rate)
}

fn check_positive(rho: &[f64]) -> Result<()> {
    if rho.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        Err(Error::Solver(
            "positivity fault: the update produced a negative or non-finite density".into(),
        ))
    } else {
        Ok(())
    }
}

/// Advances one step of size `dt`. Returns the new state and the mass that
/// left through the outer boundary during the step.
pub fn step(state: &FluidState, g: &Gas, cfg: &SolverConfig, dt: f64) -> Result<(FluidState, f64)> {
    let geom = Geometry::new(&state.grid, state.dim);
    step_cached(state, g, cfg, dt, &geom)
}

fn step_cached(
    state: &FluidState,
    g: &Gas,
    cfg: &SolverConfig,
    dt: f64,
    geom: &Geometry,
) -> Result<(FluidState, f64)> {
    let n = state.rho.len();
    let rho0 = &state.rho;
    let mom0: Vec<f64> = rho0.iter().zip(&state.v).map(|(&r, &v)| r * v).collect();

    let (drho, dmom, rate0) = rhs(rho0, &mom0, g, geom, cfg.reconstruction);
    let mut rho1: Vec<f64> = (0..n).map(|i| rho0[i] + dt * drho[i]).collect();
    let mut mom1: Vec<f64> = (0..n).map(|i| mom0[i] + dt * dmom[i]).collect();
    check_positive(&rho1)?;
    let mut outflow = dt * rate0;

    if cfg.reconstruction == Reconstruction::MusclMinmod {
        // Heun: average the forward-Euler predictor with a corrector stage
        let (drho1, dmom1, rate1) = rhs(&rho1, &mom1, g, geom, cfg.reconstruction);
        for i in 0..n {
            rho1[i] = 0.5 * (rho0[i] + rho1[i] + dt * drho1[i]);
            mom1[i] = 0.5 * (mom0[i] + mom1[i] + dt * dmom1[i]);
        }
        check_positive(&rho1)?;
        outflow = 0.5 * dt * (rate0 + rate1);
    }

    let v1: Vec<f64> = rho1
        .iter()
        .zip(&mom1)
        .map(|(&r, &m)| if r > 0.0 { m / r } else { 0.0 })
        .collect();
    let new_state = FluidState::new(
        state.grid.clone(),
        state.dim,
        rho1,
        v1,
        state.time + dt,
    )?;
    Ok((new_state, outflow))
}

fn max_abs_dvdr(state: &FluidState) -> f64 {
    let v = &state.v;
    let n = v.len();
    let dr = state.grid.dr;
    let mut m: f64 = 0.0;
    for i in 0..n {
        let d = if i == 0 {
            (v[1] - v[0]) / dr
        } else if i + 1 == n {
            (v[n - 1] - v[n - 2]) / dr
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * dr)
        };
        m = m.max(d.abs());
    }
    m
}

fn record(series: &mut Series, state: &FluidState, g: &Gas, wf: &WeightedFunctionals, outflow: f64) {
    series.t.push(state.time);
    series.f.push(wf.value(state));
    series.fdot.push(wf.rate(state));
    let max_c = state
        .rho
        .iter()
        .map(|&r| g.sound_speed(r).unwrap_or(0.0))
        .fold(0.0f64, f64::max);
    series.max_c.push(max_c);
    series.max_dvdr.push(max_abs_dvdr(state));
    series.mass.push(radial::discrete_mass(state));
    series.outflow.push(outflow);
}

/// Runs from `state0` (time 0) until t_end, resolution loss, or a positivity
/// fault. The series records the initial state as row 0 and every step after;
/// snapshots are recorded at t = 0, every `snapshot_stride` steps, and at the
/// final state. Deterministic for fixed inputs.
pub fn run(state0: &FluidState, g: &Gas, cfg: &SolverConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if state0.time != 0.0 {
        return Err(Error::Solver("run must start at time 0".into()));
    }
    let geom = Geometry::new(&state0.grid, state0.dim);
    let wf = WeightedFunctionals::new(state0.grid.clone(), state0.dim);

    let mut series = Series::default();
    let mut snapshots = vec![state0.clone()];
    record(&mut series, state0, g, &wf, 0.0);

    let mut state = state0.clone();
    let mut cum_outflow = 0.0;
    let mut steps: usize = 0;
    let termination = loop {
        if state.time >= cfg.t_end {
            break Termination::ReachedTEnd;
        }
        let mut dt = cfl_dt(&state, g, cfg);
        if dt < cfg.dt_floor {
            break Termination::DtFloor;
        }
        dt = dt.min(cfg.t_end - state.time);
        match step_cached(&state, g, cfg, dt, &geom) {
            Ok((next, outflow)) => {
                state = next;
                cum_outflow += outflow;
                steps += 1;
                record(&mut series, &state, g, &wf, cum_outflow);
                if steps.is_multiple_of(cfg.snapshot_stride) {
                    snapshots.push(state.clone());
                }
            }
            Err(Error::Solver(_)) => break Termination::PositivityFault,
            Err(e) => return Err(e),
        }
    };
    if snapshots.last().map(|s| s.time) != Some(state.time) {
        snapshots.push(state.clone());
    }
    Ok(Trajectory {
        snapshots,
        series,
        termination,
    })
}

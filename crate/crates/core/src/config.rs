//! Run configuration: a single JSON document with unknown keys rejected,
//! mapped onto the component types, plus the resolution step that turns the
//! declarative inflow specification (`m` or `m_over_m_min`) into a concrete
//! profile.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::initdata::{self, ProfileSpec};
use crate::radial::{Dim, RadialGrid};
use crate::solver::{Reconstruction, SolverConfig};
use crate::verifier::VerifyConfig;
use crate::{Error, Gas, Result};

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub r_max: f64,
    pub n_cells: usize,
}

/// Profile section: the inflow is given either directly (`m`) or relative to
/// the minimal admissible amplitude (`m_over_m_min`), exactly one of the two.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSection {
    pub s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_over_m_min: Option<f64>,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    pub cfl: f64,
    pub reconstruction: Reconstruction,
    /// 0 means "record the initial state only" for simulate, and "run to
    /// 1.1 x the predicted bound" for verify
    pub t_end: f64,
    pub snapshot_stride: usize,
    /// default: 1e-10 x the effective final time
    pub dt_floor: Option<f64>,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            cfl: 0.45,
            reconstruction: Reconstruction::MusclMinmod,
            t_end: 0.0,
            snapshot_stride: 50,
            dt_floor: None,
        }
    }
}

/// Parameter ranges for `sweep`: the cartesian product is run.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub gamma: Vec<f64>,
    pub m_over_m_min: Vec<f64>,
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub gas: Gas,
    pub dim: Dim,
    pub grid: GridSection,
    pub profile: ProfileSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub verify: VerifyConfig,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(s)
            .map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        Gas::new(self.gas.a, self.gas.gamma).map_err(|e| Error::Config(e.to_string()))?;
        RadialGrid::new(self.grid.r_max, self.grid.n_cells)?;
        match (self.profile.m, self.profile.m_over_m_min) {
            (Some(_), None) | (None, Some(_)) => {}
            _ => {
                return Err(Error::Config(
                    "profile must set exactly one of m / m_over_m_min".into(),
                ))
            }
        }
        ProfileSpec::new(self.profile.s, 0.0, self.profile.alpha, self.profile.beta)?;
        let s = &self.solver;
        if !(s.cfl > 0.0 && s.cfl <= 0.9) {
            return Err(Error::Config("solver.cfl must lie in (0, 0.9]".into()));
        }
        if !(s.t_end >= 0.0) {
            return Err(Error::Config("solver.t_end must be nonnegative".into()));
        }
        if s.snapshot_stride == 0 {
            return Err(Error::Config("solver.snapshot_stride must be >= 1".into()));
        }
        if let Some(floor) = s.dt_floor {
            if !(floor > 0.0) {
                return Err(Error::Config("solver.dt_floor must be positive".into()));
            }
        }
        self.verify.validate()?;
        if !(self.verify.r0 <= self.grid.r_max) {
            return Err(Error::Config("verify.r0 must not exceed grid.r_max".into()));
        }
        if let Some(sw) = &self.sweep {
            if sw.gamma.is_empty() || sw.m_over_m_min.is_empty() {
                return Err(Error::Config("sweep ranges must be nonempty".into()));
            }
            if sw.gamma.iter().any(|&g| !(g > 1.0)) {
                return Err(Error::Config("sweep gamma values must exceed 1".into()));
            }
        }
        Ok(())
    }
}

/// A config with the grid built and the inflow amplitude made concrete.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub gas: Gas,
    pub dim: Dim,
    pub grid: Arc<RadialGrid>,
    pub profile: ProfileSpec,
    pub m_min: f64,
    pub solver: SolverSection,
    pub verify: VerifyConfig,
    pub output_dir: PathBuf,
    /// the originating document, re-emitted in output headers
    pub source: RunConfig,
}

impl Resolved {
    /// Concrete solver parameters for a run of effective length `t_end`.
    pub fn solver_config(&self, t_end: f64) -> SolverConfig {
        SolverConfig {
            cfl: self.solver.cfl,
            reconstruction: self.solver.reconstruction,
            t_end,
            snapshot_stride: self.solver.snapshot_stride,
            dt_floor: self
                .solver
                .dt_floor
                .unwrap_or_else(|| (1e-10 * t_end).max(1e-300)),
        }
    }
}

/// Validates and resolves a config: builds the grid, computes m_min for the
/// shape family, and fixes the inflow amplitude.
pub fn resolve(cfg: &RunConfig) -> Result<Resolved> {
    cfg.validate()?;
    let gas = Gas::new(cfg.gas.a, cfg.gas.gamma)?;
    let grid = Arc::new(RadialGrid::new(cfg.grid.r_max, cfg.grid.n_cells)?);
    let base = ProfileSpec::new(cfg.profile.s, 0.0, cfg.profile.alpha, cfg.profile.beta)?;
    let m_min = initdata::minimal_inflow_amplitude(&base, &gas, &grid, cfg.dim)?;
    let m = match (cfg.profile.m, cfg.profile.m_over_m_min) {
        (Some(m), None) => m,
        (None, Some(ratio)) => ratio * m_min,
        _ => unreachable!("validated above"),
    };
    Ok(Resolved {
        gas,
        dim: cfg.dim,
        grid,
        profile: base.with_inflow(m),
        m_min,
        solver: cfg.solver.clone(),
        verify: cfg.verify,
        output_dir: cfg.output_dir.clone(),
        source: cfg.clone(),
    })
}

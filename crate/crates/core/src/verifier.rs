//! Checks of the proof-chain inequalities along a computed trajectory:
//! rate monotonicity, integrated convexity, the Riccati lower bound, the
//! closed-form envelope, the localization split, and the ordering of the
//! detected steepening time against the predicted blow-up-time bound.
//!
//! All inequality checks are asserted only on the resolved window
//! [0, min(resolved end, t_sing, 0.95 t_star)]: the inequalities are proved
//! for smooth solutions, so past shock formation they are monitored but not
//! enforced. Margins are relative; a check passes when its worst margin is
//! >= -tol.

use crate::functionals::{self, FunctionalValue, WeightedFunctionals};
use crate::initdata::InitialDataReport;
use crate::radial::{self, Dim};
use crate::solver::{Series, Termination, Trajectory};
use crate::weights;
use crate::{Error, Gas, Result};

/// Outcome of one inequality check: the worst relative margin seen in the
/// checked window and the time where it occurred.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct CheckResult {
    pub ok: bool,
    pub worst_margin: f64,
    pub worst_time: f64,
}

impl CheckResult {
    fn vacuous() -> Self {
        Self {
            ok: true,
            worst_margin: f64::INFINITY,
            worst_time: 0.0,
        }
    }

    fn from_margins(margins: impl Iterator<Item = (f64, f64)>, tol: f64) -> Self {
        let mut worst = Self::vacuous();
        for (t, m) in margins {
            if m < worst.worst_margin {
                worst.worst_margin = m;
                worst.worst_time = t;
            }
        }
        worst.ok = worst.worst_margin >= -tol;
        worst
    }
}

/// Tolerances and detector settings for the verification pass.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    /// relative tolerance for the inequality checks
    pub tol: f64,
    /// steepening threshold: t_sing is the first time max|dv/dr| exceeds
    /// this factor times its initial value
    pub singularity_factor: f64,
    /// localization split radius
    pub r0: f64,
    /// allowed relative overshoot of t_sing past t_star
    pub ordering_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            tol: 1e-2,
            singularity_factor: 50.0,
            r0: 1.0,
            ordering_tol: 0.05,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Config("verify tol must lie in (0, 1)".into()));
        }
        if !(self.singularity_factor > 1.0) {
            return Err(Error::Config("singularity factor must exceed 1".into()));
        }
        if !(self.r0 > 0.0) {
            return Err(Error::Config("localization radius r0 must be positive".into()));
        }
        if !(self.ordering_tol >= 0.0) {
            return Err(Error::Config("ordering tolerance must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Aggregated verification outcome for one run.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct CheckReport {
    pub admissible: bool,
    pub init: InitialDataReport,
    pub rate_monotone: CheckResult,
    pub convexity: CheckResult,
    pub riccati: CheckResult,
    pub envelope: CheckResult,
    pub localization: CheckResult,
    /// detected singularity-onset time, if any
    pub t_sing: Option<f64>,
    /// predicted blow-up-time bound
    pub t_star: f64,
    /// t_sing detected and <= (1 + ordering_tol) t_star
    pub ordering_ok: bool,
    pub termination: Termination,
    pub config: VerifyConfig,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.admissible
            && self.rate_monotone.ok
            && self.convexity.ok
            && self.riccati.ok
            && self.envelope.ok
            && self.localization.ok
            && self.ordering_ok
    }

    /// One line per check, for standard output.
    pub fn summary_lines(&self) -> Vec<String> {
        let line = |name: &str, r: &CheckResult| {
            format!(
                "{name:<14} {}  worst margin {:+.3e} at t = {:.6}",
                if r.ok { "pass" } else { "FAIL" },
                r.worst_margin,
                r.worst_time
            )
        };
        let mut out = vec![
            format!(
                "admissible     {}  momentum margin {:+.3e}",
                if self.admissible { "pass" } else { "FAIL" },
                self.init.cond_momentum_margin
            ),
            line("rate-monotone", &self.rate_monotone),
            line("convexity", &self.convexity),
            line("riccati", &self.riccati),
            line("envelope", &self.envelope),
            line("localization", &self.localization),
        ];
        out.push(match self.t_sing {
            Some(t) => format!(
                "ordering       {}  t_sing = {:.6}, t_star = {:.6}",
                if self.ordering_ok { "pass" } else { "FAIL" },
                t,
                self.t_star
            ),
            None => format!(
                "ordering       FAIL  no singularity detected before t_star = {:.6}",
                self.t_star
            ),
        });
        out
    }
}

/// Recomputes (t, F, Fdot) from the recorded snapshots.
pub fn monitor(traj: &Trajectory, dim: Dim) -> Vec<FunctionalValue> {
    let Some(first) = traj.snapshots.first() else {
        return Vec::new();
    };
    let wf = WeightedFunctionals::new(first.grid.clone(), dim);
    traj.snapshots
        .iter()
        .map(|s| FunctionalValue {
            t: s.time,
            f: wf.value(s),
            fdot: wf.rate(s),
        })
        .collect()
}

fn window_indices(series: &Series, t_max: f64) -> usize {
    series.t.iter().take_while(|&&t| t <= t_max).count()
}

/// Fdot(t) >= Fdot(0) (1 - tol) on the window.
pub fn check_rate_monotone(series: &Series, t_max: f64, tol: f64) -> CheckResult {
    let n = window_indices(series, t_max);
    if n < 2 {
        return CheckResult::vacuous();
    }
    let fdot0 = series.fdot[0];
    let scale = fdot0.abs().max(f64::MIN_POSITIVE);
    CheckResult::from_margins(
        (0..n).map(|i| (series.t[i], (series.fdot[i] - fdot0) / scale)),
        tol,
    )
}

/// Integrated convexity: Fdot(t) - Fdot(0) >= (1 - tol) int_0^t rhs(F(s)) ds
/// with the right-hand side A F^gamma / norm^{gamma-1} accumulated by
/// cumulative trapezoid quadrature (raw second differences amplify noise).
pub fn check_convexity(series: &Series, g: &Gas, dim: Dim, t_max: f64, tol: f64) -> CheckResult {
    let n = window_indices(series, t_max);
    if n < 2 {
        return CheckResult::vacuous();
    }
    let fdot0 = series.fdot[0];
    let mut integral = 0.0;
    let mut rhs_prev = functionals::convexity_rhs(series.f[0], g, dim);
    let margins = (1..n).map(move |i| {
        let rhs_cur = functionals::convexity_rhs(series.f[i], g, dim);
        integral += 0.5 * (rhs_prev + rhs_cur) * (series.t[i] - series.t[i - 1]);
        rhs_prev = rhs_cur;
        let lhs = series.fdot[i] - fdot0;
        let margin = if integral > 0.0 {
            (lhs - integral) / integral
        } else {
            0.0
        };
        (series.t[i], margin)
    });
    CheckResult::from_margins(margins, tol)
}

/// Riccati bound Fdot(t) >= (1 - tol) C F(t)^{(gamma+1)/2} and the envelope
/// F(t) >= (1 - tol) (F0^{-(gamma-1)/2} - ((gamma-1)/2) C t)^{-2/(gamma-1)}.
pub fn check_riccati_and_envelope(
    series: &Series,
    f0: f64,
    g: &Gas,
    dim: Dim,
    t_max: f64,
    tol: f64,
) -> (CheckResult, CheckResult) {
    let n = window_indices(series, t_max);
    if n < 2 {
        return (CheckResult::vacuous(), CheckResult::vacuous());
    }
    let c = functionals::c_const(g, dim);
    let exponent = (g.gamma + 1.0) / 2.0;
    let riccati = CheckResult::from_margins(
        (0..n).map(|i| {
            let rhs = c * series.f[i].max(0.0).powf(exponent);
            let margin = if rhs > 0.0 {
                (series.fdot[i] - rhs) / rhs
            } else {
                0.0
            };
            (series.t[i], margin)
        }),
        tol,
    );
    let envelope = CheckResult::from_margins(
        (0..n).map(|i| {
            let margin = match functionals::envelope(series.t[i], f0, g, dim) {
                Ok(env) if env > 0.0 => (series.f[i] - env) / env,
                // envelope divergence inside the window: F must be huge too,
                // treat as the strongest possible violation only if F lags
                _ => f64::INFINITY,
            };
            (series.t[i], margin)
        }),
        tol,
    );
    (riccati, envelope)
}

/// Earliest time where max|dv/dr| exceeds `factor` times its initial value,
/// or the termination time if the run died on the dt floor. None when the
/// gradient never steepens (e.g. frozen or vacuum runs).
pub fn detect_singularity(traj: &Trajectory, factor: f64) -> Option<f64> {
    let s = &traj.series;
    if s.is_empty() {
        return None;
    }
    let base = s.max_dvdr[0];
    if base > 0.0 {
        for i in 1..s.len() {
            if s.max_dvdr[i] > factor * base {
                return Some(s.t[i]);
            }
        }
    }
    if traj.termination == Termination::DtFloor {
        return s.t.last().copied();
    }
    None
}

/// The localization split F(t) <= int_{B_r0} rho w dx + tail(r0) int rho_0 dx
/// at every recorded snapshot, with tail(r0) = 1/r0 in 3D (since e^{-r} <= 1)
/// and tail(r0) = K0(r0) in 2D (K0 decreasing).
pub fn check_localization(traj: &Trajectory, r0: f64, tol: f64) -> Result<CheckResult> {
    let Some(first) = traj.snapshots.first() else {
        return Ok(CheckResult::vacuous());
    };
    if !(r0 > 0.0 && r0 <= first.grid.r_max) {
        return Err(Error::Domain(format!(
            "localization radius {r0} outside (0, r_max]"
        )));
    }
    let dim = first.dim;
    let tail = match dim {
        Dim::Three => 1.0 / r0,
        Dim::Two => weights::k0(r0)?,
    };
    let mass0 = radial::mass(first);
    let wf = WeightedFunctionals::new(first.grid.clone(), dim);
    let margins: Vec<(f64, f64)> = traj
        .snapshots
        .iter()
        .map(|s| {
            let f = wf.value(s);
            let rhs = wf.value_in_ball(s, r0) + tail * mass0;
            let margin = if f > 0.0 { (rhs - f) / f } else { f64::INFINITY };
            (s.time, margin)
        })
        .collect();
    Ok(CheckResult::from_margins(margins.into_iter(), tol))
}

/// Runs the full check chain on an admissible trajectory.
pub fn verify(
    traj: &Trajectory,
    init: &InitialDataReport,
    g: &Gas,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    cfg.validate()?;
    let Some(t_star) = init.t_star else {
        return Err(Error::Domain(
            "verification requires admissible initial data (finite t_star)".into(),
        ));
    };
    let dim = traj
        .snapshots
        .first()
        .ok_or_else(|| Error::Domain("trajectory has no snapshots".into()))?
        .dim;
    let series = &traj.series;
    let t_sing = detect_singularity(traj, cfg.singularity_factor);
    let resolved_end = series.t.last().copied().unwrap_or(0.0);
    let t_max = resolved_end
        .min(t_sing.unwrap_or(f64::INFINITY))
        .min(0.95 * t_star);

    let rate_monotone = check_rate_monotone(series, t_max, cfg.tol);
    let convexity = check_convexity(series, g, dim, t_max, cfg.tol);
    let (riccati, envelope) =
        check_riccati_and_envelope(series, init.f0, g, dim, t_max, cfg.tol);
    let localization = check_localization(traj, cfg.r0, cfg.tol)?;
    let ordering_ok = match t_sing {
        Some(t) => t <= (1.0 + cfg.ordering_tol) * t_star,
        None => false,
    };
    Ok(CheckReport {
        admissible: init.admissible(),
        init: init.clone(),
        rate_monotone,
        convexity,
        riccati,
        envelope,
        localization,
        t_sing,
        t_star,
        ordering_ok,
        termination: traj.termination,
        config: *cfg,
    })
}

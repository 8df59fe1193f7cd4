//! Pipelines behind the CLI subcommands: construction + admissibility check,
//! blow-up-time prediction, simulation with CSV output, verification, and
//! concurrent parameter sweeps. Every output file starts with a comment
//! header carrying the full originating config.

use std::fs;
use std::path::{Path, PathBuf};

use crate::config::{Resolved, RunConfig};
use crate::initdata::{self, InitialDataReport};
use crate::radial::FluidState;
use crate::solver::{self, Termination, Trajectory};
use crate::verifier::{self, CheckReport};
use crate::weights;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_BAD_CONFIG: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;
pub const EXIT_SOLVER_FAULT: i32 = 4;

/// Exit code for an error that escaped a pipeline.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Solver(_) => EXIT_SOLVER_FAULT,
        _ => EXIT_BAD_CONFIG,
    }
}

fn config_header(cfg: &RunConfig) -> Result<String> {
    Ok(format!("# config: {}", serde_json::to_string(cfg)?))
}

/// `bessel-table`: rows (r, K0, K0', 3/r, 1/r^2) at n linearly spaced radii.
pub fn bessel_table(r_min: f64, r_max: f64, n: usize, out: &mut dyn std::io::Write) -> Result<()> {
    if !(r_min > 0.0 && r_min < r_max) {
        return Err(Error::Config(
            "bessel-table needs 0 < r_min < r_max".into(),
        ));
    }
    if n < 2 {
        return Err(Error::Config("bessel-table needs at least 2 rows".into()));
    }
    writeln!(out, "r,K0,K0_prime,bound_3_over_r,bound_inv_r2")?;
    for i in 0..n {
        let r = r_min + (r_max - r_min) * i as f64 / (n - 1) as f64;
        writeln!(
            out,
            "{r},{},{},{},{}",
            weights::k0(r)?,
            weights::k0_prime(r)?,
            3.0 / r,
            1.0 / (r * r)
        )?;
    }
    Ok(())
}

fn analyze(cfg: &RunConfig) -> Result<(Resolved, FluidState, InitialDataReport)> {
    let res = crate::config::resolve(cfg)?;
    let (state, mut report) = initdata::analyze(&res.profile, &res.gas, &res.grid, res.dim)?;
    report.m_min = Some(res.m_min);
    Ok((res, state, report))
}

/// `check`: prints the initial-data report as JSON; exit 0 when admissible.
pub fn run_check(cfg: &RunConfig) -> Result<i32> {
    let (_, _, report) = analyze(cfg)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if report.admissible() {
        EXIT_OK
    } else {
        EXIT_INADMISSIBLE
    })
}

/// `predict`: prints only the blow-up-time bound (JSON null when the data is
/// inadmissible and no finite bound is certified).
pub fn run_predict(cfg: &RunConfig) -> Result<i32> {
    let (_, _, report) = analyze(cfg)?;
    match report.t_star {
        Some(t) => {
            println!("{t}");
            Ok(EXIT_OK)
        }
        None => {
            println!("null");
            Ok(EXIT_INADMISSIBLE)
        }
    }
}

fn write_series(path: &Path, traj: &Trajectory, header: &str) -> Result<()> {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    out.push_str("t,F,Fdot,max_c,max_dvdr,mass,outflow\n");
    let s = &traj.series;
    for i in 0..s.len() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            s.t[i], s.f[i], s.fdot[i], s.max_c[i], s.max_dvdr[i], s.mass[i], s.outflow[i]
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

fn write_snapshot(path: &Path, state: &FluidState, header: &str) -> Result<()> {
    let mut out = String::new();
    out.push_str(header);
    out.push('\n');
    out.push_str(&format!("# t = {}\n", state.time));
    out.push_str("r,rho,v\n");
    for (i, &r) in state.grid.centers().iter().enumerate() {
        out.push_str(&format!("{r},{},{}\n", state.rho[i], state.v[i]));
    }
    fs::write(path, out)?;
    Ok(())
}

const PLOT_SCRIPT: &str = r##"#!/usr/bin/env python3
"""Plots the series and final snapshot produced by `simulate`."""
import csv, sys, pathlib
import matplotlib.pyplot as plt

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".")

def load(path):
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    head, data = rows[0], rows[1:]
    return head, [[float(x) for x in r] for r in data]

head, data = load(out / "series.csv")
cols = list(zip(*data))
fig, axes = plt.subplots(1, 3, figsize=(14, 4))
axes[0].plot(cols[0], cols[1], label="F")
axes[0].plot(cols[0], cols[2], label="Fdot")
axes[0].set_xlabel("t"); axes[0].legend()
axes[1].semilogy(cols[0], cols[4]); axes[1].set_xlabel("t"); axes[1].set_ylabel("max |dv/dr|")
snaps = sorted(out.glob("snapshot_*.csv"))
for snap in (snaps[0], snaps[len(snaps) // 2], snaps[-1]):
    _, srows = load(snap)
    r, rho, _v = zip(*srows)
    axes[2].plot(r, rho, label=snap.stem)
axes[2].set_xlabel("r"); axes[2].set_ylabel("rho"); axes[2].legend()
fig.tight_layout(); fig.savefig(out / "overview.png", dpi=150)
print(out / "overview.png")
"##;

fn run_to(res: &Resolved, state0: &FluidState, t_end: f64) -> Result<Trajectory> {
    solver::run(state0, &res.gas, &res.solver_config(t_end))
}

fn write_run_outputs(dir: &Path, cfg: &RunConfig, traj: &Trajectory) -> Result<()> {
    fs::create_dir_all(dir)?;
    let header = config_header(cfg)?;
    write_series(&dir.join("series.csv"), traj, &header)?;
    for (k, snap) in traj.snapshots.iter().enumerate() {
        write_snapshot(&dir.join(format!("snapshot_{k:04}.csv")), snap, &header)?;
    }
    Ok(())
}

/// `simulate`: runs to solver.t_end (0 = record the initial state only) and
/// writes series + snapshot CSVs.
pub fn run_simulate(cfg: &RunConfig, plot_script: bool) -> Result<i32> {
    let (res, state0, _) = analyze(cfg)?;
    let traj = run_to(&res, &state0, res.solver.t_end)?;
    write_run_outputs(&res.output_dir, cfg, &traj)?;
    if plot_script {
        fs::write(res.output_dir.join("plot.py"), PLOT_SCRIPT)?;
    }
    println!(
        "simulate: {} steps to t = {}, termination {:?}, outputs in {}",
        traj.series.len() - 1,
        traj.snapshots.last().map(|s| s.time).unwrap_or(0.0),
        traj.termination,
        res.output_dir.display()
    );
    Ok(match traj.termination {
        Termination::PositivityFault => EXIT_SOLVER_FAULT,
        _ => EXIT_OK,
    })
}

fn verify_pipeline(cfg: &RunConfig, negate: bool) -> Result<(i32, Option<CheckReport>, PathBuf)> {
    let (res, state0, report) = analyze(cfg)?;
    fs::create_dir_all(&res.output_dir)?;
    if !report.admissible() {
        fs::write(
            res.output_dir.join("report.json"),
            serde_json::to_string_pretty(&report)?,
        )?;
        return Ok((EXIT_INADMISSIBLE, None, res.output_dir.clone()));
    }
    let t_star = report.t_star.expect("admissible data has a finite bound");
    let t_end = if res.solver.t_end > 0.0 {
        res.solver.t_end
    } else {
        1.1 * t_star
    };
    let mut traj = run_to(&res, &state0, t_end)?;
    if traj.termination == Termination::PositivityFault {
        return Ok((EXIT_SOLVER_FAULT, None, res.output_dir.clone()));
    }
    if negate {
        for s in &mut traj.snapshots {
            for v in &mut s.v {
                *v = -*v;
            }
        }
        for fd in &mut traj.series.fdot {
            *fd = -*fd;
        }
    }
    let check = verifier::verify(&traj, &report, &res.gas, &res.verify)?;
    write_run_outputs(&res.output_dir, cfg, &traj)?;
    fs::write(
        res.output_dir.join("report.json"),
        serde_json::to_string_pretty(&check)?,
    )?;
    let code = if check.all_pass() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAIL
    };
    Ok((code, Some(check), res.output_dir.clone()))
}

/// `verify`: simulate (to t_end or 1.1 x t_star), run the proof-chain checks,
/// print one summary line per check, and write report.json.
pub fn run_verify(cfg: &RunConfig, negate_velocity: bool) -> Result<i32> {
    let (code, check, outdir) = verify_pipeline(cfg, negate_velocity)?;
    match &check {
        Some(report) => {
            for line in report.summary_lines() {
                println!("{line}");
            }
            println!("report: {}", outdir.join("report.json").display());
        }
        None if code == EXIT_INADMISSIBLE => {
            println!("inadmissible initial data; checks skipped (see report.json)");
        }
        None => println!("solver fault before verification could run"),
    }
    Ok(code)
}

/// One aggregated sweep-row per (gamma, m/m_min) pair.
struct SweepRow {
    gamma: f64,
    ratio: f64,
    code: i32,
    report: Option<CheckReport>,
    init: InitialDataReport,
    m: f64,
}

fn sweep_sub_config(cfg: &RunConfig, gamma: f64, ratio: f64, gi: usize, mj: usize) -> RunConfig {
    let mut sub = cfg.clone();
    sub.gas.gamma = gamma;
    sub.profile.m = None;
    sub.profile.m_over_m_min = Some(ratio);
    sub.output_dir = cfg.output_dir.join(format!("run_g{gi}_m{mj}"));
    sub.sweep = None;
    sub
}

fn csv_opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "nan".into())
}

/// `sweep`: runs the cartesian product of the configured gamma and m/m_min
/// ranges concurrently (independent output directories) and aggregates one
/// deterministic CSV row per pair, in parameter order.
pub fn run_sweep(cfg: &RunConfig) -> Result<i32> {
    let sweep = cfg
        .sweep
        .clone()
        .ok_or_else(|| Error::Config("sweep requires a sweep section".into()))?;
    cfg.validate()?;
    let mut jobs = Vec::new();
    for (gi, &gamma) in sweep.gamma.iter().enumerate() {
        for (mj, &ratio) in sweep.m_over_m_min.iter().enumerate() {
            jobs.push((gamma, ratio, sweep_sub_config(cfg, gamma, ratio, gi, mj)));
        }
    }
    let rows: Vec<Result<SweepRow>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(gamma, ratio, sub)| {
                scope.spawn(move || -> Result<SweepRow> {
                    let (_, _, init) = analyze(sub)?;
                    let m = init.m_min.expect("analyze fills m_min") * ratio;
                    let (code, report, _) = verify_pipeline(sub, false)?;
                    Ok(SweepRow {
                        gamma: *gamma,
                        ratio: *ratio,
                        code,
                        report,
                        init,
                        m,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });

    fs::create_dir_all(&cfg.output_dir)?;
    let mut out = String::new();
    out.push_str(&config_header(cfg)?);
    out.push('\n');
    out.push_str(
        "gamma,m_over_m_min,m,momentum_margin,f0,fdot0,t_star,t_sing,admissible,\
         rate_ok,convexity_ok,riccati_ok,envelope_ok,localization_ok,ordering_ok,all_pass\n",
    );
    let mut worst = EXIT_OK;
    for row in rows {
        let row = row?;
        let (t_sing, flags) = match &row.report {
            Some(r) => (
                r.t_sing,
                [
                    r.rate_monotone.ok,
                    r.convexity.ok,
                    r.riccati.ok,
                    r.envelope.ok,
                    r.localization.ok,
                    r.ordering_ok,
                    r.all_pass(),
                ],
            ),
            None => (None, [false; 7]),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            row.gamma,
            row.ratio,
            row.m,
            row.init.cond_momentum_margin,
            row.init.f0,
            row.init.fdot0,
            csv_opt(row.init.t_star),
            csv_opt(t_sing),
            row.init.admissible(),
            flags[0],
            flags[1],
            flags[2],
            flags[3],
            flags[4],
            flags[5],
            flags[6],
        ));
        if row.code != EXIT_OK {
            worst = worst.max(EXIT_VERIFY_FAIL.max(if row.code == EXIT_SOLVER_FAULT {
                EXIT_SOLVER_FAULT
            } else {
                EXIT_VERIFY_FAIL
            }));
        }
    }
    let path = cfg.output_dir.join("sweep.csv");
    fs::write(&path, out)?;
    println!("sweep: {} rows -> {}", jobs.len(), path.display());
    Ok(worst)
}

use std::fmt::Write as _;
use std::path::Path;

use super::norms::{detect_contact, error_norms, smooth_mask, FieldErrors};
use super::{setup_sod, RunConfig};
use crate::error::{Error, Result};
use crate::fluid::{snapshot_csv, Eos, ParticleSystem, SnapshotRow};
use crate::integrator::{Integrator, StepReport};
use crate::riemann::{solve_riemann, RiemannSolution};

/// Smooth-region buffer around each wave, in local particle spacings.
pub const MASK_BUFFER_SPACINGS: f64 = 10.0;

/// Conserved totals after one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedSample {
    pub step: usize,
    pub t: f64,
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub config: RunConfig,
    pub solution: RiemannSolution,
    pub t: f64,
    pub steps: usize,
    pub retries: usize,
    pub resyncs: usize,
    pub final_state: ParticleSystem,
    pub final_snapshot: Vec<SnapshotRow>,
    pub series: Vec<ConservedSample>,
    pub mask: Vec<bool>,
    pub errors: FieldErrors,
    pub contact_position: Option<f64>,
    /// `|detected - v* t|`; `None` when no contact was found.
    pub contact_position_error: Option<f64>,
    /// Absolute change in total momentum.
    pub momentum_drift: f64,
    /// Change in total energy relative to its initial value.
    pub energy_drift: f64,
    /// Filled in by a convergence study.
    pub fitted_order: Option<f64>,
}

fn sample(report: &StepReport, state: &ParticleSystem) -> ConservedSample {
    ConservedSample {
        step: report.step,
        t: report.t,
        mass: state.total_mass(),
        momentum: report.momentum,
        energy: report.energy,
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Sets up the shock tube, integrates to `t_end` and compares with the exact solution.
///
/// With `out_dir` set, writes `config.txt`, `run.log`, periodic
/// `snapshot_<step>.csv` files, `snapshot_final.csv` and `report.txt`.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    let mut state = setup_sod(config)?;
    let eos = Eos::new(config.gamma)?;
    let solution = solve_riemann(config.left, config.right, config.gamma)?;
    let mut integrator = Integrator::new(config.scheme_config(), eos, config.controls)?;

    if let Some(dir) = &config.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_file(&dir.join("config.txt"), &config.to_text())?;
    }

    let initial = ConservedSample {
        step: 0,
        t: 0.0,
        mass: state.total_mass(),
        momentum: state.total_momentum(),
        energy: state.total_energy(),
    };
    let mut series = vec![initial];
    let mut log = String::new();
    let mut retries = 0;
    let mut resyncs = 0;
    let mut pending: Result<()> = Ok(());
    integrator.run(&mut state, |report, s| {
        series.push(sample(report, s));
        retries += report.retries;
        resyncs += report.resyncs;
        log.push_str(&report.log_line());
        log.push('\n');
        if let (Some(dir), true) = (&config.out_dir, config.snapshot_every > 0) {
            if report.step % config.snapshot_every == 0 && pending.is_ok() {
                pending = s.snapshot(&eos).and_then(|rows| {
                    write_file(
                        &dir.join(format!("snapshot_{:06}.csv", report.step)),
                        &snapshot_csv(&rows),
                    )
                });
            }
        }
    })?;
    pending?;

    let t = integrator.time();
    let final_snapshot = state.snapshot(&eos)?;
    let free_ends = (config.wall_layers == 0).then_some((config.x_min, config.x_max));
    let mass = state.m[0];
    let mask = smooth_mask(
        &final_snapshot,
        &solution,
        config.x0,
        t,
        mass,
        MASK_BUFFER_SPACINGS,
        free_ends,
    );
    let errors = error_norms(&final_snapshot, &solution, config.x0, t, &mask)?;
    let contact_position = detect_contact(&final_snapshot, &solution, config.x0, t);
    let contact_position_error =
        contact_position.map(|c| (c - (config.x0 + solution.v_star * t)).abs());
    let last = *series
        .last()
        .expect("series starts with the initial sample");

    let report = RunReport {
        config: config.clone(),
        solution,
        t,
        steps: integrator.steps(),
        retries,
        resyncs,
        final_state: state,
        final_snapshot,
        mask,
        errors,
        contact_position,
        contact_position_error,
        momentum_drift: (last.momentum - initial.momentum).abs(),
        energy_drift: (last.energy - initial.energy).abs() / initial.energy.abs(),
        series,
        fitted_order: None,
    };

    if let Some(dir) = &config.out_dir {
        write_file(&dir.join("run.log"), &log)?;
        write_file(
            &dir.join("snapshot_final.csv"),
            &snapshot_csv(&report.final_snapshot),
        )?;
        write_file(&dir.join("report.txt"), &report.to_text())?;
    }
    Ok(report)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| format!("{x:.10e}"))
}

impl RunReport {
    /// Plain-text `key: value` report.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let e = &self.errors;
        let _ = writeln!(s, "scheme: {}", self.config.scheme);
        let _ = writeln!(s, "n_particles: {}", self.config.n_particles);
        let _ = writeln!(s, "t_end: {:.10e}", self.t);
        let _ = writeln!(s, "steps: {}", self.steps);
        let _ = writeln!(s, "retries: {}", self.retries);
        let _ = writeln!(s, "resyncs: {}", self.resyncs);
        let _ = writeln!(
            s,
            "smooth_particles: {}",
            self.mask.iter().filter(|&&m| m).count()
        );
        let _ = writeln!(s, "linf_pressure: {:.10e}", e.pressure.linf);
        let _ = writeln!(s, "l1_pressure: {:.10e}", e.pressure.l1);
        let _ = writeln!(s, "linf_density: {:.10e}", e.density.linf);
        let _ = writeln!(s, "l1_density: {:.10e}", e.density.l1);
        let _ = writeln!(s, "linf_velocity: {:.10e}", e.velocity.linf);
        let _ = writeln!(s, "l1_velocity: {:.10e}", e.velocity.l1);
        let _ = writeln!(s, "contact_position: {}", opt(self.contact_position));
        let _ = writeln!(
            s,
            "contact_position_error: {}",
            opt(self.contact_position_error)
        );
        let _ = writeln!(s, "momentum_drift: {:.10e}", self.momentum_drift);
        let _ = writeln!(s, "energy_drift: {:.10e}", self.energy_drift);
        let _ = writeln!(s, "fitted_order: {}", opt(self.fitted_order));
        s
    }
}

use std::fmt::Write as _;

use rayon::prelude::*;

use super::{run, RunConfig, RunReport};
use crate::error::{Error, Result};

/// Default particle counts for the convergence study.
pub const DEFAULT_SIZES: [usize; 3] = [150, 300, 600];

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub sizes: Vec<usize>,
    /// Smooth-region `L_inf` pressure error per size.
    pub errors: Vec<f64>,
    /// `-d log(error) / d log(N)` from a least-squares line.
    pub fitted_order: f64,
    pub reports: Vec<RunReport>,
}

/// Least-squares slope of `log e` against `log n`, negated so that a
/// decreasing error gives a positive order.
pub fn fit_order(sizes: &[usize], errors: &[f64]) -> Result<f64> {
    if sizes.len() != errors.len() || sizes.len() < 2 {
        return Err(Error::Usage(format!(
            "need at least two (N, error) pairs, got {} sizes and {} errors",
            sizes.len(),
            errors.len()
        )));
    }
    if let Some(e) = errors.iter().find(|&&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::Domain(format!(
            "errors must be positive and finite, got {e}"
        )));
    }
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Usage("sizes must not all be equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(-sxy / sxx)
}

/// Runs `config` at each size in parallel and fits the pressure-error order.
///
/// With `out_dir` set, each run writes to `<out_dir>/n<N>` and the study
/// writes `<out_dir>/convergence.txt`.
pub fn convergence_study(config: &RunConfig, sizes: &[usize]) -> Result<ConvergenceStudy> {
    if sizes.len() < 3 {
        return Err(Error::Usage(format!(
            "convergence study needs at least 3 sizes, got {}",
            sizes.len()
        )));
    }
    let mut reports: Vec<RunReport> = sizes
        .par_iter()
        .map(|&n| {
            let mut cfg = config.clone();
            cfg.n_particles = n;
            cfg.out_dir = config.out_dir.as_ref().map(|d| d.join(format!("n{n}")));
            run(&cfg)
        })
        .collect::<Result<_>>()?;
    let errors: Vec<f64> = reports.iter().map(|r| r.errors.pressure.linf).collect();
    let fitted_order = fit_order(sizes, &errors)?;
    for r in &mut reports {
        r.fitted_order = Some(fitted_order);
    }
    let study = ConvergenceStudy {
        sizes: sizes.to_vec(),
        errors,
        fitted_order,
        reports,
    };
    if let Some(dir) = &config.out_dir {
        let path = dir.join("convergence.txt");
        std::fs::write(&path, study.to_text()).map_err(|e| Error::io(&path, e))?;
        for r in &study.reports {
            if let Some(d) = &r.config.out_dir {
                let p = d.join("report.txt");
                std::fs::write(&p, r.to_text()).map_err(|e| Error::io(&p, e))?;
            }
        }
    }
    Ok(study)
}

impl ConvergenceStudy {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(r) = self.reports.first() {
            let _ = writeln!(s, "scheme: {}", r.config.scheme);
        }
        for (n, e) in self.sizes.iter().zip(&self.errors) {
            let _ = writeln!(s, "linf_pressure_n{n}: {e:.10e}");
        }
        let _ = writeln!(s, "fitted_order: {:.6}", self.fitted_order);
        s
    }
}

//! Comparison of particle profiles with the exact solution.

use crate::error::{Error, Result};
use crate::fluid::SnapshotRow;
use crate::riemann::RiemannSolution;

/// Maximum and mean absolute error of one field.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Norms {
    pub linf: f64,
    pub l1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldErrors {
    pub pressure: Norms,
    pub density: Norms,
    pub velocity: Norms,
}

/// Pointwise errors against `solution` at time `t`, reduced over rows where
/// `mask` is true. `l1` is the mean over the masked rows.
pub fn error_norms(
    rows: &[SnapshotRow],
    solution: &RiemannSolution,
    x0: f64,
    t: f64,
    mask: &[bool],
) -> Result<FieldErrors> {
    if mask.len() != rows.len() {
        return Err(Error::Usage(format!(
            "mask has {} entries for {} rows",
            mask.len(),
            rows.len()
        )));
    }
    if !(t > 0.0) {
        return Err(Error::Usage(format!("error norms need t > 0, got {t}")));
    }
    let count = mask.iter().filter(|&&m| m).count();
    if count == 0 {
        return Err(Error::Usage("empty error mask".into()));
    }
    let mut out = FieldErrors::default();
    for (row, _) in rows.iter().zip(mask).filter(|(_, &m)| m) {
        let exact = solution.sample_at(row.x, x0, t);
        for (norm, err) in [
            (&mut out.pressure, (row.p - exact.p).abs()),
            (&mut out.density, (row.rho - exact.rho).abs()),
            (&mut out.velocity, (row.v - exact.v).abs()),
        ] {
            norm.linf = norm.linf.max(err);
            norm.l1 += err;
        }
    }
    for norm in [&mut out.pressure, &mut out.density, &mut out.velocity] {
        norm.l1 /= count as f64;
    }
    Ok(out)
}

/// Smooth-region mask: drops every row within `buffer` local spacings of an
/// exact wave position.
///
/// The local spacing at a wave is `m / rho` on whichever side is coarser,
/// with `m` the particle mass. When the domain ends are free, the
/// expansion fans entering from `x_min` and `x_max` are excluded in the
/// same way.
pub fn smooth_mask(
    rows: &[SnapshotRow],
    solution: &RiemannSolution,
    x0: f64,
    t: f64,
    mass: f64,
    buffer: f64,
    free_ends: Option<(f64, f64)>,
) -> Vec<bool> {
    let eps = 1e-9;
    let spacing_at = |x: f64| {
        let a = solution.sample_at(x - eps, x0, t);
        let b = solution.sample_at(x + eps, x0, t);
        mass / a.rho.min(b.rho)
    };
    let mut bands: Vec<(f64, f64)> = solution
        .wave_positions(t)
        .all()
        .iter()
        .map(|&w| {
            let x = x0 + w;
            let r = buffer * spacing_at(x);
            (x - r, x + r)
        })
        .collect();
    if let Some((x_min, x_max)) = free_ends {
        let c_left = solution.left.sound_speed(solution.gamma);
        let c_right = solution.right.sound_speed(solution.gamma);
        let lo = x_min + (c_left - solution.left.v) * t + buffer * mass / solution.left.rho;
        let hi = x_max - (c_right + solution.right.v) * t - buffer * mass / solution.right.rho;
        bands.push((f64::NEG_INFINITY, lo));
        bands.push((hi, f64::INFINITY));
    }
    rows.iter()
        .map(|r| !bands.iter().any(|&(a, b)| r.x > a && r.x < b))
        .collect()
}

/// Contact position: where the density profile first falls through the
/// mean of the two star densities between the rarefaction tail and the
/// shock, by linear interpolation between particles.
pub fn detect_contact(
    rows: &[SnapshotRow],
    solution: &RiemannSolution,
    x0: f64,
    t: f64,
) -> Option<f64> {
    let waves = solution.wave_positions(t);
    let (lo, hi) = (x0 + waves.left_inner, x0 + waves.right_inner);
    let level = 0.5 * (solution.rho_star_left + solution.rho_star_right);
    let window: Vec<&SnapshotRow> = rows.iter().filter(|r| r.x >= lo && r.x <= hi).collect();
    window.windows(2).find_map(|w| {
        let (a, b) = (w[0], w[1]);
        if a.rho >= level && b.rho < level {
            let s = (a.rho - level) / (a.rho - b.rho);
            Some(a.x + s * (b.x - a.x))
        } else {
            None
        }
    })
}

/// Largest relative density deviation from `target` over rows in the middle
/// half of `[a, b]`. `None` when no particle lies there.
pub fn plateau_deviation(rows: &[SnapshotRow], a: f64, b: f64, target: f64) -> Option<f64> {
    let q = 0.25 * (b - a);
    rows.iter()
        .filter(|r| r.x >= a + q && r.x <= b - q)
        .map(|r| (r.rho - target).abs() / target)
        .reduce(f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fluid::Eos;
    use crate::riemann::{solve_riemann, RiemannState};

    fn sod() -> RiemannSolution {
        solve_riemann(RiemannState::SOD_LEFT, RiemannState::SOD_RIGHT, 1.4).unwrap()
    }

    fn exact_rows(s: &RiemannSolution, n: usize) -> Vec<SnapshotRow> {
        s.profile(0.2, -0.5, 0.5, n)
    }

    #[test]
    fn exact_profile_has_zero_error() {
        let s = sod();
        let rows = exact_rows(&s, 500);
        let mask = vec![true; rows.len()];
        let e = error_norms(&rows, &s, 0.0, 0.2, &mask).unwrap();
        assert_eq!(e.pressure.linf, 0.0);
        assert_eq!(e.density.l1, 0.0);
        assert_eq!(e.velocity.linf, 0.0);
    }

    #[test]
    fn constant_offset() {
        let s = sod();
        let mut rows = exact_rows(&s, 300);
        for r in &mut rows {
            r.p += 0.125;
        }
        let mask = vec![true; rows.len()];
        let e = error_norms(&rows, &s, 0.0, 0.2, &mask).unwrap();
        assert!((e.pressure.linf - 0.125).abs() < 1e-15);
        assert!((e.pressure.l1 - 0.125).abs() < 1e-12);
    }

    #[test]
    fn empty_mask_is_usage_error() {
        let s = sod();
        let rows = exact_rows(&s, 10);
        assert!(matches!(
            error_norms(&rows, &s, 0.0, 0.2, &[false; 10]),
            Err(Error::Usage(_))
        ));
        assert!(error_norms(&rows, &s, 0.0, 0.2, &[true; 9]).is_err());
    }

    #[test]
    fn mask_excludes_every_wave() {
        let s = sod();
        let rows = exact_rows(&s, 2001);
        let mass = 0.5625 / 100.0;
        let mask = smooth_mask(&rows, &s, 0.0, 0.2, mass, 10.0, Some((-0.5, 0.5)));
        assert!(mask.iter().any(|&m| m));
        for w in s.wave_positions(0.2).all() {
            for (r, &keep) in rows.iter().zip(&mask) {
                if (r.x - w).abs() < 10.0 * mass / 1.0 {
                    assert!(!keep, "x = {} kept near wave {}", r.x, w);
                }
            }
        }
    }

    #[test]
    fn contact_on_exact_profile() {
        let s = sod();
        let rows = exact_rows(&s, 4001);
        let c = detect_contact(&rows, &s, 0.0, 0.2).unwrap();
        assert!((c - s.v_star * 0.2).abs() < 1e-3);
        let w = s.wave_positions(0.2);
        let d = plateau_deviation(&rows, w.left_inner, w.contact, s.rho_star_left).unwrap();
        assert!(d < 1e-12);
    }

    #[test]
    fn snapshot_roundtrip_of_profile() {
        let s = sod();
        let eos = Eos::new(1.4).unwrap();
        let rows = exact_rows(&s, 5);
        assert!((rows[0].e - eos.specific_energy(1.0, 1.0)).abs() < 1e-15);
    }
}

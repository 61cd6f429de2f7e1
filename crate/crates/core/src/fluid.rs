//! Particle state and the ideal-gas closure.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Ideal-gas equation of state `P = (gamma - 1) rho e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eos {
    gamma: f64,
}

impl Eos {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 1.0 && gamma.is_finite() {
            Ok(Eos { gamma })
        } else {
            Err(Error::Domain(format!(
                "adiabatic index must exceed 1, got {gamma}"
            )))
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn pressure(&self, rho: f64, e: f64) -> Result<f64> {
        check_thermo(rho, e)?;
        Ok((self.gamma - 1.0) * rho * e)
    }

    pub fn sound_speed(&self, rho: f64, e: f64) -> Result<f64> {
        let p = self.pressure(rho, e)?;
        Ok((self.gamma * p / rho).sqrt())
    }

    /// Specific energy of a state with pressure `p` and density `rho`.
    pub fn specific_energy(&self, rho: f64, p: f64) -> f64 {
        p / ((self.gamma - 1.0) * rho)
    }
}

impl Default for Eos {
    fn default() -> Self {
        Eos { gamma: 1.4 }
    }
}

fn check_thermo(rho: f64, e: f64) -> Result<()> {
    if rho > 0.0 && e > 0.0 && rho.is_finite() && e.is_finite() {
        Ok(())
    } else {
        Err(Error::StateCorruption(format!(
            "density and specific energy must be positive (rho = {rho}, e = {e})"
        )))
    }
}

/// `(gamma - 1) rho e`.
pub fn pressure(rho: f64, e: f64, eos: &Eos) -> Result<f64> {
    eos.pressure(rho, e)
}

/// `sqrt(gamma P / rho)`.
pub fn sound_speed(rho: f64, e: f64, eos: &Eos) -> Result<f64> {
    eos.sound_speed(rho, e)
}

/// Per-particle state of a 1D particle system.
///
/// Volume and density are both stored and kept consistent (`rho = m / V`);
/// the generic scheme evolves `vol`, the reference SPH scheme evolves `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSystem {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub m: Vec<f64>,
    pub vol: Vec<f64>,
    pub rho: Vec<f64>,
    pub e: Vec<f64>,
    pub h: Vec<f64>,
    pub alpha: Vec<f64>,
    pub fixed: Vec<bool>,
}

impl ParticleSystem {
    /// Builds a system from positions, velocities, masses, volumes and specific
    /// energies; `h` and `alpha` start at the given values, nothing is fixed.
    pub fn new(
        x: Vec<f64>,
        v: Vec<f64>,
        m: Vec<f64>,
        vol: Vec<f64>,
        e: Vec<f64>,
        h: Vec<f64>,
        alpha: f64,
    ) -> Result<Self> {
        let n = x.len();
        for (name, len) in [
            ("v", v.len()),
            ("m", m.len()),
            ("vol", vol.len()),
            ("e", e.len()),
            ("h", h.len()),
        ] {
            if len != n {
                return Err(Error::Usage(format!(
                    "{name} has {len} entries for {n} particles"
                )));
            }
        }
        let rho = m.iter().zip(&vol).map(|(&m, &v)| m / v).collect();
        let sys = ParticleSystem {
            x,
            v,
            m,
            vol,
            rho,
            e,
            h,
            alpha: vec![alpha; n],
            fixed: vec![false; n],
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Checks positivity of mass, volume and energy and strict ordering.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.len() {
            if !(self.m[i] > 0.0) || !(self.vol[i] > 0.0) || !(self.e[i] > 0.0) {
                return Err(Error::StateCorruption(format!(
                    "particle {i}: m = {}, V = {}, e = {}",
                    self.m[i], self.vol[i], self.e[i]
                )));
            }
        }
        if let Some(k) = self.x.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::StateCorruption(format!(
                "particles {k} and {} are not strictly ordered ({} >= {})",
                k + 1,
                self.x[k],
                self.x[k + 1]
            )));
        }
        Ok(())
    }

    pub fn set_volume(&mut self, i: usize, vol: f64) {
        self.vol[i] = vol;
        self.rho[i] = self.m[i] / vol;
    }

    pub fn set_density(&mut self, i: usize, rho: f64) {
        self.rho[i] = rho;
        self.vol[i] = self.m[i] / rho;
    }

    pub fn pressures(&self, eos: &Eos) -> Result<Vec<f64>> {
        self.rho
            .iter()
            .zip(&self.e)
            .map(|(&r, &e)| eos.pressure(r, e))
            .collect()
    }

    pub fn sound_speeds(&self, eos: &Eos) -> Result<Vec<f64>> {
        self.rho
            .iter()
            .zip(&self.e)
            .map(|(&r, &e)| eos.sound_speed(r, e))
            .collect()
    }

    pub fn total_mass(&self) -> f64 {
        self.m.iter().sum()
    }

    pub fn total_momentum(&self) -> f64 {
        self.m.iter().zip(&self.v).map(|(m, v)| m * v).sum()
    }

    /// `sum m (v^2 / 2 + e)`.
    pub fn total_energy(&self) -> f64 {
        (0..self.len())
            .map(|i| self.m[i] * (0.5 * self.v[i] * self.v[i] + self.e[i]))
            .sum()
    }

    /// Adds `c` to every velocity.
    pub fn boost(&mut self, c: f64) {
        for v in &mut self.v {
            *v += c;
        }
    }

    /// Permutation that sorts the particles by position, or `None` when
    /// they are already in increasing order.
    pub fn sorting_order(&self) -> Option<Vec<usize>> {
        if self.x.windows(2).all(|w| w[0] <= w[1]) {
            return None;
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.x[a].total_cmp(&self.x[b]));
        Some(order)
    }

    /// Reorders every field so that new particle `k` is old particle `order[k]`.
    pub fn permute(&mut self, order: &[usize]) {
        fn apply<T: Copy>(v: &mut Vec<T>, order: &[usize]) {
            *v = order.iter().map(|&k| v[k]).collect();
        }
        apply(&mut self.x, order);
        apply(&mut self.v, order);
        apply(&mut self.m, order);
        apply(&mut self.vol, order);
        apply(&mut self.rho, order);
        apply(&mut self.e, order);
        apply(&mut self.h, order);
        apply(&mut self.alpha, order);
        apply(&mut self.fixed, order);
    }

    /// Restores increasing order of `x`, permuting every field. Returns
    /// whether anything moved.
    pub fn sort_by_position(&mut self) -> bool {
        match self.sorting_order() {
            Some(order) => {
                self.permute(&order);
                true
            }
            None => false,
        }
    }

    /// Snapshot rows for CSV output.
    pub fn snapshot(&self, eos: &Eos) -> Result<Vec<SnapshotRow>> {
        let p = self.pressures(eos)?;
        Ok((0..self.len())
            .map(|i| SnapshotRow {
                x: self.x[i],
                rho: self.rho[i],
                v: self.v[i],
                p: p[i],
                e: self.e[i],
                h: self.h[i],
                vol: self.vol[i],
            })
            .collect())
    }
}

/// One line of a snapshot CSV (`x,rho,v,P,e,h,V`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotRow {
    pub x: f64,
    pub rho: f64,
    pub v: f64,
    pub p: f64,
    pub e: f64,
    pub h: f64,
    pub vol: f64,
}

pub const SNAPSHOT_HEADER: &str = "x,rho,v,P,e,h,V";

/// Renders rows as CSV with 17 significant digits per value.
pub fn snapshot_csv(rows: &[SnapshotRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 7 * 24 + 16);
    out.push_str(SNAPSHOT_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.x, r.rho, r.v, r.p, r.e, r.h, r.vol
        );
    }
    out
}

pub fn write_snapshot_csv(path: &Path, rows: &[SnapshotRow]) -> Result<()> {
    std::fs::write(path, snapshot_csv(rows)).map_err(|e| Error::io(path, e))
}

/// Parses text produced by [`snapshot_csv`].
pub fn parse_snapshot_csv(text: &str) -> Result<Vec<SnapshotRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == SNAPSHOT_HEADER => {}
        other => {
            return Err(Error::Usage(format!(
                "expected header `{SNAPSHOT_HEADER}`, found {other:?}"
            )))
        }
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(k, line)| {
            let f: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Usage(format!("row {k}: {e}")))?;
            if f.len() != 7 {
                return Err(Error::Usage(format!(
                    "row {k}: expected 7 columns, got {}",
                    f.len()
                )));
            }
            Ok(SnapshotRow {
                x: f[0],
                rho: f[1],
                v: f[2],
                p: f[3],
                e: f[4],
                h: f[5],
                vol: f[6],
            })
        })
        .collect()
}

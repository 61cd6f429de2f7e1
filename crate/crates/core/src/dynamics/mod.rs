//! Right-hand sides of the particle equations.
//!
//! The generic operators work on any [`ShapeTable`]; the `sph_*` operators
//! are the reference kernel formulation evaluated directly from the state.

mod dissipation;
mod generic;
mod sph;

pub use dissipation::{dissipation_rhs, neighbor_pairs, switch_rhs, PairGradient};
pub use generic::{
    energy_rhs, generic_continuity_rhs, generic_momentum_rhs, velocity_divergence, volume_rhs,
    ContinuityRate,
};
pub use sph::{sph_continuity_rhs, sph_momentum_rhs};

use crate::error::{Error, Result};
use crate::fluid::{Eos, ParticleSystem};
use crate::integrator::update_h;
use crate::scheme::{SchemeConfig, SchemeKind};
use crate::shape::ShapeTable;

/// Time derivatives of every evolved per-particle field.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivatives {
    pub drho_dt: Vec<f64>,
    pub dvol_dt: Vec<f64>,
    pub dv_dt: Vec<f64>,
    pub de_dt: Vec<f64>,
    pub dh_dt: Vec<f64>,
    pub dalpha_dt: Vec<f64>,
}

impl Derivatives {
    pub fn zeros(n: usize) -> Self {
        Derivatives {
            drho_dt: vec![0.0; n],
            dvol_dt: vec![0.0; n],
            dv_dt: vec![0.0; n],
            de_dt: vec![0.0; n],
            dh_dt: vec![0.0; n],
            dalpha_dt: vec![0.0; n],
        }
    }

    pub fn is_finite(&self) -> bool {
        [
            &self.drho_dt,
            &self.dvol_dt,
            &self.dv_dt,
            &self.de_dt,
            &self.dh_dt,
            &self.dalpha_dt,
        ]
        .iter()
        .all(|v| v.iter().all(|x| x.is_finite()))
    }

    /// Undoes a [`ParticleSystem::permute`]: entry `order[k]` of the result is entry `k` of `self`.
    pub fn unpermute(&self, order: &[usize]) -> Self {
        let inv = |v: &Vec<f64>| {
            let mut out = vec![0.0; v.len()];
            for (k, &o) in order.iter().enumerate() {
                out[o] = v[k];
            }
            out
        };
        Derivatives {
            drho_dt: inv(&self.drho_dt),
            dvol_dt: inv(&self.dvol_dt),
            dv_dt: inv(&self.dv_dt),
            de_dt: inv(&self.de_dt),
            dh_dt: inv(&self.dh_dt),
            dalpha_dt: inv(&self.dalpha_dt),
        }
    }

    fn zero_particle(&mut self, i: usize) {
        self.drho_dt[i] = 0.0;
        self.dvol_dt[i] = 0.0;
        self.dv_dt[i] = 0.0;
        self.de_dt[i] = 0.0;
        self.dh_dt[i] = 0.0;
        self.dalpha_dt[i] = 0.0;
    }
}

pub(crate) fn check_table(state: &ParticleSystem, table: &ShapeTable) -> Result<()> {
    if table.len() != state.len() {
        return Err(Error::Usage(format!(
            "shape table has {} rows for {} particles",
            table.len(),
            state.len()
        )));
    }
    Ok(())
}

pub(crate) fn check_len(state: &ParticleSystem, name: &str, len: usize) -> Result<()> {
    if len != state.len() {
        return Err(Error::Usage(format!(
            "{name} has {len} entries for {} particles",
            state.len()
        )));
    }
    Ok(())
}

/// Full right-hand side of `scheme` for `state`, given the table built from it.
///
/// Fixed particles get zero rates (their positions still follow `v`).
pub fn assemble(
    state: &ParticleSystem,
    table: &ShapeTable,
    scheme: &SchemeConfig,
    eos: &Eos,
) -> Result<Derivatives> {
    check_table(state, table)?;
    let n = state.len();
    let pressures = state.pressures(eos)?;
    let mut d = Derivatives::zeros(n);

    match scheme.kind {
        SchemeKind::Sph => {
            d.drho_dt = sph_continuity_rhs(state)?;
            for i in 0..n {
                d.dvol_dt[i] = -state.vol[i] / state.rho[i] * d.drho_dt[i];
            }
            d.dv_dt = sph_momentum_rhs(state, &pressures)?;
            d.de_dt = energy_rhs(state, &pressures, ContinuityRate::Density(&d.drho_dt))?;
        }
        SchemeKind::Mls | SchemeKind::Rbf => {
            d.dvol_dt = volume_rhs(state, table)?;
            for i in 0..n {
                d.drho_dt[i] = -state.rho[i] / state.vol[i] * d.dvol_dt[i];
            }
            d.dv_dt = generic_momentum_rhs(state, table, &pressures)?;
            d.de_dt = energy_rhs(state, &pressures, ContinuityRate::Volume(&d.dvol_dt))?;
        }
    }

    d.dh_dt = update_h(state, scheme, &d.drho_dt, &d.dvol_dt);

    if let Some(params) = scheme.dissipation {
        let sound = state.sound_speeds(eos)?;
        let pairs = neighbor_pairs(table);
        let (dv, de) = dissipation_rhs(state, &pairs, &pressures, &sound, &params)?;
        for i in 0..n {
            d.dv_dt[i] += dv[i];
            d.de_dt[i] += de[i];
        }
        let div = velocity_divergence(state, table)?;
        let lengths: Vec<f64> = (0..n).map(|i| scheme.resolution_length(state, i)).collect();
        d.dalpha_dt = switch_rhs(state, &div, &sound, &lengths, &params)?;
    }

    for i in (0..n).filter(|&i| state.fixed[i]) {
        d.zero_particle(i);
    }
    Ok(d)
}

//! Artificial viscosity, artificial conductivity and the viscosity switch.
//!
//! Both dissipative terms are written pairwise with the symmetrised gradient
//! `G_ij = (phi_j'(x_i) - phi_i'(x_j)) / 2`, which is antisymmetric in
//! `(i, j)` for any shape family. For SPH shapes with a common `h` it reduces
//! to `V_ij dW_ij/dx_i`, so the kernel forms
//! `-m_j Pi_ij dW_ij/dx_i` carry over as `-(m_j / V_ij) Pi_ij G_ij`.

use super::check_len;
use crate::error::Result;
use crate::fluid::ParticleSystem;
use crate::scheme::DissipationParams;
use crate::shape::ShapeTable;

/// Interacting pair `i < j` with its symmetrised shape gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairGradient {
    pub i: usize,
    pub j: usize,
    pub gbar: f64,
}

/// Pairs `i < j` where either `phi_j'(x_i)` or `phi_i'(x_j)` is stored,
/// in lexicographic order. Pairs whose symmetrised gradient vanishes are dropped.
pub fn neighbor_pairs(table: &ShapeTable) -> Vec<PairGradient> {
    let mut pairs = Vec::new();
    for i in 0..table.len() {
        let cols = table.row(i).columns();
        for j in cols.clone() {
            if j > i || (j < i && !table.row(j).columns().contains(&i)) {
                let (a, b) = if j > i { (i, j) } else { (j, i) };
                let gbar = 0.5 * (table.gradient(a, b) - table.gradient(b, a));
                if gbar != 0.0 {
                    pairs.push(PairGradient { i: a, j: b, gbar });
                }
            }
        }
    }
    pairs.sort_by_key(|p| (p.i, p.j));
    pairs
}

/// Pairwise viscosity and conductivity: returns `(dv/dt, de/dt)` contributions.
///
/// Viscosity acts on approaching pairs with
/// `Pi_ij = -alpha_ij v_sig mu_ij / (2 rho_ij)`, `mu_ij = v_ij . x_ij/|x_ij|`,
/// `v_sig = c_i + c_j - 3 mu_ij`; its heating is split equally. Conductivity
/// uses `v_sig^u = sqrt(|P_i - P_j| / rho_ij)`. Every pair adds equal and
/// opposite momentum and zero net energy.
pub fn dissipation_rhs(
    state: &ParticleSystem,
    pairs: &[PairGradient],
    pressures: &[f64],
    sound_speeds: &[f64],
    params: &DissipationParams,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_len(state, "pressures", pressures.len())?;
    check_len(state, "sound speeds", sound_speeds.len())?;
    let n = state.len();
    let mut dv = vec![0.0; n];
    let mut de = vec![0.0; n];
    let (x, v, m, e) = (&state.x, &state.v, &state.m, &state.e);

    for &PairGradient { i, j, gbar } in pairs {
        let rho_bar = 0.5 * (state.rho[i] + state.rho[j]);
        let vol_bar = 0.5 * (state.vol[i] + state.vol[j]);
        let dx = x[i] - x[j];
        let dvel = v[i] - v[j];

        if dvel * dx < 0.0 {
            let mu = dvel * dx.signum();
            let alpha = 0.5 * (state.alpha[i] + state.alpha[j]);
            let v_sig = sound_speeds[i] + sound_speeds[j] - 3.0 * mu;
            let pi = -0.5 * alpha * v_sig * mu / rho_bar;
            let coeff = pi * gbar / vol_bar;
            dv[i] -= m[j] * coeff;
            dv[j] += m[i] * coeff;
            let heat = 0.5 * coeff * dvel;
            de[i] += m[j] * heat;
            de[j] += m[i] * heat;
        }

        let de_ij = e[i] - e[j];
        if de_ij != 0.0 {
            let v_sig_u = ((pressures[i] - pressures[j]).abs() / rho_bar).sqrt();
            let k = 0.5 * params.alpha_u * v_sig_u * gbar.abs() / (rho_bar * vol_bar) * de_ij;
            de[i] -= m[j] * k;
            de[j] += m[i] * k;
        }
    }
    Ok((dv, de))
}

/// Viscosity switch `d alpha_i / dt = -(alpha_i - alpha_min) / tau_i + max(-div v_i, 0)`,
/// `tau_i = length_i / (decay c_i)`. The integrator clamps alpha to `[alpha_min, alpha_max]`.
pub fn switch_rhs(
    state: &ParticleSystem,
    divergence: &[f64],
    sound_speeds: &[f64],
    resolution_lengths: &[f64],
    params: &DissipationParams,
) -> Result<Vec<f64>> {
    check_len(state, "divergence", divergence.len())?;
    check_len(state, "sound speeds", sound_speeds.len())?;
    check_len(state, "resolution lengths", resolution_lengths.len())?;
    Ok((0..state.len())
        .map(|i| {
            let tau = resolution_lengths[i] / (params.decay * sound_speeds[i]);
            let source = (-divergence[i]).max(0.0);
            -(state.alpha[i] - params.alpha_min) / tau + source
        })
        .collect())
}

use super::{check_len, check_table};
use crate::error::Result;
use crate::fluid::ParticleSystem;
use crate::shape::ShapeTable;

/// `sum_j (v_j - v_i) phi_j'(x_i)`: the discrete velocity divergence at each particle.
pub fn velocity_divergence(state: &ParticleSystem, table: &ShapeTable) -> Result<Vec<f64>> {
    check_table(state, table)?;
    let v = &state.v;
    Ok((0..state.len())
        .map(|i| {
            table
                .row(i)
                .entries()
                .map(|(j, _, g)| (v[j] - v[i]) * g)
                .sum::<f64>()
        })
        .collect())
}

/// `d rho_i / dt = -rho_i sum_j (v_j - v_i) phi_j'(x_i)`.
pub fn generic_continuity_rhs(state: &ParticleSystem, table: &ShapeTable) -> Result<Vec<f64>> {
    let div = velocity_divergence(state, table)?;
    Ok(div
        .iter()
        .zip(&state.rho)
        .map(|(d, rho)| -rho * d)
        .collect())
}

/// `d V_i / dt = V_i sum_j (v_j - v_i) phi_j'(x_i)`.
pub fn volume_rhs(state: &ParticleSystem, table: &ShapeTable) -> Result<Vec<f64>> {
    let div = velocity_divergence(state, table)?;
    Ok(div.iter().zip(&state.vol).map(|(d, vol)| vol * d).collect())
}

/// `d v_i / dt = (1 / m_i) sum_j V_j P_j phi_i'(x_j)`.
///
/// Note the transposed access: the gradient of shape `i` is taken at node
/// `j`, so row `j` of the table scatters into every `i` in its band.
pub fn generic_momentum_rhs(
    state: &ParticleSystem,
    table: &ShapeTable,
    pressures: &[f64],
) -> Result<Vec<f64>> {
    check_table(state, table)?;
    check_len(state, "pressures", pressures.len())?;
    let mut force = vec![0.0; state.len()];
    for (j, row) in table.rows().iter().enumerate() {
        let vp = state.vol[j] * pressures[j];
        for (i, _, g) in row.entries() {
            force[i] += vp * g;
        }
    }
    Ok(force.iter().zip(&state.m).map(|(f, m)| f / m).collect())
}

/// Continuity rate fed to the energy equation.
#[derive(Debug, Clone, Copy)]
pub enum ContinuityRate<'a> {
    Density(&'a [f64]),
    Volume(&'a [f64]),
}

/// First law: `de/dt = (P / rho^2) drho/dt = -(P / m) dV/dt`.
pub fn energy_rhs(
    state: &ParticleSystem,
    pressures: &[f64],
    rate: ContinuityRate<'_>,
) -> Result<Vec<f64>> {
    check_len(state, "pressures", pressures.len())?;
    match rate {
        ContinuityRate::Density(drho) => {
            check_len(state, "drho_dt", drho.len())?;
            Ok((0..state.len())
                .map(|i| pressures[i] / (state.rho[i] * state.rho[i]) * drho[i])
                .collect())
        }
        ContinuityRate::Volume(dvol) => {
            check_len(state, "dvol_dt", dvol.len())?;
            Ok((0..state.len())
                .map(|i| -pressures[i] / state.m[i] * dvol[i])
                .collect())
        }
    }
}

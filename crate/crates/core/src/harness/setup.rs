use super::RunConfig;
use crate::error::Result;
use crate::fluid::{Eos, ParticleSystem};

/// Particle counts `(left, right)` for equal masses: the right count is
/// `floor(N * M_R / M)` and the remainder goes left.
pub fn side_counts(n: usize, mass_left: f64, mass_right: f64) -> (usize, usize) {
    let right = ((n as f64) * mass_right / (mass_left + mass_right)).floor() as usize;
    (n - right, right)
}

/// Equal-mass shock-tube particles with no smoothing across the diaphragm.
///
/// Each particle carries the volume `m / rho` of its side, and the particles
/// are stacked outward from the diaphragm.
pub fn setup_sod(config: &RunConfig) -> Result<ParticleSystem> {
    config.validate()?;
    let eos = Eos::new(config.gamma)?;
    let scheme = config.scheme_config();
    let mass_left = config.left.rho * (config.x0 - config.x_min);
    let mass_right = config.right.rho * (config.x_max - config.x0);
    let n = config.n_particles;
    let m = (mass_left + mass_right) / n as f64;
    let (n_left, n_right) = side_counts(n, mass_left, mass_right);

    let vol_left = m / config.left.rho;
    let vol_right = m / config.right.rho;
    let e_left = eos.specific_energy(config.left.rho, config.left.p);
    let e_right = eos.specific_energy(config.right.rho, config.right.p);

    let mut x = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    let mut vol = Vec::with_capacity(n);
    let mut e = Vec::with_capacity(n);
    for k in (0..n_left).rev() {
        x.push(config.x0 - (k as f64 + 0.5) * vol_left);
        v.push(config.left.v);
        vol.push(vol_left);
        e.push(e_left);
    }
    for k in 0..n_right {
        x.push(config.x0 + (k as f64 + 0.5) * vol_right);
        v.push(config.right.v);
        vol.push(vol_right);
        e.push(e_right);
    }
    let h = vol
        .iter()
        .map(|&vi| scheme.smoothing_length_for(vi))
        .collect();
    let alpha = scheme.dissipation.map_or(0.0, |d| d.alpha_min);
    let mut state = ParticleSystem::new(x, v, vec![m; n], vol, e, h, alpha)?;
    for k in 0..config.wall_layers {
        state.fixed[k] = true;
        state.fixed[n - 1 - k] = true;
    }
    Ok(state)
}

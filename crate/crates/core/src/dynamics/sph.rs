use super::check_len;
use crate::error::Result;
use crate::fluid::ParticleSystem;
use crate::kernels::cubic_spline_dw_unchecked;
use crate::shape::sph_pair_gradient;

fn window(x: &[f64], xi: f64, radius: f64) -> std::ops::Range<usize> {
    let lo = x.partition_point(|&p| p <= xi - radius);
    let hi = x.partition_point(|&p| p < xi + radius);
    lo..hi
}

/// `d rho_i / dt = -rho_i sum_j (m_j / rho_j)(v_j - v_i) dW(|x_i - x_j|, h_i)/dx_i`.
///
/// Evaluates the same products in the same order as
/// [`generic_continuity_rhs`](super::generic_continuity_rhs) on an
/// [`sph_shapes`](crate::shape::sph_shapes) table, so the two agree bitwise.
pub fn sph_continuity_rhs(state: &ParticleSystem) -> Result<Vec<f64>> {
    let (x, v, h) = (&state.x, &state.v, &state.h);
    Ok((0..state.len())
        .map(|i| {
            let sum: f64 = window(x, x[i], 2.0 * h[i])
                .map(|j| {
                    (v[j] - v[i]) * sph_pair_gradient(x[i], x[j], h[i], state.m[j] / state.rho[j])
                })
                .sum();
            -state.rho[i] * sum
        })
        .collect())
}

/// `d v_i / dt = -(1/rho_i) sum_j (m_j/rho_j) [P_i dW(h_i)/dx_i + P_j dW(h_j)/dx_i]`.
pub fn sph_momentum_rhs(state: &ParticleSystem, pressures: &[f64]) -> Result<Vec<f64>> {
    check_len(state, "pressures", pressures.len())?;
    let (x, h) = (&state.x, &state.h);
    let h_max = h.iter().copied().fold(0.0, f64::max);
    Ok((0..state.len())
        .map(|i| {
            let sum: f64 = window(x, x[i], 2.0 * h_max)
                .filter(|&j| j != i)
                .map(|j| {
                    let dx = x[i] - x[j];
                    let sign = dx.signum();
                    let r = dx.abs();
                    let grad_i = sign * cubic_spline_dw_unchecked(r, h[i]);
                    let grad_j = sign * cubic_spline_dw_unchecked(r, h[j]);
                    state.m[j] / state.rho[j] * (pressures[i] * grad_i + pressures[j] * grad_j)
                })
                .sum();
            -sum / state.rho[i]
        })
        .collect())
}

use super::{Backend, NodeSet, ShapeRow, ShapeTable};
use crate::error::{Error, Result};
use crate::kernels::{cubic_spline_dw_unchecked, cubic_spline_w_unchecked};

/// `(m_j / rho_j) dW(|x_i - x_j|, h_i)/dx_i`.
///
/// Shared with the dedicated SPH right-hand sides so that both paths perform
/// the same floating-point operations.
#[inline]
pub(crate) fn sph_pair_gradient(xi: f64, xj: f64, hi: f64, vol_j: f64) -> f64 {
    let dx = xi - xj;
    let dw = cubic_spline_dw_unchecked(dx.abs(), hi);
    let signed = if dx > 0.0 {
        dw
    } else if dx < 0.0 {
        -dw
    } else {
        0.0
    };
    vol_j * signed
}

/// Columns `j` with `|x_i - x_j| < radius`, as a half-open range.
pub(crate) fn window(positions: &[f64], xi: f64, radius: f64) -> (usize, usize) {
    let lo = positions.partition_point(|&x| x <= xi - radius);
    let hi = positions.partition_point(|&x| x < xi + radius);
    (lo, hi)
}

/// SPH kernel shape functions `phi_j(x_i) = (m_j / rho_j) W(|x_i - x_j|, h_i)`.
pub fn sph_shapes(nodes: NodeSet<'_>, masses: &[f64], densities: &[f64]) -> Result<ShapeTable> {
    let n = nodes.len();
    let h = nodes.require_smoothing_lengths()?;
    if masses.len() != n || densities.len() != n {
        return Err(Error::Usage(format!(
            "{} masses and {} densities for {n} nodes",
            masses.len(),
            densities.len()
        )));
    }
    if let Some(j) = densities.iter().position(|&rho| !(rho > 0.0)) {
        return Err(Error::Domain(format!(
            "density of node {j} must be positive, got {}",
            densities[j]
        )));
    }
    let x = nodes.positions();
    let vol: Vec<f64> = masses
        .iter()
        .zip(densities)
        .map(|(&m, &rho)| m / rho)
        .collect();

    let rows = (0..n)
        .map(|i| {
            let (lo, hi) = window(x, x[i], 2.0 * h[i]);
            let values = (lo..hi)
                .map(|j| vol[j] * cubic_spline_w_unchecked((x[i] - x[j]).abs(), h[i]))
                .collect();
            let gradients = (lo..hi)
                .map(|j| sph_pair_gradient(x[i], x[j], h[i], vol[j]))
                .collect();
            ShapeRow {
                first: lo,
                values,
                gradients,
            }
        })
        .collect();
    Ok(ShapeTable::from_parts(Backend::Sph, rows, vol))
}

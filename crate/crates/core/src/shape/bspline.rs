//! Cubic B-spline shape functions on the node positions.
//!
//! Interior shape `phi_j` is the normalised cubic B-spline on the knots
//! `x_{j-2}, ..., x_{j+2}`; on uniform knots this is the fourth divided
//! difference of `(t - x)^3_+`, i.e. the discrete bi-Laplacian of `|x|^3`.
//! The knot vector is clamped: `x_0` and `x_{N-1}` are repeated four times
//! and `x_1`, `x_{N-2}` are dropped so that there are exactly `N` splines and
//! they sum to one on the whole hull `[x_0, x_{N-1}]`.

use rayon::prelude::*;

use super::{Backend, NodeSet, ShapeRow, ShapeTable};
use crate::error::{Error, Result};

const DEGREE: usize = 3;
const ORDER: usize = DEGREE + 1;

/// Clamped cubic B-spline basis with one spline per node.
#[derive(Debug, Clone)]
pub struct BsplineBasis {
    knots: Vec<f64>,
    n: usize,
}

impl BsplineBasis {
    pub fn new(positions: &[f64]) -> Result<Self> {
        let n = positions.len();
        if n < 5 {
            return Err(Error::Domain(format!(
                "cubic B-spline shapes need at least 5 nodes, got {n}"
            )));
        }
        NodeSet::positions_only(positions)?;
        let mut knots = Vec::with_capacity(n + ORDER);
        knots.extend(std::iter::repeat_n(positions[0], ORDER));
        knots.extend_from_slice(&positions[2..n - 2]);
        knots.extend(std::iter::repeat_n(positions[n - 1], ORDER));
        debug_assert_eq!(knots.len(), n + ORDER);
        Ok(BsplineBasis { knots, n })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Knot span `mu` with `knots[mu] <= x < knots[mu + 1]`, clamped to the valid range.
    fn span(&self, x: f64) -> usize {
        let last = self.n - 1;
        if x >= self.knots[self.n] {
            return last;
        }
        let k = self.knots.partition_point(|&t| t <= x);
        k.saturating_sub(1).clamp(DEGREE, last)
    }

    /// `int phi_j dx = (t_{j+4} - t_j) / 4`.
    pub fn integral(&self, j: usize) -> f64 {
        (self.knots[j + ORDER] - self.knots[j]) / ORDER as f64
    }

    /// Values and derivatives of the four splines that are nonzero at `x`.
    ///
    /// Cox–de Boor triangle (Piegl & Tiller, A2.2); derivatives from the
    /// quadratic row via `B'_{i,3} = 3 (B_{i,2}/(t_{i+3}-t_i) - B_{i+1,2}/(t_{i+4}-t_{i+1}))`.
    pub fn evaluate(&self, x: f64) -> ShapeRow {
        let t = &self.knots;
        let mu = self.span(x);
        let mut basis = [0.0; ORDER];
        let mut left = [0.0; ORDER];
        let mut right = [0.0; ORDER];
        let mut quadratic = [0.0; DEGREE];
        basis[0] = 1.0;
        for j in 1..=DEGREE {
            left[j] = x - t[mu + 1 - j];
            right[j] = t[mu + j] - x;
            let mut saved = 0.0;
            for r in 0..j {
                let denom = right[r + 1] + left[j - r];
                let temp = if denom == 0.0 { 0.0 } else { basis[r] / denom };
                basis[r] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            basis[j] = saved;
            if j == DEGREE - 1 {
                quadratic.copy_from_slice(&basis[..DEGREE]);
            }
        }

        // quadratic[k] = B_{mu-2+k, 2}; cubic index i = mu-3+k.
        let q = |i: isize| -> f64 {
            let k = i - (mu as isize - 2);
            if (0..DEGREE as isize).contains(&k) {
                quadratic[k as usize]
            } else {
                0.0
            }
        };
        let ratio = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
        let first = mu - DEGREE;
        let gradients = (0..ORDER)
            .map(|k| {
                let i = first + k;
                let a = ratio(q(i as isize), t[i + 3] - t[i]);
                let b = ratio(q(i as isize + 1), t[i + 4] - t[i + 1]);
                DEGREE as f64 * (a - b)
            })
            .collect();
        ShapeRow {
            first,
            values: basis.to_vec(),
            gradients,
        }
    }
}

/// Cubic B-spline shape functions (the radial-basis backend).
pub fn bspline_shapes(nodes: NodeSet<'_>) -> Result<ShapeTable> {
    let basis = BsplineBasis::new(nodes.positions())?;
    let rows = nodes
        .positions()
        .par_iter()
        .map(|&x| basis.evaluate(x))
        .collect();
    let volumes = (0..basis.len()).map(|j| basis.integral(j)).collect();
    Ok(ShapeTable::from_parts(Backend::Bspline, rows, volumes))
}

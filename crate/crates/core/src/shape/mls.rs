//! Backus–Gilbert moving least squares.
//!
//! At an evaluation point `x` the shape functions minimise
//! `sum_j phi_j(x)^2 / w_j(x)` subject to exact reproduction of polynomials up
//! to `degree`. The minimiser is `phi_j(x) = w_j(x) p(x_j)^T M(x)^{-1} p(x)`
//! with moment matrix `M(x) = sum_j w_j(x) p(x_j) p(x_j)^T`.
//!
//! The monomial basis is centred on the evaluation point and scaled by the
//! local support so that `M` stays well conditioned; the centre is held fixed
//! while differentiating, which makes `p(x) = e_0` and `p'(x) = e_1 / s`.
//! Gradients are exact derivatives of the constrained minimiser (the moment
//! matrix is differentiated too), so every gradient row sums to zero.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::{Backend, NodeSet, ShapeRow, ShapeTable};
use crate::error::{Error, Result};
use crate::kernels::{
    cubic_spline_dw_unchecked, cubic_spline_w_unchecked, wendland_c4_d_unchecked,
    wendland_c4_unchecked, KernelKind, KernelSpec,
};
use crate::quadrature::gl4_panel;

/// Smallest admissible ratio of Cholesky pivots before the moment matrix is
/// treated as singular.
const PIVOT_RATIO_FLOOR: f64 = 1e-14;

/// A univariate MLS weight `w(q)`, `q = |x - x_j| / h_j`.
pub trait WeightFunction: Sync {
    /// Support radius in `q`.
    fn support(&self) -> f64;
    fn value(&self, q: f64) -> f64;
    fn derivative(&self, q: f64) -> f64;
}

impl WeightFunction for KernelSpec {
    fn support(&self) -> f64 {
        self.support_radius_in_h
    }

    fn value(&self, q: f64) -> f64 {
        match self.kind {
            KernelKind::WendlandC4 => wendland_c4_unchecked(q / self.support_radius_in_h),
            KernelKind::CubicSpline => {
                cubic_spline_w_unchecked(q * 2.0 / self.support_radius_in_h, 1.0)
            }
        }
    }

    fn derivative(&self, q: f64) -> f64 {
        match self.kind {
            KernelKind::WendlandC4 => {
                wendland_c4_d_unchecked(q / self.support_radius_in_h) / self.support_radius_in_h
            }
            KernelKind::CubicSpline => {
                let s = 2.0 / self.support_radius_in_h;
                s * cubic_spline_dw_unchecked(q * s, 1.0)
            }
        }
    }
}

/// A weight multiplied by a positive constant.
#[derive(Debug, Clone, Copy)]
pub struct ScaledWeight<W> {
    pub inner: W,
    pub scale: f64,
}

impl<W: WeightFunction> WeightFunction for ScaledWeight<W> {
    fn support(&self) -> f64 {
        self.inner.support()
    }

    fn value(&self, q: f64) -> f64 {
        self.scale * self.inner.value(q)
    }

    fn derivative(&self, q: f64) -> f64 {
        self.scale * self.inner.derivative(q)
    }
}

/// Evaluates MLS shape functions and their derivatives at arbitrary points.
pub struct MlsEvaluator<'a, W> {
    positions: &'a [f64],
    smoothing_lengths: &'a [f64],
    degree: usize,
    weight: &'a W,
    /// Running maximum of `x_k + r_k` over `k <= j`.
    right_reach: Vec<f64>,
    /// Running minimum of `x_k - r_k` over `k >= j`.
    left_reach: Vec<f64>,
}

impl<'a, W: WeightFunction> MlsEvaluator<'a, W> {
    pub fn new(nodes: NodeSet<'a>, degree: usize, weight: &'a W) -> Result<Self> {
        let smoothing_lengths = nodes.require_smoothing_lengths()?;
        let positions = nodes.positions();
        let support = weight.support();
        let mut right_reach: Vec<f64> = positions
            .iter()
            .zip(smoothing_lengths)
            .map(|(&x, &h)| x + support * h)
            .collect();
        for k in 1..right_reach.len() {
            right_reach[k] = right_reach[k].max(right_reach[k - 1]);
        }
        let mut left_reach: Vec<f64> = positions
            .iter()
            .zip(smoothing_lengths)
            .map(|(&x, &h)| x - support * h)
            .collect();
        for k in (0..left_reach.len().saturating_sub(1)).rev() {
            left_reach[k] = left_reach[k].min(left_reach[k + 1]);
        }
        Ok(MlsEvaluator {
            positions,
            smoothing_lengths,
            degree,
            weight,
            right_reach,
            left_reach,
        })
    }

    fn nearest_node(&self, x: f64) -> usize {
        let k = self.positions.partition_point(|&p| p < x);
        if k == 0 {
            0
        } else if k == self.positions.len() || x - self.positions[k - 1] <= self.positions[k] - x {
            k - 1
        } else {
            k
        }
    }

    fn ill_posed(&self, x: f64, reason: String) -> Error {
        Error::IllPosedGeometry {
            node: self.nearest_node(x),
            reason: format!("MLS at x = {x}: {reason}"),
        }
    }

    /// Contiguous index range containing every node whose support covers `x`.
    fn candidates(&self, x: f64) -> (usize, usize) {
        let lo = self.right_reach.partition_point(|&r| r <= x);
        let hi = self.left_reach.partition_point(|&l| l < x);
        (lo, hi.max(lo))
    }

    /// Shape values and gradients at `x` over the band of candidate nodes.
    pub fn evaluate(&self, x: f64) -> Result<ShapeRow> {
        let support = self.weight.support();
        let (lo, hi) = self.candidates(x);
        let mut w = Vec::with_capacity(hi - lo);
        let mut dw = Vec::with_capacity(hi - lo);
        let mut active = 0usize;
        let mut scale: f64 = 0.0;
        for k in lo..hi {
            let h = self.smoothing_lengths[k];
            let d = x - self.positions[k];
            let q = d.abs() / h;
            if q < support {
                let sign = if d > 0.0 {
                    1.0
                } else if d < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                w.push(self.weight.value(q));
                dw.push(self.weight.derivative(q) * sign / h);
                active += 1;
                scale = scale.max(support * h);
            } else {
                w.push(0.0);
                dw.push(0.0);
            }
        }
        let dim = self.degree + 1;
        if active < dim {
            return Err(self.ill_posed(
                x,
                format!(
                    "{active} nodes in support, degree {} needs {dim}",
                    self.degree
                ),
            ));
        }

        // Monomials of (x_k - x) / scale, stored row-major per node.
        let mut bases = vec![0.0; (hi - lo) * dim];
        for (k, p) in bases.chunks_exact_mut(dim).enumerate() {
            let t = (self.positions[lo + k] - x) / scale;
            let mut acc = 1.0;
            for pm in p.iter_mut() {
                *pm = acc;
                acc *= t;
            }
        }
        let mut moment = DMatrix::<f64>::zeros(dim, dim);
        let mut d_moment = DMatrix::<f64>::zeros(dim, dim);
        for (k, p) in bases.chunks_exact(dim).enumerate() {
            if w[k] == 0.0 && dw[k] == 0.0 {
                continue;
            }
            for r in 0..dim {
                for c in 0..dim {
                    moment[(r, c)] += w[k] * p[r] * p[c];
                    d_moment[(r, c)] += dw[k] * p[r] * p[c];
                }
            }
        }

        let chol = moment
            .cholesky()
            .ok_or_else(|| self.ill_posed(x, "moment matrix is not positive definite".into()))?;
        let diag = chol.l_dirty().diagonal();
        let (dmin, dmax) = diag
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(a, b), &d| (a.min(d), b.max(d)));
        if !(dmin * dmin > PIVOT_RATIO_FLOOR * dmax * dmax) {
            return Err(self.ill_posed(x, "moment matrix is numerically singular".into()));
        }

        let mut e0 = DVector::zeros(dim);
        e0[0] = 1.0;
        let a = chol.solve(&e0);
        let mut rhs = -(&d_moment * &a);
        if dim > 1 {
            rhs[1] += 1.0 / scale;
        }
        let b = chol.solve(&rhs);

        let mut values = Vec::with_capacity(hi - lo);
        let mut gradients = Vec::with_capacity(hi - lo);
        for (k, p) in bases.chunks_exact(dim).enumerate() {
            let pa: f64 = p.iter().zip(a.iter()).map(|(u, v)| u * v).sum();
            let pb: f64 = p.iter().zip(b.iter()).map(|(u, v)| u * v).sum();
            values.push(w[k] * pa);
            gradients.push(dw[k] * pa + w[k] * pb);
        }
        Ok(ShapeRow {
            first: lo,
            values,
            gradients,
        })
    }
}

/// Backus–Gilbert MLS shape functions reproducing polynomials of `degree`.
///
/// `volumes` are `int phi_j dx` over the node hull `[x_0, x_{N-1}]` (outside
/// it the moment matrix loses rank), by 4-point Gauss–Legendre on two panels
/// per node interval.
pub fn mls_shapes<W: WeightFunction>(
    nodes: NodeSet<'_>,
    degree: usize,
    weight: &W,
) -> Result<ShapeTable> {
    let eval = MlsEvaluator::new(nodes, degree, weight)?;
    let x = nodes.positions();
    let n = x.len();

    let rows = x
        .par_iter()
        .map(|&xi| eval.evaluate(xi))
        .collect::<Result<Vec<_>>>()?;

    let panels = (0..n.saturating_sub(1))
        .into_par_iter()
        .map(|k| {
            let mid = 0.5 * (x[k] + x[k + 1]);
            let mut out = Vec::with_capacity(8);
            for (a, b) in [(x[k], mid), (mid, x[k + 1])] {
                for (xq, wq) in gl4_panel(a, b) {
                    out.push((eval.evaluate(xq)?, wq));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut volumes = vec![0.0; n];
    for (row, wq) in panels.iter().flatten() {
        for (j, phi, _) in row.entries() {
            volumes[j] += wq * phi;
        }
    }

    Ok(ShapeTable::from_parts(Backend::Mls, rows, volumes))
}

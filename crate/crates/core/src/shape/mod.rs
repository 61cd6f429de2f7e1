//! Partition-of-unity shape functions evaluated on a particle configuration.
//!
//! Every backend produces a [`ShapeTable`]: the values `phi_j(x_i)`, the
//! gradients `phi_j'(x_i)` and the integrals `int phi_j dx` for the current
//! node positions. Rows are stored as dense bands because in 1D every
//! support is an interval and the nodes are sorted.

mod bspline;
mod mls;
mod sph;

pub use bspline::{bspline_shapes, BsplineBasis};
pub use mls::{mls_shapes, MlsEvaluator, ScaledWeight, WeightFunction};
pub use sph::sph_shapes;

pub(crate) use sph::sph_pair_gradient;

use crate::error::{Error, Result};

/// Which construction produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// `(m_j / rho_j) W(|x_i - x_j|, h_i)`; not a partition of unity.
    Sph,
    /// Backus–Gilbert moving least squares.
    Mls,
    /// Cubic B-splines on the node knots (discrete bi-Laplacian of `|x|^3`).
    Bspline,
}

/// Sorted node positions with per-node smoothing lengths.
#[derive(Debug, Clone, Copy)]
pub struct NodeSet<'a> {
    positions: &'a [f64],
    smoothing_lengths: &'a [f64],
}

impl<'a> NodeSet<'a> {
    /// Validates strict ordering and, when `smoothing_lengths` is non-empty,
    /// that there is one positive length per node.
    pub fn new(positions: &'a [f64], smoothing_lengths: &'a [f64]) -> Result<Self> {
        if let Some(k) = positions.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::Domain(format!(
                "node positions must be strictly increasing (nodes {} and {}: {} >= {})",
                k,
                k + 1,
                positions[k],
                positions[k + 1]
            )));
        }
        if !smoothing_lengths.is_empty() {
            if smoothing_lengths.len() != positions.len() {
                return Err(Error::Usage(format!(
                    "{} smoothing lengths for {} nodes",
                    smoothing_lengths.len(),
                    positions.len()
                )));
            }
            if let Some(k) = smoothing_lengths.iter().position(|&h| !(h > 0.0)) {
                return Err(Error::Domain(format!(
                    "smoothing length of node {k} must be positive, got {}",
                    smoothing_lengths[k]
                )));
            }
        }
        Ok(NodeSet {
            positions,
            smoothing_lengths,
        })
    }

    /// Nodes without smoothing lengths (B-spline backend).
    pub fn positions_only(positions: &'a [f64]) -> Result<Self> {
        Self::new(positions, &[])
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &'a [f64] {
        self.positions
    }

    pub fn smoothing_lengths(&self) -> &'a [f64] {
        self.smoothing_lengths
    }

    pub(crate) fn require_smoothing_lengths(&self) -> Result<&'a [f64]> {
        if self.smoothing_lengths.len() == self.positions.len() {
            Ok(self.smoothing_lengths)
        } else {
            Err(Error::Usage(
                "this backend needs one smoothing length per node".into(),
            ))
        }
    }
}

/// One row of a table: the band of columns `first..first + values.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeRow {
    pub first: usize,
    pub values: Vec<f64>,
    pub gradients: Vec<f64>,
}

impl ShapeRow {
    pub fn columns(&self) -> std::ops::Range<usize> {
        self.first..self.first + self.values.len()
    }

    /// `(j, phi_j(x_i), phi_j'(x_i))` over the stored band.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.values
            .iter()
            .zip(&self.gradients)
            .enumerate()
            .map(move |(k, (&v, &g))| (self.first + k, v, g))
    }
}

/// Shape values, gradients and integrals for one particle configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeTable {
    backend: Backend,
    rows: Vec<ShapeRow>,
    volumes: Vec<f64>,
}

impl ShapeTable {
    pub(crate) fn from_parts(backend: Backend, rows: Vec<ShapeRow>, volumes: Vec<f64>) -> Self {
        debug_assert_eq!(rows.len(), volumes.len());
        ShapeTable {
            backend,
            rows,
            volumes,
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &ShapeRow {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[ShapeRow] {
        &self.rows
    }

    /// `phi_j(x_i)`; zero outside the stored band.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        let row = &self.rows[i];
        j.checked_sub(row.first)
            .and_then(|k| row.values.get(k).copied())
            .unwrap_or(0.0)
    }

    /// `phi_j'(x_i)`; zero outside the stored band.
    pub fn gradient(&self, i: usize, j: usize) -> f64 {
        let row = &self.rows[i];
        j.checked_sub(row.first)
            .and_then(|k| row.gradients.get(k).copied())
            .unwrap_or(0.0)
    }

    /// `int phi_j dx` per node.
    pub fn volumes(&self) -> &[f64] {
        &self.volumes
    }

    /// Dense copy of the value table, `[i][j]`.
    pub fn dense_values(&self) -> Vec<Vec<f64>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.value(i, j)).collect())
            .collect()
    }

    /// Dense copy of the gradient table, `[i][j]`.
    pub fn dense_gradients(&self) -> Vec<Vec<f64>> {
        (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.gradient(i, j)).collect())
            .collect()
    }

    /// `sum_j f(x_j) phi_j(x_i)` for row `i`.
    pub fn quasi_interpolate(&self, nodal_values: &[f64], i: usize) -> Result<f64> {
        if nodal_values.len() != self.len() {
            return Err(Error::Usage(format!(
                "{} nodal values for a table of {} nodes",
                nodal_values.len(),
                self.len()
            )));
        }
        if i >= self.len() {
            return Err(Error::Usage(format!(
                "row {i} out of range for {} nodes",
                self.len()
            )));
        }
        Ok(self.rows[i]
            .entries()
            .map(|(j, phi, _)| nodal_values[j] * phi)
            .sum())
    }

    /// Largest `|sum_j phi_j(x_i) - 1|` over all rows.
    pub fn partition_of_unity_defect(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.values.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// `sum_j f(x_j) phi_j(x_i)` for row `i` of `table`.
pub fn quasi_interpolate(table: &ShapeTable, nodal_values: &[f64], i: usize) -> Result<f64> {
    table.quasi_interpolate(nodal_values, i)
}

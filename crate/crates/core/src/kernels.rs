//! Univariate kernels: the 1D cubic spline SPH kernel and the C4 Wendland weight.
//!
//! The cubic spline is normalized to unit integral in one dimension
//! (`sigma = 2 / (3h)`) and has support `2h`. The Wendland function is left
//! unnormalized with support `[0, 1]` in its scaled argument; MLS shape
//! functions do not depend on the weight's scale.

use crate::error::{Error, Result};

/// Which univariate kernel a shape-function backend uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    CubicSpline,
    WendlandC4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    /// Support radius measured in smoothing lengths.
    pub support_radius_in_h: f64,
}

impl KernelSpec {
    pub const CUBIC_SPLINE: KernelSpec = KernelSpec {
        kind: KernelKind::CubicSpline,
        support_radius_in_h: 2.0,
    };

    pub const WENDLAND_C4: KernelSpec = KernelSpec {
        kind: KernelKind::WendlandC4,
        support_radius_in_h: 1.0,
    };

    pub fn name(&self) -> &'static str {
        match self.kind {
            KernelKind::CubicSpline => "cubic_spline",
            KernelKind::WendlandC4 => "wendland_c4 (1-q)^5_+ (8q^2+5q+1)",
        }
    }
}

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "smoothing length must be positive, got {h}"
        )))
    }
}

fn check_q(q: f64) -> Result<()> {
    if q >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "scaled distance must be nonnegative, got {q}"
        )))
    }
}

/// Cubic spline kernel `W(r, h)` in 1D.
pub fn cubic_spline_w(r: f64, h: f64) -> Result<f64> {
    check_h(h)?;
    Ok(cubic_spline_w_unchecked(r.abs(), h))
}

/// Radial derivative `dW/dr` of the 1D cubic spline kernel.
pub fn cubic_spline_dw(r: f64, h: f64) -> Result<f64> {
    check_h(h)?;
    Ok(cubic_spline_dw_unchecked(r.abs(), h))
}

#[inline]
pub(crate) fn cubic_spline_w_unchecked(r: f64, h: f64) -> f64 {
    let sigma = 2.0 / (3.0 * h);
    let q = r / h;
    if q < 1.0 {
        sigma * (1.0 - 1.5 * q * q + 0.75 * q * q * q)
    } else if q < 2.0 {
        let t = 2.0 - q;
        sigma * 0.25 * t * t * t
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn cubic_spline_dw_unchecked(r: f64, h: f64) -> f64 {
    let sigma = 2.0 / (3.0 * h);
    let q = r / h;
    if q < 1.0 {
        sigma / h * (-3.0 * q + 2.25 * q * q)
    } else if q < 2.0 {
        let t = 2.0 - q;
        -sigma / h * 0.75 * t * t
    } else {
        0.0
    }
}

/// 1D C4 Wendland function `(1 - q)^5_+ (8q^2 + 5q + 1)`.
pub fn wendland_c4(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(wendland_c4_unchecked(q))
}

/// Derivative of [`wendland_c4`] with respect to `q`: `-14 q (4q + 1)(1 - q)^4_+`.
pub fn wendland_c4_d(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(wendland_c4_d_unchecked(q))
}

#[inline]
pub(crate) fn wendland_c4_unchecked(q: f64) -> f64 {
    if q >= 1.0 {
        return 0.0;
    }
    let t = 1.0 - q;
    let t2 = t * t;
    t2 * t2 * t * (8.0 * q * q + 5.0 * q + 1.0)
}

#[inline]
pub(crate) fn wendland_c4_d_unchecked(q: f64) -> f64 {
    if q >= 1.0 {
        return 0.0;
    }
    let t = 1.0 - q;
    let t2 = t * t;
    -14.0 * q * (4.0 * q + 1.0) * t2 * t2
}

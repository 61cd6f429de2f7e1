//! Independent exact solution of the Sod shock tube, used as a test oracle.
//!
//! The star pressure comes from plain bisection on the classical pressure
//! function; the profile is assembled from the closed-form rarefaction fan
//! and shock relations. Nothing here calls into the crate's own solver.

#![allow(dead_code)]

pub const GAMMA: f64 = 1.4;
pub const LEFT: (f64, f64, f64) = (1.0, 1.0, 0.0);
pub const RIGHT: (f64, f64, f64) = (0.1, 0.125, 0.0);

/// Sod star state and wave speeds for `(P, rho, v)` data with a left
/// rarefaction and a right shock.
#[derive(Debug, Clone, Copy)]
pub struct Sod {
    pub p_star: f64,
    pub v_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub head: f64,
    pub tail: f64,
    pub shock: f64,
}

fn branch(p: f64, (pk, rk, _): (f64, f64, f64)) -> f64 {
    let g = GAMMA;
    if p > pk {
        let a = 2.0 / ((g + 1.0) * rk);
        let b = (g - 1.0) / (g + 1.0) * pk;
        (p - pk) * (a / (p + b)).sqrt()
    } else {
        let c = (g * pk / rk).sqrt();
        2.0 * c / (g - 1.0) * ((p / pk).powf((g - 1.0) / (2.0 * g)) - 1.0)
    }
}

/// `f_L(p) + f_R(p) + v_R - v_L`.
pub fn pressure_function(p: f64) -> f64 {
    branch(p, LEFT) + branch(p, RIGHT) + RIGHT.2 - LEFT.2
}

pub fn bisect_star_pressure() -> f64 {
    let (mut lo, mut hi) = (1e-10, 10.0);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if pressure_function(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn sod() -> Sod {
    let g = GAMMA;
    let p = bisect_star_pressure();
    let (pl, rl, vl) = LEFT;
    let (pr, rr, vr) = RIGHT;
    let v = 0.5 * (vl + vr) + 0.5 * (branch(p, RIGHT) - branch(p, LEFT));
    let cl = (g * pl / rl).sqrt();
    let cr = (g * pr / rr).sqrt();
    let rho_star_left = rl * (p / pl).powf(1.0 / g);
    let c_star = (g * p / rho_star_left).sqrt();
    let k = (g - 1.0) / (g + 1.0);
    let rho_star_right = rr * (p / pr + k) / (k * p / pr + 1.0);
    let shock = vr + cr * ((g + 1.0) / (2.0 * g) * p / pr + (g - 1.0) / (2.0 * g)).sqrt();
    Sod {
        p_star: p,
        v_star: v,
        rho_star_left,
        rho_star_right,
        head: vl - cl,
        tail: v - c_star,
        shock,
    }
}

impl Sod {
    /// Exact `(P, rho, v)` at `x` and `t > 0`, diaphragm at 0.
    pub fn at(&self, x: f64, t: f64) -> (f64, f64, f64) {
        let g = GAMMA;
        let xi = x / t;
        let (pl, rl, vl) = LEFT;
        if xi < self.head {
            return LEFT;
        }
        if xi < self.tail {
            let cl = (g * pl / rl).sqrt();
            let c = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * (vl - xi));
            let v = 2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * vl + xi);
            let rho = rl * (c / cl).powf(2.0 / (g - 1.0));
            let p = pl * (c / cl).powf(2.0 * g / (g - 1.0));
            return (p, rho, v);
        }
        if xi < self.v_star {
            return (self.p_star, self.rho_star_left, self.v_star);
        }
        if xi < self.shock {
            return (self.p_star, self.rho_star_right, self.v_star);
        }
        RIGHT
    }

    /// Wave positions at `t`: rarefaction head and tail, contact, shock.
    pub fn waves(&self, t: f64) -> [f64; 4] {
        [
            self.head * t,
            self.tail * t,
            self.v_star * t,
            self.shock * t,
        ]
    }

    /// Smooth-region mask: false within `buffer` local spacings of any wave,
    /// where the spacing is `m / rho` on the denser-spaced (lower-density) side.
    pub fn smooth_mask(&self, xs: &[f64], t: f64, mass: f64, buffer: f64) -> Vec<bool> {
        let bands: Vec<(f64, f64)> = self
            .waves(t)
            .iter()
            .map(|&w| {
                let rho_lo = self.at(w - 1e-9, t).1.min(self.at(w + 1e-9, t).1);
                let r = buffer * mass / rho_lo;
                (w - r, w + r)
            })
            .collect();
        xs.iter()
            .map(|&x| !bands.iter().any(|&(a, b)| x > a && x < b))
            .collect()
    }
}

/// Least-squares slope of `log e` against `log n`, negated.
pub fn fitted_order(sizes: &[usize], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    -num / den
}

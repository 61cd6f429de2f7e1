//! Exact solution of the 1D Riemann problem for an ideal gas.
//!
//! The star pressure is the root of `f_L(p) + f_R(p) + (v_R - v_L) = 0`, where
//! `f_K` is the shock (Rankine–Hugoniot) branch for `p > P_K` and the
//! isentropic rarefaction branch otherwise. `f_L + f_R` is increasing and
//! concave in `p`, so a Newton iteration kept inside a shrinking bisection
//! bracket converges from any starting guess.

use std::path::Path;

use crate::error::{Error, Result};
use crate::fluid::{snapshot_csv, Eos, SnapshotRow};

/// Primitive state on one side of the diaphragm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannState {
    pub p: f64,
    pub rho: f64,
    pub v: f64,
}

impl RiemannState {
    pub const SOD_LEFT: RiemannState = RiemannState {
        p: 1.0,
        rho: 1.0,
        v: 0.0,
    };
    pub const SOD_RIGHT: RiemannState = RiemannState {
        p: 0.1,
        rho: 0.125,
        v: 0.0,
    };

    pub fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }

    fn validate(&self, side: &str) -> Result<()> {
        if self.p > 0.0 && self.rho > 0.0 && self.v.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{side} state must have positive P and rho: {self:?}"
            )))
        }
    }
}

/// Wave bounding the star region on one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wave {
    /// Rarefaction fan between `head` and `tail` speeds.
    Rarefaction {
        head: f64,
        tail: f64,
    },
    Shock {
        speed: f64,
    },
}

impl Wave {
    /// `(outer, inner)` speeds; equal for a shock.
    pub fn speeds(&self) -> (f64, f64) {
        match *self {
            Wave::Rarefaction { head, tail } => (head, tail),
            Wave::Shock { speed } => (speed, speed),
        }
    }
}

/// Exact self-similar solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub left: RiemannState,
    pub right: RiemannState,
    pub gamma: f64,
    pub p_star: f64,
    pub v_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
}

/// Wave positions at time `t` from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePositions {
    /// Outer edge of the left wave (rarefaction head or shock).
    pub left_outer: f64,
    /// Inner edge of the left wave (rarefaction tail or shock).
    pub left_inner: f64,
    pub contact: f64,
    pub right_inner: f64,
    pub right_outer: f64,
}

impl WavePositions {
    pub fn all(&self) -> [f64; 5] {
        [
            self.left_outer,
            self.left_inner,
            self.contact,
            self.right_inner,
            self.right_outer,
        ]
    }
}

fn branch(p: f64, side: &RiemannState, gamma: f64) -> (f64, f64) {
    let c = side.sound_speed(gamma);
    if p > side.p {
        let a = 2.0 / ((gamma + 1.0) * side.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * side.p;
        let s = (a / (p + b)).sqrt();
        let f = (p - side.p) * s;
        let df = s * (1.0 - 0.5 * (p - side.p) / (p + b));
        (f, df)
    } else {
        let ex = (gamma - 1.0) / (2.0 * gamma);
        let ratio = p / side.p;
        let f = 2.0 * c / (gamma - 1.0) * (ratio.powf(ex) - 1.0);
        let df = ratio.powf(-(gamma + 1.0) / (2.0 * gamma)) / (side.rho * c);
        (f, df)
    }
}

/// `f_L(p) + f_R(p) + (v_R - v_L)`; zero at the star pressure.
pub fn pressure_function(p: f64, left: &RiemannState, right: &RiemannState, gamma: f64) -> f64 {
    branch(p, left, gamma).0 + branch(p, right, gamma).0 + (right.v - left.v)
}

fn star_density(p_star: f64, side: &RiemannState, gamma: f64) -> f64 {
    if p_star > side.p {
        let r = p_star / side.p;
        let g = (gamma - 1.0) / (gamma + 1.0);
        side.rho * (r + g) / (g * r + 1.0)
    } else {
        side.rho * (p_star / side.p).powf(1.0 / gamma)
    }
}

/// Solves the Riemann problem between `left` and `right`.
pub fn solve_riemann(
    left: RiemannState,
    right: RiemannState,
    gamma: f64,
) -> Result<RiemannSolution> {
    left.validate("left")?;
    right.validate("right")?;
    Eos::new(gamma)?;
    let cl = left.sound_speed(gamma);
    let cr = right.sound_speed(gamma);
    let deficit = 2.0 / (gamma - 1.0) * (cl + cr) - (right.v - left.v);
    if deficit <= 0.0 {
        return Err(Error::Vacuum { deficit });
    }

    let g = |p: f64| pressure_function(p, &left, &right, gamma);
    // g(0+) < 0 since no vacuum; grow the upper end until g > 0.
    let mut lo = 0.0;
    let mut hi = left.p.max(right.p);
    while g(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    let mut p = 0.5 * (left.p + right.p).min(hi);
    if !(p > lo && p < hi) {
        p = 0.5 * (lo + hi);
    }
    for _ in 0..200 {
        let (fl, dl) = branch(p, &left, gamma);
        let (fr, dr) = branch(p, &right, gamma);
        let val = fl + fr + (right.v - left.v);
        if val == 0.0 {
            break;
        }
        if val < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let newton = p - val / (dl + dr);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - p).abs();
        p = next;
        if step <= 1e-14 * p.max(1e-300) || hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let p_star = p;
    let (fl, _) = branch(p_star, &left, gamma);
    let (fr, _) = branch(p_star, &right, gamma);
    let v_star = 0.5 * (left.v + right.v) + 0.5 * (fr - fl);

    let rho_star_left = star_density(p_star, &left, gamma);
    let rho_star_right = star_density(p_star, &right, gamma);

    let left_wave = if p_star > left.p {
        let speed = left.v
            - cl * ((gamma + 1.0) / (2.0 * gamma) * p_star / left.p
                + (gamma - 1.0) / (2.0 * gamma))
                .sqrt();
        Wave::Shock { speed }
    } else {
        let c_star = cl * (p_star / left.p).powf((gamma - 1.0) / (2.0 * gamma));
        Wave::Rarefaction {
            head: left.v - cl,
            tail: v_star - c_star,
        }
    };
    let right_wave = if p_star > right.p {
        let speed = right.v
            + cr * ((gamma + 1.0) / (2.0 * gamma) * p_star / right.p
                + (gamma - 1.0) / (2.0 * gamma))
                .sqrt();
        Wave::Shock { speed }
    } else {
        let c_star = cr * (p_star / right.p).powf((gamma - 1.0) / (2.0 * gamma));
        Wave::Rarefaction {
            head: right.v + cr,
            tail: v_star + c_star,
        }
    };

    Ok(RiemannSolution {
        left,
        right,
        gamma,
        p_star,
        v_star,
        rho_star_left,
        rho_star_right,
        left_wave,
        right_wave,
    })
}

impl RiemannSolution {
    /// Residual of the pressure equation at `p_star`.
    pub fn residual(&self) -> f64 {
        pressure_function(self.p_star, &self.left, &self.right, self.gamma)
    }

    /// State at similarity coordinate `xi = x / t`.
    pub fn sample(&self, xi: f64) -> RiemannState {
        let gamma = self.gamma;
        let g1 = (gamma - 1.0) / (gamma + 1.0);
        if xi <= self.v_star {
            match self.left_wave {
                Wave::Shock { speed } => {
                    if xi <= speed {
                        self.left
                    } else {
                        RiemannState {
                            p: self.p_star,
                            rho: self.rho_star_left,
                            v: self.v_star,
                        }
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi <= head {
                        self.left
                    } else if xi >= tail {
                        RiemannState {
                            p: self.p_star,
                            rho: self.rho_star_left,
                            v: self.v_star,
                        }
                    } else {
                        let cl = self.left.sound_speed(gamma);
                        let base = 2.0 / (gamma + 1.0) + g1 / cl * (self.left.v - xi);
                        let rho = self.left.rho * base.powf(2.0 / (gamma - 1.0));
                        let v = 2.0 / (gamma + 1.0) * (cl + 0.5 * (gamma - 1.0) * self.left.v + xi);
                        let p = self.left.p * base.powf(2.0 * gamma / (gamma - 1.0));
                        RiemannState { p, rho, v }
                    }
                }
            }
        } else {
            match self.right_wave {
                Wave::Shock { speed } => {
                    if xi >= speed {
                        self.right
                    } else {
                        RiemannState {
                            p: self.p_star,
                            rho: self.rho_star_right,
                            v: self.v_star,
                        }
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi >= head {
                        self.right
                    } else if xi <= tail {
                        RiemannState {
                            p: self.p_star,
                            rho: self.rho_star_right,
                            v: self.v_star,
                        }
                    } else {
                        let cr = self.right.sound_speed(gamma);
                        let base = 2.0 / (gamma + 1.0) - g1 / cr * (self.right.v - xi);
                        let rho = self.right.rho * base.powf(2.0 / (gamma - 1.0));
                        let v =
                            2.0 / (gamma + 1.0) * (-cr + 0.5 * (gamma - 1.0) * self.right.v + xi);
                        let p = self.right.p * base.powf(2.0 * gamma / (gamma - 1.0));
                        RiemannState { p, rho, v }
                    }
                }
            }
        }
    }

    /// State at position `x` (diaphragm at `x0`) and time `t > 0`.
    pub fn sample_at(&self, x: f64, x0: f64, t: f64) -> RiemannState {
        self.sample((x - x0) / t)
    }

    pub fn wave_positions(&self, t: f64) -> WavePositions {
        let (lo, li) = self.left_wave.speeds();
        let (ro, ri) = self.right_wave.speeds();
        WavePositions {
            left_outer: lo * t,
            left_inner: li * t,
            contact: self.v_star * t,
            right_inner: ri * t,
            right_outer: ro * t,
        }
    }

    /// Reference profile rows (`h` and `V` columns are zero) at `samples`
    /// evenly spaced points of `[x_min, x_max]`.
    pub fn profile(&self, t: f64, x_min: f64, x_max: f64, samples: usize) -> Vec<SnapshotRow> {
        let eos = Eos::new(self.gamma).expect("gamma validated at solve time");
        let samples = samples.max(2);
        (0..samples)
            .map(|k| {
                let x = x_min + (x_max - x_min) * k as f64 / (samples - 1) as f64;
                let s = self.sample_at(x, 0.0, t);
                SnapshotRow {
                    x,
                    rho: s.rho,
                    v: s.v,
                    p: s.p,
                    e: eos.specific_energy(s.rho, s.p),
                    h: 0.0,
                    vol: 0.0,
                }
            })
            .collect()
    }

    pub fn write_profile_csv(
        &self,
        path: &Path,
        t: f64,
        x_min: f64,
        x_max: f64,
        samples: usize,
    ) -> Result<()> {
        let text = snapshot_csv(&self.profile(t, x_min, x_max, samples));
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

/// Wave positions `(head, tail, contact, shock)` for a left-rarefaction / right-shock problem.
pub fn wave_positions(solution: &RiemannSolution, t: f64) -> WavePositions {
    solution.wave_positions(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA: f64 = 1.4;

    fn sod() -> RiemannSolution {
        solve_riemann(RiemannState::SOD_LEFT, RiemannState::SOD_RIGHT, GAMMA).unwrap()
    }

    /// Plain bisection on the pressure function, independent of the Newton path.
    fn bisection_star_pressure(left: &RiemannState, right: &RiemannState) -> f64 {
        let (mut lo, mut hi) = (1e-12, 10.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if pressure_function(mid, left, right, GAMMA) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn sod_star_state() {
        let s = sod();
        let p_bis = bisection_star_pressure(&s.left, &s.right);
        assert!((s.p_star - p_bis).abs() < 1e-12);
        assert!(s.residual().abs() <= 1e-12);
        assert!((s.p_star - 0.30313).abs() < 1e-5);
        assert!((s.v_star - 0.92745).abs() < 1e-5);
        assert!((s.rho_star_left - 0.42632).abs() < 1e-5);
        assert!((s.rho_star_right - 0.26557).abs() < 1e-5);
        assert!(matches!(s.left_wave, Wave::Rarefaction { .. }));
        assert!(matches!(s.right_wave, Wave::Shock { .. }));
    }

    #[test]
    fn identical_states() {
        let st = RiemannState {
            p: 0.7,
            rho: 0.9,
            v: 0.2,
        };
        let s = solve_riemann(st, st, GAMMA).unwrap();
        assert!((s.p_star - 0.7).abs() < 1e-12);
        assert!((s.v_star - 0.2).abs() < 1e-12);
        assert!((s.sample(-5.0).rho - 0.9).abs() < 1e-12);
        assert!((s.sample(0.5).rho - 0.9).abs() < 1e-12);
    }

    #[test]
    fn mirror_symmetry() {
        let flip = |s: RiemannState| RiemannState { v: -s.v, ..s };
        let a = sod();
        let b = solve_riemann(
            flip(RiemannState::SOD_RIGHT),
            flip(RiemannState::SOD_LEFT),
            GAMMA,
        )
        .unwrap();
        assert!((a.p_star - b.p_star).abs() < 1e-13);
        assert!((a.v_star + b.v_star).abs() < 1e-13);
        for &xi in &[-1.5, -0.8, -0.3, 0.1, 0.9, 1.6] {
            let l = a.sample(xi);
            let r = b.sample(-xi);
            assert!(
                (l.rho - r.rho).abs() < 1e-12
                    && (l.p - r.p).abs() < 1e-12
                    && (l.v + r.v).abs() < 1e-12
            );
        }
    }

    #[test]
    fn far_field() {
        let s = sod();
        assert_eq!(s.sample(-1e6), RiemannState::SOD_LEFT);
        assert_eq!(s.sample(1e6), RiemannState::SOD_RIGHT);
    }

    #[test]
    fn rankine_hugoniot_at_shock() {
        let s = sod();
        let Wave::Shock { speed } = s.right_wave else {
            panic!("expected shock")
        };
        let pre = s.sample(speed + 1e-9);
        let post = s.sample(speed - 1e-9);
        let e = |st: &RiemannState| st.p / ((GAMMA - 1.0) * st.rho) + 0.5 * st.v * st.v;
        let mass = |st: &RiemannState| st.rho * (st.v - speed);
        let mom = |st: &RiemannState| st.rho * st.v * (st.v - speed) + st.p;
        let en = |st: &RiemannState| st.rho * e(st) * (st.v - speed) + st.p * st.v;
        assert!((mass(&pre) - mass(&post)).abs() < 1e-8);
        assert!((mom(&pre) - mom(&post)).abs() < 1e-8);
        assert!((en(&pre) - en(&post)).abs() < 1e-8);
        // Lax entropy: characteristics run into the shock.
        let c = |st: &RiemannState| st.sound_speed(GAMMA);
        assert!(post.v + c(&post) > speed && speed > pre.v + c(&pre));
    }

    #[test]
    fn fan_is_continuous() {
        let s = sod();
        let Wave::Rarefaction { head, tail } = s.left_wave else {
            panic!()
        };
        for xi in [head, tail] {
            let a = s.sample(xi - 1e-10);
            let b = s.sample(xi + 1e-10);
            assert!(
                (a.rho - b.rho).abs() < 1e-8
                    && (a.p - b.p).abs() < 1e-8
                    && (a.v - b.v).abs() < 1e-8
            );
        }
    }

    #[test]
    fn sod_wave_positions() {
        let s = sod();
        let w = wave_positions(&s, 0.2);
        assert!((w.left_outer + 1.4f64.sqrt() * 0.2).abs() < 1e-12);
        assert!((w.left_outer + 0.2366).abs() < 1e-4);
        assert!((w.contact - 0.1855).abs() < 1e-4);
        assert!(w.right_outer > w.contact);
        let z = s.wave_positions(0.0);
        assert!(z.all().iter().all(|&p| p == 0.0));
    }

    #[test]
    fn vacuum_is_reported() {
        let l = RiemannState {
            p: 0.1,
            rho: 1.0,
            v: -5.0,
        };
        let r = RiemannState {
            p: 0.1,
            rho: 1.0,
            v: 5.0,
        };
        assert!(matches!(
            solve_riemann(l, r, GAMMA),
            Err(Error::Vacuum { .. })
        ));
    }
}

//! Predictor–corrector time stepping.
//!
//! One step: derivatives at the current state, an Euler predictor, a fresh
//! shape table at the predicted positions, and a trapezoidal corrector
//! (Heun's method, second order). Positions follow `dx/dt = v`. After each
//! accepted step the volumes are compared with the shape integrals and
//! resynchronised where they drift apart.

use crate::dynamics::{assemble, neighbor_pairs, Derivatives};
use crate::error::{Error, Result};
use crate::fluid::{Eos, ParticleSystem};
use crate::scheme::{SchemeConfig, SchemeKind};
use crate::shape::ShapeTable;

/// Time-stepping parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControls {
    pub cfl: f64,
    /// Relative `|V - int phi| / V` at which a volume is replaced.
    pub resync_tolerance: f64,
    /// `false` disables the volume check entirely.
    pub resync: bool,
    pub t_end: f64,
    pub max_steps: usize,
    /// Halvings of `dt` tried before a step is abandoned.
    pub max_retries: usize,
    /// Use this step instead of the CFL estimate.
    pub fixed_dt: Option<f64>,
}

impl Default for StepControls {
    fn default() -> Self {
        StepControls {
            cfl: 0.3,
            resync_tolerance: 1.0e-3,
            resync: true,
            t_end: 0.2,
            max_steps: 1_000_000,
            max_retries: 8,
            fixed_dt: None,
        }
    }
}

impl StepControls {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::Config(format!(
                "cfl must lie in (0, 1), got {}",
                self.cfl
            )));
        }
        if !(self.resync_tolerance > 0.0) {
            return Err(Error::Config(format!(
                "resync tolerance must be positive, got {}",
                self.resync_tolerance
            )));
        }
        if !(self.t_end > 0.0) {
            return Err(Error::Config(format!(
                "t_end must be positive, got {}",
                self.t_end
            )));
        }
        if let Some(dt) = self.fixed_dt {
            if !(dt > 0.0) {
                return Err(Error::Config(format!(
                    "fixed dt must be positive, got {dt}"
                )));
            }
        }
        Ok(())
    }
}

/// Diagnostics for one accepted step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    pub retries: usize,
    pub resyncs: usize,
    pub momentum: f64,
    pub energy: f64,
}

impl StepReport {
    /// One plain-text log line.
    pub fn log_line(&self) -> String {
        format!(
            "step {} t {:.10e} dt {:.6e} retries {} resyncs {} momentum {:.10e} energy {:.15e}",
            self.step, self.t, self.dt, self.retries, self.resyncs, self.momentum, self.energy
        )
    }
}

/// CFL timestep `cfl * min_i l_i / (c_i + max_j 3 |v_i - v_j|)` over interacting pairs.
///
/// `l_i` is `h_i` for the kernel and MLS backends and `V_i` for B-splines.
pub fn timestep(
    state: &ParticleSystem,
    table: &ShapeTable,
    scheme: &SchemeConfig,
    eos: &Eos,
    cfl: f64,
) -> Result<f64> {
    let sound = state.sound_speeds(eos)?;
    let mut margin = vec![0.0f64; state.len()];
    for p in neighbor_pairs(table) {
        let s = 3.0 * (state.v[p.i] - state.v[p.j]).abs();
        margin[p.i] = margin[p.i].max(s);
        margin[p.j] = margin[p.j].max(s);
    }
    let dt = (0..state.len())
        .map(|i| scheme.resolution_length(state, i) / (sound[i] + margin[i]))
        .fold(f64::INFINITY, f64::min);
    Ok(cfl * dt)
}

/// Smoothing-length rate: `2 dV/dt` (MLS), `-(2 m / rho^2) drho/dt` (SPH), zero for B-splines.
pub fn update_h(
    state: &ParticleSystem,
    scheme: &SchemeConfig,
    drho_dt: &[f64],
    dvol_dt: &[f64],
) -> Vec<f64> {
    (0..state.len())
        .map(|i| match scheme.kind {
            SchemeKind::Mls => scheme.h_factor * dvol_dt[i],
            SchemeKind::Sph => {
                -(scheme.h_factor * state.m[i] / (state.rho[i] * state.rho[i])) * drho_dt[i]
            }
            SchemeKind::Rbf => 0.0,
        })
        .collect()
}

/// Replaces `V_i` by `int phi_i dx` (and `rho_i` by `m_i / V_i`) wherever
/// they differ by at least `tolerance` relative to `V_i`. Fixed particles are
/// skipped and `h` is left to its own rate equation. Returns the number of
/// particles updated.
pub fn volume_resync(
    state: &mut ParticleSystem,
    table: &ShapeTable,
    tolerance: f64,
) -> Result<usize> {
    if table.len() != state.len() {
        return Err(Error::Usage(format!(
            "shape table has {} rows for {} particles",
            table.len(),
            state.len()
        )));
    }
    let mut count = 0;
    for (i, &integral) in table.volumes().iter().enumerate() {
        if state.fixed[i] {
            continue;
        }
        if !(integral > 0.0) {
            return Err(Error::IllPosedGeometry {
                node: i,
                reason: format!("shape integral {integral} is not positive"),
            });
        }
        if (state.vol[i] - integral).abs() / state.vol[i] >= tolerance {
            state.set_volume(i, integral);
            count += 1;
        }
    }
    Ok(count)
}

fn advance(
    state: &ParticleSystem,
    rates: &[(&Derivatives, &[f64], f64)],
    scheme: &SchemeConfig,
) -> ParticleSystem {
    let mut out = state.clone();
    for i in 0..state.len() {
        let mut x = state.x[i];
        let mut v = state.v[i];
        let mut vol = state.vol[i];
        let mut rho = state.rho[i];
        let mut e = state.e[i];
        let mut h = state.h[i];
        let mut alpha = state.alpha[i];
        for &(d, vel, w) in rates {
            x += w * vel[i];
            v += w * d.dv_dt[i];
            vol += w * d.dvol_dt[i];
            rho += w * d.drho_dt[i];
            e += w * d.de_dt[i];
            h += w * d.dh_dt[i];
            alpha += w * d.dalpha_dt[i];
        }
        out.x[i] = x;
        out.v[i] = v;
        out.e[i] = e;
        out.h[i] = h;
        out.alpha[i] = alpha;
        if scheme.evolves_volume() {
            out.set_volume(i, vol);
        } else {
            out.set_density(i, rho);
        }
    }
    out
}

fn admissible(state: &ParticleSystem) -> std::result::Result<(), String> {
    for i in 0..state.len() {
        if !(state.vol[i] > 0.0 && state.e[i] > 0.0 && state.h[i] > 0.0) {
            return Err(format!(
                "particle {i}: V = {:.3e}, e = {:.3e}, h = {:.3e}",
                state.vol[i], state.e[i], state.h[i]
            ));
        }
        if !state.v[i].is_finite() || !state.x[i].is_finite() {
            return Err(format!("particle {i}: non-finite position or velocity"));
        }
    }
    Ok(())
}

/// Sorted copy of `state` with the permutation used, or an error when two
/// particles share a position.
fn sorted(
    state: &ParticleSystem,
) -> std::result::Result<(ParticleSystem, Option<Vec<usize>>), String> {
    let mut out = state.clone();
    let order = out.sorting_order();
    if let Some(o) = &order {
        out.permute(o);
    }
    if let Some(k) = out.x.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(format!(
            "particles {k} and {} coincide at x = {:.6e}",
            k + 1,
            out.x[k]
        ));
    }
    Ok((out, order))
}

/// Drives a [`ParticleSystem`] with one scheme.
#[derive(Debug, Clone)]
pub struct Integrator {
    pub scheme: SchemeConfig,
    pub eos: Eos,
    pub controls: StepControls,
    t: f64,
    steps: usize,
    table: Option<ShapeTable>,
}

impl Integrator {
    pub fn new(scheme: SchemeConfig, eos: Eos, controls: StepControls) -> Result<Self> {
        controls.validate()?;
        Ok(Integrator {
            scheme,
            eos,
            controls,
            t: 0.0,
            steps: 0,
            table: None,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn finished(&self) -> bool {
        self.t >= self.controls.t_end
    }

    fn current_table(&mut self, state: &ParticleSystem) -> Result<ShapeTable> {
        match self.table.take() {
            Some(t) => Ok(t),
            None => self.scheme.build_table(state),
        }
    }

    /// Advances `state` by one accepted step (clipped at `t_end`).
    pub fn step(&mut self, state: &mut ParticleSystem) -> Result<StepReport> {
        if self.steps >= self.controls.max_steps {
            return Err(Error::StepRejected {
                step: self.steps,
                t: self.t,
                retries: 0,
                reason: format!("step limit {} reached", self.controls.max_steps),
            });
        }
        let table0 = self.current_table(state)?;
        let d0 = assemble(state, &table0, &self.scheme, &self.eos)?;
        let mut dt = match self.controls.fixed_dt {
            Some(dt) => dt,
            None => timestep(state, &table0, &self.scheme, &self.eos, self.controls.cfl)?,
        };
        if dt < 1e-12 * self.controls.t_end || !dt.is_finite() {
            return Err(Error::TimestepUnderflow { t: self.t, dt });
        }
        let remaining = self.controls.t_end - self.t;
        if dt >= remaining {
            dt = remaining;
        }

        let mut retries = 0;
        let accepted = loop {
            match self.try_step(state, &d0, dt) {
                Ok(next) => break next,
                Err(reason) => {
                    if retries >= self.controls.max_retries {
                        return Err(Error::StepRejected {
                            step: self.steps,
                            t: self.t,
                            retries,
                            reason,
                        });
                    }
                    retries += 1;
                    dt *= 0.5;
                }
            }
        };
        *state = accepted;
        if let Some(p) = self.scheme.dissipation {
            for a in &mut state.alpha {
                *a = a.clamp(p.alpha_min, p.alpha_max);
            }
        }

        self.t = if dt == remaining {
            self.controls.t_end
        } else {
            self.t + dt
        };
        self.steps += 1;

        let table1 = self.scheme.build_table(state)?;
        let resyncs = if self.controls.resync {
            volume_resync(state, &table1, self.controls.resync_tolerance)?
        } else {
            0
        };
        // The B-spline table depends on positions only.
        if resyncs == 0 || self.scheme.kind == SchemeKind::Rbf {
            self.table = Some(table1);
        }

        Ok(StepReport {
            step: self.steps,
            t: self.t,
            dt,
            retries,
            resyncs,
            momentum: state.total_momentum(),
            energy: state.total_energy(),
        })
    }

    fn try_step(
        &self,
        state: &ParticleSystem,
        d0: &Derivatives,
        dt: f64,
    ) -> std::result::Result<ParticleSystem, String> {
        let predicted = advance(state, &[(d0, &state.v, dt)], &self.scheme);
        admissible(&predicted).map_err(|e| format!("predictor: {e}"))?;
        // Rates at the predicted state are computed in sorted order and
        // mapped back onto the particle order of `state`.
        let (sorted_pred, order) = sorted(&predicted).map_err(|e| format!("predictor: {e}"))?;
        let table = self
            .scheme
            .build_table(&sorted_pred)
            .map_err(|e| e.to_string())?;
        let d1 =
            assemble(&sorted_pred, &table, &self.scheme, &self.eos).map_err(|e| e.to_string())?;
        if !d1.is_finite() {
            return Err("non-finite derivatives at predicted state".into());
        }
        let d1 = match &order {
            Some(o) => d1.unpermute(o),
            None => d1,
        };
        let corrected = advance(
            state,
            &[(d0, &state.v, 0.5 * dt), (&d1, &predicted.v, 0.5 * dt)],
            &self.scheme,
        );
        admissible(&corrected).map_err(|e| format!("corrector: {e}"))?;
        let (corrected, _) = sorted(&corrected).map_err(|e| format!("corrector: {e}"))?;
        Ok(corrected)
    }

    /// Steps until `t_end`, passing each report to `on_step`.
    pub fn run(
        &mut self,
        state: &mut ParticleSystem,
        mut on_step: impl FnMut(&StepReport, &ParticleSystem),
    ) -> Result<()> {
        while !self.finished() {
            let report = self.step(state)?;
            on_step(&report, state);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(kind: SchemeKind, n: usize, dx: f64) -> (ParticleSystem, SchemeConfig) {
        let scheme = SchemeConfig::new(kind);
        let x: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dx).collect();
        let vol = vec![dx; n];
        let h = vol
            .iter()
            .map(|&v| scheme.smoothing_length_for(v))
            .collect();
        let s =
            ParticleSystem::new(x, vec![0.0; n], vec![dx; n], vol, vec![2.5; n], h, 0.5).unwrap();
        (s, scheme)
    }

    fn controls(t_end: f64) -> StepControls {
        StepControls {
            t_end,
            ..StepControls::default()
        }
    }

    #[test]
    fn static_gas_between_walls_stays_at_rest() {
        for kind in SchemeKind::ALL {
            let (mut s, scheme) = lattice(kind, 40, 0.025);
            for k in 0..6 {
                s.fixed[k] = true;
                s.fixed[39 - k] = true;
            }
            let x0 = s.x.clone();
            let mut it = Integrator::new(scheme, Eos::default(), controls(0.05)).unwrap();
            it.run(&mut s, |_, _| {}).unwrap();
            let vmax = s.v.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            assert!(vmax < 1e-12, "{kind}: {vmax}");
            for (a, b) in s.x.iter().zip(&x0) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn uniform_translation_shifts_interior() {
        let (mut s, scheme) = lattice(SchemeKind::Rbf, 40, 0.025);
        s.v = vec![0.25; 40];
        let x0 = s.x.clone();
        let dt = 1e-3;
        let mut it = Integrator::new(
            scheme,
            Eos::default(),
            StepControls {
                fixed_dt: Some(dt),
                ..controls(dt)
            },
        )
        .unwrap();
        it.step(&mut s).unwrap();
        for ((x, x0), v) in s.x.iter().zip(&x0).zip(&s.v).take(30).skip(10) {
            assert!((x - x0 - 0.25 * dt).abs() < 1e-15);
            assert!((v - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn timestep_closed_form_and_cfl_linearity() {
        let eos = Eos::default();
        for kind in SchemeKind::ALL {
            let (s, scheme) = lattice(kind, 30, 0.02);
            let table = scheme.build_table(&s).unwrap();
            let c = eos.sound_speed(1.0, 2.5).unwrap();
            let length = if kind == SchemeKind::Rbf { 0.02 } else { 0.04 };
            let dt = timestep(&s, &table, &scheme, &eos, 0.3).unwrap();
            assert!((dt - 0.3 * length / c).abs() < 1e-15, "{kind}");
            let dt2 = timestep(&s, &table, &scheme, &eos, 0.15).unwrap();
            assert!((dt - 2.0 * dt2).abs() < 1e-15);
        }
    }

    #[test]
    fn approaching_neighbours_shrink_the_step() {
        let eos = Eos::default();
        let (mut s, scheme) = lattice(SchemeKind::Mls, 30, 0.02);
        let table = scheme.build_table(&s).unwrap();
        let still = timestep(&s, &table, &scheme, &eos, 0.3).unwrap();
        s.v[15] = 1.0;
        let moving = timestep(&s, &table, &scheme, &eos, 0.3).unwrap();
        let c = eos.sound_speed(1.0, 2.5).unwrap();
        assert!((moving - 0.3 * 0.04 / (c + 3.0)).abs() < 1e-15);
        assert!(moving < still);
    }

    #[test]
    fn smoothing_length_rates() {
        let (s, mls) = lattice(SchemeKind::Mls, 3, 0.1);
        let sph = SchemeConfig::new(SchemeKind::Sph);
        let rbf = SchemeConfig::new(SchemeKind::Rbf);
        let drho = [0.5, -1.0, 0.0];
        let dvol = [0.01, -0.02, 0.0];
        assert_eq!(update_h(&s, &mls, &drho, &dvol), vec![0.02, -0.04, 0.0]);
        let h = update_h(&s, &sph, &drho, &dvol);
        // -(2 m / rho^2) drho/dt with m = 0.1, rho = 1
        assert!((h[0] + 0.1).abs() < 1e-15 && (h[1] - 0.2).abs() < 1e-15);
        assert_eq!(update_h(&s, &rbf, &drho, &dvol), vec![0.0; 3]);
    }

    #[test]
    fn resync_threshold() {
        let (mut s, scheme) = lattice(SchemeKind::Mls, 30, 0.02);
        let table = scheme.build_table(&s).unwrap();
        for (i, &v) in table.volumes().iter().enumerate() {
            s.set_volume(i, v);
        }
        let exact = table.volumes()[15];
        s.set_volume(15, exact * (1.0 + 9e-4));
        s.set_volume(16, exact * (1.0 + 2e-3));
        let h = s.h.clone();
        let n = volume_resync(&mut s, &table, 1e-3).unwrap();
        assert_eq!(n, 1);
        assert!((s.vol[15] - exact * (1.0 + 9e-4)).abs() < 1e-18);
        assert_eq!(s.vol[16], table.volumes()[16]);
        assert!((s.rho[16] * s.vol[16] - s.m[16]).abs() < 1e-15);
        assert_eq!(s.h, h);
    }

    #[test]
    fn resync_skips_fixed_particles() {
        let (mut s, scheme) = lattice(SchemeKind::Mls, 30, 0.02);
        let table = scheme.build_table(&s).unwrap();
        s.fixed[0] = true;
        s.set_volume(0, 0.03);
        volume_resync(&mut s, &table, 1e-3).unwrap();
        assert_eq!(s.vol[0], 0.03);
    }

    /// Fields after stepping a smooth perturbation to `t` with `k` equal steps.
    fn smooth_run(kind: SchemeKind, t: f64, k: usize) -> ParticleSystem {
        let (mut s, scheme) = lattice(kind, 60, 1.0 / 60.0);
        for i in 0..s.len() {
            s.v[i] = 0.05 * (2.0 * std::f64::consts::PI * s.x[i]).sin();
        }
        let controls = StepControls {
            fixed_dt: Some(t / k as f64),
            resync: false,
            ..controls(t)
        };
        let mut it =
            Integrator::new(scheme.without_dissipation(), Eos::default(), controls).unwrap();
        it.run(&mut s, |_, _| {}).unwrap();
        assert_eq!(it.steps(), k);
        s
    }

    fn distance(a: &ParticleSystem, b: &ParticleSystem) -> f64 {
        (0..a.len())
            .map(|i| (a.x[i] - b.x[i]).abs().max((a.v[i] - b.v[i]).abs()))
            .fold(0.0, f64::max)
    }

    #[test]
    fn second_order_in_time() {
        for kind in SchemeKind::ALL {
            let t = 4e-3;
            let (a, b, c) = (
                smooth_run(kind, t, 1),
                smooth_run(kind, t, 2),
                smooth_run(kind, t, 4),
            );
            let ratio = distance(&a, &b) / distance(&b, &c);
            assert!((ratio - 4.0).abs() < 0.8, "{kind}: {ratio}");
        }
    }

    #[test]
    fn rejects_bad_controls() {
        let scheme = SchemeConfig::new(SchemeKind::Mls);
        for c in [
            StepControls {
                cfl: 0.0,
                ..StepControls::default()
            },
            StepControls {
                cfl: 1.5,
                ..StepControls::default()
            },
            StepControls {
                t_end: -1.0,
                ..StepControls::default()
            },
            StepControls {
                fixed_dt: Some(0.0),
                ..StepControls::default()
            },
        ] {
            assert!(matches!(
                Integrator::new(scheme, Eos::default(), c),
                Err(Error::Config(_))
            ));
        }
    }

    #[test]
    fn step_limit_is_reported() {
        let (mut s, scheme) = lattice(SchemeKind::Rbf, 20, 0.05);
        let mut it = Integrator::new(
            scheme,
            Eos::default(),
            StepControls {
                max_steps: 2,
                ..controls(1.0)
            },
        )
        .unwrap();
        assert!(matches!(
            it.run(&mut s, |_, _| {}),
            Err(Error::StepRejected { step: 2, .. })
        ));
    }
}

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::integrator::StepControls;
use crate::riemann::RiemannState;
use crate::scheme::{SchemeConfig, SchemeKind};

/// Frozen particles at each end of the tube by default. The waves stay
/// inside `[-0.24, 0.36]` up to `t = 0.2`, well clear of the ends.
pub const DEFAULT_WALL_LAYERS: usize = 6;

/// Everything needed to reproduce one shock-tube run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: SchemeKind,
    pub n_particles: usize,
    pub x_min: f64,
    pub x_max: f64,
    /// Diaphragm position.
    pub x0: f64,
    pub left: RiemannState,
    pub right: RiemannState,
    pub gamma: f64,
    pub mls_degree: usize,
    pub dissipation: bool,
    pub controls: StepControls,
    /// Outermost particles held fixed on each side (0 leaves both ends free).
    pub wall_layers: usize,
    pub out_dir: Option<PathBuf>,
    /// Write a snapshot every this many steps; 0 writes only the final one.
    pub snapshot_every: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scheme: SchemeKind::Mls,
            n_particles: 450,
            x_min: -0.5,
            x_max: 0.5,
            x0: 0.0,
            left: RiemannState::SOD_LEFT,
            right: RiemannState::SOD_RIGHT,
            gamma: 1.4,
            mls_degree: 1,
            dissipation: true,
            controls: StepControls::default(),
            wall_layers: DEFAULT_WALL_LAYERS,
            out_dir: None,
            snapshot_every: 0,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!(
            "invalid boolean `{value}` for `{key}`"
        ))),
    }
}

impl RunConfig {
    pub fn with_scheme(scheme: SchemeKind) -> Self {
        RunConfig {
            scheme,
            ..Self::default()
        }
    }

    pub fn scheme_config(&self) -> SchemeConfig {
        let mut s = SchemeConfig::new(self.scheme);
        s.mls_degree = self.mls_degree;
        if !self.dissipation {
            s = s.without_dissipation();
        }
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles < 20 {
            return Err(Error::Config(format!(
                "n_particles must be at least 20, got {}",
                self.n_particles
            )));
        }
        if !(self.x_min < self.x0 && self.x0 < self.x_max) {
            return Err(Error::Config(format!(
                "need x_min < x0 < x_max, got {} {} {}",
                self.x_min, self.x0, self.x_max
            )));
        }
        for (name, s) in [("left", &self.left), ("right", &self.right)] {
            if !(s.p > 0.0 && s.rho > 0.0 && s.v.is_finite()) {
                return Err(Error::Config(format!(
                    "{name} state needs positive P and rho: {s:?}"
                )));
            }
        }
        if !(self.gamma > 1.0) {
            return Err(Error::Config(format!(
                "gamma must exceed 1, got {}",
                self.gamma
            )));
        }
        if 2 * self.wall_layers + 5 > self.n_particles {
            return Err(Error::Config(format!(
                "{} wall layers leave too few free particles",
                self.wall_layers
            )));
        }
        self.controls.validate()
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        match key {
            "scheme" => self.scheme = value.parse()?,
            "n" | "n_particles" => self.n_particles = parse(key, value)?,
            "x_min" => self.x_min = parse(key, value)?,
            "x_max" => self.x_max = parse(key, value)?,
            "x0" => self.x0 = parse(key, value)?,
            "t_end" => self.controls.t_end = parse(key, value)?,
            "cfl" => self.controls.cfl = parse(key, value)?,
            "resync" => self.controls.resync = parse_bool(key, value)?,
            "resync_tolerance" => self.controls.resync_tolerance = parse(key, value)?,
            "max_steps" => self.controls.max_steps = parse(key, value)?,
            "max_retries" => self.controls.max_retries = parse(key, value)?,
            "gamma" => self.gamma = parse(key, value)?,
            "mls_degree" => self.mls_degree = parse(key, value)?,
            "dissipation" => self.dissipation = parse_bool(key, value)?,
            "wall_layers" => self.wall_layers = parse(key, value)?,
            "snapshot_every" => self.snapshot_every = parse(key, value)?,
            "out" | "out_dir" => self.out_dir = Some(PathBuf::from(value.trim())),
            "p_left" => self.left.p = parse(key, value)?,
            "rho_left" => self.left.rho = parse(key, value)?,
            "v_left" => self.left.v = parse(key, value)?,
            "p_right" => self.right.p = parse(key, value)?,
            "rho_right" => self.right.rho = parse(key, value)?,
            "v_right" => self.right.v = parse(key, value)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file body. Blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    /// Canonical `key = value` form, readable back by [`apply_text`](Self::apply_text).
    pub fn to_text(&self) -> String {
        let c = &self.controls;
        let mut s = format!(
            "scheme = {}\nn_particles = {}\nx_min = {}\nx_max = {}\nx0 = {}\nt_end = {}\ncfl = {}\n\
             resync = {}\nresync_tolerance = {}\nmax_steps = {}\nmax_retries = {}\ngamma = {}\n\
             mls_degree = {}\ndissipation = {}\nwall_layers = {}\nsnapshot_every = {}\n\
             p_left = {}\nrho_left = {}\nv_left = {}\np_right = {}\nrho_right = {}\nv_right = {}\n",
            self.scheme,
            self.n_particles,
            self.x_min,
            self.x_max,
            self.x0,
            c.t_end,
            c.cfl,
            c.resync,
            c.resync_tolerance,
            c.max_steps,
            c.max_retries,
            self.gamma,
            self.mls_degree,
            self.dissipation,
            self.wall_layers,
            self.snapshot_every,
            self.left.p,
            self.left.rho,
            self.left.v,
            self.right.p,
            self.right.rho,
            self.right.v,
        );
        if let Some(dir) = &self.out_dir {
            s.push_str(&format!("out_dir = {}\n", dir.display()));
        }
        s
    }
}

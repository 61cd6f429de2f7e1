//! Growth of a tiny random velocity perturbation in a uniform gas.
//!
//! The MLS scheme with `h = 2V` and a Wendland support of one `h` couples
//! each particle to its nearest neighbours only. An odd-even displacement is
//! then invisible to the volume equation but not to the momentum equation,
//! and it grows at a rate of order `c / dx` regardless of the time step. A
//! wider support removes the growth. The B-spline and SPH schemes stay at
//! the seed level.
//!
//!     cargo run --release --example uniform_gas_stability

use meshfree_hydro::fluid::Eos;
use meshfree_hydro::harness::{setup_sod, RunConfig};
use meshfree_hydro::integrator::Integrator;
use meshfree_hydro::scheme::SchemeKind;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn final_amplitude(scheme: SchemeKind, h_factor: f64, cfl: f64) -> meshfree_hydro::Result<f64> {
    let mut cfg = RunConfig::with_scheme(scheme);
    cfg.n_particles = 150;
    cfg.right = cfg.left;
    cfg.dissipation = false;
    cfg.controls.resync = false;
    cfg.controls.cfl = cfl;
    let mut sc = cfg.scheme_config();
    sc.h_factor = h_factor;

    let mut state = setup_sod(&cfg)?;
    let mut rng = StdRng::seed_from_u64(1);
    for i in 0..state.len() {
        state.h[i] = sc.smoothing_length_for(state.vol[i]);
        if !state.fixed[i] {
            state.v[i] = 1e-10 * (rng.random::<f64>() - 0.5);
        }
    }
    let mut it = Integrator::new(sc, Eos::new(cfg.gamma)?, cfg.controls)?;
    it.run(&mut state, |_, _| {})?;
    Ok(state.v.iter().fold(0.0, |a, v| a.max(v.abs())))
}

fn main() -> meshfree_hydro::Result<()> {
    println!("max |v| at t = 0.2 after a 1e-10 seed, N = 150");
    for (scheme, hf) in [
        (SchemeKind::Mls, 2.0),
        (SchemeKind::Mls, 3.0),
        (SchemeKind::Rbf, 1.0),
        (SchemeKind::Sph, 2.0),
    ] {
        for cfl in [0.3, 0.1] {
            println!(
                "{scheme:>4} h = {hf} V, cfl {cfl}: {:.3e}",
                final_amplitude(scheme, hf, cfl)?
            );
        }
    }
    Ok(())
}

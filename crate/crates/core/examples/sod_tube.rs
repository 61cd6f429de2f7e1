//! One shock-tube run with the chosen scheme, compared against the exact
//! solution. Snapshots, the step log and a report go to the output directory.
//!
//!     cargo run --release --example sod_tube -- mls 450 out/sod_mls

use std::path::PathBuf;

use meshfree_hydro::harness::{plateau_deviation, run, RunConfig};
use meshfree_hydro::scheme::SchemeKind;

fn main() -> meshfree_hydro::Result<()> {
    let mut args = std::env::args().skip(1);
    let scheme: SchemeKind = args.next().unwrap_or_else(|| "mls".into()).parse()?;
    let n: usize = args
        .next()
        .map_or(450, |s| s.parse().expect("particle count"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| format!("out/sod_{scheme}")));

    let mut cfg = RunConfig::with_scheme(scheme);
    cfg.n_particles = n;
    cfg.snapshot_every = 100;
    cfg.out_dir = Some(out.clone());
    let report = run(&cfg)?;
    print!("{}", report.to_text());

    let sol = &report.solution;
    let w = sol.wave_positions(report.t);
    let rows = &report.final_snapshot;
    if let Some(d) = plateau_deviation(rows, w.left_inner, w.contact, sol.rho_star_left) {
        println!("left star plateau deviation: {:.2}%", 100.0 * d);
    }
    if let Some(d) = plateau_deviation(rows, w.contact, w.right_inner, sol.rho_star_right) {
        println!("right star plateau deviation: {:.2}%", 100.0 * d);
    }
    println!("outputs in {}", out.display());
    Ok(())
}

//! Smooth-region pressure error against particle count for all three
//! schemes, with the fitted order of each.
//!
//!     cargo run --release --example convergence -- 150,300,600

use meshfree_hydro::harness::{convergence_study, RunConfig, DEFAULT_SIZES};
use meshfree_hydro::scheme::SchemeKind;

fn main() -> meshfree_hydro::Result<()> {
    let sizes: Vec<usize> = match std::env::args().nth(1) {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse().expect("particle count"))
            .collect(),
        None => DEFAULT_SIZES.to_vec(),
    };
    for scheme in [SchemeKind::Mls, SchemeKind::Rbf, SchemeKind::Sph] {
        let study = convergence_study(&RunConfig::with_scheme(scheme), &sizes)?;
        print!("{scheme:>4}:");
        for (n, e) in study.sizes.iter().zip(&study.errors) {
            print!("  N={n} Linf(P)={e:.3e}");
        }
        println!("  order {:.3}", study.fitted_order);
    }
    Ok(())
}

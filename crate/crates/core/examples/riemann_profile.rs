//! Exact solution of the Sod shock tube: star state, wave positions and a
//! sampled profile written as CSV.
//!
//!     cargo run --example riemann_profile -- 0.2 sod_exact.csv

use std::path::PathBuf;

use meshfree_hydro::riemann::{solve_riemann, RiemannState, Wave};

fn main() -> meshfree_hydro::Result<()> {
    let mut args = std::env::args().skip(1);
    let t: f64 = args.next().map_or(0.2, |s| s.parse().expect("time"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| "sod_exact.csv".into()));

    let sol = solve_riemann(RiemannState::SOD_LEFT, RiemannState::SOD_RIGHT, 1.4)?;
    println!("p*  = {:.8}", sol.p_star);
    println!("v*  = {:.8}", sol.v_star);
    println!(
        "rho*L = {:.8}, rho*R = {:.8}",
        sol.rho_star_left, sol.rho_star_right
    );
    println!("pressure-equation residual = {:.2e}", sol.residual());
    for (side, wave) in [("left", sol.left_wave), ("right", sol.right_wave)] {
        match wave {
            Wave::Rarefaction { head, tail } => {
                println!("{side}: rarefaction, head {head:.6}, tail {tail:.6}")
            }
            Wave::Shock { speed } => println!("{side}: shock, speed {speed:.6}"),
        }
    }
    let w = sol.wave_positions(t);
    println!("positions at t = {t}: {:?}", w.all());
    sol.write_profile_csv(&out, t, -0.5, 0.5, 1001)?;
    println!("wrote {}", out.display());
    Ok(())
}

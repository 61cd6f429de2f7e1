//! Momentum and energy histories of the shock tube, once with frozen end
//! layers and once with free ends.
//!
//! With frozen ends the gas is pushed by the pressure difference between the
//! two ends, so its momentum grows like `(P_L - P_R) t`. With free ends the
//! pairwise forces cancel and momentum stays at round-off level.
//!
//!     cargo run --release --example conservation -- rbf

use meshfree_hydro::harness::{run, RunConfig};
use meshfree_hydro::scheme::SchemeKind;

fn main() -> meshfree_hydro::Result<()> {
    let scheme: SchemeKind = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "rbf".into())
        .parse()?;
    for walls in [6, 0] {
        let mut cfg = RunConfig::with_scheme(scheme);
        cfg.wall_layers = walls;
        let report = run(&cfg)?;
        let first = report.series[0];
        println!("{scheme}, {walls} frozen layers per end:");
        println!(
            "{:>10} {:>16} {:>16} {:>16}",
            "t", "momentum", "(P_L-P_R) t", "energy change"
        );
        let stride = (report.series.len() / 10).max(1);
        for s in report
            .series
            .iter()
            .step_by(stride)
            .chain(report.series.last())
        {
            println!(
                "{:>10.5} {:>16.6e} {:>16.6e} {:>16.6e}",
                s.t,
                s.momentum,
                (cfg.left.p - cfg.right.p) * s.t,
                (s.energy - first.energy) / first.energy
            );
        }
    }
    Ok(())
}

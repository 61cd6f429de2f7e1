//! Builds MLS, cubic B-spline and SPH shape tables on an irregular node set
//! and reports how well each one reproduces constants, linear fields and a
//! smooth function.
//!
//!     cargo run --example shape_functions -- 64

use meshfree_hydro::kernels::KernelSpec;
use meshfree_hydro::shape::{bspline_shapes, mls_shapes, sph_shapes, NodeSet, ShapeTable};

fn report(name: &str, table: &ShapeTable, x: &[f64]) -> meshfree_hydro::Result<()> {
    let f: Vec<f64> = x
        .iter()
        .map(|&x| (2.0 * std::f64::consts::PI * x).sin())
        .collect();
    let mut linear = 0.0f64;
    let mut smooth = 0.0f64;
    for i in 0..x.len() {
        linear = linear.max((table.quasi_interpolate(x, i)? - x[i]).abs());
        smooth = smooth.max((table.quasi_interpolate(&f, i)? - f[i]).abs());
    }
    let grad_sum = table
        .rows()
        .iter()
        .map(|r| r.gradients.iter().sum::<f64>().abs())
        .fold(0.0, f64::max);
    let total: f64 = table.volumes().iter().sum();
    println!(
        "{name:>8}: unity {:.2e}  gradient sum {:.2e}  linear {:.2e}  sin {:.2e}  sum of integrals {:.6}",
        table.partition_of_unity_defect(),
        grad_sum,
        linear,
        smooth,
        total
    );
    Ok(())
}

fn main() -> meshfree_hydro::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map_or(64, |s| s.parse().expect("node count"));
    // Irregular but well-separated nodes on [0, 1].
    let x: Vec<f64> = (0..n)
        .map(|i| {
            let s = i as f64 / (n - 1) as f64;
            s + 0.3 / (n - 1) as f64 * (7.0 * s).sin() * (s * (1.0 - s)).sqrt()
        })
        .collect();
    let spacing = 1.0 / (n - 1) as f64;
    let h = vec![2.0 * spacing; n];

    report(
        "mls",
        &mls_shapes(NodeSet::new(&x, &h)?, 1, &KernelSpec::WENDLAND_C4)?,
        &x,
    )?;
    // A quadratic basis needs at least three nodes under every weight.
    let wide = vec![3.0 * spacing; n];
    report(
        "mls deg2",
        &mls_shapes(NodeSet::new(&x, &wide)?, 2, &KernelSpec::WENDLAND_C4)?,
        &x,
    )?;
    report(
        "bspline",
        &bspline_shapes(NodeSet::positions_only(&x)?)?,
        &x,
    )?;
    let m = vec![spacing; n];
    let rho = vec![1.0; n];
    let sph_h = vec![1.2 * spacing; n];
    report("sph", &sph_shapes(NodeSet::new(&x, &sph_h)?, &m, &rho)?, &x)?;
    Ok(())
}

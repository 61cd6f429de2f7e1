//! Tabulates the cubic spline kernel and the Wendland C4 weight and checks
//! the spline normalisation by quadrature.
//!
//!     cargo run --example kernels

use meshfree_hydro::kernels::{cubic_spline_dw, cubic_spline_w, wendland_c4, wendland_c4_d};
use meshfree_hydro::quadrature::composite_gauss_legendre;

fn main() -> meshfree_hydro::Result<()> {
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "q", "W(q,1)", "dW/dr", "wendland", "d/dq"
    );
    for k in 0..=20 {
        let q = 0.1 * k as f64;
        let (w, dw) = (cubic_spline_w(q, 1.0)?, cubic_spline_dw(q, 1.0)?);
        let (wc, dwc) = if q <= 1.0 {
            (wendland_c4(q)?, wendland_c4_d(q)?)
        } else {
            (0.0, 0.0)
        };
        println!("{q:>6.2} {w:>12.6} {dw:>12.6} {wc:>12.6} {dwc:>12.6}");
    }
    for h in [0.5, 1.0, 2.0] {
        let integral = composite_gauss_legendre(
            |x| cubic_spline_w(x.abs(), h).unwrap(),
            -2.0 * h,
            2.0 * h,
            64,
        );
        println!("integral of W over [-2h, 2h] with h = {h}: {integral:.15}");
    }
    Ok(())
}

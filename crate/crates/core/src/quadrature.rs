//! Gauss–Legendre rules on intervals.

/// 4-point Gauss–Legendre abscissae on [-1, 1].
pub const GL4_NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];

/// 4-point Gauss–Legendre weights on [-1, 1].
pub const GL4_WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_85,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_85,
];

/// Map the 4-point rule onto `[a, b]`, returning `(abscissa, weight)` pairs.
pub fn gl4_panel(a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    GL4_NODES
        .iter()
        .zip(GL4_WEIGHTS.iter())
        .map(move |(&t, &w)| (mid + half * t, half * w))
}

/// Composite 4-point Gauss–Legendre quadrature of `f` on `[a, b]` with `panels` equal panels.
pub fn composite_gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + width * k as f64;
            let hi = if k + 1 == panels { b } else { lo + width };
            gl4_panel(lo, hi).map(|(x, w)| w * f(x)).sum::<f64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_cubics() {
        let v = composite_gauss_legendre(|x| 3.0 * x * x * x - x * x + 2.0, -1.0, 2.0, 1);
        // 3/4 x^4 - x^3/3 + 2x over [-1, 2]
        let exact = 0.75 * (16.0 - 1.0) - (8.0 + 1.0) / 3.0 + 2.0 * 3.0;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn weights_sum_to_two() {
        let s: f64 = GL4_WEIGHTS.iter().sum();
        assert!((s - 2.0).abs() < 1e-15);
    }

    #[test]
    fn smooth_integrand_converges() {
        let v = composite_gauss_legendre(f64::sin, 0.0, std::f64::consts::PI, 16);
        assert!((v - 2.0).abs() < 1e-12);
    }
}

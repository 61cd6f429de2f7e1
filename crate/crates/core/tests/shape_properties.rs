use meshfree_hydro::kernels::KernelSpec;
use meshfree_hydro::shape::{
    bspline_shapes, mls_shapes, sph_shapes, NodeSet, ScaledWeight, ShapeTable,
};
use proptest::prelude::*;

/// Sorted nodes on `[0, 1)` with every gap between `0.2/n` and `1.8/n`.
fn node_set() -> impl Strategy<Value = Vec<f64>> {
    (5usize..80).prop_flat_map(|n| {
        prop::collection::vec(0.2f64..1.8, n).prop_map(|gaps| {
            let total: f64 = gaps.iter().sum();
            let mut x = Vec::with_capacity(gaps.len());
            let mut acc = 0.0;
            for g in &gaps {
                x.push(acc / total);
                acc += g;
            }
            x
        })
    })
}

fn covering(x: &[f64], factor: f64) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|j| {
            let lo = if j == 0 { x[1] - x[0] } else { x[j] - x[j - 1] };
            let hi = if j == n - 1 {
                x[n - 1] - x[n - 2]
            } else {
                x[j + 1] - x[j]
            };
            factor * lo.max(hi)
        })
        .collect()
}

fn row_sums(table: &ShapeTable) -> (f64, f64) {
    table.rows().iter().fold((0.0f64, 0.0f64), |(u, g), r| {
        let s: f64 = r.values.iter().sum();
        let d: f64 = r.gradients.iter().sum();
        (u.max((s - 1.0).abs()), g.max(d.abs()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mls_partition_and_linear_reproduction(x in node_set(), factor in 1.05f64..3.0) {
        let h = covering(&x, factor);
        let table = mls_shapes(NodeSet::new(&x, &h).unwrap(), 1, &KernelSpec::WENDLAND_C4).unwrap();
        let (unity, grad) = row_sums(&table);
        let min_gap = x.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        prop_assert!(unity < 1e-10, "unity defect {unity}");
        prop_assert!(grad * min_gap < 1e-8, "gradient sum {grad}");
        for (i, &xi) in x.iter().enumerate() {
            let r = table.row(i);
            let value: f64 = r.entries().map(|(j, phi, _)| phi * x[j]).sum();
            let slope: f64 = r.entries().map(|(j, _, g)| g * x[j]).sum();
            prop_assert!((value - xi).abs() < 1e-10);
            prop_assert!((slope - 1.0).abs() < 1e-8, "slope {slope}");
        }
    }

    #[test]
    fn mls_ignores_weight_scale(x in node_set(), scale in 1e-6f64..1e6) {
        let h = covering(&x, 1.5);
        let nodes = NodeSet::new(&x, &h).unwrap();
        let a = mls_shapes(nodes, 1, &KernelSpec::WENDLAND_C4).unwrap();
        let b = mls_shapes(nodes, 1, &ScaledWeight { inner: KernelSpec::WENDLAND_C4, scale }).unwrap();
        for i in 0..x.len() {
            for j in a.row(i).columns() {
                prop_assert!((a.value(i, j) - b.value(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bspline_partition_and_integrals(x in node_set()) {
        let table = bspline_shapes(NodeSet::positions_only(&x).unwrap()).unwrap();
        let (unity, grad) = row_sums(&table);
        prop_assert!(unity < 1e-12);
        prop_assert!(grad < 1e-8);
        // The integrals tile the node range.
        let total: f64 = table.volumes().iter().sum();
        prop_assert!((total - (x[x.len() - 1] - x[0])).abs() < 1e-12);
        prop_assert!(table.volumes().iter().all(|&v| v > 0.0));
    }

    #[test]
    fn mls_integrals_tile_the_hull(x in node_set()) {
        let h = covering(&x, 2.0);
        let table = mls_shapes(NodeSet::new(&x, &h).unwrap(), 1, &KernelSpec::WENDLAND_C4).unwrap();
        let total: f64 = table.volumes().iter().sum();
        prop_assert!((total - (x[x.len() - 1] - x[0])).abs() < 1e-10, "total {total}");
    }

    #[test]
    fn sph_values_are_nonnegative_and_local(x in node_set(), factor in 1.0f64..2.0) {
        let n = x.len();
        let h = covering(&x, factor);
        let m = vec![1.0 / n as f64; n];
        let rho = vec![1.0; n];
        let table = sph_shapes(NodeSet::new(&x, &h).unwrap(), &m, &rho).unwrap();
        for i in 0..n {
            for (j, phi, _) in table.row(i).entries() {
                prop_assert!(phi >= 0.0);
                prop_assert!((x[i] - x[j]).abs() < 2.0 * h[i]);
            }
        }
    }
}

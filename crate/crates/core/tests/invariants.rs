//! Property tests for the recursion map and its Jacobian.

use fertile_hc::recursion::residual_conditioning;
use fertile_hc::{jacobian, recursion_map, FertileGraph, Field, ModelParams};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = FertileGraph> {
    prop::sample::select(FertileGraph::ALL.to_vec())
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    #[test]
    fn map_is_positive(g in graph(), k in 1u32..=4, l in log_uniform(1e-2, 1e2),
                       z1 in log_uniform(1e-3, 1e3), z2 in log_uniform(1e-3, 1e3)) {
        let p = ModelParams::new(k, l).unwrap();
        let f = recursion_map(g, &p, &Field { z1, z2 }).unwrap();
        prop_assert!(f.z1 > 0.0 && f.z2 > 0.0);
    }

    #[test]
    fn swap_equivariance(k in 1u32..=4, l in log_uniform(1e-2, 1e2),
                         z1 in log_uniform(1e-3, 1e3), z2 in log_uniform(1e-3, 1e3)) {
        let p = ModelParams::new(k, l).unwrap();
        for g in [FertileGraph::Loop, FertileGraph::Rod] {
            let z = Field { z1, z2 };
            let a = recursion_map(g, &p, &z.swapped()).unwrap();
            let b = recursion_map(g, &p, &z).unwrap().swapped();
            prop_assert!(a.distance(&b) <= 1e-14 * a.max_norm().max(1.0));
        }
    }

    #[test]
    fn jacobian_matches_directional_difference(
        g in graph(), k in 1u32..=3, l in log_uniform(0.1, 10.0),
        z1 in log_uniform(1e-2, 1e2), z2 in log_uniform(1e-2, 1e2),
        d1 in -1.0f64..1.0, d2 in -1.0f64..1.0,
    ) {
        let p = ModelParams::new(k, l).unwrap();
        let z = Field { z1, z2 };
        let j = jacobian(g, &p, &z).unwrap();
        let h = 1e-4;
        let at = |s: f64| recursion_map(g, &p, &Field { z1: z1 * (1.0 + s * d1), z2: z2 * (1.0 + s * d2) })
            .unwrap()
            .as_array();
        let (fp, fm) = (at(h), at(-h));
        for row in 0..2 {
            let analytic = j[row][0] * z1 * d1 + j[row][1] * z2 * d2;
            let numeric = (fp[row] - fm[row]) / (2.0 * h);
            let scale = (j[row][0] * z1).abs() + (j[row][1] * z2).abs() + 1e-12 * fp[row].abs();
            prop_assert!((analytic - numeric).abs() <= 1e-5 * scale, "{analytic} vs {numeric}");
        }
    }

    #[test]
    fn conditioning_is_nonnegative(g in graph(), k in 1u32..=3, l in log_uniform(0.1, 10.0),
                                   z1 in log_uniform(1e-2, 1e2), z2 in log_uniform(1e-2, 1e2)) {
        let p = ModelParams::new(k, l).unwrap();
        let s = residual_conditioning(g, &p, &Field { z1, z2 }).unwrap();
        prop_assert!(s >= 0.0 && s.is_finite());
    }
}

#[test]
fn rejects_non_positive_fields() {
    let p = ModelParams::new(2, 1.0).unwrap();
    for z in [
        Field { z1: 0.0, z2: 1.0 },
        Field { z1: 1.0, z2: -1.0 },
        Field {
            z1: f64::NAN,
            z2: 1.0,
        },
    ] {
        assert!(recursion_map(FertileGraph::Loop, &p, &z).is_err());
        assert!(jacobian(FertileGraph::Loop, &p, &z).is_err());
    }
}

//! Solver invariants checked against independent oracles.

use fertile_hc::numeric::bisect;
use fertile_hc::recursion::residual_norm;
use fertile_hc::solver::{
    asymmetric_constraint_y, solve_closed_form, solve_multistart, NEAR_TANGENT, RESIDUAL_TOL,
};
use fertile_hc::{solve_all, Branch, FertileGraph, ModelParams};
use proptest::prelude::*;

use FertileGraph::{Key, Loop, Rod, Whistle};

fn params(k: u32, l: f64) -> ModelParams {
    ModelParams::new(k, l).unwrap()
}

/// Symmetric order-2 loop fixed point as the root of
/// 4z^3 + (4 - l) z^2 + (1 - 2l) z - l, found without the solver.
fn loop_k2_symmetric_oracle(l: f64) -> f64 {
    let f = |z: f64| ((4.0 * z + (4.0 - l)) * z + (1.0 - 2.0 * l)) * z - l;
    bisect(f, 1e-12, l + 1.0, 1e-16).unwrap()
}

#[test]
fn loop_k2_symmetric_matches_cubic() {
    for l in [0.1, 1.0, 2.0, 2.25, 3.0, 10.0] {
        let set = solve_all(Loop, &params(2, l)).unwrap();
        let z = set.symmetric().unwrap().z.z1;
        let expected = loop_k2_symmetric_oracle(l);
        assert!(
            (z - expected).abs() <= 1e-10 * (1.0 + expected),
            "lambda={l}: {z} vs {expected}"
        );
    }
}

#[test]
fn count_laws_on_both_sides_of_criticality() {
    let eps = 1e-6;
    for (g, k, cr) in [
        (Loop, 3, 32.0 / 27.0),
        (Rod, 3, 4.0 / 27.0),
        (Loop, 2, 2.25),
        (Rod, 2, 1.0),
    ] {
        let below = solve_all(g, &params(k, cr * (1.0 - 1e-2))).unwrap();
        assert_eq!(below.count, 1, "{g} k={k} below");
        let above = solve_all(g, &params(k, cr * (1.0 + 1e-2))).unwrap();
        assert_eq!(above.count, 3, "{g} k={k} above");
        let at = solve_all(g, &params(k, cr * (1.0 - eps))).unwrap();
        assert_eq!(at.count, 1, "{g} k={k} just below");
    }
}

#[test]
fn tangency_merges_into_one_solution() {
    for (g, cr) in [(Loop, 32.0 / 27.0), (Rod, 4.0 / 27.0)] {
        let set = solve_all(g, &params(3, cr)).unwrap();
        assert_eq!(set.count, 1, "{g}");
        let s = &set.solutions[0];
        assert_eq!(s.branch, Branch::Symmetric);
        if let Some(note) = &s.multiplicity_note {
            assert_eq!(note, NEAR_TANGENT);
        }
    }
}

#[test]
fn closed_form_agrees_with_multistart() {
    for (g, lambdas) in [
        (Loop, vec![0.5, 1.3, 2.0, 5.0, 50.0]),
        (Rod, vec![0.05, 0.2, 1.0, 10.0]),
    ] {
        for l in lambdas {
            let p = params(3, l);
            let a = solve_closed_form(g, &p).unwrap();
            let b = solve_multistart(g, &p).unwrap();
            assert_eq!(a.count, b.count, "{g} lambda={l}");
            for s in &a.solutions {
                assert!(b.contains(&s.z, 1e-8), "{g} lambda={l}: {:?}", s.z);
            }
        }
    }
}

#[test]
fn asymmetric_loop_k3_solutions_lie_on_the_constraint() {
    for l in [1.3, 2.0, 5.0, 50.0] {
        let set = solve_all(Loop, &params(3, l)).unwrap();
        for s in set.asymmetric() {
            let x = s.z.z1.cbrt();
            let y = s.z.z2.cbrt();
            assert!((x * y * (x + y) - 1.0).abs() < 1e-10, "lambda={l}");
            assert!((asymmetric_constraint_y(x) - y).abs() < 1e-10);
        }
    }
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_solution_is_a_fixed_point_and_swap_closed(
        g in prop::sample::select(vec![Loop, Rod, Key, Whistle]),
        k in 1u32..=4,
        l in log_uniform(1e-2, 1e2),
    ) {
        let p = params(k, l);
        let set = solve_all(g, &p).unwrap();
        prop_assert!(set.count >= 1);
        prop_assert_eq!(set.count, set.solutions.len());
        for s in &set.solutions {
            prop_assert!(residual_norm(g, &p, &s.z).unwrap() <= RESIDUAL_TOL * (1.0 + s.z.max_norm()));
            if g.is_swap_symmetric() {
                prop_assert!(set.contains(&s.z.swapped(), 1e-6));
            }
        }
        if matches!(g, Key | Whistle) {
            prop_assert_eq!(set.count, 1);
        }
        prop_assert_eq!(set.count, solve_all(g, &p).unwrap().count);
    }
}

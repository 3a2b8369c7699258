//! Property tests for the closed forms and their invariants.

use proptest::prelude::*;

use cc4::masses::{solve_masses, solve_masses_with_eps};
use cc4::shape::{center_ordinate, sign_profile, ShapeParams};
use cc4::verify::{cc_residual, solve_reduced_system, PlanarConfig};

/// Valid shapes, kept a little away from t = s so the discriminants stay
/// representable.
fn shapes() -> impl Strategy<Value = ShapeParams> {
    (0.01f64..6.0, 0.01f64..6.0)
        .prop_map(|(s, dt)| ShapeParams::new(s, s + dt).expect("t > s > 0 by construction"))
}

proptest! {
    #[test]
    fn p5_is_positive(params in shapes()) {
        let pr = sign_profile(&params, 0.0);
        prop_assert!(pr.p5 > 0.0);
    }

    #[test]
    fn center_stays_below_apex(params in shapes()) {
        prop_assert!(center_ordinate(&params) < params.t());
    }

    #[test]
    fn m1_equals_m2_bitwise(params in shapes()) {
        if let Ok(sol) = solve_masses(&params, 1.0) {
            prop_assert_eq!(sol.m1.to_bits(), sol.m2.to_bits());
        }
    }

    #[test]
    fn lambda_homogeneity(params in shapes(), lambda in 0.1f64..10.0) {
        let (s1, s2) = match (solve_masses(&params, 1.0), solve_masses(&params, lambda)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()), // on the p2 = 0 curve
        };
        for (a, b) in [(s1.m1, s2.m1), (s1.m3, s2.m3), (s1.m4, s2.m4)] {
            prop_assert!((b - lambda * a).abs() <= 1e-14 * (lambda * a).abs().max(1e-300));
        }
    }

    #[test]
    fn center_of_mass_closure(params in shapes()) {
        let sol = match solve_masses(&params, 1.0) {
            Ok(sol) if sol.feasible => sol,
            _ => return Ok(()),
        };
        let total = sol.m1 + sol.m2 + sol.m3 + sol.m4;
        let cy = (params.s() * sol.m4 + params.t() * sol.m3) / total;
        prop_assert!((cy - sol.c_y).abs() < 1e-10 * sol.c_y.abs().max(1.0));
    }

    /// feasible <=> (p1 p2 > 0) and (p3 p4 p2 > 0) and (p4 p2 < 0)
    #[test]
    fn feasibility_sign_law(params in shapes()) {
        let sol = match solve_masses(&params, 1.0) {
            Ok(sol) => sol,
            Err(_) => return Ok(()),
        };
        let pr = &sol.profile;
        let law = pr.p1 * pr.p2 > 0.0 && pr.p3 * pr.p4 * pr.p2 > 0.0 && pr.p4 * pr.p2 < 0.0;
        prop_assert_eq!(law, sol.feasible);
        // And the law matches the directly computed mass signs.
        prop_assert_eq!(pr.p1 * pr.p2 > 0.0, sol.m4 > 0.0);
        prop_assert_eq!(pr.p3 * pr.p4 * pr.p2 > 0.0, sol.m3 > 0.0);
        prop_assert_eq!(pr.p4 * pr.p2 < 0.0, sol.m1 > 0.0);
    }

    /// Closed forms against the 3x3 linear-solve oracle, away from p2 = 0.
    #[test]
    fn closed_form_matches_oracle(params in shapes(), lambda in 0.1f64..10.0) {
        let pr = sign_profile(&params, 0.0);
        if pr.p2.abs() <= 1e-3 {
            return Ok(());
        }
        let closed = solve_masses(&params, lambda).unwrap();
        let oracle = solve_reduced_system(&params, lambda).unwrap();
        let scale = closed.m2.abs().max(closed.m3.abs()).max(closed.m4.abs());
        prop_assert!((closed.m2 - oracle.m2).abs() <= 1e-10 * scale);
        prop_assert!((closed.m3 - oracle.m3).abs() <= 1e-10 * scale);
        prop_assert!((closed.m4 - oracle.m4).abs() <= 1e-10 * scale);
        prop_assert!(oracle.consistency_residual <= 1e-10 * lambda * scale.max(1.0));
    }

    /// Every feasible solution closes the raw Newtonian equations.
    #[test]
    fn feasible_solutions_are_central(params in shapes(), lambda in 0.1f64..10.0) {
        let sol = match solve_masses_with_eps(&params, lambda, 1e-6) {
            Ok(sol) if sol.feasible => sol,
            _ => return Ok(()),
        };
        let config = PlanarConfig::from_solution(&params, &sol).unwrap();
        let report = cc_residual(&config, 1e-9 * lambda).unwrap();
        prop_assert!(report.is_central, "max_residual = {}", report.max_residual);
        prop_assert!((report.lambda_est - lambda).abs() < 1e-9 * lambda);
        prop_assert!((report.lambda_ui - report.lambda_est).abs() < 1e-9 * report.lambda_est);
    }
}

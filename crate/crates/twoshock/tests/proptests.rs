//! Property tests for the algebraic invariants: convexity of the relative
//! quantities, cutoff partition of unity, weight ranges and slopes,
//! jump-relation residuals on random admissible data, and the monotone
//! interpolation.

use proptest::prelude::*;
use std::sync::OnceLock;

use twoshock::diagnostics::{profile_coordinate, relative_pressure, relative_q};
use twoshock::interp::MonotoneCubic;
use twoshock::riemann::hugoniot_velocity;
use twoshock::shifts::{cutoffs, dweight_single, weight_composed, weight_single, WeightSpec};
use twoshock::*;

fn params() -> &'static FluidParams {
    static P: OnceLock<FluidParams> = OnceLock::new();
    P.get_or_init(|| FluidParams::gamma_law(2.0, 0.1, 0.0).unwrap())
}

fn composite() -> &'static CompositeWave {
    static CW: OnceLock<CompositeWave> = OnceLock::new();
    CW.get_or_init(|| {
        let p = params();
        let left = EndState::new(1.0, 0.0);
        let u_m = hugoniot_velocity(Family::One, left, 0.9, p);
        let dp = p.pressure(0.9) - 1.0;
        let right = EndState::new(1.0, u_m - (dp * 0.1).sqrt());
        let cfg = solve_intermediate_state(left, right, p).unwrap();
        let w1 = solve_profile(Family::One, &cfg, p, 30.0, 4001).unwrap();
        let w2 = solve_profile(Family::Two, &cfg, p, 30.0, 4001).unwrap();
        CompositeWave::new(w1, w2).unwrap()
    })
}

proptest! {
    #[test]
    fn relative_quantities_are_nonnegative(v in 0.05f64..5.0, w in 0.05f64..5.0) {
        let p = params();
        let rp = relative_pressure(p, v, w);
        let rq = relative_q(p, v, w);
        prop_assert!(rp >= 0.0);
        prop_assert!(rq >= 0.0);
        if (v - w).abs() > 1e-3 {
            prop_assert!(rp > 0.0);
            prop_assert!(rq > 0.0);
        }
    }

    #[test]
    fn relative_quantities_vanish_only_on_the_diagonal(v in 0.1f64..3.0) {
        let p = params();
        prop_assert_eq!(relative_pressure(p, v, v), 0.0);
        prop_assert_eq!(relative_q(p, v, v), 0.0);
    }

    #[test]
    fn cutoff_partition_of_unity(t in 0.0f64..50.0, x in -100.0f64..100.0) {
        let (s1, s2) = (-1.5315609724544690, 1.2252487779635752);
        let (a, b) = cutoffs(t, x, s1, s2);
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((0.0..=1.0).contains(&b));
        prop_assert!((a + b - 1.0).abs() < 1e-15);
        // non-increasing in x1
        let (a2, _) = cutoffs(t, x + 0.5, s1, s2);
        prop_assert!(a2 <= a + 1e-15);
    }

    #[test]
    fn weights_stay_in_range(x in -40.0f64..40.0, t in 0.0f64..10.0,
                             x1s in -2.0f64..2.0, x2s in -2.0f64..2.0) {
        let cw = composite();
        let spec = WeightSpec::new(0.2, 0.15).unwrap();
        let a = weight_composed(cw, &spec, t, x, (x1s, x2s));
        let nu = spec.total();
        prop_assert!(a >= 1.0 - nu - 1e-12 && a <= 1.0 + nu + 1e-12);
        for (prof, nu) in [(cw.wave1(), spec.nu1), (cw.wave2(), spec.nu2)] {
            let ai = weight_single(prof, nu, x);
            prop_assert!(ai >= 1.0 - 1e-12 && ai <= 1.0 + nu + 1e-12);
            let da = dweight_single(prof, nu, x);
            // the slope carries the sign of sigma*
            prop_assert!(prof.sigma_star() * da >= 0.0);
        }
    }

    #[test]
    fn random_admissible_data_close_with_tiny_residuals(
        v_minus in 0.85f64..1.15,
        v_plus in 0.85f64..1.15,
        u_minus in -0.1f64..0.1,
        drop in 0.15f64..0.5,
    ) {
        let p = params();
        let left = EndState::new(v_minus, u_minus);
        let right = EndState::new(v_plus, u_minus - drop - 2.0 * (v_minus - v_plus).abs());
        let cfg = solve_intermediate_state(left, right, p).unwrap();
        let res = rh_residuals(cfg.left, cfg.mid, cfg.right, p).unwrap();
        for r in res {
            prop_assert!(r.abs() < 1e-12, "residual {}", r);
        }
        let ((s1s, s1), (s2s, s2)) = cfg.speeds(p).unwrap();
        prop_assert!(s1s < 0.0 && s2s > 0.0);
        prop_assert!(s1 < s2);
    }

    #[test]
    fn monotone_interpolation_preserves_monotonicity(
        seedvals in proptest::collection::vec(0.0f64..1.0, 8..40),
        q in 0.0f64..1.0,
    ) {
        // build a nondecreasing table from the cumulative sum
        let mut acc = 0.0;
        let y: Vec<f64> = seedvals.iter().map(|d| { acc += d; acc }).collect();
        let c = MonotoneCubic::from_uniform(0.0, 0.5, y.clone());
        let xq = q * 0.5 * (y.len() - 1) as f64;
        let a = c.eval(xq);
        let b = c.eval(xq + 0.01);
        prop_assert!(b >= a - 1e-12);
        prop_assert!(a >= y[0] - 1e-12 && a <= y[y.len() - 1] + 1e-12);
    }

    #[test]
    fn layer_coordinate_is_monotone_in_range(x in -50.0f64..50.0, shift in -1.0f64..1.0,
                                             t in 0.0f64..5.0) {
        let cw = composite();
        for prof in [cw.wave1(), cw.wave2()] {
            let y = profile_coordinate(prof, t, x, shift);
            prop_assert!(y > 0.0 && y < 1.0);
            let y2 = profile_coordinate(prof, t, x + 0.25, shift);
            // monotone up to tail quantization noise; strictly so in the
            // resolved part of the layer
            prop_assert!(y2 >= y - 1e-12);
            if y > 1e-6 && y2 < 1.0 - 1e-6 {
                prop_assert!(y2 > y);
            }
        }
    }
}

//! The integral forms in `analysis` and the term-by-term closed forms must
//! agree exactly for linear motion.

use inav_symbolic::analysis::{self, MotionCoefficients, DEFAULT_DEGREE_CAP};
use inav_symbolic::closed_form;
use inav_symbolic::random::{random_linear_motion, random_polynomial_motion};
use inav_symbolic::VecPoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn motions() -> Vec<MotionCoefficients> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = vec![MotionCoefficients::table_example()];
    out.extend((0..40).map(|_| random_linear_motion(&mut rng, 12)));
    out
}

fn check(name: &str, a: impl Fn(&MotionCoefficients) -> VecPoly, b: impl Fn(&MotionCoefficients) -> VecPoly) {
    for mc in motions() {
        assert_eq!(a(&mc), b(&mc), "{name} differs for {mc:?}");
    }
}

#[test]
fn traditional_attitude() {
    check("sigma", analysis::sigma_traditional, closed_form::sigma_traditional);
}

#[test]
fn enhancement_terms() {
    check("delta sigma", analysis::delta_sigma, closed_form::delta_sigma);
    check("sigma enhanced", analysis::sigma_enhanced, closed_form::sigma_enhanced);
}

#[test]
fn first_order_velocity() {
    check("u1", analysis::u_first_order, closed_form::u_first_order);
}

#[test]
fn theoretical_velocity_errors() {
    check("dv1", analysis::delta_v1, closed_form::delta_v1);
    check("dv2", analysis::delta_v2, closed_form::delta_v2);
}

#[test]
fn enhanced_attitude_matches_reference_through_t5_terms() {
    // The enhancement is derived from one extra Picard pass; it must agree
    // with the converged reference through t^5.
    for mc in motions() {
        let (reference, _) = analysis::sigma_fiter_converged(&mc, DEFAULT_DEGREE_CAP);
        let enhanced = analysis::sigma_enhanced(&mc);
        for k in 0..=5 {
            assert_eq!(enhanced.coeff(k), reference.coeff(k), "t^{k}");
        }
    }
}

#[test]
fn cubic_motion_keeps_order_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut matched = 0;
    let total = 12;
    for _ in 0..total {
        let mc = random_polynomial_motion(&mut rng, 3, 6);
        let orders: Vec<_> = analysis::error_order_pattern(&mc, DEFAULT_DEGREE_CAP)
            .into_iter()
            .map(|r| r.order)
            .collect();
        if orders.iter().zip(analysis::EXPECTED_ORDER_PATTERN).all(|(o, e)| *o == Some(e)) {
            matched += 1;
        }
    }
    // Higher-order motion can cancel a leading error term by accident, but
    // never lower the order; nearly all draws keep the pattern.
    assert!(matched >= total - 1, "{matched}/{total}");
}

#[test]
fn cubic_motion_never_lowers_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..20 {
        let mc = random_polynomial_motion(&mut rng, 3, 6);
        for (r, e) in analysis::error_order_pattern(&mc, DEFAULT_DEGREE_CAP)
            .iter()
            .zip(analysis::EXPECTED_ORDER_PATTERN)
        {
            assert!(r.order.map_or(true, |o| o >= e), "{} order {:?}", r.candidate, r.order);
        }
    }
}

#[test]
fn degree_cap_does_not_change_displayed_columns() {
    let mc = MotionCoefficients::table_example();
    let (s8, _) = analysis::sigma_fiter_converged(&mc, 8);
    let (s14, _) = analysis::sigma_fiter_converged(&mc, 14);
    let u8 = analysis::u_fiter(&mc, 8);
    let u14 = analysis::u_fiter(&mc, 14);
    assert_eq!(s14.truncate(8), s8);
    assert_eq!(u14.truncate(8), u8);
    for order in [1, 8] {
        assert_eq!(analysis::u_viagen(&mc, order, 14).truncate(8), analysis::u_viagen(&mc, order, 8));
    }
}

#[test]
fn degenerate_rate_collapses_attitude_rows() {
    let mc = MotionCoefficients::linear_ints([1, 2, 3], [2, 4, 6], [4, 5, 6], [9, 8, 7]);
    let trad = analysis::sigma_traditional(&mc);
    assert_eq!(analysis::sigma_enhanced(&mc), trad);
    assert_eq!(analysis::sigma_fiter_converged(&mc, 8).0, trad);
}

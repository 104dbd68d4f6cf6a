//! Random integer motion coefficients.

use rand::Rng;

use crate::analysis::{self, MotionCoefficients};
use crate::poly::RVec3;

fn random_vec<R: Rng>(rng: &mut R, bound: i64) -> RVec3 {
    RVec3::from_ints([(); 3].map(|_| rng.gen_range(-bound..=bound)))
}

/// Linear motion with integer coefficients in `[-bound, bound]` and a
/// non-collinear rate (`a_w x b_w != 0`).
pub fn random_linear_motion<R: Rng>(rng: &mut R, bound: i64) -> MotionCoefficients {
    loop {
        let mc = MotionCoefficients::linear(
            random_vec(rng, bound),
            random_vec(rng, bound),
            random_vec(rng, bound),
            random_vec(rng, bound),
        );
        if !mc.is_collinear_rate() {
            return mc;
        }
    }
}

/// Polynomial motion of the given degree (rate and force) with integer coefficients.
pub fn random_polynomial_motion<R: Rng>(rng: &mut R, degree: usize, bound: i64) -> MotionCoefficients {
    MotionCoefficients {
        omega: (0..=degree).map(|_| random_vec(rng, bound)).collect(),
        force: (0..=degree).map(|_| random_vec(rng, bound)).collect(),
    }
}

/// Result of one randomized order check.
#[derive(Clone, Debug)]
pub struct OrderTrial {
    pub motion: MotionCoefficients,
    pub orders: Vec<Option<usize>>,
}

impl OrderTrial {
    pub fn matches_expected(&self) -> bool {
        self.orders
            .iter()
            .zip(analysis::EXPECTED_ORDER_PATTERN)
            .all(|(o, e)| *o == Some(e))
    }
}

/// Runs the error-order pattern over `trials` random linear motions.
pub fn random_order_trials<R: Rng>(rng: &mut R, trials: usize, bound: i64, dmax: usize) -> Vec<OrderTrial> {
    (0..trials)
        .map(|_| {
            let motion = random_linear_motion(rng, bound);
            let orders = analysis::error_order_pattern(&motion, dmax)
                .into_iter()
                .map(|r| r.order)
                .collect();
            OrderTrial { motion, orders }
        })
        .collect()
}

//! Floating-point coefficients of the trigonometric series in `sigma^2`,
//! taken from the exact series of the symbolic crate.

use std::sync::OnceLock;

use inav_symbolic::series;
use inav_symbolic::ScalarPoly;

/// Series coefficients for one Taylor order.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigSeries {
    /// `sin(s)/s`
    pub sinc: Vec<f64>,
    /// `(1 - cos s)/s^2`
    pub one_minus_cos: Vec<f64>,
    /// `(1 - sin(s)/s)/s^2`
    pub one_minus_sinc: Vec<f64>,
    /// Double-cross-product coefficient of the rotation-vector rate.
    pub bortz: Vec<f64>,
}

const MAX_CACHED_ORDER: usize = 24;

fn to_f64(p: &ScalarPoly) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64()).collect()
}

impl TrigSeries {
    fn build(order: usize) -> Self {
        let n = series::terms_for_order(order);
        Self {
            sinc: to_f64(&series::sinc(n)),
            one_minus_cos: to_f64(&series::one_minus_cos_over_sq(n)),
            one_minus_sinc: to_f64(&series::one_minus_sinc_over_sq(n)),
            bortz: to_f64(&series::bortz_bracket(n)),
        }
    }

    /// Series truncated at `O(sigma^order)`; cached for small orders.
    pub fn of_order(order: usize) -> TrigSeries {
        static CACHE: OnceLock<Vec<TrigSeries>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| (0..=MAX_CACHED_ORDER).map(Self::build).collect());
        cache.get(order).cloned().unwrap_or_else(|| Self::build(order))
    }
}

/// Horner evaluation of a series in `y`.
pub fn eval_series(c: &[f64], y: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, k| acc * y + k)
}

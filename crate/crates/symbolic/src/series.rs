//! Exact Taylor series of the trigonometric coefficient functions that appear
//! in the rotation-vector and velocity equations, as power series in
//! `y = sigma^2`.
//!
//! A series "of order `n`" keeps the powers `sigma^(2k)` with `2k < n`, so order 8
//! carries four terms and order 1 carries only the constant.

use num_bigint::BigInt;

use crate::poly::ScalarPoly;
use crate::rational::Rational;

/// Number of `sigma^2` terms kept by a Taylor series truncated at `O(sigma^order)`.
pub fn terms_for_order(order: usize) -> usize {
    order.div_ceil(2).max(1)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

fn alternating(terms: usize, denom: impl Fn(u64) -> u64) -> ScalarPoly {
    ScalarPoly::new(
        (0..terms as u64)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                Rational::from_bigints(BigInt::from(sign), factorial(denom(k))).unwrap()
            })
            .collect(),
    )
}

/// `sin(sigma)/sigma = sum (-1)^k sigma^(2k) / (2k+1)!`
pub fn sinc(terms: usize) -> ScalarPoly {
    alternating(terms, |k| 2 * k + 1)
}

/// `(1 - cos sigma)/sigma^2 = sum (-1)^k sigma^(2k) / (2k+2)!`
pub fn one_minus_cos_over_sq(terms: usize) -> ScalarPoly {
    alternating(terms, |k| 2 * k + 2)
}

/// `(1 - sin(sigma)/sigma)/sigma^2 = sum (-1)^k sigma^(2k) / (2k+3)!`
pub fn one_minus_sinc_over_sq(terms: usize) -> ScalarPoly {
    alternating(terms, |k| 2 * k + 3)
}

/// Coefficient of the double cross product in the exact rotation-vector rate:
/// `(1/sigma^2) [1 - sigma sin(sigma) / (2 (1 - cos sigma))]`.
///
/// Built by exact power-series division of `sigma sin sigma` by
/// `2 (1 - cos sigma)`, both divided through by `sigma^2` first.
pub fn bortz_bracket(terms: usize) -> ScalarPoly {
    let n = terms + 1;
    // sigma sin sigma / sigma^2 = sinc; 2(1-cos sigma)/sigma^2 = 2 * one_minus_cos_over_sq
    let num = sinc(n);
    let den = one_minus_cos_over_sq(n).scale(&Rational::from_integer(2));
    let ratio = num.div_series(&den, n - 1).expect("series denominator has nonzero constant");
    // (1 - ratio) / y : drop the constant term (which is exactly 1) and shift.
    let shifted: Vec<Rational> = (1..n).map(|k| -ratio.coeff(k)).collect();
    ScalarPoly::new(shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn orders() {
        assert_eq!(terms_for_order(1), 1);
        assert_eq!(terms_for_order(2), 1);
        assert_eq!(terms_for_order(8), 4);
        assert_eq!(terms_for_order(9), 5);
    }

    #[test]
    fn small_angle_limits() {
        assert_eq!(sinc(4).coeff(0), Rational::one());
        assert_eq!(one_minus_cos_over_sq(4).coeff(0), rat(1, 2));
        assert_eq!(one_minus_sinc_over_sq(4).coeff(0), rat(1, 6));
        assert_eq!(bortz_bracket(4).coeff(0), rat(1, 12));
    }

    #[test]
    fn bortz_bracket_terms() {
        assert_eq!(
            bortz_bracket(4),
            ScalarPoly::new(vec![rat(1, 12), rat(1, 720), rat(1, 30240), rat(1, 1209600)])
        );
    }

    #[test]
    fn sinc_terms() {
        assert_eq!(
            sinc(4),
            ScalarPoly::new(vec![rat(1, 1), rat(-1, 6), rat(1, 120), rat(-1, 5040)])
        );
        assert_eq!(one_minus_cos_over_sq(2), ScalarPoly::new(vec![rat(1, 2), rat(-1, 24)]));
    }
}

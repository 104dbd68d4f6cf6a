//! Attitude and velocity algorithms expressed as exact transforms of the
//! polynomial motion coefficients, together with the error-order comparison
//! against the functional-iteration reference.
//!
//! Every operation works for an arbitrary-degree polynomial angular rate and
//! specific force. The linear case (`a + b t`) is the one the closed forms in
//! [`crate::closed_form`] describe; both routes agree exactly there.

use crate::poly::{sp_compose_vec, RVec3, VecPoly};
use crate::rational::rat;
use crate::series;

/// Default highest power of `t` kept by truncating operations.
pub const DEFAULT_DEGREE_CAP: usize = 8;

/// Taylor order used for the trigonometric coefficient functions in the
/// reference solution.
pub const TRIG_SERIES_ORDER: usize = 8;

/// Polynomial body angular rate `omega(t) = sum omega[k] t^k` and specific force
/// `f(t) = sum force[k] t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionCoefficients {
    pub omega: Vec<RVec3>,
    pub force: Vec<RVec3>,
}

impl MotionCoefficients {
    /// `omega = a_w + b_w t`, `f = a_f + b_f t`.
    pub fn linear(a_w: RVec3, b_w: RVec3, a_f: RVec3, b_f: RVec3) -> Self {
        Self { omega: vec![a_w, b_w], force: vec![a_f, b_f] }
    }

    pub fn linear_ints(a_w: [i64; 3], b_w: [i64; 3], a_f: [i64; 3], b_f: [i64; 3]) -> Self {
        Self::linear(
            RVec3::from_ints(a_w),
            RVec3::from_ints(b_w),
            RVec3::from_ints(a_f),
            RVec3::from_ints(b_f),
        )
    }

    /// The test vectors behind the published coefficient tables.
    pub fn table_example() -> Self {
        Self::linear_ints([4, 2, 3], [5, 8, 10], [4, 5, 6], [9, 8, 7])
    }

    pub fn omega_poly(&self) -> VecPoly {
        VecPoly::new(self.omega.clone())
    }

    pub fn force_poly(&self) -> VecPoly {
        VecPoly::new(self.force.clone())
    }

    /// Angular increment `alpha(t) = int_0^t omega`.
    pub fn angle_increment(&self) -> VecPoly {
        self.omega_poly().integrate()
    }

    /// Velocity increment `v(t) = int_0^t f`.
    pub fn velocity_increment(&self) -> VecPoly {
        self.force_poly().integrate()
    }

    /// Linear coefficient accessors; zero when the list is shorter.
    pub fn coeff_omega(&self, k: usize) -> RVec3 {
        self.omega.get(k).cloned().unwrap_or_else(RVec3::zero)
    }

    pub fn coeff_force(&self, k: usize) -> RVec3 {
        self.force.get(k).cloned().unwrap_or_else(RVec3::zero)
    }

    /// True when `omega` is at most linear and its two coefficients are parallel
    /// (or either vanishes).
    pub fn is_collinear_rate(&self) -> bool {
        self.omega.len() <= 2 && self.coeff_omega(0).cross(&self.coeff_omega(1)).is_zero()
    }
}

/// Rotation vector from the simplified Goodman-Robinson rate
/// `sigma' = omega + 1/2 alpha x omega`.
pub fn sigma_traditional(mc: &MotionCoefficients) -> VecPoly {
    let w = mc.omega_poly();
    let alpha = w.integrate();
    w.linear(&alpha.cross(&w, None), &rat(1, 2)).integrate()
}

/// Traditional rotation vector plus the enhanced compensation: the traditional
/// solution substituted into the exact rate with the bracket frozen at 1/12.
pub fn sigma_enhanced(mc: &MotionCoefficients) -> VecPoly {
    let w = mc.omega_poly();
    let trad = sigma_traditional(mc);
    let sw = trad.cross(&w, None);
    let ssw = trad.cross(&sw, None);
    w.linear(&sw, &rat(1, 2)).linear(&ssw, &rat(1, 12)).integrate()
}

/// The enhancement term alone, `sigma_enhanced - sigma_traditional`.
pub fn delta_sigma(mc: &MotionCoefficients) -> VecPoly {
    sigma_enhanced(mc).sub(&sigma_traditional(mc))
}

/// One Picard step on the exact rotation-vector equation.
fn bortz_picard_step(w: &VecPoly, prev: &VecPoly, bracket: &crate::poly::ScalarPoly, dmax: usize) -> VecPoly {
    let cap = Some(dmax);
    let sw = prev.cross(w, cap);
    let ssw = prev.cross(&sw, cap);
    let c = sp_compose_vec(bracket, prev, dmax);
    w.truncate(dmax)
        .linear(&sw, &rat(1, 2))
        .add(&ssw.scaled_by(&c, cap))
        .integrate()
        .truncate(dmax)
}

/// Successive Picard iterates `sigma^(1) .. sigma^(iterations)` starting from
/// `sigma^(0) = 0`, each truncated at `t^dmax`.
pub fn sigma_fiter_iterates(mc: &MotionCoefficients, iterations: usize, dmax: usize) -> Vec<VecPoly> {
    let w = mc.omega_poly();
    let bracket = series::bortz_bracket(series::terms_for_order(TRIG_SERIES_ORDER));
    let mut out = Vec::with_capacity(iterations);
    let mut sigma = VecPoly::zero();
    for _ in 0..iterations {
        sigma = bortz_picard_step(&w, &sigma, &bracket, dmax);
        out.push(sigma.clone());
    }
    out
}

/// Picard iterate number `iterations` (at least one) of the exact rotation-vector equation.
pub fn sigma_fiter(mc: &MotionCoefficients, iterations: usize, dmax: usize) -> VecPoly {
    sigma_fiter_iterates(mc, iterations.max(1), dmax)
        .pop()
        .unwrap_or_default()
}

/// Iterates until two successive iterates agree through `t^dmax`.
///
/// Each step fixes at least one more coefficient, so at most `dmax + 1` steps
/// are needed. Returns the fixed point and the first iteration count reaching it.
pub fn sigma_fiter_converged(mc: &MotionCoefficients, dmax: usize) -> (VecPoly, usize) {
    let w = mc.omega_poly();
    let bracket = series::bortz_bracket(series::terms_for_order(TRIG_SERIES_ORDER));
    let mut sigma = bortz_picard_step(&w, &VecPoly::zero(), &bracket, dmax);
    let mut reached = 1;
    for l in 2..=dmax + 2 {
        let next = bortz_picard_step(&w, &sigma, &bracket, dmax);
        if next == sigma {
            break;
        }
        sigma = next;
        reached = l;
    }
    (sigma, reached)
}

/// `int (I + alpha x) f dt`, the first-order transformed specific-force integral.
pub fn u_first_order(mc: &MotionCoefficients) -> VecPoly {
    let f = mc.force_poly();
    let alpha = mc.angle_increment();
    f.add(&alpha.cross(&f, None)).integrate()
}

fn second_order_correction(mc: &MotionCoefficients) -> VecPoly {
    let alpha = mc.angle_increment();
    let v = mc.velocity_increment();
    alpha.cross(&alpha.cross(&v, None), None).scale(&rat(1, 6))
}

/// First-order integral plus `alpha x (alpha x v) / 6`.
pub fn u_second_order(mc: &MotionCoefficients) -> VecPoly {
    u_first_order(mc).add(&second_order_correction(mc))
}

/// `int (sigma_trad - alpha) x f dt`.
pub fn delta_v1(mc: &MotionCoefficients) -> VecPoly {
    let diff = sigma_traditional(mc).sub(&mc.angle_increment());
    diff.cross(&mc.force_poly(), None).integrate()
}

/// `1/2 int sigma_trad x (sigma_trad x f) dt - alpha x (alpha x v) / 6`.
pub fn delta_v2(mc: &MotionCoefficients) -> VecPoly {
    let s = sigma_traditional(mc);
    let f = mc.force_poly();
    s.cross(&s.cross(&f, None), None)
        .integrate()
        .scale(&rat(1, 2))
        .sub(&second_order_correction(mc))
}

/// Enhanced first-order velocity integral: first-order plus `delta_v1`.
pub fn u_enhanced_first(mc: &MotionCoefficients) -> VecPoly {
    u_first_order(mc).add(&delta_v1(mc))
}

/// Enhanced second-order velocity integral: second-order plus `delta_v1 + delta_v2`.
pub fn u_enhanced(mc: &MotionCoefficients) -> VecPoly {
    u_second_order(mc).add(&delta_v1(mc)).add(&delta_v2(mc))
}

/// Velocity translation vector `eta = v + 1/2 int (alpha x f - omega x v) dt`.
pub fn velocity_translation(mc: &MotionCoefficients) -> VecPoly {
    let alpha = mc.angle_increment();
    let v = mc.velocity_increment();
    let integrand = alpha.cross(&mc.force_poly(), None).sub(&mc.omega_poly().cross(&v, None));
    v.linear(&integrand.integrate(), &rat(1, 2))
}

/// ViaGen transformed specific-force integral with the trigonometric
/// coefficients expanded to Taylor order `trig_order` in `sigma`, truncated at
/// `t^dmax`. Order 1 reduces the coefficients to the constants 1/2 and 1/6.
pub fn u_viagen(mc: &MotionCoefficients, trig_order: usize, dmax: usize) -> VecPoly {
    let cap = Some(dmax);
    let terms = series::terms_for_order(trig_order);
    let s = sigma_traditional(mc).truncate(dmax);
    let eta = velocity_translation(mc).truncate(dmax);
    let c1 = sp_compose_vec(&series::one_minus_cos_over_sq(terms), &s, dmax);
    let c2 = sp_compose_vec(&series::one_minus_sinc_over_sq(terms), &s, dmax);
    let se = s.cross(&eta, cap);
    let sse = s.cross(&se, cap);
    eta.add(&se.scaled_by(&c1, cap))
        .add(&sse.scaled_by(&c2, cap))
        .truncate(dmax)
}

/// Reference transformed specific-force integral: the specific force rotated by
/// the converged functional-iteration rotation vector and integrated exactly.
pub fn u_fiter(mc: &MotionCoefficients, dmax: usize) -> VecPoly {
    let (sigma, _) = sigma_fiter_converged(mc, dmax);
    u_from_rotation(mc, &sigma, dmax)
}

/// `int [I + sin(s)/s (s x) + (1 - cos s)/s^2 (s x)^2] f dt` for a given
/// rotation-vector polynomial `s`.
pub fn u_from_rotation(mc: &MotionCoefficients, sigma: &VecPoly, dmax: usize) -> VecPoly {
    let cap = Some(dmax);
    let terms = series::terms_for_order(TRIG_SERIES_ORDER);
    let f = mc.force_poly().truncate(dmax);
    let c1 = sp_compose_vec(&series::sinc(terms), sigma, dmax);
    let c2 = sp_compose_vec(&series::one_minus_cos_over_sq(terms), sigma, dmax);
    let sf = sigma.cross(&f, cap);
    let ssf = sigma.cross(&sf, cap);
    f.add(&sf.scaled_by(&c1, cap))
        .add(&ssf.scaled_by(&c2, cap))
        .integrate()
        .truncate(dmax)
}

/// Outcome of comparing a candidate polynomial against a reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorOrderReport {
    pub candidate: String,
    pub reference: String,
    /// Lowest power of `t` whose vector coefficient differs; `None` when the two
    /// agree through the degree cap.
    pub order: Option<usize>,
    /// `candidate - reference` at that power (zero when identical).
    pub delta: RVec3,
}

impl ErrorOrderReport {
    pub fn is_identical(&self) -> bool {
        self.order.is_none()
    }
}

/// Lowest power of `t`, up to `dmax`, at which the two polynomials differ.
pub fn error_order(
    candidate_label: &str,
    candidate: &VecPoly,
    reference_label: &str,
    reference: &VecPoly,
    dmax: usize,
) -> ErrorOrderReport {
    let first = (0..=dmax).find(|&k| candidate.coeff(k) != reference.coeff(k));
    ErrorOrderReport {
        candidate: candidate_label.to_string(),
        reference: reference_label.to_string(),
        order: first,
        delta: first.map_or_else(RVec3::zero, |k| candidate.coeff(k).sub(&reference.coeff(k))),
    }
}

/// Error orders of every algorithm against the functional-iteration reference,
/// in the order: attitude traditional, attitude enhanced, velocity second-order,
/// velocity enhanced, ViaGen-8, ViaGen-1.
pub fn error_order_pattern(mc: &MotionCoefficients, dmax: usize) -> Vec<ErrorOrderReport> {
    let (sigma_ref, _) = sigma_fiter_converged(mc, dmax);
    let u_ref = u_from_rotation(mc, &sigma_ref, dmax);
    let trunc = |p: VecPoly| p.truncate(dmax);
    vec![
        error_order("Typical attitude", &trunc(sigma_traditional(mc)), "FIterTrue", &sigma_ref, dmax),
        error_order("Enhanced attitude", &trunc(sigma_enhanced(mc)), "FIterTrue", &sigma_ref, dmax),
        error_order("Typical velocity", &trunc(u_second_order(mc)), "FIterTrue", &u_ref, dmax),
        error_order("Enhanced velocity", &trunc(u_enhanced(mc)), "FIterTrue", &u_ref, dmax),
        error_order("ViaGen-8", &u_viagen(mc, 8, dmax), "FIterTrue", &u_ref, dmax),
        error_order("ViaGen-1", &u_viagen(mc, 1, dmax), "FIterTrue", &u_ref, dmax),
    ]
}

/// The order pattern reported for the published test vectors.
pub const EXPECTED_ORDER_PATTERN: [usize; 6] = [5, 6, 4, 4, 5, 4];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn x_row(p: &VecPoly) -> Vec<Rational> {
        (1..=8).map(|k| p.coeff(k).0[0].clone()).collect()
    }

    fn parse(row: &[&str]) -> Vec<Rational> {
        row.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn traditional_row() {
        let mc = MotionCoefficients::table_example();
        assert_eq!(x_row(&sigma_traditional(&mc)), parse(&["4", "5/2", "-1/3", "0", "0", "0", "0", "0"]));
    }

    #[test]
    fn traditional_without_constant_rate() {
        let mc = MotionCoefficients::linear_ints([0, 0, 0], [5, 8, 10], [0, 0, 0], [0, 0, 0]);
        let s = sigma_traditional(&mc);
        assert_eq!(s, VecPoly::new(vec![RVec3::zero(), RVec3::zero(), RVec3::from_ints([5, 8, 10]).scale(&rat(1, 2))]));
    }

    #[test]
    fn collinear_rate_has_no_enhancement() {
        let mc = MotionCoefficients::linear_ints([1, 2, 3], [2, 4, 6], [1, 0, 0], [0, 1, 0]);
        assert!(mc.is_collinear_rate());
        assert!(delta_sigma(&mc).is_zero());
        assert_eq!(sigma_traditional(&mc).degree(), Some(2));
        assert!(delta_v1(&mc).is_zero());
    }

    #[test]
    fn enhanced_row() {
        let mc = MotionCoefficients::table_example();
        assert_eq!(
            x_row(&sigma_enhanced(&mc)),
            parse(&["4", "5/2", "-1/3", "0", "-697/360", "-11/24", "-251/336", "-625/1536"])
        );
    }

    #[test]
    fn first_fiter_iterate_is_plain_integral() {
        let mc = MotionCoefficients::table_example();
        assert_eq!(x_row(&sigma_fiter(&mc, 1, 8)), parse(&["4", "5/2", "0", "0", "0", "0", "0", "0"]));
    }

    #[test]
    fn constant_rate_is_a_fixed_point() {
        let mc = MotionCoefficients::linear_ints([3, -1, 2], [0, 0, 0], [1, 1, 1], [0, 0, 0]);
        let its = sigma_fiter_iterates(&mc, 4, 8);
        let expected = VecPoly::new(vec![RVec3::zero(), RVec3::from_ints([3, -1, 2])]);
        assert!(its.iter().all(|s| *s == expected));
        assert_eq!(sigma_fiter_converged(&mc, 8).1, 1);
    }

    #[test]
    fn fiter_converges_by_seventh_iterate() {
        let mc = MotionCoefficients::table_example();
        let its = sigma_fiter_iterates(&mc, 8, 8);
        assert_eq!(its[6], its[7]);
        assert_ne!(its[5], its[6]);
        assert_eq!(sigma_fiter_converged(&mc, 8), (its[6].clone(), 7));
    }

    #[test]
    fn velocity_zero_rotation_reduces_to_increment() {
        let mc = MotionCoefficients::linear_ints([0, 0, 0], [0, 0, 0], [4, 5, 6], [9, 8, 7]);
        let v = mc.velocity_increment();
        assert_eq!(u_first_order(&mc), v);
        assert_eq!(u_second_order(&mc), v);
        assert_eq!(u_enhanced(&mc), v);
        assert_eq!(u_viagen(&mc, 8, 8), v);
        assert_eq!(u_viagen(&mc, 1, 8), v);
        assert_eq!(u_fiter(&mc, 8), v);
    }

    #[test]
    fn zero_force_gives_zero_velocity() {
        let mc = MotionCoefficients::linear_ints([4, 2, 3], [5, 8, 10], [0, 0, 0], [0, 0, 0]);
        assert!(u_second_order(&mc).is_zero());
        assert!(u_fiter(&mc, 8).is_zero());
    }

    #[test]
    fn constant_rate_and_force_kill_delta_v2() {
        let mc = MotionCoefficients::linear_ints([4, 2, 3], [0, 0, 0], [4, 5, 6], [0, 0, 0]);
        assert!(delta_v2(&mc).is_zero());
        assert_eq!(u_enhanced(&mc), u_second_order(&mc).add(&delta_v1(&mc)));
    }

    #[test]
    fn force_along_spin_axis_is_unrotated() {
        let mc = MotionCoefficients::linear_ints([0, 0, 3], [0, 0, 0], [0, 0, 2], [0, 0, 0]);
        assert_eq!(u_fiter(&mc, 8), mc.velocity_increment());
    }

    #[test]
    fn identical_polynomials_report_no_order() {
        let mc = MotionCoefficients::table_example();
        let s = sigma_traditional(&mc);
        let r = error_order("a", &s, "b", &s, 8);
        assert!(r.is_identical());
        assert!(r.delta.is_zero());
    }

    #[test]
    fn order_pattern_for_table_vectors() {
        let orders: Vec<_> = error_order_pattern(&MotionCoefficients::table_example(), 8)
            .iter()
            .map(|r| r.order.unwrap())
            .collect();
        assert_eq!(orders, EXPECTED_ORDER_PATTERN);
    }
}

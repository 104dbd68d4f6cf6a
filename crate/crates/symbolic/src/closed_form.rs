//! Closed-form polynomials for the linear motion case
//! (`omega = a_w + b_w t`, `f = a_f + b_f t`).
//!
//! These are written term by term, independently of the integral forms in
//! [`crate::analysis`], and serve as a second route to the same polynomials.
//! Coefficients of the motion beyond the linear term are ignored.

use crate::analysis::MotionCoefficients;
use crate::poly::{RVec3, VecPoly};
use crate::rational::rat;

fn monomials(terms: &[(usize, RVec3)]) -> VecPoly {
    let deg = terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut out = vec![RVec3::zero(); deg + 1];
    for (k, v) in terms {
        out[*k] = out[*k].add(v);
    }
    VecPoly::new(out)
}

struct Lin {
    aw: RVec3,
    bw: RVec3,
    af: RVec3,
    bf: RVec3,
    ab: RVec3,
}

impl Lin {
    fn of(mc: &MotionCoefficients) -> Self {
        let (aw, bw) = (mc.coeff_omega(0), mc.coeff_omega(1));
        let ab = aw.cross(&bw);
        Self { aw, bw, af: mc.coeff_force(0), bf: mc.coeff_force(1), ab }
    }
}

/// `a_w t + b_w t^2/2 + a_w x b_w t^3/12`
pub fn sigma_traditional(mc: &MotionCoefficients) -> VecPoly {
    let l = Lin::of(mc);
    monomials(&[(1, l.aw.clone()), (2, l.bw.scale(&rat(1, 2))), (3, l.ab.scale(&rat(1, 12)))])
}

/// The four-term enhancement of the rotation vector, degrees 5 through 8.
pub fn delta_sigma(mc: &MotionCoefficients) -> VecPoly {
    let Lin { aw, bw, ab, .. } = Lin::of(mc);
    let ab_b = ab.cross(&bw);
    let ab_a = ab.cross(&aw);
    let t5 = ab_b.add(&aw.cross(&ab_a).scale(&rat(1, 3))).scale(&rat(1, 240));
    let t6 = aw.cross(&ab_b).add(&bw.cross(&ab_a).scale(&rat(1, 2))).scale(&rat(1, 864));
    let t7 = bw.cross(&ab_b).add(&ab.cross(&ab_a).scale(&rat(1, 6))).scale(&rat(1, 2016));
    let t8 = ab.cross(&ab_b).scale(&rat(1, 13824));
    monomials(&[(5, t5), (6, t6), (7, t7), (8, t8)])
}

pub fn sigma_enhanced(mc: &MotionCoefficients) -> VecPoly {
    sigma_traditional(mc).add(&delta_sigma(mc))
}

/// `v + (a_w x a_f) t^2/2 + (b_w x a_f / 2 + a_w x b_f) t^3/3 + (b_w x b_f) t^4/8`
pub fn u_first_order(mc: &MotionCoefficients) -> VecPoly {
    let Lin { aw, bw, af, bf, .. } = Lin::of(mc);
    let t3 = bw.cross(&af).scale(&rat(1, 2)).add(&aw.cross(&bf)).scale(&rat(1, 3));
    monomials(&[
        (1, af.clone()),
        (2, bf.scale(&rat(1, 2)).add(&aw.cross(&af).scale(&rat(1, 2)))),
        (3, t3),
        (4, bw.cross(&bf).scale(&rat(1, 8))),
    ])
}

pub fn delta_v1(mc: &MotionCoefficients) -> VecPoly {
    let Lin { af, bf, ab, .. } = Lin::of(mc);
    monomials(&[(4, ab.cross(&af).scale(&rat(1, 48))), (5, ab.cross(&bf).scale(&rat(1, 60)))])
}

pub fn delta_v2(mc: &MotionCoefficients) -> VecPoly {
    let Lin { aw, bw, af, bf, ab } = Lin::of(mc);
    let t4 = aw
        .cross(&aw.cross(&bf))
        .scale(&rat(2, 1))
        .sub(&aw.cross(&bw.cross(&af)))
        .sub(&bw.cross(&aw.cross(&af)))
        .scale(&rat(1, 48));
    let t5 = aw
        .cross(&bw.cross(&bf))
        .add(&aw.cross(&ab.cross(&af)))
        .add(&bw.cross(&aw.cross(&bf)))
        .sub(&bw.cross(&bw.cross(&af)).scale(&rat(2, 1)))
        .add(&ab.cross(&aw.cross(&af)))
        .scale(&rat(1, 120));
    let t6 = aw
        .cross(&ab.cross(&bf))
        .add(&bw.cross(&ab.cross(&af)).scale(&rat(1, 2)))
        .add(&ab.cross(&aw.cross(&bf)))
        .add(&ab.cross(&bw.cross(&af)).scale(&rat(1, 2)))
        .scale(&rat(1, 144));
    let t7 = bw
        .cross(&ab.cross(&bf))
        .add(&ab.cross(&bw.cross(&bf)))
        .add(&ab.cross(&ab.cross(&af)).scale(&rat(1, 6)))
        .scale(&rat(1, 336));
    let t8 = ab.cross(&ab.cross(&bf)).scale(&rat(1, 2304));
    monomials(&[(4, t4), (5, t5), (6, t6), (7, t7), (8, t8)])
}

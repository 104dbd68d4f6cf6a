//! Scalar and 3-vector polynomials in the time variable `t` with exact
//! rational coefficients.
//!
//! Coefficient `k` always multiplies `t^k`. Trailing zero coefficients may be
//! present; equality ignores them, so a truncated and an untruncated copy of the
//! same polynomial compare equal.

use std::fmt;

use crate::rational::Rational;
use crate::AlgebraError;

/// A 3-vector of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RVec3(pub [Rational; 3]);

impl RVec3 {
    pub fn zero() -> Self {
        Self([Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn from_ints(v: [i64; 3]) -> Self {
        Self(v.map(Rational::from_integer))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn add(&self, o: &RVec3) -> RVec3 {
        RVec3([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }

    pub fn sub(&self, o: &RVec3) -> RVec3 {
        RVec3([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }

    pub fn scale(&self, c: &Rational) -> RVec3 {
        RVec3([&self.0[0] * c, &self.0[1] * c, &self.0[2] * c])
    }

    pub fn cross(&self, o: &RVec3) -> RVec3 {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &o.0;
        RVec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn dot(&self, o: &RVec3) -> Rational {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.0[0].to_f64(), self.0[1].to_f64(), self.0[2].to_f64()]
    }
}

impl fmt::Debug for RVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.0[0], self.0[1], self.0[2])
    }
}

fn product_len(a: usize, b: usize, cap: Option<usize>) -> usize {
    if a == 0 || b == 0 {
        return 0;
    }
    let full = a + b - 1;
    cap.map_or(full, |d| full.min(d + 1))
}

/// Polynomial in `t` with rational coefficients.
#[derive(Clone, Default)]
pub struct ScalarPoly {
    coeffs: Vec<Rational>,
}

impl ScalarPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest power with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn add(&self, o: &ScalarPoly) -> ScalarPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ScalarPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Product, dropping powers above `dmax` when given.
    pub fn mul(&self, o: &ScalarPoly, dmax: Option<usize>) -> ScalarPoly {
        let n = product_len(self.coeffs.len(), o.coeffs.len(), dmax);
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    out[i + j] += &(a * b);
                }
            }
        }
        ScalarPoly::new(out)
    }

    pub fn truncate(&self, dmax: usize) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().take(dmax + 1).cloned().collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn integrate(&self) -> ScalarPoly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c * &Rational::new(1, k as i64 + 1).unwrap());
        }
        ScalarPoly::new(out)
    }

    pub fn derivative(&self) -> ScalarPoly {
        ScalarPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Rational::from_integer(k as i64))
                .collect(),
        )
    }

    /// Truncated power-series quotient `self / den` through `t^dmax`.
    pub fn div_series(&self, den: &ScalarPoly, dmax: usize) -> Result<ScalarPoly, AlgebraError> {
        let d0 = den.coeff(0);
        let inv = d0.recip()?;
        let mut q: Vec<Rational> = Vec::with_capacity(dmax + 1);
        for k in 0..=dmax {
            let mut acc = self.coeff(k);
            for (j, qj) in q.iter().enumerate() {
                acc = acc - qj * &den.coeff(k - j);
            }
            q.push(acc * &inv);
        }
        Ok(ScalarPoly::new(q))
    }
}

impl PartialEq for ScalarPoly {
    fn eq(&self, o: &Self) -> bool {
        let n = self.coeffs.len().max(o.coeffs.len());
        (0..n).all(|k| self.coeff(k) == o.coeff(k))
    }
}

impl Eq for ScalarPoly {}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Polynomial in `t` whose coefficients are rational 3-vectors.
#[derive(Clone, Default)]
pub struct VecPoly {
    coeffs: Vec<RVec3>,
}

impl VecPoly {
    pub fn new(coeffs: Vec<RVec3>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[RVec3] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RVec3 {
        self.coeffs.get(k).cloned().unwrap_or_else(RVec3::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn add(&self, o: &VecPoly) -> VecPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        VecPoly::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &VecPoly) -> VecPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        VecPoly::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn scale(&self, c: &Rational) -> VecPoly {
        VecPoly::new(self.coeffs.iter().map(|v| v.scale(c)).collect())
    }

    /// `self + c * q`.
    pub fn linear(&self, q: &VecPoly, c: &Rational) -> VecPoly {
        self.add(&q.scale(c))
    }

    /// Coefficient of `t^k` is `sum_{i+j=k} P_i x Q_j`; powers above `dmax` dropped.
    pub fn cross(&self, o: &VecPoly, dmax: Option<usize>) -> VecPoly {
        let n = product_len(self.coeffs.len(), o.coeffs.len(), dmax);
        let mut out = vec![RVec3::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    out[i + j] = out[i + j].add(&a.cross(b));
                }
            }
        }
        VecPoly::new(out)
    }

    pub fn dot(&self, o: &VecPoly, dmax: Option<usize>) -> ScalarPoly {
        let n = product_len(self.coeffs.len(), o.coeffs.len(), dmax);
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    out[i + j] += &a.dot(b);
                }
            }
        }
        ScalarPoly::new(out)
    }

    /// Scalar polynomial times vector polynomial.
    pub fn scaled_by(&self, s: &ScalarPoly, dmax: Option<usize>) -> VecPoly {
        let n = product_len(s.coeffs().len(), self.coeffs.len(), dmax);
        let mut out = vec![RVec3::zero(); n];
        for (i, a) in s.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, v) in self.coeffs.iter().enumerate() {
                if i + j < n {
                    out[i + j] = out[i + j].add(&v.scale(a));
                }
            }
        }
        VecPoly::new(out)
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> VecPoly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(RVec3::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c.scale(&Rational::new(1, k as i64 + 1).unwrap()));
        }
        VecPoly::new(out)
    }

    pub fn derivative(&self) -> VecPoly {
        VecPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer(k as i64)))
                .collect(),
        )
    }

    pub fn truncate(&self, dmax: usize) -> VecPoly {
        VecPoly::new(self.coeffs.iter().take(dmax + 1).cloned().collect())
    }

    pub fn eval(&self, t: &Rational) -> RVec3 {
        self.coeffs
            .iter()
            .rev()
            .fold(RVec3::zero(), |acc, c| acc.scale(t).add(c))
    }

    pub fn component(&self, axis: usize) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().map(|v| v.0[axis].clone()).collect())
    }

    pub fn from_components(parts: [&ScalarPoly; 3]) -> VecPoly {
        let n = parts.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        VecPoly::new(
            (0..n)
                .map(|k| RVec3([parts[0].coeff(k), parts[1].coeff(k), parts[2].coeff(k)]))
                .collect(),
        )
    }
}

impl PartialEq for VecPoly {
    fn eq(&self, o: &Self) -> bool {
        let n = self.coeffs.len().max(o.coeffs.len());
        (0..n).all(|k| self.coeff(k) == o.coeff(k))
    }
}

impl Eq for VecPoly {}

impl fmt::Debug for VecPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Substitutes `sigma^2 = P.P` into a power series in `sigma^2` and returns the
/// resulting time polynomial truncated at `t^dmax`.
///
/// `series` holds the coefficients of `(sigma^2)^k`, not of `sigma^k`.
pub fn sp_compose_vec(series: &ScalarPoly, p: &VecPoly, dmax: usize) -> ScalarPoly {
    let sq = p.dot(p, Some(dmax));
    series
        .coeffs()
        .iter()
        .rev()
        .fold(ScalarPoly::zero(), |acc, c| {
            acc.mul(&sq, Some(dmax)).add(&ScalarPoly::constant(c.clone()))
        })
        .truncate(dmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(x: [i64; 3]) -> RVec3 {
        RVec3::from_ints(x)
    }

    #[test]
    fn linear_combination_matches_table_row() {
        let a = VecPoly::new(vec![RVec3::zero(), v([4, 2, 3])]);
        let b = VecPoly::new(vec![RVec3::zero(), RVec3::zero(), v([5, 8, 10]).scale(&rat(1, 2))]);
        let sum = a.linear(&b, &Rational::one());
        assert_eq!(sum.component(0), ScalarPoly::new(vec![rat(0, 1), rat(4, 1), rat(5, 2)]));
        assert_eq!(a.linear(&b, &Rational::zero()), a);
        assert!(a.linear(&a, &rat(-1, 1)).is_zero());
    }

    #[test]
    fn basis_cross_product() {
        let x = VecPoly::new(vec![RVec3::zero(), v([1, 0, 0])]);
        let y = VecPoly::new(vec![RVec3::zero(), v([0, 1, 0])]);
        assert_eq!(
            x.cross(&y, None),
            VecPoly::new(vec![RVec3::zero(), RVec3::zero(), v([0, 0, 1])])
        );
        assert!(x.cross(&x, None).is_zero());
    }

    #[test]
    fn table_one_cross_term() {
        let ab = v([4, 2, 3]).cross(&v([5, 8, 10]));
        assert_eq!(ab, v([-4, -25, 22]));
        let p = VecPoly::new(vec![RVec3::zero(), RVec3::zero(), ab.scale(&rat(1, 4))]);
        let q = p.integrate();
        assert_eq!(q.coeff(3).0[0], rat(-1, 3));
        assert_eq!(q.degree(), Some(3));
    }

    #[test]
    fn integrate_basics() {
        let p = VecPoly::new(vec![v([1, 2, 3]), v([4, 6, 8])]);
        assert_eq!(
            p.integrate(),
            VecPoly::new(vec![RVec3::zero(), v([1, 2, 3]), v([2, 3, 4])])
        );
        assert!(VecPoly::zero().integrate().is_zero());
        assert_eq!(p.integrate().degree(), Some(2));
    }

    #[test]
    fn truncation() {
        let p = VecPoly::new(vec![RVec3::zero(), v([1, 1, 1]), v([2, 2, 2])]);
        assert_eq!(p.truncate(1), VecPoly::new(vec![RVec3::zero(), v([1, 1, 1])]));
        assert_eq!(p.truncate(2), p);
        assert_eq!(p.truncate(7), p);
    }

    #[test]
    fn trailing_zeros_ignored() {
        let p = ScalarPoly::new(vec![rat(1, 2)]);
        let q = ScalarPoly::new(vec![rat(1, 2), Rational::zero(), Rational::zero()]);
        assert_eq!(p, q);
        assert_eq!(q.degree(), Some(0));
    }

    #[test]
    fn compose_constant_terms() {
        let series = ScalarPoly::new(vec![rat(1, 12), rat(1, 720)]);
        let p = VecPoly::new(vec![RVec3::zero(), v([1, 0, 0])]);
        // 1/12 + t^2/720
        assert_eq!(
            sp_compose_vec(&series, &p, 8),
            ScalarPoly::new(vec![rat(1, 12), Rational::zero(), rat(1, 720)])
        );
        assert_eq!(sp_compose_vec(&series, &p, 1), ScalarPoly::constant(rat(1, 12)));
    }

    #[test]
    fn series_division() {
        // 1/(1-t) = 1 + t + t^2 + ...
        let one = ScalarPoly::constant(Rational::one());
        let den = ScalarPoly::new(vec![Rational::one(), rat(-1, 1)]);
        let q = one.div_series(&den, 4).unwrap();
        assert_eq!(q, ScalarPoly::new(vec![Rational::one(); 5]));
        assert!(one.div_series(&ScalarPoly::new(vec![Rational::zero(), Rational::one()]), 2).is_err());
    }
}

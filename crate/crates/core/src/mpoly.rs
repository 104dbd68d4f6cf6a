//! Floating-point polynomials in time with scalar or 3-vector coefficients,
//! and the fit of a polynomial rate to integrated increments.

use nalgebra::{DMatrix, DVector, Vector3};

use crate::NavError;

/// `sum c[k] t^k` with scalar coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly1(pub Vec<f64>);

impl Poly1 {
    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn mul(&self, o: &Poly1) -> Poly1 {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly1::default();
        }
        let mut out = vec![0.0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1(out)
    }

    /// `series(p)` for a power series in the argument.
    pub fn compose(series: &[f64], p: &Poly1) -> Poly1 {
        series
            .iter()
            .rev()
            .fold(Poly1::default(), |acc, c| acc.mul(p).add(&Poly1(vec![*c])))
    }

    pub fn add(&self, o: &Poly1) -> Poly1 {
        let n = self.0.len().max(o.0.len());
        Poly1((0..n).map(|k| self.0.get(k).unwrap_or(&0.0) + o.0.get(k).unwrap_or(&0.0)).collect())
    }
}

/// `sum c[k] t^k` with 3-vector coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly3(pub Vec<Vector3<f64>>);

impl Poly3 {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Vector3<f64> {
        self.0.get(k).copied().unwrap_or_else(Vector3::zeros)
    }

    pub fn eval(&self, t: f64) -> Vector3<f64> {
        self.0.iter().rev().fold(Vector3::zeros(), |acc, c| acc * t + c)
    }

    pub fn add(&self, o: &Poly3) -> Poly3 {
        let n = self.0.len().max(o.0.len());
        Poly3((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly3) -> Poly3 {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Poly3 {
        Poly3(self.0.iter().map(|v| v * c).collect())
    }

    /// `self + c q`
    pub fn linear(&self, q: &Poly3, c: f64) -> Poly3 {
        self.add(&q.scale(c))
    }

    fn bilinear<T: Clone + Default + std::ops::AddAssign>(
        &self,
        o: &Poly3,
        op: impl Fn(&Vector3<f64>, &Vector3<f64>) -> T,
    ) -> Vec<T> {
        if self.0.is_empty() || o.0.is_empty() {
            return Vec::new();
        }
        let mut out = vec![T::default(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += op(a, b);
            }
        }
        out
    }

    pub fn cross(&self, o: &Poly3) -> Poly3 {
        Poly3(self.bilinear(o, |a, b| a.cross(b)))
    }

    pub fn dot(&self, o: &Poly3) -> Poly1 {
        Poly1(self.bilinear(o, |a, b| a.dot(b)))
    }

    pub fn scaled_by(&self, s: &Poly1) -> Poly3 {
        if self.0.is_empty() || s.0.is_empty() {
            return Poly3::default();
        }
        let mut out = vec![Vector3::zeros(); self.0.len() + s.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in s.0.iter().enumerate() {
                out[i + j] += a * *b;
            }
        }
        Poly3(out)
    }

    /// Antiderivative vanishing at zero.
    pub fn integrate(&self) -> Poly3 {
        let mut out = vec![Vector3::zeros()];
        out.extend(self.0.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)));
        Poly3(out)
    }

    pub fn derivative(&self) -> Poly3 {
        Poly3(self.0.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect())
    }

    /// `p(c t)`
    pub fn rescale_time(&self, c: f64) -> Poly3 {
        let mut f = 1.0;
        Poly3(
            self.0
                .iter()
                .map(|v| {
                    let out = v * f;
                    f *= c;
                    out
                })
                .collect(),
        )
    }
}

/// Moment matrix `M[k][j] = int over subinterval k of t^j`, interval `[0, T]`
/// split into `n` equal parts.
pub fn moment_matrix(n: usize, t_total: f64) -> DMatrix<f64> {
    let h = t_total / n as f64;
    DMatrix::from_fn(n, n, |k, j| {
        let p = (j + 1) as i32;
        (((k + 1) as f64 * h).powi(p) - (k as f64 * h).powi(p)) / p as f64
    })
}

/// 2-norm condition number of the normalized (`T = 1`) moment matrix.
pub fn moment_condition(n: usize) -> f64 {
    let sv = moment_matrix(n, 1.0).singular_values();
    sv.max() / sv.min()
}

/// Degree `N - 1` polynomial on `[0, T]` whose integral over each of the `N`
/// equal subintervals equals the corresponding increment.
pub fn fit_poly_from_increments(increments: &[Vector3<f64>], t_total: f64) -> Result<Poly3, NavError> {
    let n = increments.len();
    if n == 0 {
        return Err(NavError::EmptyBatch);
    }
    if !(t_total > 0.0) {
        return Err(NavError::InvalidInterval(t_total));
    }
    if n > 8 {
        log::warn!("moment fit with {n} samples: condition number {:.3e}", moment_condition(n));
    }
    // Solve in normalized time for conditioning, then rescale.
    let lu = moment_matrix(n, 1.0).lu();
    let mut coeffs = vec![Vector3::zeros(); n];
    for axis in 0..3 {
        let rhs = DVector::from_iterator(n, increments.iter().map(|v| v[axis]));
        let sol = lu.solve(&rhs).ok_or(NavError::SingularFit)?;
        for (k, c) in sol.iter().enumerate() {
            coeffs[k][axis] = *c;
        }
    }
    // In normalized time the coefficients are c_k T^(k+1).
    let mut scale = 1.0 / t_total;
    for c in coeffs.iter_mut() {
        *c *= scale;
        scale /= t_total;
    }
    Ok(Poly3(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64) -> Vector3<f64> {
        Vector3::new(x, 0.0, 0.0)
    }

    #[test]
    fn constant_rate() {
        let p = fit_poly_from_increments(&[v(0.3), v(0.3)], 2.0).unwrap();
        assert!((p.coeff(0) - v(0.3)).norm() < 1e-15);
        assert!(p.coeff(1).norm() < 1e-15);
    }

    #[test]
    fn two_sample_linear() {
        let p = fit_poly_from_increments(&[v(1.0), v(3.0)], 2.0).unwrap();
        assert!(p.coeff(0).norm() < 1e-15);
        assert!((p.coeff(1) - v(2.0)).norm() < 1e-15);
    }

    #[test]
    fn two_sample_closed_form() {
        let (a1, a2) = (Vector3::new(0.1, -0.2, 0.3), Vector3::new(0.4, 0.1, -0.5));
        let h = 0.01;
        let p = fit_poly_from_increments(&[a1, a2], 2.0 * h).unwrap();
        assert!((p.coeff(0) * h - (a1 * 3.0 - a2) / 2.0).norm() < 1e-14);
        assert!((p.coeff(1) * h * h - (a2 - a1)).norm() < 1e-14);
    }

    #[test]
    fn empty_batch_is_rejected() {
        assert!(fit_poly_from_increments(&[], 1.0).is_err());
    }

    #[test]
    fn products_and_integrals() {
        let a = Poly3(vec![Vector3::x(), Vector3::y()]);
        let b = Poly3(vec![Vector3::y()]);
        assert_eq!(a.cross(&b), Poly3(vec![Vector3::z(), Vector3::zeros()]));
        assert_eq!(a.integrate().derivative(), a);
        assert_eq!(a.dot(&a).0, vec![1.0, 0.0, 1.0]);
        let sq = Poly1(vec![0.0, 1.0]);
        assert_eq!(Poly1::compose(&[1.0, 2.0, 3.0], &sq).0, vec![1.0, 2.0, 3.0]);
    }
}

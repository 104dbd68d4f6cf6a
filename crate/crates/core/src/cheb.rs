//! Chebyshev series of the first kind on an interval `[t0, t1]`.
//!
//! `p(t) = sum c[k] T_k(x)` with `x = (2t - t0 - t1) / (t1 - t0)`.

use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Mul, Sub};

use nalgebra::{DMatrix, DVector, Vector3};

use crate::NavError;

/// Values a Chebyshev series can carry.
pub trait ChebValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign + std::fmt::Debug
{
    fn zero() -> Self;
    fn max_abs(&self) -> f64;
    /// Component `i`, for the least-squares solvers.
    fn get(&self, i: usize) -> f64;
    fn set(&mut self, i: usize, x: f64);
    const DIM: usize;
}

impl ChebValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn max_abs(&self) -> f64 {
        self.abs()
    }
    fn get(&self, _: usize) -> f64 {
        *self
    }
    fn set(&mut self, _: usize, x: f64) {
        *self = x;
    }
    const DIM: usize = 1;
}

impl ChebValue for Vector3<f64> {
    fn zero() -> Self {
        Vector3::zeros()
    }
    fn max_abs(&self) -> f64 {
        self.amax()
    }
    fn get(&self, i: usize) -> f64 {
        self[i]
    }
    fn set(&mut self, i: usize, x: f64) {
        self[i] = x;
    }
    const DIM: usize = 3;
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChebPoly<V: ChebValue> {
    pub t0: f64,
    pub t1: f64,
    pub coeffs: Vec<V>,
}

pub type ChebVec = ChebPoly<Vector3<f64>>;
pub type ChebScalar = ChebPoly<f64>;

/// Chebyshev-Gauss nodes on `[-1, 1]`, `n` of them.
pub fn gauss_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|j| (PI * (j as f64 + 0.5) / n as f64).cos()).collect()
}

/// `T_0(x) .. T_n(x)`
fn basis(x: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    for k in 2..=n {
        out.push(2.0 * x * out[k - 1] - out[k - 2]);
    }
    out
}

/// `int_{-1}^{x} T_j(s) ds` for all `j <= n`.
fn basis_integral(x: f64, n: usize) -> Vec<f64> {
    let t = basis(x, n + 1);
    let tm = basis(-1.0, n + 1);
    let anti = |t: &[f64], j: usize| -> f64 {
        match j {
            0 => t[1],
            1 => 0.5 * t[1] * t[1],
            _ => 0.5 * (t[j + 1] / (j + 1) as f64 - t[j - 1] / (j - 1) as f64),
        }
    };
    (0..=n).map(|j| anti(&t, j) - anti(&tm, j)).collect()
}

impl<V: ChebValue> ChebPoly<V> {
    pub fn new(t0: f64, t1: f64, coeffs: Vec<V>) -> Self {
        Self { t0, t1, coeffs }
    }

    pub fn zero(t0: f64, t1: f64) -> Self {
        Self::new(t0, t1, vec![V::zero()])
    }

    pub fn constant(t0: f64, t1: f64, c: V) -> Self {
        Self::new(t0, t1, vec![c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn to_x(&self, t: f64) -> f64 {
        (2.0 * t - self.t0 - self.t1) / (self.t1 - self.t0)
    }

    fn to_t(&self, x: f64) -> f64 {
        0.5 * (self.t0 + self.t1) + 0.5 * (self.t1 - self.t0) * x
    }

    /// Physical times of the `n` Chebyshev-Gauss nodes.
    pub fn nodes(t0: f64, t1: f64, n: usize) -> Vec<f64> {
        let p = Self::zero(t0, t1);
        gauss_nodes(n).into_iter().map(|x| p.to_t(x)).collect()
    }

    fn same_interval(&self, o: &Self) -> Result<(), NavError> {
        if self.t0 == o.t0 && self.t1 == o.t1 {
            Ok(())
        } else {
            Err(NavError::IntervalMismatch)
        }
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, t: f64) -> V {
        let x = self.to_x(t);
        let (mut b1, mut b2) = (V::zero(), V::zero());
        for c in self.coeffs.iter().skip(1).rev() {
            let b0 = *c + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = b0;
        }
        match self.coeffs.first() {
            Some(c0) => *c0 + b1 * x - b2,
            None => V::zero(),
        }
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(degree + 1);
        Self::new(self.t0, self.t1, c)
    }

    pub fn add(&self, o: &Self) -> Result<Self, NavError> {
        self.same_interval(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |c: &[V], k: usize| c.get(k).copied().unwrap_or_else(V::zero);
        Ok(Self::new(self.t0, self.t1, (0..n).map(|k| get(&self.coeffs, k) + get(&o.coeffs, k)).collect()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, NavError> {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.t0, self.t1, self.coeffs.iter().map(|v| *v * c).collect())
    }

    pub fn add_constant(&self, c: V) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Antiderivative vanishing at `t0`.
    pub fn integrate(&self) -> Self {
        let n = self.coeffs.len();
        let get = |k: usize| self.coeffs.get(k).copied().unwrap_or_else(V::zero);
        let half = 0.5 * (self.t1 - self.t0);
        let mut out = vec![V::zero(); n + 1];
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = if k == 1 {
                get(0) - get(2) * 0.5
            } else {
                (get(k - 1) - get(k + 1)) * (1.0 / (2 * k) as f64)
            } * half;
        }
        // value at x = -1 is sum c_k (-1)^k
        let mut at_start = V::zero();
        for (k, c) in out.iter().enumerate().skip(1) {
            at_start += if k % 2 == 0 { *c } else { *c * -1.0 };
        }
        out[0] = at_start * -1.0;
        Self::new(self.t0, self.t1, out)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(ChebValue::max_abs).fold(0.0, f64::max)
    }

    /// Largest coefficient difference, treating missing coefficients as zero.
    pub fn max_diff(&self, o: &Self) -> f64 {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |c: &[V], k: usize| c.get(k).copied().unwrap_or_else(V::zero);
        (0..n).map(|k| (get(&self.coeffs, k) - get(&o.coeffs, k)).max_abs()).fold(0.0, f64::max)
    }

    /// Interpolant through the `degree + 1` Chebyshev-Gauss nodes of `f`.
    pub fn interpolate(t0: f64, t1: f64, degree: usize, f: impl Fn(f64) -> V) -> Self {
        let n = degree + 1;
        let proto = Self::zero(t0, t1);
        let values: Vec<V> = gauss_nodes(n).iter().map(|x| f(proto.to_t(*x))).collect();
        let mut coeffs = vec![V::zero(); n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = V::zero();
            for (j, v) in values.iter().enumerate() {
                acc += *v * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos();
            }
            *c = acc * (if k == 0 { 1.0 } else { 2.0 } / n as f64);
        }
        Self::new(t0, t1, coeffs)
    }

    /// Least-squares fit of the given samples with a series of `degree`.
    pub fn fit(samples: &[(f64, V)], degree: usize, t0: f64, t1: f64) -> Result<Self, NavError> {
        if samples.len() <= degree {
            return Err(NavError::Underdetermined { samples: samples.len(), degree });
        }
        let proto = Self::zero(t0, t1);
        let a = DMatrix::from_fn(samples.len(), degree + 1, |i, j| basis(proto.to_x(samples[i].0), degree)[j]);
        Self::solve(&a, samples.iter().map(|s| s.1).collect(), t0, t1)
    }

    fn solve(a: &DMatrix<f64>, rhs: Vec<V>, t0: f64, t1: f64) -> Result<Self, NavError> {
        let svd = a.clone().svd(true, true);
        let mut coeffs = vec![V::zero(); a.ncols()];
        for i in 0..V::DIM {
            let b = DVector::from_iterator(rhs.len(), rhs.iter().map(|v| v.get(i)));
            let x = svd.solve(&b, 1e-14).map_err(|_| NavError::SingularFit)?;
            for (c, xi) in coeffs.iter_mut().zip(x.iter()) {
                c.set(i, *xi);
            }
        }
        Ok(Self::new(t0, t1, coeffs))
    }

    /// Series of degree `N - 1` whose integral over each of the `N` equal
    /// subintervals of `[t0, t1]` equals the given increment.
    pub fn from_increments(increments: &[V], t0: f64, t1: f64) -> Result<Self, NavError> {
        let n = increments.len();
        if n == 0 {
            return Err(NavError::EmptyBatch);
        }
        let half = 0.5 * (t1 - t0);
        let edges: Vec<Vec<f64>> = (0..=n).map(|k| basis_integral(-1.0 + 2.0 * k as f64 / n as f64, n - 1)).collect();
        let a = DMatrix::from_fn(n, n, |k, j| (edges[k + 1][j] - edges[k][j]) * half);
        let lu = a.lu();
        let mut coeffs = vec![V::zero(); n];
        for i in 0..V::DIM {
            let b = DVector::from_iterator(n, increments.iter().map(|v| v.get(i)));
            let x = lu.solve(&b).ok_or(NavError::SingularFit)?;
            for (c, xi) in coeffs.iter_mut().zip(x.iter()) {
                c.set(i, *xi);
            }
        }
        Ok(Self::new(t0, t1, coeffs))
    }

    /// Monomial coefficients in `s = t - t0`.
    pub fn to_monomial(&self) -> Vec<V> {
        let n = self.coeffs.len();
        // T_k(x) in powers of x
        let mut tk: Vec<Vec<f64>> = vec![vec![1.0], vec![0.0, 1.0]];
        for k in 2..n.max(2) {
            let mut next = vec![0.0; k + 1];
            for (i, c) in tk[k - 1].iter().enumerate() {
                next[i + 1] += 2.0 * c;
            }
            for (i, c) in tk[k - 2].iter().enumerate() {
                next[i] -= c;
            }
            tk.push(next);
        }
        let mut in_x = vec![V::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            for (i, b) in tk[k].iter().enumerate() {
                in_x[i] += *c * *b;
            }
        }
        // x = -1 + s / half: expand (-1 + s/half)^i
        let inv = 2.0 / (self.t1 - self.t0);
        let mut out = vec![V::zero(); n];
        for (i, c) in in_x.iter().enumerate() {
            let mut binom = 1.0;
            for j in 0..=i {
                let sign = if (i - j) % 2 == 0 { 1.0 } else { -1.0 };
                out[j] += *c * (binom * sign * inv.powi(j as i32));
                binom = binom * (i - j) as f64 / (j + 1) as f64;
            }
        }
        out
    }
}

/// Bilinear product of two series, truncated at `degree`.
///
/// Uses `T_i T_j = (T_{i+j} + T_{|i-j|}) / 2`.
pub fn cheb_product<A: ChebValue, B: ChebValue, C: ChebValue>(
    a: &ChebPoly<A>,
    b: &ChebPoly<B>,
    degree: usize,
    op: impl Fn(&A, &B) -> C,
) -> Result<ChebPoly<C>, NavError> {
    if a.t0 != b.t0 || a.t1 != b.t1 {
        return Err(NavError::IntervalMismatch);
    }
    let mut out = vec![C::zero(); degree + 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            let lo = i.abs_diff(j);
            if lo > degree {
                continue;
            }
            let p = op(x, y) * 0.5;
            out[lo] += p;
            if i + j <= degree {
                out[i + j] += p;
            }
        }
    }
    Ok(ChebPoly::new(a.t0, a.t1, out))
}

pub fn cheb_cross(a: &ChebVec, b: &ChebVec, degree: usize) -> Result<ChebVec, NavError> {
    cheb_product(a, b, degree, |x, y| x.cross(y))
}

pub fn cheb_dot(a: &ChebVec, b: &ChebVec, degree: usize) -> Result<ChebScalar, NavError> {
    cheb_product(a, b, degree, |x, y| x.dot(y))
}

pub fn cheb_scale(s: &ChebScalar, v: &ChebVec, degree: usize) -> Result<ChebVec, NavError> {
    cheb_product(s, v, degree, |x, y| y * *x)
}

pub fn cheb_mul(a: &ChebScalar, b: &ChebScalar, degree: usize) -> Result<ChebScalar, NavError> {
    cheb_product(a, b, degree, |x, y| x * y)
}

/// `series(s)` for a power series in the scalar series `s`, by Horner with truncation.
pub fn cheb_compose(series: &[f64], s: &ChebScalar, degree: usize) -> Result<ChebScalar, NavError> {
    let mut acc = ChebScalar::zero(s.t0, s.t1);
    for c in series.iter().rev() {
        acc = cheb_mul(&acc, s, degree)?.add_constant(*c);
    }
    Ok(acc)
}

//! Quaternions, rotation vectors and direction cosine matrices.

use std::f64::consts::PI;
use std::ops::Mul;

use nalgebra::{Matrix3, Vector3};

/// Below this angle the trigonometric ratios switch to their Taylor series.
pub const SMALL_ANGLE: f64 = 1e-7;

/// `sin(x/2)/x`, finite at zero.
fn half_sin_ratio(x: f64) -> f64 {
    if x < SMALL_ANGLE {
        let x2 = x * x;
        0.5 - x2 / 48.0 + x2 * x2 / 3840.0 - x2 * x2 * x2 / 645_120.0
    } else {
        (0.5 * x).sin() / x
    }
}

/// Skew-symmetric cross-product matrix `[v x]`.
pub fn skew(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// `q = [s, eta]`, Hamilton convention.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion {
    pub s: f64,
    pub eta: Vector3<f64>,
}

impl Default for Quaternion {
    fn default() -> Self {
        Self::identity()
    }
}

impl Quaternion {
    pub fn new(s: f64, eta: Vector3<f64>) -> Self {
        Self { s, eta }
    }

    pub fn identity() -> Self {
        Self { s: 1.0, eta: Vector3::zeros() }
    }

    pub fn norm(&self) -> f64 {
        (self.s * self.s + self.eta.norm_squared()).sqrt()
    }

    pub fn normalize(&self) -> Self {
        let n = self.norm();
        Self { s: self.s / n, eta: self.eta / n }
    }

    pub fn conj(&self) -> Self {
        Self { s: self.s, eta: -self.eta }
    }

    /// Inverse of a unit quaternion.
    pub fn inverse(&self) -> Self {
        self.conj()
    }

    /// Representative with non-negative scalar part.
    pub fn canonical(&self) -> Self {
        if self.s < 0.0 {
            Self { s: -self.s, eta: -self.eta }
        } else {
            *self
        }
    }

    /// Product without renormalization.
    pub fn mul_raw(&self, o: &Quaternion) -> Quaternion {
        Quaternion {
            s: self.s * o.s - self.eta.dot(&o.eta),
            eta: o.eta * self.s + self.eta * o.s + self.eta.cross(&o.eta),
        }
    }

    pub fn from_rotvec(sigma: &Vector3<f64>) -> Self {
        let x = sigma.norm();
        Self { s: (0.5 * x).cos(), eta: sigma * half_sin_ratio(x) }
    }

    /// Rotation vector of the sign-canonical quaternion, magnitude in `[0, pi]`.
    pub fn to_rotvec(&self) -> Vector3<f64> {
        let q = self.canonical();
        let n = q.eta.norm();
        let angle = 2.0 * n.atan2(q.s);
        if n < 1e-300 {
            return q.eta * 2.0;
        }
        q.eta * (angle / n)
    }

    /// DCM `C` such that `C x = q x q*`.
    pub fn to_dcm(&self) -> Dcm {
        let (s, e) = (self.s, self.eta);
        let ex = skew(&e);
        Dcm(Matrix3::identity() * (s * s - e.norm_squared()) + e * e.transpose() * 2.0 + ex * (2.0 * s))
    }

    pub fn from_dcm(c: &Dcm) -> Self {
        let m = &c.0;
        let tr = m.trace();
        // Shepperd's method: pick the largest diagonal term for stability.
        let q = if tr > m[(0, 0)] && tr > m[(1, 1)] && tr > m[(2, 2)] {
            let s = 0.5 * (1.0 + tr).sqrt();
            let k = 0.25 / s;
            Quaternion::new(s, Vector3::new(m[(2, 1)] - m[(1, 2)], m[(0, 2)] - m[(2, 0)], m[(1, 0)] - m[(0, 1)]) * k)
        } else if m[(0, 0)] >= m[(1, 1)] && m[(0, 0)] >= m[(2, 2)] {
            let x = 0.5 * (1.0 + 2.0 * m[(0, 0)] - tr).sqrt();
            let k = 0.25 / x;
            Quaternion::new(
                (m[(2, 1)] - m[(1, 2)]) * k,
                Vector3::new(x, (m[(0, 1)] + m[(1, 0)]) * k, (m[(0, 2)] + m[(2, 0)]) * k),
            )
        } else if m[(1, 1)] >= m[(2, 2)] {
            let y = 0.5 * (1.0 + 2.0 * m[(1, 1)] - tr).sqrt();
            let k = 0.25 / y;
            Quaternion::new(
                (m[(0, 2)] - m[(2, 0)]) * k,
                Vector3::new((m[(0, 1)] + m[(1, 0)]) * k, y, (m[(1, 2)] + m[(2, 1)]) * k),
            )
        } else {
            let z = 0.5 * (1.0 + 2.0 * m[(2, 2)] - tr).sqrt();
            let k = 0.25 / z;
            Quaternion::new(
                (m[(1, 0)] - m[(0, 1)]) * k,
                Vector3::new((m[(0, 2)] + m[(2, 0)]) * k, (m[(1, 2)] + m[(2, 1)]) * k, z),
            )
        };
        q.normalize().canonical()
    }

    /// `q x q*` for a pure vector `x`.
    pub fn rotate(&self, x: &Vector3<f64>) -> Vector3<f64> {
        let t = self.eta.cross(x) * 2.0;
        x + t * self.s + self.eta.cross(&t)
    }
}

/// Product of unit quaternions, renormalized.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        self.mul_raw(&o).normalize()
    }
}

/// Axis-angle vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationVector(pub Vector3<f64>);

impl RotationVector {
    pub fn magnitude(&self) -> f64 {
        self.0.norm()
    }

    /// Unit axis, `None` for the null rotation.
    pub fn axis(&self) -> Option<Vector3<f64>> {
        let m = self.magnitude();
        (m > 0.0).then(|| self.0 / m)
    }

    pub fn to_quaternion(&self) -> Quaternion {
        Quaternion::from_rotvec(&self.0)
    }

    pub fn from_quaternion(q: &Quaternion) -> Self {
        Self(q.to_rotvec())
    }
}

/// Direction cosine matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dcm(pub Matrix3<f64>);

impl Dcm {
    pub fn identity() -> Self {
        Dcm(Matrix3::identity())
    }

    pub fn transpose(&self) -> Dcm {
        Dcm(self.0.transpose())
    }

    /// Largest entry of `|C^T C - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        (self.0.transpose() * self.0 - Matrix3::identity()).abs().max()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    pub fn apply(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.0 * x
    }
}

impl Mul for Dcm {
    type Output = Dcm;
    fn mul(self, o: Dcm) -> Dcm {
        Dcm(self.0 * o.0)
    }
}

/// Rotation angle of `q_true^-1 q_est`, in `[0, pi]`.
pub fn principal_angle(q_est: &Quaternion, q_true: &Quaternion) -> f64 {
    let d = q_true.conj().mul_raw(q_est);
    let angle = 2.0 * d.eta.norm().atan2(d.s.abs());
    angle.min(PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rotation_is_identity() {
        assert_eq!(Quaternion::from_rotvec(&Vector3::zeros()), Quaternion::identity());
    }

    #[test]
    fn half_turn_about_x() {
        let q = Quaternion::from_rotvec(&Vector3::new(PI, 0.0, 0.0));
        assert!(q.s.abs() < 1e-16);
        assert!((q.eta - Vector3::x()).norm() < 1e-15);
    }

    #[test]
    fn small_angle_series_matches_direct_formula() {
        for x in [1e-9, 5e-8, SMALL_ANGLE * 0.999] {
            let direct = (0.5 * x).sin() / x;
            assert!((half_sin_ratio(x) - direct).abs() <= 1e-16 * direct);
        }
        assert_eq!(half_sin_ratio(0.0), 0.5);
    }

    #[test]
    fn composite_of_quarter_turns() {
        let qx = Quaternion::from_rotvec(&Vector3::new(PI / 2.0, 0.0, 0.0));
        let qy = Quaternion::from_rotvec(&Vector3::new(0.0, PI / 2.0, 0.0));
        let q = qx * qy;
        let c = qx.to_dcm() * qy.to_dcm();
        assert!((q.to_dcm().0 - c.0).abs().max() < 1e-15);
        // 120 degrees about (1,1,1)/sqrt 3
        let rv = q.to_rotvec();
        let expect = Vector3::new(1.0, 1.0, 1.0).normalize() * (2.0 * PI / 3.0);
        assert!((rv - expect).norm() < 1e-14, "{rv}");
    }

    #[test]
    fn principal_angle_basics() {
        let q = Quaternion::from_rotvec(&Vector3::new(0.1, 0.2, -0.3));
        let neg = Quaternion::new(-q.s, -q.eta);
        assert_eq!(principal_angle(&q, &q), 0.0);
        assert!(principal_angle(&q, &neg) < 1e-15);
        let z = Quaternion::from_rotvec(&Vector3::new(0.0, 0.0, 0.1));
        assert!((principal_angle(&Quaternion::identity(), &z) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn rotate_matches_dcm() {
        let q = Quaternion::from_rotvec(&Vector3::new(0.4, -1.1, 0.7));
        let x = Vector3::new(1.0, 2.0, 3.0);
        assert!((q.rotate(&x) - q.to_dcm().apply(&x)).norm() < 1e-14);
    }

    #[test]
    fn dcm_roundtrip() {
        for rv in [Vector3::new(0.1, 0.2, 0.3), Vector3::new(3.0, 0.0, 0.1), Vector3::new(0.0, -3.1, 0.0)] {
            let q = Quaternion::from_rotvec(&rv);
            let back = Quaternion::from_dcm(&q.to_dcm());
            assert!(principal_angle(&back, &q) < 1e-14);
        }
    }
}

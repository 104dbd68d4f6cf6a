//! Earth model in the North-Up-East navigation frame.

use nalgebra::Vector3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GravityModel {
    /// Constant magnitude (m/s^2).
    Constant(f64),
    /// Latitude/height dependent normal gravity.
    Normal,
}

/// Spherical Earth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EarthModel {
    /// Radius (m).
    pub radius: f64,
    /// Rotation rate (rad/s).
    pub rate: f64,
    pub gravity: GravityModel,
}

impl Default for EarthModel {
    fn default() -> Self {
        Self { radius: 6_378_137.0, rate: 7.292_115_146_7e-5, gravity: GravityModel::Constant(9.8) }
    }
}

/// Navigation-frame rates and gravity at one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EarthRates {
    pub w_ie: Vector3<f64>,
    pub w_en: Vector3<f64>,
    pub g: Vector3<f64>,
}

impl EarthRates {
    /// `w_ie + w_en`
    pub fn w_in(&self) -> Vector3<f64> {
        self.w_ie + self.w_en
    }

    /// `2 w_ie + w_en`
    pub fn coriolis(&self) -> Vector3<f64> {
        self.w_ie * 2.0 + self.w_en
    }
}

impl EarthModel {
    /// The same model with the rotation switched off.
    pub fn non_rotating(&self) -> Self {
        Self { rate: 0.0, ..*self }
    }

    pub fn gravity_magnitude(&self, lat: f64, h: f64) -> f64 {
        match self.gravity {
            GravityModel::Constant(g) => g,
            GravityModel::Normal => {
                let s2 = lat.sin().powi(2);
                let s22 = (2.0 * lat).sin().powi(2);
                9.780_327 * (1.0 + 0.005_302_4 * s2 - 0.000_005_8 * s22) - 3.086e-6 * h
            }
        }
    }

    /// Rates at latitude `lat`, height `h` and velocity `v` (North, Up, East).
    pub fn rates(&self, lat: f64, h: f64, v: &Vector3<f64>) -> EarthRates {
        let r = self.radius + h;
        EarthRates {
            w_ie: Vector3::new(lat.cos(), lat.sin(), 0.0) * self.rate,
            w_en: Vector3::new(v.z / r, v.z * lat.tan() / r, -v.x / r),
            g: Vector3::new(0.0, -self.gravity_magnitude(lat, h), 0.0),
        }
    }

    /// Time derivatives of (latitude, longitude, height).
    pub fn position_rates(&self, lat: f64, h: f64, v: &Vector3<f64>) -> Vector3<f64> {
        let r = self.radius + h;
        Vector3::new(v.x / r, v.z / (r * lat.cos()), v.y)
    }
}

//! Navigation state and one interval of inertial measurements.

use nalgebra::Vector3;

use crate::earth::{EarthModel, EarthRates};
use crate::rotation::Quaternion;
use crate::NavError;

/// Attitude `q_b^n`, velocity in North-Up-East and geodetic position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NavState {
    pub q: Quaternion,
    pub v: Vector3<f64>,
    /// Latitude (rad).
    pub lat: f64,
    /// Longitude (rad).
    pub lon: f64,
    /// Height (m).
    pub h: f64,
}

impl NavState {
    pub fn rates(&self, earth: &EarthModel) -> EarthRates {
        earth.rates(self.lat, self.h, &self.v)
    }

    pub fn position(&self) -> Vector3<f64> {
        Vector3::new(self.lat, self.lon, self.h)
    }
}

/// `N` angular and velocity increments over equal subintervals of `[0, T]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImuBatch {
    pub interval: f64,
    pub dalpha: Vec<Vector3<f64>>,
    pub dv: Vec<Vector3<f64>>,
}

impl ImuBatch {
    pub fn new(interval: f64, dalpha: Vec<Vector3<f64>>, dv: Vec<Vector3<f64>>) -> Result<Self, NavError> {
        if dalpha.is_empty() {
            return Err(NavError::EmptyBatch);
        }
        if dalpha.len() != dv.len() {
            return Err(NavError::SampleMismatch { gyro: dalpha.len(), accel: dv.len() });
        }
        if !(interval > 0.0) || !interval.is_finite() {
            return Err(NavError::InvalidInterval(interval));
        }
        Ok(Self { interval, dalpha, dv })
    }

    pub fn samples(&self) -> usize {
        self.dalpha.len()
    }

    /// Total angular increment `alpha`.
    pub fn alpha(&self) -> Vector3<f64> {
        self.dalpha.iter().sum()
    }

    /// Total velocity increment `v`.
    pub fn velocity(&self) -> Vector3<f64> {
        self.dv.iter().sum()
    }
}

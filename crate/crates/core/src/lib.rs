//! Numeric strapdown inertial navigation: attitude primitives, polynomial and
//! Chebyshev utilities, the traditional/enhanced/ViaGen updates, the
//! functional-iteration solver and an analytic coning-flight harness.
//!
//! Navigation frame is North-Up-East; attitude is carried as `q_b^n`.

pub mod cheb;
pub mod config;
pub mod earth;
pub mod fiter;
pub mod mpoly;
pub mod rotation;
pub mod scenario;
pub mod state;
pub mod strapdown;
pub mod trig;

pub use earth::{EarthModel, EarthRates, GravityModel};
pub use fiter::{FiterConfig, FiterSolution};
pub use rotation::{principal_angle, Dcm, Quaternion, RotationVector};
pub use scenario::{run_scenario, sweep, ErrorRecord, ScenarioConfig, ScenarioRun};
pub use state::{ImuBatch, NavState};
pub use strapdown::{AlgoVariant, AttitudeAlgo, VelocityAlgo};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NavError {
    #[error("an IMU batch needs at least one sample")]
    EmptyBatch,
    #[error("gyro and accelerometer sample counts differ ({gyro} vs {accel})")]
    SampleMismatch { gyro: usize, accel: usize },
    #[error("invalid interval length {0}")]
    InvalidInterval(f64),
    #[error("singular fitting system")]
    SingularFit,
    #[error("{samples} samples cannot determine a degree-{degree} fit")]
    Underdetermined { samples: usize, degree: usize },
    #[error("Chebyshev operands live on different intervals")]
    IntervalMismatch,
    #[error("invalid algorithm: {0}")]
    InvalidVariant(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("config line {line}: {message}")]
    ConfigParse { line: usize, message: String },
}

//! Exact rational polynomial algebra and the symbolic accuracy analysis of
//! strapdown attitude and velocity algorithms.
//!
//! The angular rate and specific force over one update interval are modelled as
//! polynomials in time with rational vector coefficients. Each algorithm (the
//! traditional, enhanced, ViaGen and functional-iteration variants) becomes an
//! exact polynomial transform of those coefficients, so their Taylor
//! coefficients can be compared exactly and the lowest power at which an
//! algorithm departs from the reference read off directly.
//!
//! - [`rational`], [`poly`], [`series`]: exact arithmetic substrate
//! - [`analysis`]: algorithms as polynomial transforms, error orders
//! - [`closed_form`]: term-by-term closed forms for linear motion
//! - [`tables`]: coefficient tables and their text/CSV rendering
//! - [`random`]: random integer motion for order-pattern checks

pub mod analysis;
pub mod closed_form;
pub mod poly;
pub mod random;
pub mod rational;
pub mod series;
pub mod tables;

pub use analysis::{ErrorOrderReport, MotionCoefficients};
pub use poly::{sp_compose_vec, RVec3, ScalarPoly, VecPoly};
pub use rational::{rat, Rational};
pub use tables::{emit_tables, Axis, CoefficientTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse '{0}' as a rational number")]
    Parse(String),
}

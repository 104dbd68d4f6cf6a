//! Functional-iteration (Picard) solution of the attitude, velocity and
//! position equations over one update interval, on Chebyshev series.
//!
//! All series live on the physical interval `[0, T]`.

use nalgebra::Vector3;

use crate::cheb::{cheb_compose, cheb_cross, cheb_dot, cheb_scale, ChebVec};
use crate::earth::EarthModel;
use crate::rotation::Quaternion;
use crate::state::{ImuBatch, NavState};
use crate::strapdown::compose_attitude;
use crate::trig::TrigSeries;
use crate::NavError;

/// Taylor order of the trigonometric coefficients inside the iteration.
pub const FITER_TRIG_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiterConfig {
    /// Stop when the largest coefficient change falls below this.
    pub tolerance: f64,
    pub max_attitude_iterations: usize,
    pub max_vp_iterations: usize,
    /// Degree of the rotation-vector series.
    pub trunc_attitude: usize,
    /// Degree of the velocity series.
    pub trunc_velocity: usize,
    /// Degree of the position series.
    pub trunc_position: usize,
}

/// Relative size of the rounding floor under the convergence test.
const ROUNDING_FLOOR: f64 = 16.0 * f64::EPSILON;

impl FiterConfig {
    /// Defaults for `n` samples per interval. Truncation sits two degrees above
    /// 2N: at 2N the end rotation still moves ~1e-12 rad under degree doubling
    /// for fast coning.
    pub fn for_samples(n: usize) -> Self {
        let n = n.max(1);
        Self {
            tolerance: 1e-16,
            max_attitude_iterations: n + 1,
            max_vp_iterations: n + 1,
            trunc_attitude: 2 * n + 2,
            trunc_velocity: 2 * n + 2,
            trunc_position: 2 * n + 3,
        }
    }

    pub fn validate(&self) -> Result<(), NavError> {
        let ok = self.tolerance > 0.0
            && self.max_attitude_iterations >= 1
            && self.max_vp_iterations >= 1
            && self.trunc_attitude >= 1
            && self.trunc_velocity >= 1
            && self.trunc_position >= 1;
        if ok {
            Ok(())
        } else {
            Err(NavError::InvalidConfig("iteration limits and degrees must be at least 1, tolerance positive".into()))
        }
    }

    /// Convergence threshold for a solution of the given coefficient scale.
    fn threshold(&self, scale: f64) -> f64 {
        self.tolerance.max(ROUNDING_FLOOR * scale)
    }
}

/// Converged (or iteration-capped) rotation vector.
#[derive(Clone, Debug, PartialEq)]
pub struct AttitudeSolution {
    /// Body rate fitted to the increments.
    pub omega: ChebVec,
    /// `sigma_b(t)`, rotation of the body frame since the interval start.
    pub sigma: ChebVec,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

/// Full one-interval solution.
#[derive(Clone, Debug, PartialEq)]
pub struct FiterSolution {
    pub attitude: AttitudeSolution,
    /// Velocity `v^n(t)`.
    pub velocity: ChebVec,
    /// (latitude, longitude, height)`(t)`.
    pub position: ChebVec,
    /// Transformed specific-force integral `u(t)` in the start body frame.
    pub u: ChebVec,
    /// Navigation-frame rotation over the interval.
    pub sigma_n: Vector3<f64>,
    pub vp_iterations: usize,
    pub vp_residual: f64,
    pub vp_converged: bool,
}

impl FiterSolution {
    pub fn converged(&self) -> bool {
        self.attitude.converged && self.vp_converged
    }
}

/// One Picard step of the rotation-vector equation.
fn bortz_step(omega: &ChebVec, sigma: &ChebVec, bortz: &[f64], deg: usize) -> Result<ChebVec, NavError> {
    let sw = cheb_cross(sigma, omega, deg)?;
    let ssw = cheb_cross(sigma, &sw, deg)?;
    let c = cheb_compose(bortz, &cheb_dot(sigma, sigma, deg)?, deg)?;
    let rate = omega.add(&sw.scale(0.5))?.add(&cheb_scale(&c, &ssw, deg)?)?;
    Ok(rate.truncate(deg).integrate().truncate(deg + 1))
}

/// Rotation vector of the frame whose rate is `omega`, by Picard iteration
/// from `sigma = 0`.
pub fn solve_rotation(
    omega: &ChebVec,
    deg: usize,
    max_iterations: usize,
    cfg: &FiterConfig,
) -> Result<(ChebVec, usize, f64, bool), NavError> {
    let bortz = TrigSeries::of_order(FITER_TRIG_ORDER).bortz;
    // integrand degree deg-1 keeps sigma at degree deg
    let ideg = deg.saturating_sub(1);
    let mut sigma = ChebVec::zero(omega.t0, omega.t1);
    let mut residual = f64::INFINITY;
    for l in 1..=max_iterations {
        let next = bortz_step(omega, &sigma, &bortz, ideg)?;
        residual = next.max_diff(&sigma);
        sigma = next;
        if residual <= cfg.threshold(sigma.max_abs()) {
            return Ok((sigma, l, residual, true));
        }
    }
    Ok((sigma, max_iterations, residual, false))
}

pub fn attitude_fiter(batch: &ImuBatch, cfg: &FiterConfig) -> Result<AttitudeSolution, NavError> {
    cfg.validate()?;
    let omega = ChebVec::from_increments(&batch.dalpha, 0.0, batch.interval)?;
    attitude_fiter_from_rate(omega, cfg)
}

pub fn attitude_fiter_from_rate(omega: ChebVec, cfg: &FiterConfig) -> Result<AttitudeSolution, NavError> {
    let (sigma, iterations, residual, converged) =
        solve_rotation(&omega, cfg.trunc_attitude, cfg.max_attitude_iterations, cfg)?;
    Ok(AttitudeSolution { omega, sigma, iterations, residual, converged })
}

/// `x + S1(s) s x x + S2(s) s x (s x x)`, i.e. `exp(s x) x`, with series products truncated at `deg`.
fn rotate_series(sigma: &ChebVec, x: &ChebVec, series: &TrigSeries, deg: usize) -> Result<ChebVec, NavError> {
    let s2 = cheb_dot(sigma, sigma, deg)?;
    let s1 = cheb_compose(&series.sinc, &s2, deg)?;
    let c2 = cheb_compose(&series.one_minus_cos, &s2, deg)?;
    let sx = cheb_cross(sigma, x, deg)?;
    let ssx = cheb_cross(sigma, &sx, deg)?;
    x.add(&cheb_scale(&s1, &sx, deg)?)?.add(&cheb_scale(&c2, &ssx, deg)?)
}

fn position_scale(p: &Vector3<f64>, earth: &EarthModel) -> Vector3<f64> {
    Vector3::new(p.x * earth.radius, p.y * earth.radius, p.z)
}

/// Jointly iterated velocity and position with the navigation-frame rates
/// rebuilt from each iterate.
pub fn velocity_position_fiter(
    batch: &ImuBatch,
    attitude: AttitudeSolution,
    state: &NavState,
    earth: &EarthModel,
    cfg: &FiterConfig,
) -> Result<FiterSolution, NavError> {
    cfg.validate()?;
    let t = batch.interval;
    let series = TrigSeries::of_order(FITER_TRIG_ORDER);
    let dv = cfg.trunc_velocity;
    let dp = cfg.trunc_position;
    let ideg = dv.saturating_sub(1);

    let force = ChebVec::from_increments(&batch.dv, 0.0, t)?;
    // body-frame force rotated into the start body frame
    let y = rotate_series(&attitude.sigma, &force, &series, ideg)?.truncate(ideg);
    let u = y.integrate();
    let c0 = state.q.to_dcm();
    let c0y = ChebVec::new(0.0, t, y.coeffs.iter().map(|c| c0.apply(c)).collect());

    let p0 = state.position();
    let mut vel = ChebVec::constant(0.0, t, state.v);
    let mut pos = ChebVec::constant(0.0, t, p0);
    let mut sigma_n = ChebVec::zero(0.0, t);
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    let nav_cfg = FiterConfig { tolerance: cfg.tolerance, ..*cfg };
    for m in 1..=cfg.max_vp_iterations {
        iterations = m;
        let rates_at = |tt: f64| {
            let p = pos.eval(tt);
            earth.rates(p.x, p.z, &vel.eval(tt))
        };
        let w_in = ChebVec::interpolate(0.0, t, ideg, |tt| rates_at(tt).w_in());
        let (sn, _, _, _) = solve_rotation(&w_in, dv, 3, &nav_cfg)?;
        sigma_n = sn;
        // C_{n(0)}^{n(t)} = exp(-sigma_n x)
        let rotated = rotate_series(&sigma_n.scale(-1.0), &c0y, &series, ideg)?;
        let gravity_coriolis = ChebVec::interpolate(0.0, t, ideg, |tt| {
            let r = rates_at(tt);
            r.g - r.coriolis().cross(&vel.eval(tt))
        });
        let new_vel = rotated.add(&gravity_coriolis)?.truncate(ideg).integrate().add_constant(state.v);
        let new_pos = ChebVec::interpolate(0.0, t, dp.saturating_sub(1), |tt| {
            let p = pos.eval(tt);
            earth.position_rates(p.x, p.z, &vel.eval(tt))
        })
        .integrate()
        .add_constant(p0);
        let dpos = {
            let d = new_pos.sub(&pos)?;
            d.coeffs.iter().map(|c| position_scale(c, earth).amax()).fold(0.0, f64::max)
        };
        residual = new_vel.max_diff(&vel).max(dpos);
        let scale = new_vel.max_abs().max(position_scale(&new_pos.coeffs[0], earth).amax());
        vel = new_vel;
        pos = new_pos;
        if residual <= cfg.threshold(scale) {
            converged = true;
            break;
        }
    }
    Ok(FiterSolution {
        attitude,
        velocity: vel,
        position: pos,
        u,
        sigma_n: sigma_n.eval(t),
        vp_iterations: iterations,
        vp_residual: residual,
        vp_converged: converged,
    })
}

/// Attitude then velocity/position over one interval.
pub fn fiter_solve(batch: &ImuBatch, state: &NavState, earth: &EarthModel, cfg: &FiterConfig) -> Result<FiterSolution, NavError> {
    let att = attitude_fiter(batch, cfg)?;
    velocity_position_fiter(batch, att, state, earth, cfg)
}

/// State at the interval end from a solution.
pub fn fiter_state(sol: &FiterSolution, state: &NavState) -> NavState {
    let t = sol.velocity.t1;
    let q: Quaternion = compose_attitude(&state.q, &sol.attitude.sigma.eval(t), &sol.sigma_n);
    let p = sol.position.eval(t);
    NavState { q, v: sol.velocity.eval(t), lat: p.x, lon: p.y, h: p.z }
}

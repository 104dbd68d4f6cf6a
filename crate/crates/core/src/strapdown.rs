//! One-interval attitude, velocity and position updates of the traditional,
//! enhanced, ViaGen and rotation-compensated algorithms.
//!
//! The body-frame terms are computed from polynomial rate and specific force
//! fitted to the increments, in normalized time `tau = t / T` on `[0, 1]`. In
//! that variable the fitted polynomials have the dimension of increments and
//! every algorithm is a polynomial expression evaluated at `tau = 1`.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;

use crate::earth::{EarthModel, EarthRates};
use crate::mpoly::{fit_poly_from_increments, Poly1, Poly3};
use crate::rotation::Quaternion;
use crate::state::{ImuBatch, NavState};
use crate::trig::{eval_series, TrigSeries};
use crate::NavError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttitudeAlgo {
    Traditional,
    Enhanced,
    Fiter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VelocityAlgo {
    FirstOrder,
    SecondOrder,
    EnhancedFirst,
    EnhancedSecond,
    ViaGen { trig_order: usize },
    Fiter,
    VpifRigorous,
}

/// Attitude/velocity algorithm pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgoVariant {
    pub attitude: AttitudeAlgo,
    pub velocity: VelocityAlgo,
}

impl AlgoVariant {
    pub fn new(attitude: AttitudeAlgo, velocity: VelocityAlgo) -> Result<Self, NavError> {
        let v = Self { attitude, velocity };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<(), NavError> {
        let fiter_att = self.attitude == AttitudeAlgo::Fiter;
        let fiter_vel = self.velocity == VelocityAlgo::Fiter;
        if fiter_att != fiter_vel {
            return Err(NavError::InvalidVariant(
                "the functional-iteration attitude and velocity solvers run together".into(),
            ));
        }
        if let VelocityAlgo::ViaGen { trig_order: 0 } = self.velocity {
            return Err(NavError::InvalidVariant("ViaGen trigonometric order must be at least 1".into()));
        }
        Ok(())
    }

    pub const TYPICAL: AlgoVariant =
        AlgoVariant { attitude: AttitudeAlgo::Traditional, velocity: VelocityAlgo::SecondOrder };
    pub const ENHANCED: AlgoVariant =
        AlgoVariant { attitude: AttitudeAlgo::Enhanced, velocity: VelocityAlgo::EnhancedSecond };
    pub const FITER: AlgoVariant = AlgoVariant { attitude: AttitudeAlgo::Fiter, velocity: VelocityAlgo::Fiter };
    pub const VPIF: AlgoVariant =
        AlgoVariant { attitude: AttitudeAlgo::Traditional, velocity: VelocityAlgo::VpifRigorous };

    pub fn viagen(trig_order: usize) -> AlgoVariant {
        AlgoVariant { attitude: AttitudeAlgo::Traditional, velocity: VelocityAlgo::ViaGen { trig_order } }
    }

    pub fn label(&self) -> String {
        match (self.attitude, self.velocity) {
            (AttitudeAlgo::Traditional, VelocityAlgo::SecondOrder) => "typical".into(),
            (AttitudeAlgo::Enhanced, VelocityAlgo::EnhancedSecond) => "enhanced".into(),
            (AttitudeAlgo::Fiter, VelocityAlgo::Fiter) => "fiter".into(),
            (AttitudeAlgo::Traditional, VelocityAlgo::VpifRigorous) => "vpif".into(),
            (AttitudeAlgo::Traditional, VelocityAlgo::ViaGen { trig_order }) => format!("viagen{trig_order}"),
            (a, v) => format!("{}+{}", attitude_name(a), velocity_name(v)),
        }
    }
}

fn attitude_name(a: AttitudeAlgo) -> &'static str {
    match a {
        AttitudeAlgo::Traditional => "traditional",
        AttitudeAlgo::Enhanced => "enhanced",
        AttitudeAlgo::Fiter => "fiter",
    }
}

fn velocity_name(v: VelocityAlgo) -> String {
    match v {
        VelocityAlgo::FirstOrder => "first-order".into(),
        VelocityAlgo::SecondOrder => "second-order".into(),
        VelocityAlgo::EnhancedFirst => "enhanced-first".into(),
        VelocityAlgo::EnhancedSecond => "enhanced-second".into(),
        VelocityAlgo::ViaGen { trig_order } => format!("viagen{trig_order}"),
        VelocityAlgo::Fiter => "fiter".into(),
        VelocityAlgo::VpifRigorous => "vpif-rigorous".into(),
    }
}

impl fmt::Display for AlgoVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Accepts the preset names (`typical`, `enhanced`, `fiter`, `vpif`,
/// `viagen<k>`) or an explicit `attitude+velocity` pair.
impl FromStr for AlgoVariant {
    type Err = NavError;
    fn from_str(s: &str) -> Result<Self, NavError> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || NavError::InvalidVariant(format!("unknown algorithm '{s}'"));
        let parse_viagen = |rest: &str| rest.parse::<usize>().map_err(|_| bad());
        let v = match s.as_str() {
            "typical" => Self::TYPICAL,
            "enhanced" => Self::ENHANCED,
            "fiter" | "inavfiter" => Self::FITER,
            "vpif" | "vpifnav" => Self::VPIF,
            _ if s.starts_with("viagen") && !s.contains('+') => Self::viagen(parse_viagen(&s[6..])?),
            _ => {
                let (a, v) = s.split_once('+').ok_or_else(bad)?;
                let attitude = match a {
                    "traditional" => AttitudeAlgo::Traditional,
                    "enhanced" => AttitudeAlgo::Enhanced,
                    "fiter" => AttitudeAlgo::Fiter,
                    _ => return Err(bad()),
                };
                let velocity = match v {
                    "first-order" => VelocityAlgo::FirstOrder,
                    "second-order" => VelocityAlgo::SecondOrder,
                    "enhanced-first" => VelocityAlgo::EnhancedFirst,
                    "enhanced-second" => VelocityAlgo::EnhancedSecond,
                    "fiter" => VelocityAlgo::Fiter,
                    "vpif-rigorous" => VelocityAlgo::VpifRigorous,
                    _ if v.starts_with("viagen") => VelocityAlgo::ViaGen { trig_order: parse_viagen(&v[6..])? },
                    _ => return Err(bad()),
                };
                AlgoVariant { attitude, velocity }
            }
        };
        v.validate()?;
        Ok(v)
    }
}

/// Rate and specific force over one interval, in normalized time.
#[derive(Clone, Debug, PartialEq)]
pub struct BodyMotion {
    /// `T omega(T tau)`
    pub omega: Poly3,
    /// `T f(T tau)`
    pub force: Poly3,
}

impl BodyMotion {
    pub fn from_batch(batch: &ImuBatch) -> Result<Self, NavError> {
        Ok(Self { omega: fit_poly_from_increments(&batch.dalpha, 1.0)?, force: fit_poly_from_increments(&batch.dv, 1.0)? })
    }

    /// Body motion `omega(t)`, `f(t)` given in physical time over `[0, T]`.
    pub fn from_physical(omega: &Poly3, force: &Poly3, interval: f64) -> Self {
        Self { omega: omega.rescale_time(interval).scale(interval), force: force.rescale_time(interval).scale(interval) }
    }

    fn alpha(&self) -> Poly3 {
        self.omega.integrate()
    }

    fn vel(&self) -> Poly3 {
        self.force.integrate()
    }

    /// `int (omega + 1/2 alpha x omega)`
    pub fn sigma_traditional_poly(&self) -> Poly3 {
        self.omega.linear(&self.alpha().cross(&self.omega), 0.5).integrate()
    }

    /// `int (omega + 1/2 s x omega + s x (s x omega)/12)` with `s` the traditional solution.
    pub fn sigma_enhanced_poly(&self) -> Poly3 {
        let s = self.sigma_traditional_poly();
        let sw = s.cross(&self.omega);
        self.omega.linear(&sw, 0.5).linear(&s.cross(&sw), 1.0 / 12.0).integrate()
    }

    /// Body rotation vector over the interval.
    pub fn body_rotation(&self, algo: AttitudeAlgo) -> Result<Vector3<f64>, NavError> {
        match algo {
            AttitudeAlgo::Traditional => Ok(self.sigma_traditional_poly().eval(1.0)),
            AttitudeAlgo::Enhanced => Ok(self.sigma_enhanced_poly().eval(1.0)),
            AttitudeAlgo::Fiter => Err(NavError::InvalidVariant("use the functional-iteration solver".into())),
        }
    }

    /// `int (I + alpha x) f`
    pub fn u_first_order_poly(&self) -> Poly3 {
        self.force.add(&self.alpha().cross(&self.force)).integrate()
    }

    fn second_order_term(&self) -> Vector3<f64> {
        let a = self.alpha().eval(1.0);
        a.cross(&a.cross(&self.vel().eval(1.0))) / 6.0
    }

    /// `int (s - alpha) x f`
    pub fn delta_v1_poly(&self) -> Poly3 {
        self.sigma_traditional_poly().sub(&self.alpha()).cross(&self.force).integrate()
    }

    /// `1/2 int s x (s x f) - alpha x (alpha x v)/6`, value at the interval end.
    pub fn delta_v2(&self) -> Vector3<f64> {
        let s = self.sigma_traditional_poly();
        s.cross(&s.cross(&self.force)).integrate().eval(1.0) * 0.5 - self.second_order_term()
    }

    /// `eta = v + 1/2 int (alpha x f - omega x v)`
    pub fn eta_poly(&self) -> Poly3 {
        let v = self.vel();
        v.linear(&self.alpha().cross(&self.force).sub(&self.omega.cross(&v)).integrate(), 0.5)
    }

    pub fn u_viagen(&self, trig_order: usize) -> Vector3<f64> {
        let series = TrigSeries::of_order(trig_order);
        let s = self.sigma_traditional_poly().eval(1.0);
        let eta = self.eta_poly().eval(1.0);
        let y = s.norm_squared();
        let se = s.cross(&eta);
        eta + se * eval_series(&series.one_minus_cos, y) + s.cross(&se) * eval_series(&series.one_minus_sinc, y)
    }

    /// Transformed specific-force integral `u` in the body frame at the interval start.
    pub fn transformed_force(&self, algo: VelocityAlgo) -> Result<Vector3<f64>, NavError> {
        let u1 = || self.u_first_order_poly().eval(1.0);
        Ok(match algo {
            VelocityAlgo::FirstOrder => u1(),
            VelocityAlgo::SecondOrder | VelocityAlgo::VpifRigorous => u1() + self.second_order_term(),
            VelocityAlgo::EnhancedFirst => u1() + self.delta_v1_poly().eval(1.0),
            VelocityAlgo::EnhancedSecond => {
                u1() + self.second_order_term() + self.delta_v1_poly().eval(1.0) + self.delta_v2()
            }
            VelocityAlgo::ViaGen { trig_order } => self.u_viagen(trig_order),
            VelocityAlgo::Fiter => {
                return Err(NavError::InvalidVariant("use the functional-iteration solver".into()))
            }
        })
    }

    /// `int_0^1 tau (I + alpha x) f dtau`, the first moment of the rotated force.
    fn force_first_moment(&self) -> Vector3<f64> {
        let y = self.force.add(&self.alpha().cross(&self.force));
        y.scaled_by(&Poly1(vec![0.0, 1.0])).integrate().eval(1.0)
    }
}

/// Velocity-update decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VelocityUpdateTerms {
    /// Body-frame transformed specific-force integral.
    pub u: Vector3<f64>,
    /// Gravity and Coriolis term.
    pub dv_g: Vector3<f64>,
    /// Navigation-frame rotation compensation.
    pub dv_fc: Vector3<f64>,
}

/// Where the navigation-frame rates of the compensation terms are taken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NavRateEpoch {
    #[default]
    Start,
    /// Predicted mid-interval state.
    Midpoint,
}

/// `v0 + C u + dv_g + dv_fc` with frozen rates `r`.
fn simplified_velocity(state: &NavState, c_u: &Vector3<f64>, r: &EarthRates, t: f64) -> (Vector3<f64>, Vector3<f64>, Vector3<f64>) {
    let dv_g = (r.g - r.coriolis().cross(&state.v)) * t;
    let dv_fc = -r.w_in().cross(c_u) * (0.5 * t);
    (state.v + c_u + dv_g + dv_fc, dv_g, dv_fc)
}

/// Trapezoidal position update from the old and new velocities.
pub fn position_update(state: &NavState, v_new: &Vector3<f64>, t: f64, earth: &EarthModel) -> (f64, f64, f64) {
    let vm = (state.v + v_new) * 0.5;
    let h = state.h + vm.y * t;
    let hm = 0.5 * (state.h + h);
    let lat = state.lat + vm.x * t / (earth.radius + hm);
    let latm = 0.5 * (state.lat + lat);
    let lon = state.lon + vm.z * t / ((earth.radius + hm) * latm.cos());
    (lat, lon, h)
}

/// Rates at a state predicted half an interval ahead.
fn midpoint_rates(state: &NavState, v_end: &Vector3<f64>, t: f64, earth: &EarthModel) -> EarthRates {
    let (lat, _, h) = position_update(state, v_end, 0.5 * t, earth);
    earth.rates(lat, h, &((state.v + v_end) * 0.5))
}

/// Velocity update for every non-iterative algorithm.
pub fn velocity_update(
    state: &NavState,
    batch: &ImuBatch,
    variant: AlgoVariant,
    earth: &EarthModel,
    epoch: NavRateEpoch,
) -> Result<(Vector3<f64>, VelocityUpdateTerms), NavError> {
    let body = BodyMotion::from_batch(batch)?;
    velocity_update_from(state, &body, batch.interval, variant, earth, epoch)
}

pub fn velocity_update_from(
    state: &NavState,
    body: &BodyMotion,
    t: f64,
    variant: AlgoVariant,
    earth: &EarthModel,
    epoch: NavRateEpoch,
) -> Result<(Vector3<f64>, VelocityUpdateTerms), NavError> {
    variant.validate()?;
    let u = body.transformed_force(variant.velocity)?;
    let c0 = state.q.to_dcm();
    let c_u = c0.apply(&u);
    let r0 = state.rates(earth);
    if variant.velocity == VelocityAlgo::VpifRigorous {
        // predictor with frozen start rates, then mid-interval rotation and
        // trapezoidal gravity/Coriolis
        let (v_pred, _, _) = simplified_velocity(state, &c_u, &r0, t);
        let rm = midpoint_rates(state, &v_pred, t, earth);
        let dv_fc = -rm.w_in().cross(&c0.apply(&body.force_first_moment())) * t;
        let (lat1, _, h1) = position_update(state, &v_pred, t, earth);
        let r1 = earth.rates(lat1, h1, &v_pred);
        let a0 = r0.g - r0.coriolis().cross(&state.v);
        let a1 = r1.g - r1.coriolis().cross(&v_pred);
        let dv_g = (a0 + a1) * (0.5 * t);
        let v = state.v + c_u + dv_g + dv_fc;
        return Ok((v, VelocityUpdateTerms { u, dv_g, dv_fc }));
    }
    let r = match epoch {
        NavRateEpoch::Start => r0,
        NavRateEpoch::Midpoint => {
            let (v_pred, _, _) = simplified_velocity(state, &c_u, &r0, t);
            midpoint_rates(state, &v_pred, t, earth)
        }
    };
    let (v, dv_g, dv_fc) = simplified_velocity(state, &c_u, &r, t);
    Ok((v, VelocityUpdateTerms { u, dv_g, dv_fc }))
}

/// `q(T) = q(-sigma_n) q0 q(sigma_b)`
pub fn compose_attitude(q0: &Quaternion, sigma_b: &Vector3<f64>, sigma_n: &Vector3<f64>) -> Quaternion {
    Quaternion::from_rotvec(&-sigma_n) * *q0 * Quaternion::from_rotvec(sigma_b)
}

/// Attitude update for the non-iterative algorithms, with the navigation
/// rotation `T w_in` taken at the interval start.
pub fn attitude_update(
    state: &NavState,
    batch: &ImuBatch,
    variant: AlgoVariant,
    earth: &EarthModel,
) -> Result<Quaternion, NavError> {
    variant.validate()?;
    let sigma_b = BodyMotion::from_batch(batch)?.body_rotation(variant.attitude)?;
    let sigma_n = state.rates(earth).w_in() * batch.interval;
    Ok(compose_attitude(&state.q, &sigma_b, &sigma_n))
}

/// Full update for the non-iterative algorithms.
pub fn strapdown_step(
    state: &NavState,
    batch: &ImuBatch,
    variant: AlgoVariant,
    earth: &EarthModel,
    epoch: NavRateEpoch,
) -> Result<(NavState, VelocityUpdateTerms), NavError> {
    let t = batch.interval;
    let body = BodyMotion::from_batch(batch)?;
    let (v, terms) = velocity_update_from(state, &body, t, variant, earth, epoch)?;
    let sigma_b = body.body_rotation(variant.attitude)?;
    let w_in = if variant.velocity == VelocityAlgo::VpifRigorous || epoch == NavRateEpoch::Midpoint {
        midpoint_rates(state, &v, t, earth).w_in()
    } else {
        state.rates(earth).w_in()
    };
    let q = compose_attitude(&state.q, &sigma_b, &(w_in * t));
    let (lat, lon, h) = position_update(state, &v, t, earth);
    Ok((NavState { q, v, lat, lon, h }, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn batch(a: [[f64; 3]; 2], v: [[f64; 3]; 2], t: f64) -> ImuBatch {
        ImuBatch::new(t, a.iter().map(|x| Vector3::from(*x)).collect(), v.iter().map(|x| Vector3::from(*x)).collect())
            .unwrap()
    }

    #[test]
    fn two_sample_traditional_closed_form() {
        let (a1, a2) = (Vector3::new(0.01, -0.02, 0.005), Vector3::new(0.012, -0.015, 0.009));
        let b = batch([a1.into(), a2.into()], [[0.0; 3]; 2], 0.02);
        let s = BodyMotion::from_batch(&b).unwrap().body_rotation(AttitudeAlgo::Traditional).unwrap();
        let expect = a1 + a2 + a1.cross(&a2) * (2.0 / 3.0);
        assert!((s - expect).norm() < 1e-17);
    }

    #[test]
    fn zero_increments_keep_attitude() {
        let state = NavState { q: Quaternion::from_rotvec(&Vector3::new(0.1, 0.2, 0.3)), v: Vector3::zeros(), lat: 0.2, lon: 0.0, h: 0.0 };
        let b = batch([[0.0; 3]; 2], [[0.0; 3]; 2], 0.02);
        let earth = EarthModel::default().non_rotating();
        for v in [AlgoVariant::TYPICAL, AlgoVariant::ENHANCED, AlgoVariant::viagen(8)] {
            let q = attitude_update(&state, &b, v, &earth).unwrap();
            assert!(crate::rotation::principal_angle(&q, &state.q) < 1e-16);
        }
    }

    #[test]
    fn variants_agree_without_rotation() {
        let state = NavState { q: Quaternion::from_rotvec(&Vector3::new(0.3, -0.1, 0.2)), v: Vector3::new(1.0, 2.0, 300.0), lat: 0.5, lon: 0.1, h: 100.0 };
        let b = batch([[0.0; 3]; 2], [[0.1, 0.2, -0.05], [0.12, 0.18, -0.04]], 0.02);
        let earth = EarthModel::default();
        let (reference, _) = velocity_update(&state, &b, AlgoVariant::TYPICAL, &earth, NavRateEpoch::Start).unwrap();
        let r = state.rates(&earth);
        let cv = state.q.rotate(&b.velocity());
        let expect = state.v + cv + (r.g - r.coriolis().cross(&state.v)) * 0.02 - r.w_in().cross(&cv) * 0.01;
        assert!((reference - expect).norm() < 1e-13);
        for name in ["enhanced", "viagen1", "viagen8", "traditional+first-order", "traditional+enhanced-first"] {
            let (v, _) = velocity_update(&state, &b, name.parse().unwrap(), &earth, NavRateEpoch::Start).unwrap();
            assert!((v - reference).norm() < 1e-13, "{name}");
        }
    }

    #[test]
    fn rotation_compensation_is_odd_and_vanishes_when_inertial() {
        let mut state = NavState { q: Quaternion::identity(), v: Vector3::new(0.0, 0.0, 200.0), lat: 0.3, lon: 0.0, h: 0.0 };
        let b = batch([[0.001, 0.0, 0.0]; 2], [[0.1, 0.0, 0.0]; 2], 0.02);
        let earth = EarthModel::default();
        let (_, t1) = velocity_update(&state, &b, AlgoVariant::TYPICAL, &earth, NavRateEpoch::Start).unwrap();
        state.v = -state.v;
        let flipped = EarthModel { rate: -earth.rate, ..earth };
        let (_, t2) = velocity_update(&state, &b, AlgoVariant::TYPICAL, &flipped, NavRateEpoch::Start).unwrap();
        assert!((t1.dv_fc + t2.dv_fc).norm() < 1e-18);
        state.v = Vector3::zeros();
        let (_, t3) = velocity_update(&state, &b, AlgoVariant::TYPICAL, &earth.non_rotating(), NavRateEpoch::Start).unwrap();
        assert_eq!(t3.dv_fc, Vector3::zeros());
    }

    #[test]
    fn enhanced_first_with_constant_motion() {
        let b = batch([[0.01, 0.02, -0.01]; 2], [[0.1, -0.2, 0.3]; 2], 0.02);
        let body = BodyMotion::from_batch(&b).unwrap();
        let dv2 = body.delta_v2();
        assert!(dv2.norm() < 1e-18, "{dv2}");
        let full = body.transformed_force(VelocityAlgo::EnhancedSecond).unwrap();
        let parts = body.transformed_force(VelocityAlgo::SecondOrder).unwrap() + body.delta_v1_poly().eval(1.0);
        assert!((full - parts).norm() < 1e-17);
    }

    #[test]
    fn position_arc_length() {
        let earth = EarthModel::default();
        let state = NavState { q: Quaternion::identity(), v: Vector3::new(0.0, 0.0, 500.0), lat: 0.0, lon: 0.0, h: 0.0 };
        let (lat, lon, h) = position_update(&state, &state.v, 1.0, &earth);
        assert_eq!((lat, h), (0.0, 0.0));
        assert!((lon - 500.0 / earth.radius).abs() < 1e-20);
        let still = NavState { v: Vector3::zeros(), lat: 0.4, lon: 1.0, h: 5.0, ..state };
        assert_eq!(position_update(&still, &Vector3::zeros(), 1.0, &earth), (0.4, 1.0, 5.0));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("typical".parse::<AlgoVariant>().unwrap(), AlgoVariant::TYPICAL);
        assert_eq!("viagen8".parse::<AlgoVariant>().unwrap(), AlgoVariant::viagen(8));
        assert!("fiter+second-order".parse::<AlgoVariant>().is_err());
        assert!("nonsense".parse::<AlgoVariant>().is_err());
        for v in [AlgoVariant::TYPICAL, AlgoVariant::ENHANCED, AlgoVariant::FITER, AlgoVariant::VPIF, AlgoVariant::viagen(1)] {
            assert_eq!(v.label().parse::<AlgoVariant>().unwrap(), v);
        }
    }
}

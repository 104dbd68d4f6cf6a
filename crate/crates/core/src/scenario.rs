//! Analytic coning flight: truth, IMU synthesis, algorithm runs, error
//! records and frequency sweeps.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::earth::EarthModel;
use crate::fiter::{fiter_solve, fiter_state, FiterConfig};
use crate::rotation::{principal_angle, Quaternion};
use crate::state::{ImuBatch, NavState};
use crate::strapdown::{strapdown_step, AlgoVariant, AttitudeAlgo, NavRateEpoch};
use crate::NavError;

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    /// Coning half-angle (deg).
    pub coning_angle_deg: f64,
    /// Coning frequency (Hz).
    pub coning_freq: f64,
    /// IMU sampling rate (Hz).
    pub sample_rate: f64,
    /// Samples per update interval.
    pub samples: usize,
    /// Initial eastward speed (m/s).
    pub v0: f64,
    /// Eastward acceleration amplitude (m/s^2).
    pub accel: f64,
    /// Angular frequency of the acceleration (rad/s).
    pub accel_freq: f64,
    /// Run length (s).
    pub duration: f64,
    pub earth: EarthModel,
    /// Gauss-Legendre points per subinterval for the increments.
    pub quad_points: usize,
    /// Rates of the compensation terms of the frozen-rate algorithms.
    pub nav_rate_epoch: NavRateEpoch,
    /// Functional-iteration settings; defaults from the sample count when absent.
    pub fiter: Option<FiterConfig>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            coning_angle_deg: 10.0,
            coning_freq: 0.037,
            sample_rate: 100.0,
            samples: 2,
            v0: 500.0,
            accel: 10.0,
            accel_freq: 0.02,
            duration: 600.0,
            earth: EarthModel::default(),
            quad_points: 10,
            nav_rate_epoch: NavRateEpoch::Start,
            fiter: None,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), NavError> {
        let bad = |m: &str| Err(NavError::InvalidConfig(m.into()));
        if !(self.coning_freq > 0.0) {
            return bad("coning frequency must be positive");
        }
        if !(self.sample_rate > 0.0) || self.samples == 0 {
            return bad("sample rate and samples per update must be positive");
        }
        if !(self.duration >= 0.0) {
            return bad("duration must be non-negative");
        }
        if self.accel_freq == 0.0 {
            return bad("acceleration frequency must be nonzero");
        }
        if self.quad_points == 0 {
            return bad("quadrature needs at least one point");
        }
        if let Some(f) = &self.fiter {
            f.validate()?;
        }
        Ok(())
    }

    /// Update interval `N / f_s`.
    pub fn interval(&self) -> f64 {
        self.samples as f64 / self.sample_rate
    }

    pub fn fiter_config(&self) -> FiterConfig {
        self.fiter.unwrap_or_else(|| FiterConfig::for_samples(self.samples))
    }
}

/// Analytic truth at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruthSample {
    pub t: f64,
    /// `q_n^b`
    pub q_nb: Quaternion,
    /// `q_b^n`
    pub q_bn: Quaternion,
    pub v: Vector3<f64>,
    pub lat: f64,
    pub lon: f64,
    pub h: f64,
    pub w_nb_b: Vector3<f64>,
    pub w_ib_b: Vector3<f64>,
    pub f_b: Vector3<f64>,
}

impl TruthSample {
    pub fn state(&self) -> NavState {
        NavState { q: self.q_bn, v: self.v, lat: self.lat, lon: self.lon, h: self.h }
    }
}

pub fn truth_at(cfg: &ScenarioConfig, t: f64) -> TruthSample {
    truth_near(cfg, t, 0.0)
}

/// Sine and cosine of `w (base + dt)` by angle addition, so that nearby
/// times share the rounding of `w base`.
fn sin_cos_split(w: f64, base: f64, dt: f64) -> (f64, f64) {
    let (sb, cb) = (w * base).sin_cos();
    let (sd, cd) = (w * dt).sin_cos();
    (sb * cd + cb * sd, cb * cd - sb * sd)
}

/// Truth at `base + dt`; the increment synthesizer keeps quadrature nodes as
/// offsets from the subinterval midpoint.
fn truth_near(cfg: &ScenarioConfig, base: f64, dt: f64) -> TruthSample {
    let t = base + dt;
    let half = 0.5 * cfg.coning_angle_deg.to_radians();
    let big_omega = 2.0 * PI * cfg.coning_freq;
    let (s, c) = (half.sin(), half.cos());
    let (so, co) = sin_cos_split(big_omega, base, dt);
    let q_nb = Quaternion::new(c, Vector3::new(0.0, s * co, s * so));
    let dq_nb = Quaternion::new(0.0, Vector3::new(0.0, -s * big_omega * so, s * big_omega * co));
    let w_nb_b = q_nb.mul_raw(&dq_nb.conj()).eta * 2.0;
    let q_bn = q_nb.conj();

    let (a, w) = (cfg.accel, cfg.accel_freq);
    let (sw, cw) = sin_cos_split(w, base, dt);
    let v_east = cfg.v0 + a / w * (1.0 - cw);
    let v = Vector3::new(0.0, 0.0, v_east);
    let (lat, h) = (0.0, 0.0);
    let lon = (cfg.v0 * t + a / w * (t - sw / w)) / (cfg.earth.radius + h);

    let rates = cfg.earth.rates(lat, h, &v);
    let w_ib_b = w_nb_b + q_nb.rotate(&rates.w_in());
    let vdot = Vector3::new(0.0, 0.0, a * sw);
    let f_b = q_nb.rotate(&(vdot + rates.coriolis().cross(&v) - rates.g));
    TruthSample { t, q_nb, q_bn, v, lat, lon, h, w_nb_b, w_ib_b, f_b }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Increments over `n` equal subintervals of `[t0, t0 + T]`:
/// `alpha_k = int omega_ib^b`, `v_k = int f^b`.
pub fn synth_imu(cfg: &ScenarioConfig, t0: f64, interval: f64, n: usize) -> Result<ImuBatch, NavError> {
    synth_imu_with(cfg, t0, interval, n, &gauss_legendre(cfg.quad_points))
}

fn synth_imu_with(cfg: &ScenarioConfig, t0: f64, interval: f64, n: usize, rule: &[(f64, f64)]) -> Result<ImuBatch, NavError> {
    let h = interval / n as f64;
    let mut dalpha = Vec::with_capacity(n);
    let mut dv = Vec::with_capacity(n);
    for k in 0..n {
        let mid = t0 + (k as f64 + 0.5) * h;
        let (mut a, mut v) = (Vector3::zeros(), Vector3::zeros());
        for (x, w) in rule {
            let s = truth_near(cfg, mid, 0.5 * h * x);
            a += s.w_ib_b * *w;
            v += s.f_b * *w;
        }
        dalpha.push(a * (0.5 * h));
        dv.push(v * (0.5 * h));
    }
    ImuBatch::new(interval, dalpha, dv)
}

/// Errors of one algorithm at one update epoch.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRecord {
    pub t: f64,
    pub algorithm: String,
    pub att_err: f64,
    pub vel_err: f64,
    pub pos_err: f64,
    /// Signed west-east position error.
    pub we_pos_err: f64,
    /// False when the functional iteration hit its iteration limit.
    pub converged: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScenarioRun {
    pub records: Vec<ErrorRecord>,
    /// Intervals per algorithm where the functional iteration did not converge.
    pub nonconverged: BTreeMap<String, usize>,
}

impl ScenarioRun {
    pub fn any_nonconverged(&self) -> bool {
        self.nonconverged.values().any(|&n| n > 0)
    }

    pub fn summary(&self, algorithm: &str) -> Option<ErrorSummary> {
        ErrorSummary::of(self.records.iter().filter(|r| r.algorithm == algorithm))
    }

    /// CSV `t,algorithm,att_err_rad,vel_err_mps,pos_err_m,we_pos_err_m`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,algorithm,att_err_rad,vel_err_mps,pos_err_m,we_pos_err_m\n");
        for r in &self.records {
            let _ = writeln!(out, "{},{},{},{},{},{}", r.t, r.algorithm, r.att_err, r.vel_err, r.pos_err, r.we_pos_err);
        }
        out
    }
}

/// Maxima over a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorSummary {
    pub max_att_err: f64,
    pub max_vel_err: f64,
    pub max_pos_err: f64,
    /// Largest magnitude of the west-east error.
    pub max_we_pos_err: f64,
}

impl ErrorSummary {
    fn of<'a>(records: impl Iterator<Item = &'a ErrorRecord>) -> Option<Self> {
        records.fold(None, |acc: Option<ErrorSummary>, r| {
            let m = acc.unwrap_or(ErrorSummary { max_att_err: 0.0, max_vel_err: 0.0, max_pos_err: 0.0, max_we_pos_err: 0.0 });
            Some(ErrorSummary {
                max_att_err: m.max_att_err.max(r.att_err),
                max_vel_err: m.max_vel_err.max(r.vel_err),
                max_pos_err: m.max_pos_err.max(r.pos_err),
                max_we_pos_err: m.max_we_pos_err.max(r.we_pos_err.abs()),
            })
        })
    }
}

/// Errors of an estimated state against truth.
pub fn state_errors(est: &NavState, truth: &TruthSample, earth: &EarthModel) -> (f64, f64, f64, f64) {
    let r = earth.radius + truth.h;
    let dn = (est.lat - truth.lat) * r;
    let de = (est.lon - truth.lon) * r * truth.lat.cos();
    let du = est.h - truth.h;
    (
        principal_angle(&est.q, &truth.q_bn),
        (est.v - truth.v).norm(),
        Vector3::new(dn, du, de).norm(),
        de,
    )
}

/// One update of any algorithm; the flag is false when the iteration was capped.
pub fn nav_step(
    state: &NavState,
    batch: &ImuBatch,
    variant: AlgoVariant,
    earth: &EarthModel,
    epoch: NavRateEpoch,
    fiter: &FiterConfig,
) -> Result<(NavState, bool), NavError> {
    if variant.attitude == AttitudeAlgo::Fiter {
        let sol = fiter_solve(batch, state, earth, fiter)?;
        Ok((fiter_state(&sol, state), sol.converged()))
    } else {
        let (s, _) = strapdown_step(state, batch, variant, earth, epoch)?;
        Ok((s, true))
    }
}

/// Runs every variant from the truth-initialized state over the whole scenario.
pub fn run_scenario(cfg: &ScenarioConfig, variants: &[AlgoVariant]) -> Result<ScenarioRun, NavError> {
    cfg.validate()?;
    for v in variants {
        v.validate()?;
    }
    let t = cfg.interval();
    let steps = (cfg.duration / t + 1e-9).floor() as usize;
    let rule = gauss_legendre(cfg.quad_points);
    let batches: Vec<ImuBatch> = (0..steps)
        .into_par_iter()
        .map(|k| synth_imu_with(cfg, k as f64 * t, t, cfg.samples, &rule))
        .collect::<Result<_, _>>()?;
    let truths: Vec<TruthSample> = (1..=steps).map(|k| truth_at(cfg, k as f64 * t)).collect();
    let fiter = cfg.fiter_config();
    let start = truth_at(cfg, 0.0).state();

    let per_variant: Vec<(Vec<ErrorRecord>, usize)> = variants
        .par_iter()
        .map(|variant| {
            let label = variant.label();
            let mut state = start;
            let mut out = Vec::with_capacity(steps);
            let mut missed = 0;
            for (batch, truth) in batches.iter().zip(&truths) {
                let (next, ok) = nav_step(&state, batch, *variant, &cfg.earth, cfg.nav_rate_epoch, &fiter)?;
                state = next;
                missed += usize::from(!ok);
                let (att, vel, pos, we) = state_errors(&state, truth, &cfg.earth);
                out.push(ErrorRecord {
                    t: truth.t,
                    algorithm: label.clone(),
                    att_err: att,
                    vel_err: vel,
                    pos_err: pos,
                    we_pos_err: we,
                    converged: ok,
                });
            }
            Ok((out, missed))
        })
        .collect::<Result<_, NavError>>()?;

    let mut run = ScenarioRun::default();
    for (variant, (records, missed)) in variants.iter().zip(per_variant) {
        if variant.attitude == AttitudeAlgo::Fiter {
            *run.nonconverged.entry(variant.label()).or_default() += missed;
        }
        run.records.extend(records);
    }
    Ok(run)
}

/// One sweep row.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub fc_hz: f64,
    pub rel_freq: f64,
    pub algorithm: String,
    pub summary: ErrorSummary,
    pub nonconverged: usize,
}

/// `n` logarithmically spaced frequencies from `lo` to `hi`.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect(),
    }
}

/// Runs the scenario at each coning frequency; rows sorted by (frequency, algorithm).
pub fn sweep(template: &ScenarioConfig, freqs: &[f64], variants: &[AlgoVariant]) -> Result<Vec<SweepRow>, NavError> {
    let runs: Vec<(f64, ScenarioRun)> = freqs
        .par_iter()
        .map(|&fc| {
            let cfg = ScenarioConfig { coning_freq: fc, ..template.clone() };
            run_scenario(&cfg, variants).map(|r| (fc, r))
        })
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (fc, run) in runs {
        for v in variants {
            let label = v.label();
            let summary = run.summary(&label).unwrap_or(ErrorSummary {
                max_att_err: 0.0,
                max_vel_err: 0.0,
                max_pos_err: 0.0,
                max_we_pos_err: 0.0,
            });
            rows.push(SweepRow {
                fc_hz: fc,
                rel_freq: fc / template.sample_rate,
                nonconverged: run.nonconverged.get(&label).copied().unwrap_or(0),
                algorithm: label,
                summary,
            });
        }
    }
    rows.sort_by(|a, b| a.fc_hz.total_cmp(&b.fc_hz).then_with(|| a.algorithm.cmp(&b.algorithm)));
    Ok(rows)
}

/// CSV `fc_hz,rel_freq,algorithm,max_att_err_rad,max_vel_err_mps,max_pos_err_m,max_we_pos_err_m`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("fc_hz,rel_freq,algorithm,max_att_err_rad,max_vel_err_mps,max_pos_err_m,max_we_pos_err_m\n");
    for r in rows {
        let s = &r.summary;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.fc_hz, r.rel_freq, r.algorithm, s.max_att_err, s.max_vel_err, s.max_pos_err, s.max_we_pos_err
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_attitude() {
        let s = truth_at(&ScenarioConfig::default(), 0.0);
        let h = 5f64.to_radians();
        assert!((s.q_nb.s - h.cos()).abs() < 1e-16);
        assert!((s.q_nb.eta - Vector3::new(0.0, h.sin(), 0.0)).norm() < 1e-16);
    }

    #[test]
    fn zero_cone_is_level() {
        let cfg = ScenarioConfig { coning_angle_deg: 0.0, ..Default::default() };
        for t in [0.0, 1.3, 77.0] {
            assert_eq!(truth_at(&cfg, t).q_nb, Quaternion::identity());
        }
    }

    #[test]
    fn east_speed_after_half_period() {
        let cfg = ScenarioConfig::default();
        let s = truth_at(&cfg, PI / cfg.accel_freq);
        assert!((s.v.z - 1500.0).abs() < 1e-9);
    }

    #[test]
    fn gauss_legendre_exactness() {
        let rule = gauss_legendre(10);
        let w: f64 = rule.iter().map(|p| p.1).sum();
        assert!((w - 2.0).abs() < 1e-14);
        let x18: f64 = rule.iter().map(|(x, w)| w * x.powi(18)).sum();
        assert!((x18 - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn empty_run() {
        let cfg = ScenarioConfig { duration: 0.0, ..Default::default() };
        let run = run_scenario(&cfg, &[AlgoVariant::TYPICAL]).unwrap();
        assert!(run.records.is_empty());
    }

    #[test]
    fn log_spacing() {
        let f = log_space(0.01, 20.0, 5);
        assert_eq!(f.len(), 5);
        assert!((f[0] - 0.01).abs() < 1e-15 && (f[4] - 20.0).abs() < 1e-12);
    }
}

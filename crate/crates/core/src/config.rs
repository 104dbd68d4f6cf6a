//! Plain-text `key = value` scenario configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Recognized keys:
//! `coning_angle_deg`, `fc`, `fs`, `samples`, `v0`, `accel`, `accel_freq`,
//! `duration`, `earth_radius`, `earth_rate`, `gravity` (a number or `normal`),
//! `quad_points`, `nav_rate_epoch` (`start` or `midpoint`), `variants`
//! (comma separated), and the functional-iteration keys `fiter_tolerance`,
//! `fiter_max_attitude_iterations`, `fiter_max_vp_iterations`,
//! `fiter_trunc_attitude`, `fiter_trunc_velocity`, `fiter_trunc_position`.

use std::str::FromStr;

use crate::earth::GravityModel;
use crate::fiter::FiterConfig;
use crate::scenario::ScenarioConfig;
use crate::strapdown::{AlgoVariant, NavRateEpoch};
use crate::NavError;

/// Parsed configuration file.
#[derive(Clone, Debug, PartialEq)]
pub struct FileConfig {
    pub scenario: ScenarioConfig,
    pub variants: Option<Vec<AlgoVariant>>,
}

fn num<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, NavError> {
    value.parse().map_err(|_| NavError::ConfigParse { line, message: format!("bad value '{value}' for '{key}'") })
}

pub fn parse_variants(list: &str) -> Result<Vec<AlgoVariant>, NavError> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

/// Applies the settings in `text` on top of `base`.
pub fn parse_config(text: &str, base: ScenarioConfig) -> Result<FileConfig, NavError> {
    let mut cfg = base;
    let mut variants = None;
    // applied last so that they override defaults derived from `samples`
    let mut fiter_keys = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| NavError::ConfigParse { line, message: format!("expected key = value, got '{content}'") })?;
        match key {
            "coning_angle_deg" => cfg.coning_angle_deg = num(key, value, line)?,
            "fc" | "coning_freq" => cfg.coning_freq = num(key, value, line)?,
            "fs" | "sample_rate" => cfg.sample_rate = num(key, value, line)?,
            "samples" => cfg.samples = num(key, value, line)?,
            "v0" => cfg.v0 = num(key, value, line)?,
            "accel" => cfg.accel = num(key, value, line)?,
            "accel_freq" => cfg.accel_freq = num(key, value, line)?,
            "duration" => cfg.duration = num(key, value, line)?,
            "earth_radius" => cfg.earth.radius = num(key, value, line)?,
            "earth_rate" => cfg.earth.rate = num(key, value, line)?,
            "gravity" => {
                cfg.earth.gravity = if value.eq_ignore_ascii_case("normal") {
                    GravityModel::Normal
                } else {
                    GravityModel::Constant(num(key, value, line)?)
                }
            }
            "quad_points" => cfg.quad_points = num(key, value, line)?,
            "nav_rate_epoch" => {
                cfg.nav_rate_epoch = match value {
                    "start" => NavRateEpoch::Start,
                    "midpoint" => NavRateEpoch::Midpoint,
                    _ => return Err(NavError::ConfigParse { line, message: format!("bad epoch '{value}'") }),
                }
            }
            "variants" => {
                variants = Some(parse_variants(value).map_err(|e| NavError::ConfigParse { line, message: e.to_string() })?)
            }
            _ if key.starts_with("fiter_") => fiter_keys.push((key.to_string(), value.to_string(), line)),
            _ => return Err(NavError::ConfigParse { line, message: format!("unknown key '{key}'") }),
        }
    }
    if !fiter_keys.is_empty() {
        let mut f = cfg.fiter.unwrap_or_else(|| FiterConfig::for_samples(cfg.samples));
        for (key, value, line) in &fiter_keys {
            let (key, value, line) = (key.as_str(), value.as_str(), *line);
            match key {
                "fiter_tolerance" => f.tolerance = num(key, value, line)?,
                "fiter_max_attitude_iterations" => f.max_attitude_iterations = num(key, value, line)?,
                "fiter_max_vp_iterations" => f.max_vp_iterations = num(key, value, line)?,
                "fiter_trunc_attitude" => f.trunc_attitude = num(key, value, line)?,
                "fiter_trunc_velocity" => f.trunc_velocity = num(key, value, line)?,
                "fiter_trunc_position" => f.trunc_position = num(key, value, line)?,
                _ => return Err(NavError::ConfigParse { line, message: format!("unknown key '{key}'") }),
            }
        }
        cfg.fiter = Some(f);
    }
    cfg.validate()?;
    Ok(FileConfig { scenario: cfg, variants })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_comments() {
        let text = "# run\nfc = 1.0\nsamples=4 # four-sample\n\ngravity = normal\nvariants = typical, fiter\n";
        let c = parse_config(text, ScenarioConfig::default()).unwrap();
        assert_eq!(c.scenario.coning_freq, 1.0);
        assert_eq!(c.scenario.samples, 4);
        assert_eq!(c.scenario.earth.gravity, GravityModel::Normal);
        assert_eq!(c.variants, Some(vec![AlgoVariant::TYPICAL, AlgoVariant::FITER]));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_config("fc = 1\nbogus = 2\n", ScenarioConfig::default()).unwrap_err();
        assert!(matches!(e, NavError::ConfigParse { line: 2, .. }));
        assert!(parse_config("fc = fast", ScenarioConfig::default()).is_err());
        assert!(parse_config("fc = -1", ScenarioConfig::default()).is_err());
    }

    #[test]
    fn fiter_keys() {
        let c = parse_config("samples = 4\nfiter_trunc_attitude = 12\n", ScenarioConfig::default()).unwrap();
        let f = c.scenario.fiter.unwrap();
        assert_eq!(f.trunc_attitude, 12);
        assert_eq!(f.max_attitude_iterations, 5);
    }
}

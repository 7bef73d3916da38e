//! Simulation configuration.
//!
//! A [`Scenario`] holds every parameter of the indoor setup: the RF array,
//! the LED and near-infrared transmitters, the photodetectors, the harvesting
//! models and the safety limits. [`default_scenario`] reproduces the reference
//! indoor deployment: a 4-antenna RF transmitter at 4 m, an optical transmitter
//! at 2.05 m and three devices.
//!
//! Scenario files are plain UTF-8 text with one `key = value` per line and `#`
//! comments. Keys are the field names below; nested model fields use dotted
//! keys (`eh_rf.p_sat`, `safety.illuminance_min`, ...). Unspecified keys keep
//! their default value.

use std::fmt::Write as _;

use crate::channel_optical::OpticalGeometry;
use crate::error::{Error, Result};

/// Converts a power level in dBm to watts.
pub fn dbm_to_watt(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0) / 1000.0
}

/// Logistic (sigmoidal) RF harvester parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EhRfModel {
    /// Saturation output power (W).
    pub p_sat: f64,
    /// Steepness (1/W).
    pub a: f64,
    /// Turning point (W).
    pub b: f64,
}

/// Photovoltaic open-circuit harvester parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EhOpticalModel {
    /// Thermal voltage (V).
    pub thermal_voltage: f64,
    /// Dark saturation current (A).
    pub dark_saturation_current: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafetyLimits {
    /// Radiated RF power budget standing in for the whole-body SAR limit (W).
    pub sar_power_budget: f64,
    /// Averaging window of the SAR budget (s).
    pub sar_window: f64,
    /// Near-infrared irradiance limit on eyes and skin (W/m²).
    pub nirl_irradiance_limit: f64,
    pub illuminance_min: f64,
    pub illuminance_max: f64,
    /// Infrared beams are steered away from people.
    pub nirl_beam_avoids_body: bool,
}

/// Full parameterization of one simulation run.
///
/// Powers in W, distances in m, angles in degrees, bandwidths in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub n_rf_antennas: usize,
    /// Total RF power of the single-technology baseline, shared by all devices.
    pub rf_total_tx_power: f64,
    /// Total RF power used by the collaborative protocols.
    pub rf_wpt_tx_power: f64,
    /// Rician K-factor (linear).
    pub rician_k: f64,
    pub pathloss_exponent: f64,
    pub rf_noise_power: f64,
    pub rf_bandwidth: f64,
    pub rf_distance: f64,
    pub optical_distance: f64,
    /// Radiated optical power of the LED bulb.
    pub vl_bulb_power: f64,
    pub vl_semi_angle: f64,
    /// Radiated optical power of the infrared bulb, summed over its elements.
    pub nirl_bulb_power: f64,
    /// Semi-angle at half power of each infrared element.
    pub nirl_semi_angle: f64,
    pub n_devices: usize,
    pub incidence_angle_vl: f64,
    pub irradiance_angle_vl: f64,
    pub incidence_angle_nirl: f64,
    pub irradiance_angle_nirl: f64,
    pub pd_area: f64,
    pub pd_responsivity: f64,
    pub pd_fill_factor: f64,
    /// Electrical-domain noise variance of the optical receivers.
    pub optical_noise_power: f64,
    pub optical_filter_gain: f64,
    pub optical_bandwidth: f64,
    pub eh_rf: EhRfModel,
    pub eh_optical: EhOpticalModel,
    pub safety: SafetyLimits,
    /// Luminous efficacy of the LED radiation (lm/W).
    pub luminous_efficacy: f64,
    /// Fraction of the LED power kept when the room is dimmed.
    pub vl_dim_fraction: f64,
    /// Number of fading draws in the RF ensemble.
    pub mc_samples: usize,
    pub rng_seed: u64,
}

impl Default for Scenario {
    fn default() -> Self {
        default_scenario()
    }
}

/// The reference indoor deployment.
pub fn default_scenario() -> Scenario {
    Scenario {
        n_rf_antennas: 4,
        rf_total_tx_power: dbm_to_watt(20.0),
        rf_wpt_tx_power: dbm_to_watt(16.0),
        rician_k: 10f64.powf(6.0 / 10.0),
        pathloss_exponent: 2.6,
        rf_noise_power: 1e-12,
        rf_bandwidth: 10e6,
        rf_distance: 4.0,
        optical_distance: 2.05,
        vl_bulb_power: 22.0,
        vl_semi_angle: 60.0,
        nirl_bulb_power: 66.0,
        nirl_semi_angle: 15.0,
        n_devices: 3,
        incidence_angle_vl: 60.0,
        irradiance_angle_vl: 60.0,
        incidence_angle_nirl: 60.0,
        // angle-diversity elements point at their device
        irradiance_angle_nirl: 0.0,
        pd_area: 85e-4,
        pd_responsivity: 0.4,
        pd_fill_factor: 0.75,
        optical_noise_power: 1e-15,
        optical_filter_gain: 1.0,
        optical_bandwidth: 100e6,
        eh_rf: EhRfModel {
            p_sat: 0.024,
            a: 150.0,
            b: 0.014,
        },
        eh_optical: EhOpticalModel {
            thermal_voltage: 0.025,
            dark_saturation_current: 1e-9,
        },
        safety: SafetyLimits {
            sar_power_budget: 4.8,
            sar_window: 360.0,
            nirl_irradiance_limit: 0.005,
            illuminance_min: 200.0,
            illuminance_max: 1000.0,
            nirl_beam_avoids_body: true,
        },
        luminous_efficacy: 120.0,
        vl_dim_fraction: 0.1,
        mc_samples: 1000,
        rng_seed: 0x5eed,
    }
}

impl Scenario {
    /// Line-of-sight geometry between the LED and a device.
    pub fn vl_geometry(&self) -> OpticalGeometry {
        OpticalGeometry {
            distance: self.optical_distance,
            irradiance_angle: self.irradiance_angle_vl,
            incidence_angle: self.incidence_angle_vl,
            semi_angle: self.vl_semi_angle,
        }
    }

    /// Line-of-sight geometry between an infrared element and its device.
    pub fn nirl_geometry(&self) -> OpticalGeometry {
        OpticalGeometry {
            distance: self.optical_distance,
            irradiance_angle: self.irradiance_angle_nirl,
            incidence_angle: self.incidence_angle_nirl,
            semi_angle: self.nirl_semi_angle,
        }
    }

    /// Infrared power delivered to each device; the bulb is split equally.
    pub fn nirl_power_per_device(&self) -> f64 {
        self.nirl_bulb_power / self.n_devices as f64
    }

    /// Checks every field invariant and reports the first violation.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.float_fields() {
            // K = ∞ is the pure line-of-sight channel
            let los_limit = name == "rician_k" && v == f64::INFINITY;
            if !v.is_finite() && !los_limit {
                return Err(Error::validation(name, format!("{v} is not finite")));
            }
        }

        let positive = [
            ("rf_total_tx_power", self.rf_total_tx_power),
            ("rf_wpt_tx_power", self.rf_wpt_tx_power),
            ("pathloss_exponent", self.pathloss_exponent),
            ("rf_noise_power", self.rf_noise_power),
            ("rf_bandwidth", self.rf_bandwidth),
            ("rf_distance", self.rf_distance),
            ("optical_distance", self.optical_distance),
            ("vl_bulb_power", self.vl_bulb_power),
            ("nirl_bulb_power", self.nirl_bulb_power),
            ("pd_area", self.pd_area),
            ("optical_noise_power", self.optical_noise_power),
            ("optical_filter_gain", self.optical_filter_gain),
            ("optical_bandwidth", self.optical_bandwidth),
            ("eh_rf.p_sat", self.eh_rf.p_sat),
            ("eh_rf.a", self.eh_rf.a),
            ("eh_rf.b", self.eh_rf.b),
            ("eh_optical.thermal_voltage", self.eh_optical.thermal_voltage),
            (
                "eh_optical.dark_saturation_current",
                self.eh_optical.dark_saturation_current,
            ),
            ("safety.sar_power_budget", self.safety.sar_power_budget),
            ("safety.sar_window", self.safety.sar_window),
            ("safety.nirl_irradiance_limit", self.safety.nirl_irradiance_limit),
            ("luminous_efficacy", self.luminous_efficacy),
        ];
        for (name, v) in positive {
            if v <= 0.0 {
                return Err(Error::validation(name, format!("must be > 0, got {v}")));
            }
        }

        if self.rician_k < 0.0 {
            return Err(Error::validation("rician_k", "must be >= 0"));
        }
        // pathloss is referenced to 1 m
        if self.rf_distance < 1.0 {
            return Err(Error::validation(
                "rf_distance",
                format!("must be >= 1 m, got {}", self.rf_distance),
            ));
        }

        for (name, v) in [
            ("n_rf_antennas", self.n_rf_antennas),
            ("n_devices", self.n_devices),
            ("mc_samples", self.mc_samples),
        ] {
            if v == 0 {
                return Err(Error::validation(name, "must be >= 1"));
            }
        }

        for (name, v) in [
            ("incidence_angle_vl", self.incidence_angle_vl),
            ("irradiance_angle_vl", self.irradiance_angle_vl),
            ("incidence_angle_nirl", self.incidence_angle_nirl),
            ("irradiance_angle_nirl", self.irradiance_angle_nirl),
        ] {
            if !(0.0..90.0).contains(&v) {
                return Err(Error::validation(name, format!("{v}° is outside [0°, 90°)")));
            }
        }
        for (name, v) in [
            ("vl_semi_angle", self.vl_semi_angle),
            ("nirl_semi_angle", self.nirl_semi_angle),
        ] {
            if v <= 0.0 || v >= 90.0 {
                return Err(Error::validation(name, format!("{v}° is outside (0°, 90°)")));
            }
        }

        for (name, v) in [
            ("pd_responsivity", self.pd_responsivity),
            ("pd_fill_factor", self.pd_fill_factor),
            ("vl_dim_fraction", self.vl_dim_fraction),
        ] {
            if v <= 0.0 || v > 1.0 {
                return Err(Error::validation(name, format!("{v} is outside (0, 1]")));
            }
        }

        if self.safety.illuminance_min < 0.0 {
            return Err(Error::validation("safety.illuminance_min", "must be >= 0"));
        }
        if self.safety.illuminance_min >= self.safety.illuminance_max {
            return Err(Error::validation(
                "safety.illuminance_max",
                "must exceed safety.illuminance_min",
            ));
        }
        Ok(())
    }

    fn float_fields(&self) -> Vec<(&'static str, f64)> {
        FIELDS
            .iter()
            .filter_map(|f| match (f.get)(self) {
                Value::Float(v) => Some((f.key, v)),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Value {
    Float(f64),
    Count(usize),
    Seed(u64),
    Flag(bool),
}

impl Value {
    fn render(self) -> String {
        match self {
            Value::Float(v) => format!("{v:?}"),
            Value::Count(v) => v.to_string(),
            Value::Seed(v) => v.to_string(),
            Value::Flag(v) => v.to_string(),
        }
    }
}

struct Field {
    key: &'static str,
    get: fn(&Scenario) -> Value,
    set: fn(&mut Scenario, &str) -> std::result::Result<(), String>,
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    s.parse::<f64>()
        .map_err(|_| format!("expected a number, got `{s}`"))
}

fn parse_usize(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>()
        .map_err(|_| format!("expected a non-negative integer, got `{s}`"))
}

fn parse_u64(s: &str) -> std::result::Result<u64, String> {
    s.parse::<u64>()
        .map_err(|_| format!("expected a non-negative integer, got `{s}`"))
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    s.parse::<bool>()
        .map_err(|_| format!("expected true or false, got `{s}`"))
}

macro_rules! fields {
    ($( $key:literal => $kind:ident $parser:ident ($($path:tt)+) ),* $(,)?) => {
        &[$(
            Field {
                key: $key,
                get: |s| Value::$kind(s.$($path)+),
                set: |s, v| {
                    s.$($path)+ = $parser(v)?;
                    Ok(())
                },
            },
        )*]
    };
}

const FIELDS: &[Field] = fields![
    "n_rf_antennas" => Count parse_usize (n_rf_antennas),
    "rf_total_tx_power" => Float parse_f64 (rf_total_tx_power),
    "rf_wpt_tx_power" => Float parse_f64 (rf_wpt_tx_power),
    "rician_k" => Float parse_f64 (rician_k),
    "pathloss_exponent" => Float parse_f64 (pathloss_exponent),
    "rf_noise_power" => Float parse_f64 (rf_noise_power),
    "rf_bandwidth" => Float parse_f64 (rf_bandwidth),
    "rf_distance" => Float parse_f64 (rf_distance),
    "optical_distance" => Float parse_f64 (optical_distance),
    "vl_bulb_power" => Float parse_f64 (vl_bulb_power),
    "vl_semi_angle" => Float parse_f64 (vl_semi_angle),
    "nirl_bulb_power" => Float parse_f64 (nirl_bulb_power),
    "nirl_semi_angle" => Float parse_f64 (nirl_semi_angle),
    "n_devices" => Count parse_usize (n_devices),
    "incidence_angle_vl" => Float parse_f64 (incidence_angle_vl),
    "irradiance_angle_vl" => Float parse_f64 (irradiance_angle_vl),
    "incidence_angle_nirl" => Float parse_f64 (incidence_angle_nirl),
    "irradiance_angle_nirl" => Float parse_f64 (irradiance_angle_nirl),
    "pd_area" => Float parse_f64 (pd_area),
    "pd_responsivity" => Float parse_f64 (pd_responsivity),
    "pd_fill_factor" => Float parse_f64 (pd_fill_factor),
    "optical_noise_power" => Float parse_f64 (optical_noise_power),
    "optical_filter_gain" => Float parse_f64 (optical_filter_gain),
    "optical_bandwidth" => Float parse_f64 (optical_bandwidth),
    "eh_rf.p_sat" => Float parse_f64 (eh_rf.p_sat),
    "eh_rf.a" => Float parse_f64 (eh_rf.a),
    "eh_rf.b" => Float parse_f64 (eh_rf.b),
    "eh_optical.thermal_voltage" => Float parse_f64 (eh_optical.thermal_voltage),
    "eh_optical.dark_saturation_current" => Float parse_f64 (eh_optical.dark_saturation_current),
    "safety.sar_power_budget" => Float parse_f64 (safety.sar_power_budget),
    "safety.sar_window" => Float parse_f64 (safety.sar_window),
    "safety.nirl_irradiance_limit" => Float parse_f64 (safety.nirl_irradiance_limit),
    "safety.illuminance_min" => Float parse_f64 (safety.illuminance_min),
    "safety.illuminance_max" => Float parse_f64 (safety.illuminance_max),
    "safety.nirl_beam_avoids_body" => Flag parse_bool (safety.nirl_beam_avoids_body),
    "luminous_efficacy" => Float parse_f64 (luminous_efficacy),
    "vl_dim_fraction" => Float parse_f64 (vl_dim_fraction),
    "mc_samples" => Count parse_usize (mc_samples),
    "rng_seed" => Seed parse_u64 (rng_seed),
];

/// Parses a scenario file. Keys not present keep their default value; the
/// result is validated before it is returned.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut scenario = default_scenario();
    let mut seen: Vec<&'static str> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line, message };

        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(parse_err(format!("missing value for `{key}`")));
        }
        let field = FIELDS
            .iter()
            .find(|f| f.key == key)
            .ok_or_else(|| parse_err(format!("unknown key `{key}`")))?;
        if seen.contains(&field.key) {
            return Err(parse_err(format!("duplicate key `{key}`")));
        }
        seen.push(field.key);
        (field.set)(&mut scenario, value).map_err(|m| parse_err(format!("{key}: {m}")))?;
    }

    scenario.validate()?;
    Ok(scenario)
}

/// Renders every field as a scenario file that [`parse_scenario`] reads back
/// to an identical value.
pub fn render_scenario(scenario: &Scenario) -> String {
    let mut out = String::from("# swipt scenario (W, m, degrees, Hz)\n");
    for f in FIELDS {
        let _ = writeln!(out, "{} = {}", f.key, (f.get)(scenario).render());
    }
    out
}

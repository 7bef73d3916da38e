//! Collaborative information and power transfer protocols.
//!
//! Every protocol maps five control variables to a per-device operating point
//! (aggregate rate, aggregate harvested power):
//!
//! | protocol   | infrared (NIRL)        | visible light (VL)        | RF              |
//! |------------|------------------------|---------------------------|-----------------|
//! | `A`        | power splitting `α_N`  | all-DC harvesting         | power split `ρ` |
//! | `B`        | time switching `τ_N`   | all-DC harvesting         | power split `ρ` |
//! | `C`        | all-DC harvesting      | PS/TS `α_V`, `τ_V`        | power split `ρ` |
//! | `D`        | PS/TS `α_N`, `τ_N`     | dimmed, max information   | power split `ρ` |
//! | `RF_ONLY`  | off                    | off                       | power split `ρ` |
//! | `VL_ONLY`  | off                    | PS/TS `α_V`, `τ_V`        | off             |
//! | `NIRL_ONLY`| PS/TS `α_N`, `τ_N`     | off                       | off             |
//!
//! A lightwave band under combined PS/TS splits the frame into an information
//! slot of length `τ` and a harvesting slot of length `1 - τ`. In the
//! information slot the DC level is `α·P` and the AC peak is
//! `min(α, 1-α)·P` (intensity stays within `[0, P]`); the DC part is still
//! harvested. The harvesting slot is all-DC. Rates and harvested powers are
//! averaged over the frame.
//!
//! Controls that are not free for a protocol are pinned; see
//! [`pinned_controls`].

use std::fmt;
use std::str::FromStr;

use crate::channel_optical::{channel_gain, illuminance_at, received_optical_power};
use crate::channel_rf::{fading_ensemble, mean_over_ensemble, path_gain};
use crate::error::{Error, Result};
use crate::harvest::{optical_harvest, rf_harvest};
use crate::link_rates::{lightwave_rate, rf_rate};
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProtocolId {
    RfOnly,
    VlOnly,
    NirlOnly,
    A,
    B,
    C,
    D,
}

impl ProtocolId {
    pub const ALL: [ProtocolId; 7] = [
        ProtocolId::RfOnly,
        ProtocolId::VlOnly,
        ProtocolId::NirlOnly,
        ProtocolId::A,
        ProtocolId::B,
        ProtocolId::C,
        ProtocolId::D,
    ];
    pub const BASELINES: [ProtocolId; 3] = [ProtocolId::RfOnly, ProtocolId::VlOnly, ProtocolId::NirlOnly];
    pub const COLLABORATIVE: [ProtocolId; 4] = [ProtocolId::A, ProtocolId::B, ProtocolId::C, ProtocolId::D];

    /// Short name used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            ProtocolId::RfOnly => "rf",
            ProtocolId::VlOnly => "vl",
            ProtocolId::NirlOnly => "nirl",
            ProtocolId::A => "a",
            ProtocolId::B => "b",
            ProtocolId::C => "c",
            ProtocolId::D => "d",
        }
    }

    pub fn is_baseline(self) -> bool {
        matches!(self, ProtocolId::RfOnly | ProtocolId::VlOnly | ProtocolId::NirlOnly)
    }
}

impl fmt::Display for ProtocolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProtocolId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ProtocolId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown protocol `{s}` (expected one of rf, vl, nirl, a, b, c, d)"))
    }
}

/// One of the five control variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Control {
    /// `α_N`: infrared DC share of the per-device budget.
    NirlDcFraction,
    /// `τ_N`: infrared information-slot length.
    NirlIdTimeFraction,
    /// `α_V`: visible-light DC share.
    VlDcFraction,
    /// `τ_V`: visible-light information-slot length.
    VlIdTimeFraction,
    /// `ρ`: RF power share sent to the harvester.
    RfEhFraction,
}

impl Control {
    pub const ALL: [Control; 5] = [
        Control::NirlDcFraction,
        Control::NirlIdTimeFraction,
        Control::VlDcFraction,
        Control::VlIdTimeFraction,
        Control::RfEhFraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Control::NirlDcFraction => "alpha_nirl",
            Control::NirlIdTimeFraction => "tau_nirl",
            Control::VlDcFraction => "alpha_vl",
            Control::VlIdTimeFraction => "tau_vl",
            Control::RfEhFraction => "rho_rf",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProtocolControls {
    pub nirl_dc_fraction: f64,
    pub nirl_id_time_fraction: f64,
    pub vl_dc_fraction: f64,
    pub vl_id_time_fraction: f64,
    pub rf_eh_fraction: f64,
}

impl ProtocolControls {
    pub fn get(&self, control: Control) -> f64 {
        match control {
            Control::NirlDcFraction => self.nirl_dc_fraction,
            Control::NirlIdTimeFraction => self.nirl_id_time_fraction,
            Control::VlDcFraction => self.vl_dc_fraction,
            Control::VlIdTimeFraction => self.vl_id_time_fraction,
            Control::RfEhFraction => self.rf_eh_fraction,
        }
    }

    pub fn set(&mut self, control: Control, value: f64) {
        match control {
            Control::NirlDcFraction => self.nirl_dc_fraction = value,
            Control::NirlIdTimeFraction => self.nirl_id_time_fraction = value,
            Control::VlDcFraction => self.vl_dc_fraction = value,
            Control::VlIdTimeFraction => self.vl_id_time_fraction = value,
            Control::RfEhFraction => self.rf_eh_fraction = value,
        }
    }

    pub fn with(mut self, control: Control, value: f64) -> Self {
        self.set(control, value);
        self
    }

    /// Controls for `protocol` with the given free values, pins filled in.
    /// `free` is matched positionally against [`free_controls`].
    pub fn for_protocol(protocol: ProtocolId, free: &[f64]) -> Self {
        let mut c = pinned_controls(protocol);
        for (control, v) in free_controls(protocol).iter().zip(free) {
            c.set(*control, *v);
        }
        c
    }
}

/// Free control axes of each protocol.
pub fn free_controls(protocol: ProtocolId) -> &'static [Control] {
    use Control::*;
    match protocol {
        ProtocolId::A => &[NirlDcFraction, RfEhFraction],
        ProtocolId::B => &[NirlIdTimeFraction, RfEhFraction],
        ProtocolId::C => &[VlDcFraction, VlIdTimeFraction, RfEhFraction],
        ProtocolId::D => &[NirlDcFraction, NirlIdTimeFraction, RfEhFraction],
        ProtocolId::RfOnly => &[RfEhFraction],
        ProtocolId::VlOnly => &[VlDcFraction, VlIdTimeFraction],
        ProtocolId::NirlOnly => &[NirlDcFraction, NirlIdTimeFraction],
    }
}

/// Bias of every time-switching information slot: maximal admissible AC.
pub const ID_SLOT_BIAS: f64 = 0.5;

/// Pinned values of every control; free controls are reported as 0.
///
/// Bands that a protocol does not use are pinned at 0. A and B keep the LED
/// all-DC (`α_V = 1`, `τ_V = 0`), A runs the infrared link without a
/// harvesting slot (`τ_N = 1`), B biases its information slot at 0.5, C keeps
/// the infrared all-DC (`α_N = 1`, `τ_N = 0`) and D drives the dimmed LED
/// with DC equal to AC peak (`α_V = 0.5`, `τ_V = 1`).
pub fn pinned_controls(protocol: ProtocolId) -> ProtocolControls {
    let zero = ProtocolControls::default();
    match protocol {
        ProtocolId::RfOnly | ProtocolId::VlOnly | ProtocolId::NirlOnly => zero,
        ProtocolId::A => ProtocolControls {
            nirl_id_time_fraction: 1.0,
            vl_dc_fraction: 1.0,
            ..zero
        },
        ProtocolId::B => ProtocolControls {
            nirl_dc_fraction: ID_SLOT_BIAS,
            vl_dc_fraction: 1.0,
            ..zero
        },
        ProtocolId::C => ProtocolControls {
            nirl_dc_fraction: 1.0,
            ..zero
        },
        ProtocolId::D => ProtocolControls {
            vl_dc_fraction: ID_SLOT_BIAS,
            vl_id_time_fraction: 1.0,
            ..zero
        },
    }
}

/// Checks range and pins.
pub fn validate_controls(protocol: ProtocolId, controls: &ProtocolControls) -> Result<()> {
    let pins = pinned_controls(protocol);
    let free = free_controls(protocol);
    for control in Control::ALL {
        let value = controls.get(control);
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::ControlOutOfRange {
                control: control.name(),
                value,
            });
        }
        let expected = pins.get(control);
        if !free.contains(&control) && value != expected {
            return Err(Error::InvalidPin {
                protocol: protocol.name().to_string(),
                control: control.name(),
                expected,
                actual: value,
            });
        }
    }
    Ok(())
}

/// Uniform Cartesian grid over the protocol's free axes, endpoints included.
/// The first free axis varies slowest.
pub fn enumerate_controls(protocol: ProtocolId, grid_points_per_axis: usize) -> Result<Vec<ProtocolControls>> {
    if grid_points_per_axis < 2 {
        return Err(Error::Domain(format!(
            "grid needs at least 2 points per axis, got {grid_points_per_axis}"
        )));
    }
    let axes = free_controls(protocol);
    let n = grid_points_per_axis;
    let step = |i: usize| i as f64 / (n - 1) as f64;
    let total = n.pow(axes.len() as u32);
    let pins = pinned_controls(protocol);

    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; axes.len()];
    for _ in 0..total {
        let mut c = pins;
        for (axis, i) in axes.iter().zip(&idx) {
            c.set(*axis, step(*i));
        }
        out.push(c);
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(out)
}

/// Outcome of one control setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Aggregate rate over all information-carrying bands (bit/s).
    pub rate: f64,
    /// Aggregate harvested power over RF, VL and NIRL (W).
    pub harvested_power: f64,
    pub controls: ProtocolControls,
    pub protocol: ProtocolId,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
struct BandOutcome {
    rate: f64,
    harvested: f64,
}

/// Per-scenario link budget shared by every evaluation.
///
/// The RF fading ensemble is drawn once here, so every grid point of a sweep
/// sees the same channel realizations.
#[derive(Debug, Clone)]
pub struct Evaluator {
    scenario: Scenario,
    vl_rx: f64,
    nirl_rx: f64,
    rf_rx_protocol: f64,
    rf_rx_baseline: f64,
    vl_full_illuminance: f64,
}

impl Evaluator {
    pub fn new(scenario: &Scenario) -> Result<Self> {
        let vl_gain = channel_gain(
            &scenario.vl_geometry(),
            scenario.pd_area,
            scenario.optical_filter_gain,
            1.0,
        );
        let nirl_gain = channel_gain(
            &scenario.nirl_geometry(),
            scenario.pd_area,
            scenario.optical_filter_gain,
            1.0,
        );
        let gain = path_gain(scenario.rf_distance, scenario.pathloss_exponent)?;
        let ensemble = fading_ensemble(scenario);
        let devices = scenario.n_devices as f64;

        Ok(Self {
            vl_rx: received_optical_power(scenario.vl_bulb_power, vl_gain),
            nirl_rx: received_optical_power(scenario.nirl_power_per_device(), nirl_gain),
            rf_rx_protocol: mean_over_ensemble(&ensemble, scenario.rf_wpt_tx_power / devices, gain),
            rf_rx_baseline: mean_over_ensemble(&ensemble, scenario.rf_total_tx_power / devices, gain),
            vl_full_illuminance: illuminance_at(
                scenario.vl_bulb_power,
                scenario.luminous_efficacy,
                &scenario.vl_geometry(),
            ),
            scenario: scenario.clone(),
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    /// Received VL optical power at full bulb power (W).
    pub fn vl_received_power(&self) -> f64 {
        self.vl_rx
    }

    /// Received infrared optical power per device at full element power (W).
    pub fn nirl_received_power(&self) -> f64 {
        self.nirl_rx
    }

    /// Mean RF received power of the collaborative protocols (W).
    pub fn rf_received_power_protocol(&self) -> f64 {
        self.rf_rx_protocol
    }

    /// Mean RF received power of the RF-only baseline (W).
    pub fn rf_received_power_baseline(&self) -> f64 {
        self.rf_rx_baseline
    }

    /// Illuminance with the LED undimmed (lx).
    pub fn vl_full_illuminance(&self) -> f64 {
        self.vl_full_illuminance
    }

    fn harvest_light(&self, p_dc: f64) -> f64 {
        optical_harvest(
            p_dc,
            self.scenario.pd_responsivity,
            self.scenario.pd_fill_factor,
            &self.scenario.eh_optical,
        )
    }

    fn light_rate(&self, ac_peak: f64) -> f64 {
        lightwave_rate(
            ac_peak,
            self.scenario.pd_responsivity,
            self.scenario.optical_noise_power,
            self.scenario.optical_bandwidth,
        )
    }

    /// Combined PS/TS lightwave band with received budget `p_rx`.
    fn lightwave_band(&self, p_rx: f64, dc_fraction: f64, id_time: f64) -> BandOutcome {
        let dc = dc_fraction * p_rx;
        let ac = dc_fraction.min(1.0 - dc_fraction) * p_rx;
        let id_rate = self.light_rate(ac);
        let id_harvest = self.harvest_light(dc);
        let eh_harvest = self.harvest_light(p_rx);
        BandOutcome {
            rate: id_time * id_rate,
            harvested: id_time * id_harvest + (1.0 - id_time) * eh_harvest,
        }
    }

    fn rf_band(&self, p_rx: f64, eh_fraction: f64) -> BandOutcome {
        BandOutcome {
            rate: rf_rate(
                p_rx,
                1.0 - eh_fraction,
                self.scenario.rf_noise_power,
                self.scenario.rf_bandwidth,
            ),
            harvested: rf_harvest(eh_fraction * p_rx, &self.scenario.eh_rf),
        }
    }

    /// Illuminance for a frame-averaged LED DC share (lx).
    pub fn vl_illuminance(&self, dc_share: f64) -> f64 {
        self.vl_full_illuminance * dc_share
    }

    /// Admissible illuminance interval for protocol C. The LED may not be
    /// dimmed below the minimum; a bulb that cannot reach the minimum must
    /// stay undimmed.
    pub fn protocol_c_illuminance_bounds(&self) -> (f64, f64) {
        let limits = &self.scenario.safety;
        (
            limits.illuminance_min.min(self.vl_full_illuminance),
            limits.illuminance_max,
        )
    }

    pub fn evaluate(&self, protocol: ProtocolId, controls: &ProtocolControls) -> Result<OperatingPoint> {
        validate_controls(protocol, controls)?;
        let c = controls;

        let nirl = match protocol {
            ProtocolId::A | ProtocolId::B | ProtocolId::C | ProtocolId::D | ProtocolId::NirlOnly => {
                self.lightwave_band(self.nirl_rx, c.nirl_dc_fraction, c.nirl_id_time_fraction)
            }
            ProtocolId::RfOnly | ProtocolId::VlOnly => BandOutcome::default(),
        };

        let vl = match protocol {
            ProtocolId::A | ProtocolId::B | ProtocolId::VlOnly => {
                self.lightwave_band(self.vl_rx, c.vl_dc_fraction, c.vl_id_time_fraction)
            }
            ProtocolId::C => {
                // AC is zero-mean, so the perceived level follows the frame-averaged DC
                let dc_share = 1.0 - c.vl_id_time_fraction * (1.0 - c.vl_dc_fraction);
                let lux = self.vl_illuminance(dc_share);
                let (lo, hi) = self.protocol_c_illuminance_bounds();
                if lux < lo || lux > hi {
                    return Err(Error::InfeasibleControls(format!(
                        "illuminance {lux:.1} lx outside [{lo:.1}, {hi:.1}] lx"
                    )));
                }
                self.lightwave_band(self.vl_rx, c.vl_dc_fraction, c.vl_id_time_fraction)
            }
            ProtocolId::D => {
                let level = self.scenario.vl_dim_fraction * self.vl_rx;
                BandOutcome {
                    rate: self.light_rate(level),
                    harvested: self.harvest_light(level),
                }
            }
            ProtocolId::RfOnly | ProtocolId::NirlOnly => BandOutcome::default(),
        };

        let rf = match protocol {
            ProtocolId::RfOnly => self.rf_band(self.rf_rx_baseline, c.rf_eh_fraction),
            ProtocolId::A | ProtocolId::B | ProtocolId::C | ProtocolId::D => {
                self.rf_band(self.rf_rx_protocol, c.rf_eh_fraction)
            }
            ProtocolId::VlOnly | ProtocolId::NirlOnly => BandOutcome::default(),
        };

        Ok(OperatingPoint {
            rate: nirl.rate + vl.rate + rf.rate,
            harvested_power: nirl.harvested + vl.harvested + rf.harvested,
            controls: *controls,
            protocol,
        })
    }
}

/// One-shot evaluation; sweeps should reuse an [`Evaluator`].
pub fn evaluate(scenario: &Scenario, protocol: ProtocolId, controls: &ProtocolControls) -> Result<OperatingPoint> {
    Evaluator::new(scenario)?.evaluate(protocol, controls)
}

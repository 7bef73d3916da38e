//! Exposure and lighting checks: RF power budget (SAR proxy), near-infrared
//! irradiance and visible-light illuminance.
//!
//! Limits are inclusive: a value equal to its limit passes.

use std::fmt;

use crate::channel_optical::{illuminance_at, irradiance_at, OpticalGeometry};
use crate::scenario::{SafetyLimits, Scenario};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SarCheck {
    pub ok: bool,
    /// Budget minus average radiated power (W).
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrradianceCheck {
    pub ok: bool,
    /// Limit minus irradiance (W/m²); the full limit when beams avoid the body.
    pub margin: f64,
    /// Irradiance at the body position (W/m²).
    pub value: f64,
    /// Passed by beam steering rather than by level.
    pub exempt: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IlluminanceClass {
    Below,
    Within,
    Above,
}

impl fmt::Display for IlluminanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IlluminanceClass::Below => "below",
            IlluminanceClass::Within => "within",
            IlluminanceClass::Above => "above",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IlluminanceCheck {
    pub class: IlluminanceClass,
    /// Illuminance at the device (lx).
    pub value: f64,
    pub dim_mode: bool,
}

impl IlluminanceCheck {
    /// Dimmed rooms are exempt from the lighting range.
    pub fn ok(&self) -> bool {
        self.dim_mode || self.class == IlluminanceClass::Within
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafetyVerdict {
    pub sar: SarCheck,
    pub irradiance: IrradianceCheck,
    pub illuminance: IlluminanceCheck,
    pub overall_ok: bool,
}

/// Compares a constant average radiated RF power against the SAR budget.
pub fn check_sar(avg_radiated_rf_power: f64, limits: &SafetyLimits) -> SarCheck {
    let margin = limits.sar_power_budget - avg_radiated_rf_power;
    SarCheck {
        ok: avg_radiated_rf_power <= limits.sar_power_budget,
        margin,
    }
}

/// Irradiance of one infrared element at a body located at `body_geometry`.
pub fn check_irradiance(scenario: &Scenario, body_geometry: &OpticalGeometry) -> IrradianceCheck {
    let limit = scenario.safety.nirl_irradiance_limit;
    if scenario.safety.nirl_beam_avoids_body {
        return IrradianceCheck {
            ok: true,
            margin: limit,
            value: 0.0,
            exempt: true,
        };
    }
    let value = irradiance_at(scenario.nirl_power_per_device(), body_geometry);
    IrradianceCheck {
        ok: value <= limit,
        margin: limit - value,
        value,
        exempt: false,
    }
}

pub fn check_illuminance(scenario: &Scenario, dim_mode: bool) -> IlluminanceCheck {
    let scale = if dim_mode { scenario.vl_dim_fraction } else { 1.0 };
    let value = illuminance_at(
        scenario.vl_bulb_power * scale,
        scenario.luminous_efficacy,
        &scenario.vl_geometry(),
    );
    let limits = &scenario.safety;
    let class = if value < limits.illuminance_min {
        IlluminanceClass::Below
    } else if value > limits.illuminance_max {
        IlluminanceClass::Above
    } else {
        IlluminanceClass::Within
    };
    IlluminanceCheck { class, value, dim_mode }
}

/// Full verdict. The SAR check uses the collaborative-protocol RF power.
pub fn safety_verdict(scenario: &Scenario, body_geometry: &OpticalGeometry, dim_mode: bool) -> SafetyVerdict {
    let sar = check_sar(scenario.rf_wpt_tx_power, &scenario.safety);
    let irradiance = check_irradiance(scenario, body_geometry);
    let illuminance = check_illuminance(scenario, dim_mode);
    SafetyVerdict {
        overall_ok: sar.ok && irradiance.ok && illuminance.ok(),
        sar,
        irradiance,
        illuminance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::default_scenario;

    #[test]
    fn sar_examples() {
        let limits = default_scenario().safety;
        let c = check_sar(0.1, &limits);
        assert!(c.ok);
        assert_eq!(c.margin, 4.7);
        let c = check_sar(4.8, &limits);
        assert!(c.ok);
        assert_eq!(c.margin, 0.0);
        assert!(!check_sar(5.0, &limits).ok);
    }

    #[test]
    fn sar_is_monotone() {
        let limits = default_scenario().safety;
        let mut failed = false;
        for i in 0..1000 {
            let ok = check_sar(i as f64 * 0.01, &limits).ok;
            assert!(!(failed && ok));
            failed |= !ok;
        }
        assert!(failed);
    }

    #[test]
    fn irradiance_examples() {
        let mut s = default_scenario();
        let body = s.nirl_geometry();
        assert!(check_irradiance(&s, &body).ok);

        s.safety.nirl_beam_avoids_body = false;
        let c = check_irradiance(&s, &body);
        assert!(!c.ok);
        assert!((c.value - 8.75).abs() / 8.75 < 1e-3);
        assert_eq!(c.margin, 0.005 - c.value);

        s.nirl_bulb_power = 0.0;
        assert!(check_irradiance(&s, &body).ok);
    }

    #[test]
    fn irradiance_falls_with_distance() {
        let mut s = default_scenario();
        s.safety.nirl_beam_avoids_body = false;
        let mut prev = f64::INFINITY;
        for d in [0.5, 1.0, 2.05, 5.0, 20.0, 100.0] {
            let g = OpticalGeometry::new(d, 0.0, 0.0, s.nirl_semi_angle).unwrap();
            let v = check_irradiance(&s, &g).value;
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn illuminance_examples() {
        let mut s = default_scenario();
        let c = check_illuminance(&s, false);
        assert_eq!(c.class, IlluminanceClass::Below);
        assert!((c.value - 50.0).abs() < 0.01);
        assert!(!c.ok());

        let dim = check_illuminance(&s, true);
        assert_eq!(dim.class, IlluminanceClass::Below);
        assert!(dim.ok());

        s.luminous_efficacy = 600.0;
        let c = check_illuminance(&s, false);
        assert_eq!(c.class, IlluminanceClass::Within);
        assert!((c.value - 250.0).abs() < 0.05);
    }

    #[test]
    fn overall_verdict() {
        let mut s = default_scenario();
        let body = s.nirl_geometry();
        let v = safety_verdict(&s, &body, false);
        assert!((v.sar.margin - 4.7602).abs() < 1e-4);
        assert!(!v.overall_ok); // 50 lx is below the lighting range
        assert!(safety_verdict(&s, &body, true).overall_ok);

        s.safety.nirl_beam_avoids_body = false;
        assert!(!safety_verdict(&s, &body, true).overall_ok);
    }
}

//! Lambertian line-of-sight optical channel.
//!
//! A generalized Lambertian emitter of order `m` seen by a photodetector of
//! area `A` at distance `d`, irradiance angle `φ` and incidence angle `ψ` has
//! DC gain
//!
//! ```text
//! H = (m + 1) A / (2π d²) · cos^m(φ) · T_s · g · cos(ψ)
//! ```
//!
//! with filter gain `T_s` and concentrator gain `g`. Irradiance and
//! illuminance use the same radiation pattern per unit area.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Receiver field of view (degrees).
pub const FIELD_OF_VIEW_DEG: f64 = 90.0;

/// Link geometry; all angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalGeometry {
    pub distance: f64,
    /// Angle of departure at the transmitter (φ).
    pub irradiance_angle: f64,
    /// Angle of arrival at the photodetector (ψ).
    pub incidence_angle: f64,
    /// Semi-angle at half power of the emitter (Φ½).
    pub semi_angle: f64,
}

impl OpticalGeometry {
    pub fn new(distance: f64, irradiance_angle: f64, incidence_angle: f64, semi_angle: f64) -> Result<Self> {
        let g = Self {
            distance,
            irradiance_angle,
            incidence_angle,
            semi_angle,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.distance > 0.0) || !self.distance.is_finite() {
            return Err(Error::Domain(format!("distance must be > 0, got {}", self.distance)));
        }
        for (name, a) in [
            ("irradiance angle", self.irradiance_angle),
            ("incidence angle", self.incidence_angle),
        ] {
            if !(0.0..90.0).contains(&a) {
                return Err(Error::Domain(format!("{name} {a}° is outside [0°, 90°)")));
            }
        }
        lambertian_order(self.semi_angle).map(|_| ())
    }

    fn order(&self) -> f64 {
        // semi-angles outside (0°, 90°) have no finite order
        lambertian_order(self.semi_angle).unwrap_or(f64::NAN)
    }

    /// Radiation pattern per unit area: `(m+1)/(2π d²) · cos^m(φ) · cos(ψ)`,
    /// zero outside the field of view.
    fn spatial_density(&self) -> f64 {
        if self.incidence_angle >= FIELD_OF_VIEW_DEG {
            return 0.0;
        }
        let m = self.order();
        let cos_phi = cos_deg(self.irradiance_angle);
        let cos_psi = cos_deg(self.incidence_angle);
        (m + 1.0) / (2.0 * PI * self.distance * self.distance) * cos_phi.powf(m) * cos_psi
    }
}

/// Lambertian order `m = -ln 2 / ln(cos Φ½)`.
pub fn lambertian_order(semi_angle: f64) -> Result<f64> {
    if !(semi_angle > 0.0 && semi_angle < 90.0) {
        return Err(Error::Domain(format!(
            "semi-angle {semi_angle}° is outside (0°, 90°)"
        )));
    }
    Ok(-std::f64::consts::LN_2 / cos_deg(semi_angle).ln())
}

/// Cosine of an angle in degrees. The degree-to-radian product is carried in
/// two parts so the rounding of `π/180` does not leak into the result; this
/// keeps e.g. `cos 60° = 0.5` exact.
pub fn cos_deg(deg: f64) -> f64 {
    const DEG_HI: f64 = std::f64::consts::PI / 180.0;
    // π/180 - DEG_HI
    const DEG_LO: f64 = 2.948652270870168e-19;
    let hi = deg * DEG_HI;
    let lo = deg.mul_add(DEG_HI, -hi) + deg * DEG_LO;
    hi.cos() - hi.sin() * lo
}

/// DC channel gain of the line-of-sight link.
pub fn channel_gain(geometry: &OpticalGeometry, pd_area: f64, filter_gain: f64, concentrator_gain: f64) -> f64 {
    geometry.spatial_density() * pd_area * filter_gain * concentrator_gain
}

pub fn received_optical_power(tx_optical_power: f64, gain: f64) -> f64 {
    tx_optical_power * gain
}

/// Irradiance (W/m²) produced at the receiver position.
pub fn irradiance_at(tx_optical_power: f64, geometry: &OpticalGeometry) -> f64 {
    tx_optical_power * geometry.spatial_density()
}

/// Horizontal illuminance (lx) from an LED radiating `led_power` watts at the
/// given luminous efficacy.
pub fn illuminance_at(led_power: f64, efficacy: f64, geometry: &OpticalGeometry) -> f64 {
    led_power * efficacy * geometry.spatial_density()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn vl() -> OpticalGeometry {
        OpticalGeometry::new(2.05, 60.0, 60.0, 60.0).unwrap()
    }

    fn nirl() -> OpticalGeometry {
        OpticalGeometry::new(2.05, 0.0, 60.0, 15.0).unwrap()
    }

    #[test]
    fn lambertian_orders() {
        assert!((lambertian_order(60.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((lambertian_order(15.0).unwrap() - 19.99).abs() < 5e-3);
        assert_eq!(lambertian_order(60.0).unwrap(), 1.0);
        assert!((lambertian_order(45.0).unwrap() - 2.0).abs() < 1e-12);
        assert!(lambertian_order(0.0).is_err());
        assert!(lambertian_order(90.0).is_err());
        assert!(lambertian_order(-10.0).is_err());
    }

    #[test]
    fn gains_at_reference_geometry() {
        assert!(rel(channel_gain(&vl(), 0.0085, 1.0, 1.0), 1.609e-4) < 1e-3);
        assert!(rel(channel_gain(&nirl(), 0.0085, 1.0, 1.0), 3.38e-3) < 1e-3);

        let grazing = OpticalGeometry {
            incidence_angle: 90.0,
            ..vl()
        };
        assert_eq!(channel_gain(&grazing, 0.0085, 1.0, 1.0), 0.0);
    }

    #[test]
    fn received_power_examples() {
        assert!(rel(received_optical_power(22.0, 1.609e-4), 3.54e-3) < 1e-3);
        assert!(rel(received_optical_power(22.0, 3.38e-3), 7.44e-2) < 1e-3);
        assert_eq!(received_optical_power(0.0, 3.0), 0.0);
    }

    #[test]
    fn irradiance_examples() {
        assert!(rel(irradiance_at(22.0, &nirl()), 8.75) < 1e-3);
        assert_eq!(irradiance_at(0.0, &nirl()), 0.0);
        let g = vl();
        let lhs = channel_gain(&g, 0.0085, 0.9, 1.5) * 22.0 / (0.0085 * 0.9 * 1.5);
        assert!(rel(lhs, irradiance_at(22.0, &g)) < 1e-12);
    }

    #[test]
    fn illuminance_examples() {
        let e = illuminance_at(22.0, 120.0, &vl());
        assert!((e - 50.0).abs() < 0.01, "{e}");
        assert!(rel(illuminance_at(22.0, 240.0, &vl()), 2.0 * e) < 1e-12);

        let boresight = OpticalGeometry::new(1.0, 0.0, 0.0, 60.0).unwrap();
        assert!(rel(illuminance_at(1.0, 1.0, &boresight), 1.0 / PI) < 1e-12);
    }

    #[test]
    fn m1_gain_scales_with_cos_squared() {
        let base = channel_gain(&OpticalGeometry::new(2.0, 0.0, 0.0, 60.0).unwrap(), 1e-2, 1.0, 1.0);
        for deg in [10.0, 30.0, 45.0, 70.0] {
            let g = channel_gain(&OpticalGeometry::new(2.0, deg, deg, 60.0).unwrap(), 1e-2, 1.0, 1.0);
            let c = cos_deg(deg);
            assert!(rel(g, base * c * c) < 1e-12);
        }
    }

    #[test]
    fn geometry_validation() {
        assert!(OpticalGeometry::new(0.0, 0.0, 0.0, 60.0).is_err());
        assert!(OpticalGeometry::new(1.0, 90.0, 0.0, 60.0).is_err());
        assert!(OpticalGeometry::new(1.0, 0.0, 0.0, 90.0).is_err());
    }

    #[test]
    fn degree_cosine() {
        assert_eq!(cos_deg(0.0), 1.0);
        assert_eq!(cos_deg(60.0), 0.5);
        for deg in [1.0, 15.0, 33.3, 45.0, 72.0, 89.0] {
            assert!((cos_deg(deg) - f64::to_radians(deg).cos()).abs() < 4e-16);
        }
    }
}

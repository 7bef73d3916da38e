//! RF link: Rician small-scale fading, power-law pathloss and maximal ratio
//! transmission.
//!
//! With MRT the transmit beam is matched to the channel vector `h`, so the
//! received power is `P · G · ‖h‖²`. The fading ensemble is drawn from a
//! ChaCha stream seeded by the scenario, which makes every average
//! reproducible bit for bit.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// Complex channel gains, one per transmit antenna.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector {
    pub entries: Vec<Complex64>,
}

impl ChannelVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Squared Euclidean norm ‖h‖².
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|h| h.norm_sqr()).sum()
    }
}

/// Draws one Rician channel vector.
///
/// Each entry is `sqrt(K/(K+1)) + sqrt(1/(K+1)) · g` with `g` a unit-variance
/// circularly-symmetric complex Gaussian; the line-of-sight phase is zero on
/// every antenna. `k_factor = ∞` yields the pure line-of-sight vector.
pub fn sample_rician<R: Rng + ?Sized>(n_antennas: usize, k_factor: f64, rng: &mut R) -> ChannelVector {
    let (los, scatter) = if k_factor.is_infinite() {
        (1.0, 0.0)
    } else {
        (
            (k_factor / (k_factor + 1.0)).sqrt(),
            (1.0 / (k_factor + 1.0)).sqrt(),
        )
    };
    let entries = (0..n_antennas)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            // unit variance split across I and Q
            let g = Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
            Complex64::new(los, 0.0) + g * scatter
        })
        .collect();
    ChannelVector { entries }
}

/// Large-scale power gain `d^(-exponent)`, referenced to unit gain at 1 m.
pub fn path_gain(distance: f64, exponent: f64) -> Result<f64> {
    if !(distance >= 1.0) {
        return Err(Error::Domain(format!(
            "pathloss is undefined below the 1 m reference distance (got {distance} m)"
        )));
    }
    Ok(distance.powf(-exponent))
}

/// Received power under MRT: `P · G · ‖h‖²`.
pub fn mrt_received_power(tx_power_per_device: f64, channel: &ChannelVector, path_gain: f64) -> f64 {
    tx_power_per_device * path_gain * channel.norm_sqr()
}

/// Draws the scenario's fading ensemble (`mc_samples` vectors).
pub fn fading_ensemble(scenario: &Scenario) -> Vec<ChannelVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(scenario.rng_seed);
    (0..scenario.mc_samples)
        .map(|_| sample_rician(scenario.n_rf_antennas, scenario.rician_k, &mut rng))
        .collect()
}

/// Ensemble-average MRT received power at a device.
pub fn mean_rf_received_power(scenario: &Scenario, tx_power_per_device: f64) -> Result<f64> {
    let gain = path_gain(scenario.rf_distance, scenario.pathloss_exponent)?;
    let ensemble = fading_ensemble(scenario);
    Ok(mean_over_ensemble(&ensemble, tx_power_per_device, gain))
}

pub(crate) fn mean_over_ensemble(ensemble: &[ChannelVector], tx_power_per_device: f64, gain: f64) -> f64 {
    let total: f64 = ensemble
        .iter()
        .map(|h| mrt_received_power(tx_power_per_device, h, gain))
        .sum();
    total / ensemble.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::default_scenario;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn path_gain_values() {
        assert_eq!(path_gain(1.0, 2.6).unwrap(), 1.0);
        // 4^-2.6 = 2^-5.2 = 1/36.7583
        assert!(rel(path_gain(4.0, 2.6).unwrap(), 0.0272047) < 1e-6);
        assert_eq!(path_gain(4.0, 2.0).unwrap(), 0.0625);
        assert!(matches!(path_gain(0.5, 2.6), Err(Error::Domain(_))));
        assert!(path_gain(f64::NAN, 2.6).is_err());
    }

    #[test]
    fn pure_los_limit() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = sample_rician(4, f64::INFINITY, &mut rng);
        assert!(h.entries.iter().all(|e| *e == Complex64::new(1.0, 0.0)));

        let h = sample_rician(4, 1e12, &mut rng);
        for e in &h.entries {
            assert!((e - Complex64::new(1.0, 0.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn rayleigh_unit_variance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let mean: f64 = (0..n)
            .map(|_| sample_rician(1, 0.0, &mut rng).entries[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0).abs() < 0.02, "{mean}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_rician(4, 3.98, &mut ChaCha8Rng::seed_from_u64(42));
        let b = sample_rician(4, 3.98, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn mrt_examples() {
        let ones = ChannelVector::new(vec![Complex64::new(1.0, 0.0); 4]);
        assert_eq!(mrt_received_power(1.0, &ones, 1.0), 4.0);

        let p = mrt_received_power(0.1 / 3.0, &ones, path_gain(4.0, 2.6).unwrap());
        assert!(rel(p, 3.63e-3) < 1e-3, "{p}");

        let zero = ChannelVector::new(vec![Complex64::new(0.0, 0.0); 4]);
        assert_eq!(mrt_received_power(1.0, &zero, 1.0), 0.0);
    }

    #[test]
    fn los_phase_is_immaterial_for_mrt() {
        let h = sample_rician(4, 3.98, &mut ChaCha8Rng::seed_from_u64(3));
        let rotated = ChannelVector::new(
            h.entries
                .iter()
                .enumerate()
                .map(|(i, e)| e * Complex64::from_polar(1.0, 0.7 * i as f64))
                .collect(),
        );
        assert!(rel(mrt_received_power(1.0, &rotated, 1.0), mrt_received_power(1.0, &h, 1.0)) < 1e-12);
    }

    #[test]
    fn ensemble_means() {
        let mut s = default_scenario();
        s.mc_samples = 1;
        let one = mean_rf_received_power(&s, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(s.rng_seed);
        let h = sample_rician(s.n_rf_antennas, s.rician_k, &mut rng);
        let single = mrt_received_power(0.5, &h, path_gain(s.rf_distance, s.pathloss_exponent).unwrap());
        assert_eq!(one, single);

        let mut los = default_scenario();
        los.rician_k = f64::INFINITY;
        los.rf_distance = 1.0;
        assert_eq!(mean_rf_received_power(&los, 1.0).unwrap(), 4.0);

        let s = default_scenario();
        let p = mean_rf_received_power(&s, 0.1 / 3.0).unwrap();
        assert!(rel(p, 0.1 / 3.0 * 0.0272047 * 4.0) < 0.10, "{p}");
        assert_eq!(p, mean_rf_received_power(&s, 0.1 / 3.0).unwrap());
    }

    #[test]
    fn los_ensemble_has_zero_variance() {
        let mut s = default_scenario();
        s.rician_k = f64::INFINITY;
        s.mc_samples = 50;
        let g = path_gain(s.rf_distance, s.pathloss_exponent).unwrap();
        let powers: Vec<f64> = fading_ensemble(&s)
            .iter()
            .map(|h| mrt_received_power(1.0, h, g))
            .collect();
        assert!(powers.iter().all(|p| *p == powers[0]));
    }
}

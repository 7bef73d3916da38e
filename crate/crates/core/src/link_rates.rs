//! Achievable information rates.

use std::f64::consts::{E, PI};

/// Shannon rate of the RF information branch after power splitting; only the
/// `id_fraction` share of the received power reaches the decoder.
pub fn rf_rate(p_rx: f64, id_fraction: f64, noise_power: f64, bandwidth: f64) -> f64 {
    bandwidth * (id_fraction * p_rx / noise_power).ln_1p() / std::f64::consts::LN_2
}

/// Capacity lower bound of an intensity-modulated optical link driven with
/// received AC peak amplitude `ac_amplitude_rx`:
/// `(B/2) · log2(1 + e/(2π) · (R·A)² / σ²)`.
pub fn lightwave_rate(ac_amplitude_rx: f64, responsivity: f64, noise_power: f64, bandwidth: f64) -> f64 {
    let signal = responsivity * ac_amplitude_rx;
    let snr = E / (2.0 * PI) * signal * signal / noise_power;
    bandwidth / 2.0 * snr.ln_1p() / std::f64::consts::LN_2
}

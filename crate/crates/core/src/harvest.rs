//! Energy harvesting models.

use crate::scenario::{EhOpticalModel, EhRfModel};

/// Nonlinear (logistic) RF harvester.
///
/// `Ψ(p) = P_sat / (1 + exp(-a (p - b)))` is shifted and rescaled so that zero
/// input yields zero output and large inputs saturate at `P_sat`.
pub fn rf_harvest(p_in: f64, model: &EhRfModel) -> f64 {
    let sigmoid = |x: f64| 1.0 / (1.0 + (-model.a * (x - model.b)).exp());
    // sigmoid(0) == omega bit for bit, so zero input harvests exactly zero
    let omega = sigmoid(0.0);
    model.p_sat * (sigmoid(p_in) - omega) / (1.0 - omega)
}

/// Photovoltaic harvester: `f · I · V_t ln(1 + I/I₀)` with `I = R · P_dc`.
pub fn optical_harvest(p_optical_dc: f64, responsivity: f64, fill_factor: f64, model: &EhOpticalModel) -> f64 {
    let current = responsivity * p_optical_dc;
    let v_oc = model.thermal_voltage * (current / model.dark_saturation_current).ln_1p();
    fill_factor * current * v_oc
}

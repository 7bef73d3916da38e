//! Link-level simulator for collaborative RF and lightwave (visible and
//! near-infrared) simultaneous wireless information and power transfer.
//!
//! The crate computes per-device rate-energy regions for four hybrid
//! protocols and three single-technology baselines, extracts their Pareto
//! frontiers, and checks a scenario against RF exposure, infrared irradiance
//! and illumination limits.
//!
//! Module map:
//! - [`scenario`]: configuration, defaults and the scenario file format
//! - [`channel_rf`]: Rician fading, pathloss and MRT received power
//! - [`channel_optical`]: Lambertian line-of-sight gain, irradiance, illuminance
//! - [`harvest`]: nonlinear RF and photovoltaic optical harvesting
//! - [`link_rates`]: RF and intensity-modulated lightwave rates
//! - [`protocols`]: control variables to operating points
//! - [`region`]: exhaustive sweeps, Pareto frontiers, region dominance
//! - [`safety`]: SAR, irradiance and illuminance verdicts
//! - [`cli`]: the `swipt` command-line front end

pub mod channel_optical;
pub mod channel_rf;
pub mod cli;
pub mod error;
pub mod harvest;
pub mod link_rates;
pub mod protocols;
pub mod region;
pub mod safety;
pub mod scenario;

pub use error::{Error, Result};
pub use protocols::{evaluate, Evaluator, OperatingPoint, ProtocolControls, ProtocolId};
pub use region::{dominates, pareto, sweep, RateEnergyRegion};
pub use scenario::{default_scenario, parse_scenario, render_scenario, Scenario};

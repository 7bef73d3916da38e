use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed scenario file line.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A scenario field violates its invariant.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    /// Argument outside the domain of a model.
    #[error("domain error: {0}")]
    Domain(String),

    /// Protocol C control setting pushes illuminance out of range.
    #[error("infeasible controls: {0}")]
    InfeasibleControls(String),

    /// A control that is fixed for the protocol was given another value.
    #[error("control {control} is pinned to {expected} for protocol {protocol}, got {actual}")]
    InvalidPin {
        protocol: String,
        control: &'static str,
        expected: f64,
        actual: f64,
    },

    /// A control lies outside [0, 1].
    #[error("control {control} = {value} is outside [0, 1]")]
    ControlOutOfRange { control: &'static str, value: f64 },

    /// No feasible operating point, or an empty region where one is required.
    #[error("degenerate region: {0}")]
    DegenerateRegion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(field: &str, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

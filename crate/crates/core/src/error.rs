use thiserror::Error;

/// Errors shared by the library modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Bessel evaluation requested outside the supported (n, x) envelope.
    #[error("bessel argument out of envelope: n = {n}, x = {x} (need |n| <= {max_n}, 0 <= x <= {max_x})")]
    BesselEnvelope {
        n: i32,
        x: f64,
        max_n: i32,
        max_x: f64,
    },

    /// A scalar parameter violated its domain constraint.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    /// Suppression ratio requested for an order with zero amplitude.
    #[error("suppression ratio undefined: amplitude at order {order} is zero")]
    ZeroTargetAmplitude { order: i32 },

    /// Sideband order outside the spectrum truncation.
    #[error("order {order} outside truncation n_max = {n_max}")]
    OrderOutOfRange { order: i32, n_max: i32 },
}

impl Error {
    pub fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

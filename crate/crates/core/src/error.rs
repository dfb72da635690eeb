use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failure modes of the model, spectrum and dressed-state computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: &'static str },

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(&'static str),

    /// The Liouvillian is singular or too ill-conditioned to pin down a steady state.
    #[error("no unique steady state (condition estimate {condition:e})")]
    NoUniqueSteadyState { condition: f64 },

    #[error("closed-form steady state undefined: denominator vanishes")]
    VanishingDenominator,

    #[error("resolvent shift is singular at omega = {omega}")]
    SingularShift { omega: f64 },

    #[error("correlations do not decay (slowest rate {rate:e})")]
    NonDecaying { rate: f64 },

    #[error("degenerate dressed basis: omega_b = 0 leaves the dressed pairs degenerate")]
    DegenerateDressedBasis,

    #[error("outside the secular regime: Omega_1 = {omega1} is below {minimum}")]
    OutsideSecularRegime { omega1: f64, minimum: f64 },

    #[error("effective widths form a complex pair; Lorentzian sidebands are undefined")]
    ComplexWidths,

    #[error("coincident effective widths; sideband weights are singular")]
    CoincidentWidths,
}

impl Error {
    /// True for failures of the numerics (as opposed to bad inputs).
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::InvalidParameter { .. } | Error::InvalidGrid(_))
    }
}

//! Error types shared across the crate.

use alloc::vec::Vec;
use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// A single violated invariant of a [`SegmentConfig`](crate::SegmentConfig).
///
/// `field` is the symbol as it appears in the problem statement
/// (`"L"`, `"m"` or `"hbar"`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfigIssue {
    pub field: &'static str,
    pub value: f64,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} must be > 0 and finite (got {})",
            self.field, self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// One or more segment parameters violate their invariants.
    Config(Vec<ConfigIssue>),
    /// A tolerance or term cap is outside its admissible range.
    Policy(&'static str),
    /// Euclidean time must be strictly positive and finite.
    NonPositiveTau(f64),
    /// Time intervals with `im > 0` make every kernel series diverge.
    GrowingTime { re: f64, im: f64 },
    /// Pure real time is opt-in; the default constructors reject it.
    RealTimeDisabled { re: f64 },
    /// NaN or infinite time components.
    NonFiniteTime { re: f64, im: f64 },
    /// A zero-length interval has no propagator (the kernel degenerates
    /// to a delta distribution).
    ZeroDuration,
    /// Position argument outside `[0, L]`.
    OutsideSegment { x: f64, length: f64 },
    /// The truncated series could not certify the requested tolerance
    /// within `max_terms` terms.
    MaxTermsExceeded { max_terms: usize, tail_bound: f64 },
    /// Barrier scattering requires `0 < E < h`.
    EnergyOutOfRange { energy: f64, height: f64 },
    /// Reflection phases must have unit modulus.
    NonUnitPhase { modulus: f64 },
    /// Classical paths need `t1 > t0`.
    InvalidTimeOrder { t0: f64, t1: f64 },
    /// Both endpoints of a reflected path sit on the same wall, so the
    /// bounce times are undetermined.
    DegeneratePath { r: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(issues) => {
                write!(f, "invalid segment configuration: ")?;
                for (i, issue) in issues.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{issue}")?;
                }
                Ok(())
            }
            Error::Policy(msg) => write!(f, "invalid numeric policy: {msg}"),
            Error::NonPositiveTau(tau) => {
                write!(f, "Euclidean time must be > 0 and finite (got {tau})")
            }
            Error::GrowingTime { re, im } => write!(
                f,
                "time interval ({re}, {im}) has im > 0; kernel series diverge there"
            ),
            Error::RealTimeDisabled { re } => write!(
                f,
                "pure real time {re} rejected; use EvolutionTime::real_time to opt in"
            ),
            Error::NonFiniteTime { re, im } => {
                write!(f, "time interval ({re}, {im}) is not finite")
            }
            Error::ZeroDuration => write!(f, "time interval must be nonzero"),
            Error::OutsideSegment { x, length } => {
                write!(f, "position {x} lies outside the segment [0, {length}]")
            }
            Error::MaxTermsExceeded {
                max_terms,
                tail_bound,
            } => write!(
                f,
                "series not certified after {max_terms} terms (tail bound {tail_bound:e}); \
                 increase max_terms or the tolerance"
            ),
            Error::EnergyOutOfRange { energy, height } => write!(
                f,
                "reflection requires 0 < E < h (got E = {energy}, h = {height})"
            ),
            Error::NonUnitPhase { modulus } => {
                write!(
                    f,
                    "reflection phase must have unit modulus (got |z| = {modulus})"
                )
            }
            Error::InvalidTimeOrder { t0, t1 } => {
                write!(f, "classical path needs t1 > t0 (got t0 = {t0}, t1 = {t1})")
            }
            Error::DegeneratePath { r } => {
                write!(f, "reflected path r = {r} degenerates to a point on a wall")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

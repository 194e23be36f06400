//! Problem statement: segment geometry, endpoint conditions, evolution
//! time and the shared numeric policy.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{ConfigIssue, Error, Result};

/// Endpoint condition for the wave function.
///
/// Dirichlet pins the value to zero, Neumann pins the derivative. Each
/// reflection off an endpoint contributes the factor returned by
/// [`reflection_phase`](Self::reflection_phase) to the weight of a
/// classical path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    Dirichlet,
    Neumann,
}

impl BoundaryKind {
    /// Per-reflection phase factor: -1 for Dirichlet, +1 for Neumann.
    pub fn reflection_phase(self) -> Complex64 {
        match self {
            BoundaryKind::Dirichlet => Complex64::new(-1.0, 0.0),
            BoundaryKind::Neumann => Complex64::new(1.0, 0.0),
        }
    }

    /// Two-letter tags: `D` at the left slot, `D`/`N` per endpoint.
    pub fn tag(self) -> char {
        match self {
            BoundaryKind::Dirichlet => 'D',
            BoundaryKind::Neumann => 'N',
        }
    }
}

/// A free particle of mass `m` on the segment `[0, L]` with an endpoint
/// condition on each wall.
///
/// All three scale parameters must be strictly positive and finite. The
/// natural choice is `hbar = m = 1` with `L` free, but every operation
/// accepts arbitrary positive values so results can be checked under
/// rescaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentConfig {
    /// Segment length `L`.
    pub length: f64,
    /// Particle mass `m`.
    pub mass: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Condition at `x = 0`.
    pub left: BoundaryKind,
    /// Condition at `x = L`.
    pub right: BoundaryKind,
}

impl SegmentConfig {
    /// Validated constructor.
    pub fn new(
        length: f64,
        mass: f64,
        hbar: f64,
        left: BoundaryKind,
        right: BoundaryKind,
    ) -> Result<Self> {
        let cfg = SegmentConfig {
            length,
            mass,
            hbar,
            left,
            right,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Unit system `L = m = hbar = 1`.
    pub fn unit(left: BoundaryKind, right: BoundaryKind) -> Self {
        SegmentConfig {
            length: 1.0,
            mass: 1.0,
            hbar: 1.0,
            left,
            right,
        }
    }

    /// Checks every invariant and reports all violations at once.
    pub fn validate(&self) -> Result<()> {
        let issues = self.issues();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(issues))
        }
    }

    /// Total version of [`validate`](Self::validate): the list of
    /// violated invariants, empty when the configuration is valid.
    pub fn issues(&self) -> Vec<ConfigIssue> {
        let mut issues = Vec::new();
        for (field, value) in [("L", self.length), ("m", self.mass), ("hbar", self.hbar)] {
            if !value.is_finite() || value <= 0.0 {
                issues.push(ConfigIssue { field, value });
            }
        }
        issues
    }

    /// `"DD"`, `"NN"`, `"ND"` or `"DN"` (left endpoint first).
    pub fn bc_tag(&self) -> [char; 2] {
        [self.left.tag(), self.right.tag()]
    }
}

/// The complex time interval `dt = t1 - t0` driving the evolution.
///
/// Every kernel series in this crate converges absolutely if and only if
/// `im(dt) < 0`; the constructors enforce this. Pure Euclidean evolution
/// is `dt = -i*tau` with `tau > 0`. Real time (`im = 0`) is admitted only
/// through [`real_time`](Self::real_time) and is conditionally convergent
/// at best: the adaptive kernels will fail to certify a tolerance there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionTime {
    delta: Complex64,
}

impl EvolutionTime {
    /// General damped interval with `im < 0`.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFiniteTime { re, im });
        }
        if im > 0.0 {
            return Err(Error::GrowingTime { re, im });
        }
        if im == 0.0 {
            return Err(Error::RealTimeDisabled { re });
        }
        Ok(EvolutionTime {
            delta: Complex64::new(re, im),
        })
    }

    /// Euclidean interval `dt = -i*tau`, `tau > 0`.
    pub fn euclidean(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::NonPositiveTau(tau));
        }
        Ok(EvolutionTime {
            delta: Complex64::new(0.0, -tau),
        })
    }

    /// Opt-in constructor for pure real time. The series kernels treat
    /// the result as a limit case and generally cannot certify their
    /// truncation there; prefer [`new`](Self::new) with a small negative
    /// imaginary part.
    pub fn real_time(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::NonFiniteTime { re: t, im: 0.0 });
        }
        if t == 0.0 {
            return Err(Error::ZeroDuration);
        }
        Ok(EvolutionTime {
            delta: Complex64::new(t, 0.0),
        })
    }

    /// The interval as a complex number.
    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    /// Recovers `tau` for a pure Euclidean interval, `None` otherwise.
    pub fn euclidean_tau(&self) -> Option<f64> {
        if self.delta.re == 0.0 && self.delta.im < 0.0 {
            Some(-self.delta.im)
        } else {
            None
        }
    }

    /// Exponential damping rate `-im(dt) >= 0` of the series terms.
    pub fn decay_rate(&self) -> f64 {
        -self.delta.im
    }

    /// True for the opt-in real-time mode.
    pub fn is_real_time(&self) -> bool {
        self.delta.im == 0.0
    }
}

/// Truncation and comparison tolerances shared by the adaptive series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// Certified absolute truncation target for series tails.
    pub abs_tol: f64,
    /// Relative tolerance used by comparison helpers.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_terms: 100_000,
        }
    }
}

impl NumericPolicy {
    pub fn new(abs_tol: f64, rel_tol: f64, max_terms: usize) -> Result<Self> {
        let policy = NumericPolicy {
            abs_tol,
            rel_tol,
            max_terms,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol < 1.0) {
            return Err(Error::Policy("abs_tol must lie in (0, 1)"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Policy("rel_tol must lie in (0, 1)"));
        }
        if self.max_terms < 1 {
            return Err(Error::Policy("max_terms must be >= 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_time_is_minus_i_tau() {
        let dt = EvolutionTime::euclidean(1.0).unwrap();
        assert_eq!(dt.delta(), Complex64::new(0.0, -1.0));
        let dt = EvolutionTime::euclidean(0.5).unwrap();
        assert_eq!(dt.delta(), Complex64::new(0.0, -0.5));
    }

    #[test]
    fn euclidean_rejects_bad_tau() {
        assert!(EvolutionTime::euclidean(0.0).is_err());
        assert!(EvolutionTime::euclidean(-1.0).is_err());
        assert!(EvolutionTime::euclidean(f64::NAN).is_err());
        assert!(EvolutionTime::euclidean(f64::INFINITY).is_err());
    }

    #[test]
    fn real_time_is_opt_in() {
        assert!(matches!(
            EvolutionTime::new(0.3, 0.0),
            Err(Error::RealTimeDisabled { .. })
        ));
        assert!(EvolutionTime::real_time(0.3).is_ok());
        assert!(EvolutionTime::real_time(0.0).is_err());
        assert!(matches!(
            EvolutionTime::new(0.3, 0.1),
            Err(Error::GrowingTime { .. })
        ));
        assert!(EvolutionTime::new(0.3, -0.05).is_ok());
    }

    #[test]
    fn tau_round_trips() {
        for exp in -6..=6 {
            let tau = 10f64.powi(exp);
            let dt = EvolutionTime::euclidean(tau).unwrap();
            assert_eq!(dt.euclidean_tau(), Some(tau));
        }
        let damped = EvolutionTime::new(0.3, -0.05).unwrap();
        assert_eq!(damped.euclidean_tau(), None);
    }

    #[test]
    fn config_validation_reports_each_field() {
        let ok = SegmentConfig::new(
            1.0,
            1.0,
            1.0,
            BoundaryKind::Dirichlet,
            BoundaryKind::Dirichlet,
        );
        assert!(ok.is_ok());

        let bad = SegmentConfig {
            length: 0.0,
            mass: 1.0,
            hbar: 1.0,
            left: BoundaryKind::Dirichlet,
            right: BoundaryKind::Dirichlet,
        };
        let issues = bad.issues();
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].field, "L");
        assert!(alloc::format!("{}", issues[0]).contains("L must be > 0"));

        let bad = SegmentConfig {
            length: 1.0,
            mass: -1.0,
            hbar: 1.0,
            left: BoundaryKind::Dirichlet,
            right: BoundaryKind::Dirichlet,
        };
        let issues = bad.issues();
        assert_eq!(issues.len(), 1);
        assert!(alloc::format!("{}", issues[0]).contains("m must be > 0"));

        let bad = SegmentConfig {
            length: f64::NAN,
            mass: 0.0,
            hbar: f64::INFINITY,
            left: BoundaryKind::Neumann,
            right: BoundaryKind::Neumann,
        };
        assert_eq!(bad.issues().len(), 3);
    }

    #[test]
    fn policy_bounds() {
        assert!(NumericPolicy::default().validate().is_ok());
        assert!(NumericPolicy::new(0.0, 1e-10, 10).is_err());
        assert!(NumericPolicy::new(1e-12, 1.0, 10).is_err());
        assert!(NumericPolicy::new(1e-12, 1e-10, 0).is_err());
    }
}

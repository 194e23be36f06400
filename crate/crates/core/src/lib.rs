//! Propagators for a free particle on a segment, computed two
//! independent ways, plus the reflection-phase machinery that extends
//! the construction to finite steps and wells.
//!
//! - [`spectral`]: eigenmodes for the four Dirichlet/Neumann endpoint
//!   combinations and the spectral-sum propagator with a certified
//!   truncation bound.
//! - [`images`]: classical reflected paths — image targets, bounce
//!   counts, auxiliary phases, and plot-ready polylines.
//! - [`kernels`]: the free kernel, the phased image-sum propagator, and
//!   a comparator that checks the two routes against each other.
//! - [`barrier`]: step-barrier reflection phase and finite-well bound
//!   states via the phase quantization condition, with an independent
//!   even/odd matching oracle.
//! - [`quadrature`]: Gauss-Legendre rules for the semigroup, trace and
//!   orthonormality integrals.
//!
//! Everything is `no_std + alloc` compatible; the `std` feature (on by
//! default) only switches the float backend and adds `std::error::Error`
//! for [`Error`].
//!
//! ```
//! use segprop_core::{
//!     compare_kernels, BoundaryKind, EvolutionTime, NumericPolicy, SegmentConfig,
//! };
//!
//! let cfg = SegmentConfig::unit(BoundaryKind::Dirichlet, BoundaryKind::Dirichlet);
//! let dt = EvolutionTime::euclidean(0.2).unwrap();
//! let report = compare_kernels(&cfg, 0.3, 0.7, dt, &NumericPolicy::default()).unwrap();
//! assert!(report.rel_diff < 1e-8);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod barrier;
pub mod config;
pub mod error;
pub mod images;
pub mod kernels;
pub mod quadrature;
pub mod spectral;

pub use barrier::{
    reflection, theta_cot_form, well_levels_oracle, well_levels_quantization, BarrierScattering,
    WellLevel, WellLevels,
};
pub use config::{BoundaryKind, EvolutionTime, NumericPolicy, SegmentConfig};
pub use error::{ConfigIssue, Error, Result};
pub use images::{
    bounce_counts, classical_path, image_path, image_point, phase, ImagePath, PhaseRule,
};
pub use kernels::{compare_kernels, free_kernel, image_kernel, ComparisonReport, KernelResult};
pub use quadrature::GaussLegendre;
pub use spectral::{eigenfunction, modes, spectral_kernel, trace, Mode, ModeShape, Spectrum};

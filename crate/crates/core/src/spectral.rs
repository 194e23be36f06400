//! Eigenmodes of the segment and the spectral-sum propagator.
//!
//! For each endpoint combination the eigenfunctions are trigonometric
//! with wavenumbers on a shifted lattice:
//!
//! | left right | k_n            | shape at x = 0 | n starts |
//! |------------|----------------|----------------|----------|
//! | D D        | n pi / L       | sin-like       | 1        |
//! | N N        | n pi / L       | cos-like       | 0        |
//! | N D        | (n - 1/2) pi/L | cos-like       | 1        |
//! | D N        | (n - 1/2) pi/L | sin-like       | 1        |
//!
//! The DN family is the ND family under x -> L - x (up to sign), which
//! the tests check explicitly. All modes share the normalization
//! sqrt(2/L) except the constant NN ground mode, sqrt(1/L).

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use num_complex::Complex64;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::{BoundaryKind, EvolutionTime, NumericPolicy, SegmentConfig};
use crate::error::{Error, Result};
use crate::kernels::KernelResult;

/// Which trig function the eigenfunction uses at the left endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeShape {
    /// Vanishing value at x = 0 (Dirichlet left).
    SinLike,
    /// Vanishing derivative at x = 0 (Neumann left).
    CosLike,
}

impl ModeShape {
    /// Phase shift phi in the single evaluation formula
    /// `psi(x) = norm * cos(k x - phi)`.
    pub fn phase_shift(self) -> f64 {
        match self {
            ModeShape::SinLike => FRAC_PI_2,
            ModeShape::CosLike => 0.0,
        }
    }
}

/// One eigenpair of the segment Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Index in the owning family's counting (see module table).
    pub n: u32,
    /// Wavenumber; strictly increasing within a spectrum.
    pub k: f64,
    /// Energy `hbar^2 k^2 / (2m)`.
    pub energy: f64,
    /// L2 normalization constant.
    pub norm: f64,
    /// Trig shape at the left endpoint.
    pub shape: ModeShape,
}

/// An ordered list of modes for one configuration. Extend by value:
/// [`Spectrum::extended`] returns a longer copy.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    cfg: SegmentConfig,
    modes: Vec<Mode>,
}

impl Spectrum {
    pub fn cfg(&self) -> &SegmentConfig {
        &self.cfg
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    /// A new spectrum holding at least `count` modes.
    pub fn extended(&self, count: usize) -> Spectrum {
        let mut modes = self.modes.clone();
        while modes.len() < count {
            modes.push(mode_at(&self.cfg, modes.len()));
        }
        Spectrum {
            cfg: self.cfg,
            modes,
        }
    }
}

/// The mode with zero-based sequence position `index` (this is the
/// iteration order; the conventional quantum number is `Mode::n`).
fn mode_at(cfg: &SegmentConfig, index: usize) -> Mode {
    use BoundaryKind::{Dirichlet, Neumann};
    let (n, lattice, shape) = match (cfg.left, cfg.right) {
        (Dirichlet, Dirichlet) => (index as u32 + 1, (index + 1) as f64, ModeShape::SinLike),
        (Neumann, Neumann) => (index as u32, index as f64, ModeShape::CosLike),
        (Neumann, Dirichlet) => (index as u32 + 1, index as f64 + 0.5, ModeShape::CosLike),
        (Dirichlet, Neumann) => (index as u32 + 1, index as f64 + 0.5, ModeShape::SinLike),
    };
    let k = lattice * PI / cfg.length;
    let two = matches!((cfg.left, cfg.right), (Neumann, Neumann)) && n == 0;
    let norm = if two {
        (1.0 / cfg.length).sqrt()
    } else {
        (2.0 / cfg.length).sqrt()
    };
    Mode {
        n,
        k,
        energy: cfg.hbar * cfg.hbar * k * k / (2.0 * cfg.mass),
        norm,
        shape,
    }
}

/// The first `count` modes in increasing `k`.
pub fn modes(cfg: &SegmentConfig, count: usize) -> Result<Spectrum> {
    cfg.validate()?;
    let modes = (0..count).map(|i| mode_at(cfg, i)).collect();
    Ok(Spectrum { cfg: *cfg, modes })
}

/// Unchecked evaluation: the series' natural extension, defined for all
/// real x. Kernel internals use this (e.g. to form difference quotients
/// straddling an endpoint); the public entry point checks the domain.
pub(crate) fn eval_mode(mode: &Mode, x: f64) -> f64 {
    mode.norm * (mode.k * x - mode.shape.phase_shift()).cos()
}

/// Normalized eigenfunction value at `x` in `[0, L]`.
pub fn eigenfunction(mode: &Mode, cfg: &SegmentConfig, x: f64) -> Result<f64> {
    if !(0.0..=cfg.length).contains(&x) {
        return Err(Error::OutsideSegment {
            x,
            length: cfg.length,
        });
    }
    Ok(eval_mode(mode, x))
}

/// Time weight `e^{-i E dt / hbar}` shared by kernel and trace sums.
fn energy_weight(energy: f64, dt: EvolutionTime, hbar: f64) -> Complex64 {
    (Complex64::new(0.0, -1.0) * dt.delta() * (energy / hbar)).exp()
}

/// Shared adaptive loop: sums `term_cap * weight(E_i) * reduce(i)` until
/// the certified geometric tail falls below `abs_tol`.
///
/// The majorant: every term is bounded by `cap * e^{-E_i s / hbar}` with
/// `s = -im(dt)`, and the term ratios `e^{-(E_{i+1}-E_i) s / hbar}` are
/// nonincreasing because the energy gaps grow. The remainder after the
/// first `used` terms is therefore at most the geometric bound below.
/// For real time (`s = 0`) no tail certificate exists and the loop runs
/// into `max_terms` by design.
fn certified_sum(
    cfg: &SegmentConfig,
    dt: EvolutionTime,
    policy: &NumericPolicy,
    cap: f64,
    mut term: impl FnMut(&Mode, Complex64) -> Complex64,
) -> Result<KernelResult> {
    cfg.validate()?;
    policy.validate()?;
    let sigma = dt.decay_rate();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut used = 0usize;
    loop {
        let mode = mode_at(cfg, used);
        acc += term(&mode, energy_weight(mode.energy, dt, cfg.hbar));
        used += 1;
        let e_next = mode_at(cfg, used).energy;
        let e_after = mode_at(cfg, used + 1).energy;
        let ratio = (-(e_after - e_next) * sigma / cfg.hbar).exp();
        let tail_bound = if ratio < 1.0 {
            cap * (-e_next * sigma / cfg.hbar).exp() / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        if tail_bound <= policy.abs_tol {
            return Ok(KernelResult {
                value: acc,
                terms_used: used,
                tail_bound,
            });
        }
        if used >= policy.max_terms {
            return Err(Error::MaxTermsExceeded {
                max_terms: policy.max_terms,
                tail_bound,
            });
        }
    }
}

/// Propagator by spectral decomposition:
/// `K(y, t1; x, t0) = sum_n e^{-i E_n dt / hbar} psi_n(x) psi_n(y)`,
/// truncated with a certified tail bound.
pub fn spectral_kernel(
    cfg: &SegmentConfig,
    x: f64,
    y: f64,
    dt: EvolutionTime,
    policy: &NumericPolicy,
) -> Result<KernelResult> {
    certified_sum(cfg, dt, policy, 2.0 / cfg.length, |mode, weight| {
        // The symmetric product first, so K(x,y) == K(y,x) bitwise.
        weight * (eval_mode(mode, x) * eval_mode(mode, y))
    })
}

/// Diagnostic partition sum `sum_n e^{-i E_n dt / hbar}`; equals the
/// integral of the kernel diagonal over the segment.
pub fn trace(
    cfg: &SegmentConfig,
    dt: EvolutionTime,
    policy: &NumericPolicy,
) -> Result<KernelResult> {
    certified_sum(cfg, dt, policy, 1.0, |_, weight| weight)
}

//! Reflection off a finite step and bound states of the finite square
//! well.
//!
//! A wave `e^{ikx}` hitting a step of height `h > E` reflects with
//! amplitude `R = (k - iq)/(k + iq) = e^{-i theta}`; matching value and
//! derivative at the step gives it directly. Treating each wall of a
//! finite well as contributing the phase `e^{-i theta}` per bounce turns
//! the image sum into a geometric series whose poles sit at
//! `e^{2ikL} e^{-2i theta} = 1`, i.e. on the quantization curve
//! `k L - theta(E(k)) = n pi`. The module solves that condition and,
//! independently, the textbook even/odd matching equations, so the two
//! spectra can be compared level by level.

use alloc::vec::Vec;
use num_complex::Complex64;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::NumericPolicy;
use crate::error::{ConfigIssue, Error, Result};

/// Scattering data for energy `E` against a step of height `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierScattering {
    pub energy: f64,
    pub height: f64,
    /// Propagating wavenumber inside the allowed region.
    pub k: f64,
    /// Evanescent decay constant under the step.
    pub q: f64,
    /// Reflection amplitude `(k - iq)/(k + iq)`; unit modulus.
    pub r_amp: Complex64,
    /// Reflection phase: `r_amp = e^{-i theta}`, `theta` in `(0, pi)`.
    pub theta: f64,
}

fn check_scales(mass: f64, hbar: f64) -> Result<()> {
    let mut issues = Vec::new();
    for (field, value) in [("m", mass), ("hbar", hbar)] {
        if !value.is_finite() || value <= 0.0 {
            issues.push(ConfigIssue { field, value });
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::Config(issues))
    }
}

/// Reflection amplitude and phase for `0 < E < h`.
///
/// `theta = 2 atan2(q, k)` is single-valued and continuous across
/// `k = q`, where the cotangent form of the phase reads `cot^-1(0)`.
pub fn reflection(energy: f64, height: f64, mass: f64, hbar: f64) -> Result<BarrierScattering> {
    check_scales(mass, hbar)?;
    if !energy.is_finite() || !height.is_finite() || energy <= 0.0 || energy >= height {
        return Err(Error::EnergyOutOfRange { energy, height });
    }
    let k = (2.0 * mass * energy).sqrt() / hbar;
    let q = (2.0 * mass * (height - energy)).sqrt() / hbar;
    let r_amp = Complex64::new(k, -q) / Complex64::new(k, q);
    Ok(BarrierScattering {
        energy,
        height,
        k,
        q,
        r_amp,
        theta: 2.0 * q.atan2(k),
    })
}

/// The phase from its cotangent characterization
/// `cot(theta) = (k^2 - q^2)/(2 k q)`, resolved onto `(0, pi)`.
///
/// Independent cross-check of [`reflection`]'s half-angle form: on
/// `(0, pi)` the sine is positive, so `(cos, sin)` is proportional to
/// `(k^2 - q^2, 2 k q)` and one `atan2` settles the branch.
pub fn theta_cot_form(k: f64, q: f64) -> f64 {
    (2.0 * k * q).atan2(k * k - q * q)
}

/// One bound level of the symmetric finite well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellLevel {
    /// Quantization index: `k L - theta = n pi` (even `n` are even-parity
    /// states, odd `n` odd-parity).
    pub n: u32,
    pub k: f64,
    pub energy: f64,
}

/// The full bound spectrum of a well of width `L` and depth `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct WellLevels {
    pub width: f64,
    pub height: f64,
    /// Strictly increasing in energy; every `energy < height`.
    pub levels: Vec<WellLevel>,
}

fn check_well_inputs(width: f64, height: f64, mass: f64, hbar: f64) -> Result<()> {
    let mut issues = Vec::new();
    for (field, value) in [("L", width), ("h", height), ("m", mass), ("hbar", hbar)] {
        if !value.is_finite() || value <= 0.0 {
            issues.push(ConfigIssue { field, value });
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(Error::Config(issues))
    }
}

/// Bound levels from the reflection-phase quantization condition
/// `k L - theta(E(k)) = n pi`, `n = 0, 1, 2, ...`.
///
/// `F(k) = k L - theta` rises strictly (`F' = L + 2/q > 0`) from `-pi`
/// at `k = 0` to `k_max L` at the continuum edge, so each target `n pi`
/// is crossed exactly once. A scan with step at most `pi/(10 L)` walks
/// the interval and bisects every crossing.
pub fn well_levels_quantization(
    width: f64,
    height: f64,
    mass: f64,
    hbar: f64,
    policy: &NumericPolicy,
) -> Result<WellLevels> {
    check_well_inputs(width, height, mass, hbar)?;
    policy.validate()?;
    let k_max = (2.0 * mass * height).sqrt() / hbar;
    let f = |k: f64| {
        let q = (k_max * k_max - k * k).max(0.0).sqrt();
        k * width - 2.0 * q.atan2(k)
    };

    let step = (core::f64::consts::PI / (10.0 * width)).min(k_max / 16.0);
    let mut levels = Vec::new();
    let mut n = 0u32;
    let mut k_lo = 0.0;
    while k_lo < k_max {
        let k_hi = (k_lo + step).min(k_max);
        let f_hi = f(k_hi);
        while n as f64 * core::f64::consts::PI <= f_hi {
            let target = n as f64 * core::f64::consts::PI;
            let (mut lo, mut hi) = (k_lo, k_hi);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid) < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let k_root = 0.5 * (lo + hi);
            let energy = hbar * hbar * k_root * k_root / (2.0 * mass);
            if energy < height {
                levels.push(WellLevel {
                    n,
                    k: k_root,
                    energy,
                });
            }
            n += 1;
            if levels.len() >= policy.max_terms {
                return Err(Error::MaxTermsExceeded {
                    max_terms: policy.max_terms,
                    tail_bound: 0.0,
                });
            }
        }
        k_lo = k_hi;
    }
    Ok(WellLevels {
        width,
        height,
        levels,
    })
}

/// Independent oracle: the standard even/odd matching conditions for the
/// symmetric well, in pole-free form
/// `k sin(kL/2) - q cos(kL/2) = 0` (even) and
/// `k cos(kL/2) + q sin(kL/2) = 0` (odd),
/// each solved by bracketing and bisection. No code is shared with the
/// quantization route.
pub fn well_levels_oracle(width: f64, height: f64, mass: f64, hbar: f64) -> Result<WellLevels> {
    check_well_inputs(width, height, mass, hbar)?;
    let k_max = (2.0 * mass * height).sqrt() / hbar;
    let half = 0.5 * width;
    let decay = |k: f64| (k_max * k_max - k * k).max(0.0).sqrt();
    let even = |k: f64| k * (k * half).sin() - decay(k) * (k * half).cos();
    let odd = |k: f64| k * (k * half).cos() + decay(k) * (k * half).sin();

    // Root families are spaced at least pi/L apart in k; a 20x finer
    // scan cannot skip a sign change.
    let step = (core::f64::consts::PI / (20.0 * width)).min(k_max / 32.0);
    let mut roots: Vec<f64> = Vec::new();
    for g in [&even as &dyn Fn(f64) -> f64, &odd] {
        let mut a = 0.0;
        let mut ga = g(a);
        while a < k_max {
            let b = (a + step).min(k_max);
            let gb = g(b);
            if (ga < 0.0) != (gb < 0.0) {
                let (mut lo, mut hi) = (a, b);
                let (mut glo, _) = (ga, gb);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let gm = g(mid);
                    if (gm < 0.0) == (glo < 0.0) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            a = b;
            ga = gb;
        }
    }
    roots.sort_by(|x, y| x.partial_cmp(y).expect("roots are finite"));
    let levels = roots
        .into_iter()
        .map(|k| WellLevel {
            n: 0,
            k,
            energy: hbar * hbar * k * k / (2.0 * mass),
        })
        .filter(|level| level.energy < height)
        .enumerate()
        .map(|(i, level)| WellLevel {
            n: i as u32,
            ..level
        })
        .collect();
    Ok(WellLevels {
        width,
        height,
        levels,
    })
}

//! Free-particle kernel, the image-sum propagator, and the checker that
//! pits it against the spectral sum.
//!
//! The image route writes the segment propagator as a phased sum of free
//! kernels over the unfolded targets `y_r`:
//!
//! `K(y, t1; x, t0) = sum_r epsilon_r * K_free(y_r - x, dt)`.
//!
//! Agreement with the spectral sum is a Poisson-summation identity; here
//! it is exercised numerically, term certificates included, rather than
//! proved symbolically.

use core::f64::consts::PI;
use num_complex::Complex64;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::{EvolutionTime, NumericPolicy, SegmentConfig};
use crate::error::{Error, Result};
use crate::images::{image_path, PhaseRule};
use crate::spectral::spectral_kernel;

/// A truncated series value together with its certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelResult {
    pub value: Complex64,
    /// Terms actually summed.
    pub terms_used: usize,
    /// Certified upper bound on the truncation error of `value`.
    pub tail_bound: f64,
}

/// Free-particle propagator over displacement `d`:
/// `sqrt(m / (2 pi i hbar dt)) * exp(i m d^2 / (2 hbar dt))`.
///
/// Branch: with `im(dt) <= 0` the argument of `i*dt` lies in
/// `(-pi/2, pi/2]`, so the principal square root is continuous on the
/// whole admissible region and the Euclidean case `dt = -i tau` lands on
/// the positive real axis — the heat kernel
/// `sqrt(m / (2 pi hbar tau)) * exp(-m d^2 / (2 hbar tau))`.
pub fn free_kernel(d: f64, dt: EvolutionTime, mass: f64, hbar: f64) -> Complex64 {
    // w = i dt; for Euclidean time w = tau on the positive real axis.
    let w = Complex64::new(0.0, 1.0) * dt.delta();
    let prefactor = (Complex64::new(mass / (2.0 * PI * hbar), 0.0) / w).sqrt();
    let exponent = Complex64::new(-mass * d * d / (2.0 * hbar), 0.0) / w;
    prefactor * exponent.exp()
}

/// Propagator by the method of images, summed in shells
/// `r = 0, +1, -1, +2, -2, ...` with a certified Gaussian tail bound.
///
/// Every image in shell `s` sits at distance at least `(s-1) L` from
/// `x`, and `|K_free(d)| = P * e^{-g d^2}` with `P = sqrt(m/(2 pi hbar
/// |dt|))` and `g = m s_d / (2 hbar |dt|^2)`, `s_d = -im(dt)`. The
/// remainder after finishing shell `s` is therefore at most
/// `2 P e^{-g (s L)^2} / (1 - e^{-g L^2 (2 s + 1)})`, a geometric
/// majorant that vanishes rapidly once `s L` passes the diffusion
/// length. For real time (`s_d = 0`) the bound is infinite and the sum
/// honestly fails with `MaxTermsExceeded`.
pub fn image_kernel(
    cfg: &SegmentConfig,
    x: f64,
    y: f64,
    dt: EvolutionTime,
    policy: &NumericPolicy,
) -> Result<KernelResult> {
    cfg.validate()?;
    policy.validate()?;
    let rule = PhaseRule::from_boundaries(cfg.left, cfg.right);
    let abs_dt = dt.delta().norm();
    let gauss_rate = cfg.mass * dt.decay_rate() / (2.0 * cfg.hbar * abs_dt * abs_dt);
    let peak = (cfg.mass / (2.0 * PI * cfg.hbar * abs_dt)).sqrt();
    let ll = cfg.length * cfg.length;

    let mut acc = free_kernel(y - x, dt, cfg.mass, cfg.hbar);
    let mut used = 1usize;
    let mut shell = 0u64;
    loop {
        let tail_bound = {
            let s = shell as f64;
            let ratio = (-gauss_rate * ll * (2.0 * s + 1.0)).exp();
            if ratio < 1.0 {
                2.0 * peak * (-gauss_rate * ll * s * s).exp() / (1.0 - ratio)
            } else {
                f64::INFINITY
            }
        };
        if tail_bound <= policy.abs_tol {
            return Ok(KernelResult {
                value: acc,
                terms_used: used,
                tail_bound,
            });
        }
        if used + 2 > policy.max_terms {
            return Err(Error::MaxTermsExceeded {
                max_terms: policy.max_terms,
                tail_bound,
            });
        }
        shell += 1;
        for r in [shell as i64, -(shell as i64)] {
            let path = image_path(&rule, r, y, cfg.length);
            acc += path.epsilon * free_kernel(path.y_r - x, dt, cfg.mass, cfg.hbar);
            used += 1;
        }
    }
}

/// Side-by-side evaluation of the two propagator routes.
///
/// `rel_diff` divides by `max(|spectral|, |image|, 1e-300)` so it stays
/// meaningful near Dirichlet nodes where both values vanish; callers
/// apply their own pass criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub spectral: KernelResult,
    pub image: KernelResult,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

/// Runs both routes on the same inputs and reports the difference.
pub fn compare_kernels(
    cfg: &SegmentConfig,
    x: f64,
    y: f64,
    dt: EvolutionTime,
    policy: &NumericPolicy,
) -> Result<ComparisonReport> {
    let spectral = spectral_kernel(cfg, x, y, dt, policy)?;
    let image = image_kernel(cfg, x, y, dt, policy)?;
    let abs_diff = (spectral.value - image.value).norm();
    let scale = spectral.value.norm().max(image.value.norm()).max(1e-300);
    Ok(ComparisonReport {
        spectral,
        image,
        abs_diff,
        rel_diff: abs_diff / scale,
    })
}

#[cfg(test)]
// Oracle constants keep every digit of the reference computation.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::config::BoundaryKind::{self, Dirichlet, Neumann};
    use crate::quadrature::GaussLegendre;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn cfg(left: BoundaryKind, right: BoundaryKind) -> SegmentConfig {
        SegmentConfig::unit(left, right)
    }

    fn all_bcs() -> [SegmentConfig; 4] {
        [
            cfg(Dirichlet, Dirichlet),
            cfg(Neumann, Neumann),
            cfg(Neumann, Dirichlet),
            cfg(Dirichlet, Neumann),
        ]
    }

    #[test]
    fn free_kernel_normalization_constant() {
        let dt = EvolutionTime::euclidean(1.0).unwrap();
        let got = free_kernel(0.0, dt, 1.0, 1.0);
        assert_relative_eq!(got.re, 0.39894228040143268, max_relative = 1e-15);
        assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-16);
    }

    #[test]
    fn free_kernel_closed_form_point() {
        let dt = EvolutionTime::euclidean(0.5).unwrap();
        let got = free_kernel(1.0, dt, 1.0, 1.0);
        assert_relative_eq!(got.re, 0.20755374871029735, max_relative = 1e-15);
        assert_relative_eq!(got.re, (-1.0f64).exp() / PI.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn heat_kernel_mass_is_one() {
        let dt = EvolutionTime::euclidean(1.0).unwrap();
        let rule = GaussLegendre::new(128).unwrap();
        let total = rule.integrate(-12.0, 12.0, |y| free_kernel(y - 0.3, dt, 1.0, 1.0).re);
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn free_kernel_scales_like_an_inverse_length() {
        let m = 1.7;
        let hbar = 0.4;
        for s in [0.5, 3.0] {
            let base = free_kernel(0.9, EvolutionTime::euclidean(0.35).unwrap(), m, hbar);
            let scaled = free_kernel(
                s * 0.9,
                EvolutionTime::euclidean(s * s * 0.35).unwrap(),
                m,
                hbar,
            );
            assert_relative_eq!(scaled.re * s, base.re, max_relative = 1e-14);
        }
    }

    #[test]
    fn damped_time_free_kernel_matches_reference() {
        // Closed-form reference for dt = 0.3 - 0.05i, d = 0.4, m=hbar=1.
        let dt = EvolutionTime::new(0.3, -0.05).unwrap();
        let got = free_kernel(0.4, dt, 1.0, 1.0);
        let w = Complex64::new(0.05, 0.3);
        let expected = (Complex64::new(1.0 / (2.0 * PI), 0.0) / w).sqrt()
            * (Complex64::new(-0.08, 0.0) / w).exp();
        assert_relative_eq!(got.re, expected.re, max_relative = 1e-14);
        assert_relative_eq!(got.im, expected.im, max_relative = 1e-14);
    }

    #[test]
    fn short_time_image_kernel_collapses_to_the_direct_term() {
        let c = cfg(Dirichlet, Dirichlet);
        let dt = EvolutionTime::euclidean(1e-3).unwrap();
        let policy = NumericPolicy::default();
        let got = image_kernel(&c, 0.5, 0.5, dt, &policy).unwrap();
        let direct = free_kernel(0.0, dt, 1.0, 1.0);
        assert_relative_eq!(got.value.re, direct.re, max_relative = 1e-12);
    }

    #[test]
    fn dirichlet_kernel_vanishes_at_the_wall() {
        let c = cfg(Dirichlet, Dirichlet);
        let dt = EvolutionTime::euclidean(0.2).unwrap();
        let got = image_kernel(&c, 1e-6, 1e-6, dt, &NumericPolicy::default()).unwrap();
        assert!(
            got.value.norm() < 1e-8,
            "kernel {} at the wall",
            got.value.norm()
        );
    }

    #[test]
    fn long_time_neumann_image_kernel_flattens_to_inverse_length() {
        let c = cfg(Neumann, Neumann);
        let dt = EvolutionTime::euclidean(50.0).unwrap();
        let got = image_kernel(&c, 0.123, 0.877, dt, &NumericPolicy::default()).unwrap();
        assert_relative_eq!(got.value.re, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn the_two_routes_agree_in_euclidean_time() {
        let policy = NumericPolicy::default();
        let dt = EvolutionTime::euclidean(0.2).unwrap();
        let report = compare_kernels(&cfg(Dirichlet, Dirichlet), 0.3, 0.7, dt, &policy).unwrap();
        assert!(report.rel_diff < 1e-9, "rel_diff = {}", report.rel_diff);
        assert_relative_eq!(
            report.image.value.re,
            0.45299996334281631,
            max_relative = 1e-11
        );

        let dt = EvolutionTime::euclidean(0.15).unwrap();
        let report = compare_kernels(&cfg(Neumann, Dirichlet), 0.25, 0.5, dt, &policy).unwrap();
        assert!(report.rel_diff < 1e-9, "rel_diff = {}", report.rel_diff);
        assert_relative_eq!(
            report.image.value.re,
            0.98863907197162877,
            max_relative = 1e-11
        );
    }

    #[test]
    fn the_two_routes_agree_in_damped_complex_time() {
        let policy = NumericPolicy::default();
        let dt = EvolutionTime::new(0.3, -0.05).unwrap();
        let dd = compare_kernels(&cfg(Dirichlet, Dirichlet), 0.3, 0.7, dt, &policy).unwrap();
        assert!(dd.rel_diff < 1e-6, "rel_diff = {}", dd.rel_diff);
        assert_relative_eq!(
            dd.spectral.value.re,
            -0.5216610969046076,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            dd.spectral.value.im,
            -1.2818353354229684,
            max_relative = 1e-9
        );

        let nn = compare_kernels(&cfg(Neumann, Neumann), 0.3, 0.7, dt, &policy).unwrap();
        assert!(nn.rel_diff < 1e-6, "rel_diff = {}", nn.rel_diff);
        assert_relative_eq!(
            nn.spectral.value.re,
            0.87820358101298337,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            nn.spectral.value.im,
            0.72282580648565361,
            max_relative = 1e-9
        );
    }

    #[test]
    fn distinct_boundary_conditions_give_distinct_kernels() {
        let policy = NumericPolicy::default();
        let dt = EvolutionTime::euclidean(1.0).unwrap();
        let nn = image_kernel(&cfg(Neumann, Neumann), 0.5, 0.5, dt, &policy).unwrap();
        let dd = image_kernel(&cfg(Dirichlet, Dirichlet), 0.5, 0.5, dt, &policy).unwrap();
        assert!((nn.value - dd.value).norm() > 0.1);
    }

    #[test]
    fn image_tail_certificate_holds_when_tightened() {
        let dt = EvolutionTime::euclidean(0.7).unwrap();
        for c in all_bcs() {
            let loose = NumericPolicy::new(1e-5, 1e-10, 100_000).unwrap();
            let tight = NumericPolicy::new(5e-13, 1e-10, 100_000).unwrap();
            let a = image_kernel(&c, 0.4, 0.45, dt, &loose).unwrap();
            let b = image_kernel(&c, 0.4, 0.45, dt, &tight).unwrap();
            assert!(a.tail_bound <= 1e-5);
            assert!(
                (a.value - b.value).norm() <= a.tail_bound,
                "moved by {} > certified {}",
                (a.value - b.value).norm(),
                a.tail_bound
            );
        }
    }

    #[test]
    fn real_time_image_sum_cannot_certify() {
        let c = cfg(Dirichlet, Dirichlet);
        let dt = EvolutionTime::real_time(0.3).unwrap();
        let policy = NumericPolicy::new(1e-12, 1e-10, 999).unwrap();
        match image_kernel(&c, 0.3, 0.7, dt, &policy) {
            Err(Error::MaxTermsExceeded { tail_bound, .. }) => {
                assert!(tail_bound.is_infinite());
            }
            other => panic!("expected MaxTermsExceeded, got {other:?}"),
        }
    }

    #[test]
    fn terms_used_counts_whole_shells() {
        let c = cfg(Dirichlet, Dirichlet);
        let dt = EvolutionTime::euclidean(0.2).unwrap();
        let got = image_kernel(&c, 0.3, 0.7, dt, &NumericPolicy::default()).unwrap();
        assert_eq!(got.terms_used % 2, 1);
        assert!(got.terms_used >= 3);
    }
}

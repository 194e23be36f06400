//! Cross-module properties: route equivalence, semigroup composition,
//! trace consistency, scaling covariance and endpoint behavior, checked
//! through the public API only.

use approx::assert_relative_eq;
use segprop_core::{
    compare_kernels, image_kernel, spectral_kernel, trace, BoundaryKind, EvolutionTime,
    GaussLegendre, NumericPolicy, SegmentConfig,
};

use BoundaryKind::{Dirichlet, Neumann};

fn all_bcs() -> [SegmentConfig; 4] {
    [
        SegmentConfig::unit(Dirichlet, Dirichlet),
        SegmentConfig::unit(Neumann, Neumann),
        SegmentConfig::unit(Neumann, Dirichlet),
        SegmentConfig::unit(Dirichlet, Neumann),
    ]
}

#[test]
fn equivalence_holds_across_a_grid() {
    let policy = NumericPolicy::default();
    for cfg in all_bcs() {
        for tau in [0.05, 1.0] {
            let dt = EvolutionTime::euclidean(tau).unwrap();
            for x in [0.1, 0.5, 0.9] {
                for y in [0.3, 0.7, 0.9] {
                    let report = compare_kernels(&cfg, x, y, dt, &policy).unwrap();
                    assert!(
                        report.rel_diff < 1e-8,
                        "{}{} x={x} y={y} tau={tau}: rel_diff {}",
                        cfg.left.tag(),
                        cfg.right.tag(),
                        report.rel_diff
                    );
                }
            }
        }
    }
}

#[test]
fn kernels_compose_under_the_semigroup_law() {
    let policy = NumericPolicy::default();
    let rule = GaussLegendre::new(128).unwrap();
    let (tau1, tau2) = (0.1, 0.15);
    let dt1 = EvolutionTime::euclidean(tau1).unwrap();
    let dt2 = EvolutionTime::euclidean(tau2).unwrap();
    let dt_total = EvolutionTime::euclidean(tau1 + tau2).unwrap();
    let (x, y) = (0.3, 0.62);
    for cfg in all_bcs() {
        let composed = rule.integrate(0.0, cfg.length, |z| {
            spectral_kernel(&cfg, x, z, dt1, &policy).unwrap().value
                * spectral_kernel(&cfg, z, y, dt2, &policy).unwrap().value
        });
        let direct = spectral_kernel(&cfg, x, y, dt_total, &policy)
            .unwrap()
            .value;
        assert_relative_eq!(composed.re, direct.re, max_relative = 1e-8);
        assert!(composed.im.abs() < 1e-12 && direct.im.abs() < 1e-12);
    }
}

#[test]
fn trace_equals_the_diagonal_integral() {
    let policy = NumericPolicy::default();
    let rule = GaussLegendre::new(128).unwrap();
    let dt = EvolutionTime::euclidean(0.1).unwrap();
    for cfg in all_bcs() {
        let by_quadrature = rule.integrate(0.0, cfg.length, |z| {
            spectral_kernel(&cfg, z, z, dt, &policy).unwrap().value
        });
        let direct = trace(&cfg, dt, &policy).unwrap().value;
        assert_relative_eq!(by_quadrature.re, direct.re, max_relative = 1e-8);
    }
}

#[test]
fn both_routes_transform_covariantly_under_rescaling() {
    let policy = NumericPolicy::default();
    let (x, y, tau) = (0.27, 0.81, 0.2);
    for cfg in all_bcs() {
        let base_dt = EvolutionTime::euclidean(tau).unwrap();
        let base_spectral = spectral_kernel(&cfg, x, y, base_dt, &policy).unwrap().value;
        let base_image = image_kernel(&cfg, x, y, base_dt, &policy).unwrap().value;
        for s in [0.5, 3.0] {
            let scaled_cfg = SegmentConfig {
                length: s * cfg.length,
                ..cfg
            };
            let scaled_dt = EvolutionTime::euclidean(s * s * tau).unwrap();
            let spectral = spectral_kernel(&scaled_cfg, s * x, s * y, scaled_dt, &policy)
                .unwrap()
                .value;
            let image = image_kernel(&scaled_cfg, s * x, s * y, scaled_dt, &policy)
                .unwrap()
                .value;
            assert_relative_eq!(spectral.re * s, base_spectral.re, max_relative = 1e-10);
            assert_relative_eq!(image.re * s, base_image.re, max_relative = 1e-10);
        }
    }
}

#[test]
fn damped_complex_time_keeps_the_routes_together() {
    let policy = NumericPolicy::default();
    for eps in [0.05, 0.1] {
        let dt = EvolutionTime::new(0.3, -eps).unwrap();
        for cfg in all_bcs() {
            let report = compare_kernels(&cfg, 0.35, 0.6, dt, &policy).unwrap();
            assert!(
                report.rel_diff < 1e-6,
                "{}{} eps={eps}: rel_diff {}",
                cfg.left.tag(),
                cfg.right.tag(),
                report.rel_diff
            );
        }
    }
}

#[test]
fn dirichlet_walls_pin_both_kernels_to_zero() {
    let policy = NumericPolicy::default();
    let dt = EvolutionTime::euclidean(0.2).unwrap();
    let cfg = SegmentConfig::unit(Dirichlet, Dirichlet);
    for p in [1e-6, 1.0 - 1e-6] {
        let spectral = spectral_kernel(&cfg, p, p, dt, &policy).unwrap().value;
        let image = image_kernel(&cfg, p, p, dt, &policy).unwrap().value;
        assert!(spectral.norm() < 1e-8, "spectral {}", spectral.norm());
        assert!(image.norm() < 1e-8, "image {}", image.norm());
    }
}

#[test]
fn neumann_walls_flatten_both_kernels() {
    // Central difference straddling the wall; the series extend smoothly
    // across it, and evenness about the wall makes the derivative vanish.
    let policy = NumericPolicy::default();
    let dt = EvolutionTime::euclidean(0.2).unwrap();
    let step = 1e-4;
    let y = 0.4;
    for cfg in [
        SegmentConfig::unit(Neumann, Neumann),
        SegmentConfig::unit(Neumann, Dirichlet),
        SegmentConfig::unit(Dirichlet, Neumann),
    ] {
        for (endpoint, kind) in [(0.0, cfg.left), (cfg.length, cfg.right)] {
            if kind != Neumann {
                continue;
            }
            for kernel in [spectral_kernel, image_kernel] {
                let above = kernel(&cfg, endpoint + step, y, dt, &policy).unwrap().value;
                let below = kernel(&cfg, endpoint - step, y, dt, &policy).unwrap().value;
                let derivative = (above - below).norm() / (2.0 * step);
                assert!(derivative < 1e-6, "|dK/dx| = {derivative} at {endpoint}");
            }
        }
    }
}

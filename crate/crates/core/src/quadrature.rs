//! Gauss-Legendre quadrature on a finite interval.
//!
//! Nodes are the roots of the Legendre polynomial `P_n`, found by Newton
//! iteration from the Chebyshev-based initial guess; weights follow from
//! the derivative. An `n`-point rule is exact for polynomials of degree
//! `2n - 1`, which makes 128 nodes far more than enough for the smooth
//! semigroup integrands this crate feeds it.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// A Gauss-Legendre rule on `[-1, 1]`: paired nodes and weights.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule. `n` must be at least 1; node solves
    /// converge in a handful of Newton steps for any practical order.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Policy("quadrature order must be >= 1"));
        }
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        // Roots come in +/- pairs; solve the non-negative half and mirror
        // so the symmetry node[i] == -node[n-1-i] holds exactly.
        let half = n.div_ceil(2);
        for i in 0..half {
            // Tricomi-style initial guess, accurate to O(n^-3). Index 0
            // is the largest root.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() <= 1e-15 * (1.0 + x.abs()) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            if n % 2 == 1 && i == half - 1 {
                // Midpoint root of an odd-order polynomial.
                x = 0.0;
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        Ok(GaussLegendre { nodes, weights })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes on `[-1, 1]` in ascending order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]`. The output type only needs scaling
    /// by `f64` and addition, so real and complex integrands share the
    /// same code path.
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> T
    where
        T: Add<Output = T> + Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let mid = 0.5 * (a + b);
        let halfwidth = 0.5 * (b - a);
        let mut acc = T::default();
        for (&x, &w) in self.nodes.iter().zip(self.weights.iter()) {
            acc = acc + f(mid + halfwidth * x) * w;
        }
        acc * halfwidth
    }
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}

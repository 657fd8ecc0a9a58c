//! Gauss–Legendre quadrature: fixed rules, composite panels and adaptive bisection.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// An n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on P_n from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, z);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    /// Sum of the rule over consecutive panels given by the breakpoints.
    pub fn composite<F: Fn(f64) -> f64>(&self, f: F, breaks: &[f64]) -> f64 {
        breaks.windows(2).map(|p| self.integrate(&f, p[0], p[1])).sum()
    }

    /// Nodes and weights for the composite rule over the breakpoints.
    pub fn composite_points(&self, breaks: &[f64]) -> Vec<(f64, f64)> {
        breaks
            .windows(2)
            .flat_map(|p| self.mapped(p[0], p[1]).collect::<Vec<_>>())
            .collect()
    }
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let nf = n as f64;
    (p1, nf * (z * p1 - p0) / (z * z - 1.0))
}

/// Breakpoints on [a, b] refined geometrically towards both endpoints.
///
/// `levels` panels of ratio 1/2 are placed next to each end, plus `uniform`
/// equal panels in the bulk.
pub fn graded_breaks(a: f64, b: f64, uniform: usize, levels: usize) -> Vec<f64> {
    let uniform = uniform.max(1);
    let len = b - a;
    let edge = len / (uniform as f64 + 2.0);
    let mut left = Vec::with_capacity(levels + 1);
    let mut h = edge;
    for _ in 0..levels {
        left.push(h);
        h *= 0.5;
    }
    let mut breaks = vec![a];
    for &h in left.iter().rev() {
        breaks.push(a + h);
    }
    let lo = a + edge;
    let hi = b - edge;
    for i in 1..uniform {
        breaks.push(lo + (hi - lo) * i as f64 / uniform as f64);
    }
    for &h in &left {
        breaks.push(b - h);
    }
    breaks.push(b);
    breaks.dedup();
    breaks
}

/// Adaptive bisection: a panel is accepted when the rule on it agrees with the
/// sum over its two halves to max(abs_tol, rel_tol · |estimate|).
pub struct Adaptive {
    rule: GaussLegendre,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
}

impl Adaptive {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            rule: GaussLegendre::new(20),
            rel_tol,
            abs_tol,
            max_depth: 40,
        }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        let whole = self.rule.integrate(&f, a, b);
        // the global scale keeps tiny panels from chasing relative accuracy
        let scale = whole.abs();
        self.recurse(&f, a, b, whole, scale, 0)
    }

    fn recurse<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, whole: f64, scale: f64, depth: usize) -> Result<f64> {
        let mid = 0.5 * (a + b);
        let left = self.rule.integrate(f, a, mid);
        let right = self.rule.integrate(f, mid, b);
        let both = left + right;
        let tol = self.abs_tol.max(self.rel_tol * scale.max(both.abs()));
        if (both - whole).abs() <= tol {
            return Ok(both);
        }
        if depth >= self.max_depth {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                iterations: depth,
            });
        }
        Ok(self.recurse(f, a, mid, left, scale, depth + 1)? + self.recurse(f, mid, b, right, scale, depth + 1)?)
    }
}

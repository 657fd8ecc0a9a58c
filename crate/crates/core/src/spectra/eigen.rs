//! Energy eigenfunctions and their tabulation.
//!
//! Pöschl–Teller states are evaluated as
//! Ψ_n(x) = N_n cos^λ(x/2a) sin^κ(x/2a) P_n^{(κ−½, λ−½)}(cos(x/a)),
//! the Jacobi form of the terminating ₂F₁ in sin²(x/2a). The Jacobi three-term
//! recurrence stays accurate for large n, where the ₂F₁ sum cancels badly.

use std::f64::consts::PI;

use super::ModelParams;
use crate::error::{domain, Error, Result};
use crate::quadrature::{graded_breaks, GaussLegendre};
use crate::specfun::{jacobi_all, ln_gamma_pos};

const NORM_TOL: f64 = 1e-12;
const RULE_POINTS: usize = 24;
const GRADE_LEVELS: usize = 14;

/// Eigenvalues and normalized eigenfunctions for n = 0..=n_max.
#[derive(Debug, Clone)]
pub struct EigenstateTable {
    params: ModelParams,
    n_max: usize,
    energies: Vec<f64>,
    scale: Vec<f64>,
    quad: Vec<(f64, f64)>,
}

impl EigenstateTable {
    pub fn new(params: ModelParams, n_max: usize) -> Result<Self> {
        let energies = params.spectrum(n_max + 1);
        if params.is_well() {
            let scale = vec![(2.0 / params.width()).sqrt(); n_max + 1];
            let quad = quadrature_points(&params, 8 + 2 * n_max);
            return Ok(Self {
                params,
                n_max,
                energies,
                scale,
                quad,
            });
        }
        let mut table = Self {
            params,
            n_max,
            energies,
            scale: vec![1.0; n_max + 1],
            quad: Vec::new(),
        };
        let mut panels = 8 + n_max;
        let mut coarse = table.raw_norms(&quadrature_points(&params, panels));
        for _ in 0..8 {
            let points = quadrature_points(&params, 2 * panels);
            let fine = table.raw_norms(&points);
            let change = coarse
                .iter()
                .zip(&fine)
                .map(|(c, f)| ((c - f) / f).abs())
                .fold(0.0, f64::max);
            if change <= NORM_TOL {
                table.scale = fine.iter().map(|s| 1.0 / s.sqrt()).collect();
                table.quad = points;
                return Ok(table);
            }
            panels *= 2;
            coarse = fine;
        }
        Err(Error::NonConvergence {
            what: "eigenfunction normalization",
            iterations: 8,
        })
    }

    fn raw_norms(&self, points: &[(f64, f64)]) -> Vec<f64> {
        let mut acc = vec![0.0; self.n_max + 1];
        for &(x, w) in points {
            for (a, v) in acc.iter_mut().zip(self.values_unchecked(x)) {
                *a += w * v * v;
            }
        }
        acc
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Dimensionless e_n.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// E_n = ħω e_n.
    pub fn physical_energies(&self) -> Vec<f64> {
        let u = self.params.energy_unit();
        self.energies.iter().map(|e| u * e).collect()
    }

    /// c_n with Ψ_n = c_n^{−1/2} cos^λ sin^κ ₂F₁(−n, n+ν; κ+½; sin²(x/2a)).
    /// For the well these are the constants πa/2 of the sine form.
    pub fn normalizers(&self) -> Vec<f64> {
        if self.params.is_well() {
            return vec![0.5 * self.params.width(); self.dim()];
        }
        let (_, kappa) = self.params.exponents();
        let alpha = kappa - 0.5;
        (0..=self.n_max)
            .map(|n| {
                let nf = n as f64;
                // P_n = ((α+1)_n / n!) ₂F₁
                let ln_ratio = ln_gamma_pos(alpha + 1.0 + nf) - ln_gamma_pos(alpha + 1.0) - ln_gamma_pos(nf + 1.0);
                (-2.0 * (self.scale[n].ln() + ln_ratio)).exp()
            })
            .collect()
    }

    /// Quadrature nodes and weights on [0, πa] that integrate products of
    /// tabulated states to the normalization accuracy.
    pub fn quadrature(&self) -> &[(f64, f64)] {
        &self.quad
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if (0.0..=self.params.width()).contains(&x) {
            Ok(())
        } else {
            Err(domain("eigenfunction", format!("x = {x} outside [0, {}]", self.params.width())))
        }
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n <= self.n_max {
            Ok(())
        } else {
            Err(domain("eigenfunction", format!("n = {n} > n_max = {}", self.n_max)))
        }
    }

    pub fn psi(&self, n: usize, x: f64) -> Result<f64> {
        self.check_n(n)?;
        self.check_x(x)?;
        Ok(self.values_unchecked(x)[n])
    }

    pub fn dpsi(&self, n: usize, x: f64) -> Result<f64> {
        self.check_n(n)?;
        self.check_x(x)?;
        Ok(self.derivatives_unchecked(x)[n])
    }

    pub fn d2psi(&self, n: usize, x: f64) -> Result<f64> {
        self.check_n(n)?;
        self.check_x(x)?;
        Ok(self.second_derivatives_unchecked(x)[n])
    }

    /// Ψ_0(x) .. Ψ_{n_max}(x).
    pub fn values(&self, x: f64) -> Result<Vec<f64>> {
        self.check_x(x)?;
        Ok(self.values_unchecked(x))
    }

    pub fn derivatives(&self, x: f64) -> Result<Vec<f64>> {
        self.check_x(x)?;
        Ok(self.derivatives_unchecked(x))
    }

    pub fn second_derivatives(&self, x: f64) -> Result<Vec<f64>> {
        self.check_x(x)?;
        Ok(self.second_derivatives_unchecked(x))
    }

    pub(crate) fn values_unchecked(&self, x: f64) -> Vec<f64> {
        if self.params.is_well() {
            let a = self.params.a;
            return (0..=self.n_max)
                .map(|n| self.scale[n] * ((n + 1) as f64 * x / a).sin())
                .collect();
        }
        let w = self.weight(x);
        let p = self.jacobi(0, x);
        p.iter().zip(&self.scale).map(|(p, s)| s * w.f * p).collect()
    }

    pub(crate) fn derivatives_unchecked(&self, x: f64) -> Vec<f64> {
        let a = self.params.a;
        if self.params.is_well() {
            return (0..=self.n_max)
                .map(|n| {
                    let q = (n + 1) as f64 / a;
                    self.scale[n] * q * (q * x).cos()
                })
                .collect();
        }
        let w = self.weight(x);
        let p = self.jacobi(0, x);
        let dp = self.jacobi_derivative(1, x);
        let dt_dx = -(x / a).sin() / a;
        (0..=self.n_max)
            .map(|n| self.scale[n] * (w.df * p[n] + w.f * dp[n] * dt_dx))
            .collect()
    }

    pub(crate) fn second_derivatives_unchecked(&self, x: f64) -> Vec<f64> {
        let a = self.params.a;
        if self.params.is_well() {
            return (0..=self.n_max)
                .map(|n| {
                    let q = (n + 1) as f64 / a;
                    -self.scale[n] * q * q * (q * x).sin()
                })
                .collect();
        }
        let w = self.weight(x);
        let p = self.jacobi(0, x);
        let dp = self.jacobi_derivative(1, x);
        let d2p = self.jacobi_derivative(2, x);
        let (s, c) = (x / a).sin_cos();
        let dt_dx = -s / a;
        let d2t_dx2 = -c / (a * a);
        (0..=self.n_max)
            .map(|n| {
                let g1 = dp[n] * dt_dx;
                let g2 = d2p[n] * dt_dx * dt_dx + dp[n] * d2t_dx2;
                self.scale[n] * (w.d2f * p[n] + 2.0 * w.df * g1 + w.f * g2)
            })
            .collect()
    }

    fn alpha_beta(&self) -> (f64, f64) {
        let (lambda, kappa) = self.params.exponents();
        (kappa - 0.5, lambda - 0.5)
    }

    /// P_n^{(α+k, β+k)}(cos(x/a)) for n = 0..=n_max (zero-padded below degree 0).
    fn jacobi(&self, k: usize, x: f64) -> Vec<f64> {
        let (alpha, beta) = self.alpha_beta();
        let t = (x / self.params.a).cos();
        let kf = k as f64;
        jacobi_all(self.n_max, alpha + kf, beta + kf, t)
    }

    /// d^k/dt^k P_n^{(α,β)}(t) for n = 0..=n_max, k ∈ {1, 2}.
    fn jacobi_derivative(&self, k: usize, x: f64) -> Vec<f64> {
        let (alpha, beta) = self.alpha_beta();
        let mut out = vec![0.0; self.n_max + 1];
        if self.n_max < k {
            return out;
        }
        let t = (x / self.params.a).cos();
        let kf = k as f64;
        let lower = jacobi_all(self.n_max - k, alpha + kf, beta + kf, t);
        for (n, o) in out.iter_mut().enumerate().skip(k) {
            let base = n as f64 + alpha + beta + 1.0;
            let factor = if k == 1 { 0.5 * base } else { 0.25 * base * (base + 1.0) };
            *o = factor * lower[n - k];
        }
        out
    }

    /// cos^λ(u) sin^κ(u) with u = x/2a, and its first two x-derivatives,
    /// written with explicit powers so the endpoints evaluate without 0·∞.
    fn weight(&self, x: f64) -> Weight {
        let (lambda, kappa) = self.params.exponents();
        let a = self.params.a;
        let u = (x / (2.0 * a)).clamp(0.0, 0.5 * PI);
        let (s, c) = u.sin_cos();
        let pw = |cp: f64, sp: f64| c.powf(cp) * s.powf(sp);
        let f = pw(lambda, kappa);
        let df = (kappa * pw(lambda + 1.0, kappa - 1.0) - lambda * pw(lambda - 1.0, kappa + 1.0)) / (2.0 * a);
        let d2f = (kappa * (kappa - 1.0) * pw(lambda + 2.0, kappa - 2.0)
            + lambda * (lambda - 1.0) * pw(lambda - 2.0, kappa + 2.0)
            - (2.0 * kappa * lambda + kappa + lambda) * f)
            / (4.0 * a * a);
        Weight { f, df, d2f }
    }
}

struct Weight {
    f: f64,
    df: f64,
    d2f: f64,
}

pub(crate) fn quadrature_points(params: &ModelParams, panels: usize) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(RULE_POINTS);
    let levels = if params.is_well() { 0 } else { GRADE_LEVELS };
    rule.composite_points(&graded_breaks(0.0, params.width(), panels, levels))
}

/// ψ_n(x) = √(2/πa) sin((n+1)x/a).
pub fn well_eigenfunction(n: usize, x: f64, params: &ModelParams) -> Result<f64> {
    let w = params.width();
    if !(0.0..=w).contains(&x) {
        return Err(domain("well_eigenfunction", format!("x = {x} outside [0, {w}]")));
    }
    Ok((2.0 / w).sqrt() * ((n + 1) as f64 * x / params.a).sin())
}

/// Normalized Pöschl–Teller eigenfunction. Builds a table each call; prefer
/// [`EigenstateTable`] when evaluating many points.
pub fn pt_eigenfunction(n: usize, x: f64, params: &ModelParams) -> Result<f64> {
    EigenstateTable::new(*params, n)?.psi(n, x)
}

/// Analytic x-derivative of [`pt_eigenfunction`].
pub fn pt_eigenfunction_derivative(n: usize, x: f64, params: &ModelParams) -> Result<f64> {
    EigenstateTable::new(*params, n)?.dpsi(n, x)
}

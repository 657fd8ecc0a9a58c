use std::f64::consts::TAU;
use std::ops::Range;

use num_complex::Complex64;

use super::{check_j, choose_truncation, ln_moment, ln_normalization_sq, relative_tail};
use crate::error::{domain, Error, Result};
use crate::ladder::{lowering, SpectrumSequence};
use crate::operator::TruncatedOperator;
use crate::report::CheckReport;
use crate::specfun::{ln_bessel_i, ln_gamma_pos};
use crate::spectra::ModelParams;

/// Default discarded weight for tolerance-truncated states.
pub const DEFAULT_TOL: f64 = 1e-14;

/// How the infinite superposition is cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Smallest n_max whose discarded weight is below the tolerance; amplitudes keep the full N(J).
    Tolerance(f64),
    /// Fixed n_max, renormalized by the partial sum.
    Fixed(usize),
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Tolerance(DEFAULT_TOL)
    }
}

/// |J, γ⟩ truncated to n ≤ n_max.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    j: f64,
    gamma: f64,
    params: ModelParams,
    truncation: Truncation,
    ln_amp: Vec<f64>,
    /// ½ ln of the normalizer used for the amplitudes.
    ln_norm_half: f64,
    tail_bound: f64,
}

fn integer_nu(nu: f64) -> bool {
    nu == nu.round()
}

fn reduce_gamma(gamma: f64, nu: f64) -> f64 {
    if integer_nu(nu) {
        gamma.rem_euclid(TAU)
    } else {
        gamma
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|&x| (x - m).exp()).sum::<f64>().ln()
}

/// ln(J^{n/2}/√ρ_n) for n ≤ n_max, before normalization.
fn ln_raw(j: f64, nu: f64, n_max: usize) -> Vec<f64> {
    if j == 0.0 {
        let mut v = vec![f64::NEG_INFINITY; n_max + 1];
        v[0] = 0.0;
        return v;
    }
    let lj = j.ln();
    (0..=n_max).map(|n| 0.5 * (n as f64 * lj - ln_moment(n, nu))).collect()
}

/// Normalized log amplitudes, ½ ln of the normalizer and discarded weight.
fn ln_amplitudes(j: f64, nu: f64, truncation: Truncation) -> Result<(Vec<f64>, f64, f64)> {
    let (raw, half, n_max) = match truncation {
        Truncation::Tolerance(tol) => {
            let n_max = choose_truncation(j, nu, tol)?;
            (ln_raw(j, nu, n_max), 0.5 * ln_normalization_sq(j, nu)?, n_max)
        }
        Truncation::Fixed(n_max) => {
            let raw = ln_raw(j, nu, n_max);
            let half = 0.5 * log_sum_exp(&raw.iter().map(|v| 2.0 * v).collect::<Vec<_>>());
            (raw, half, n_max)
        }
    };
    let amp = raw.into_iter().map(|v| v - half).collect();
    Ok((amp, half, relative_tail(n_max, j, nu)?))
}

/// |J, γ⟩ for the spectrum of `params`.
pub fn make_state(j: f64, gamma: f64, params: &ModelParams, truncation: Truncation) -> Result<CoherentState> {
    check_j("make_state", j)?;
    if !gamma.is_finite() {
        return Err(domain("make_state", format!("gamma = {gamma}")));
    }
    if let Truncation::Tolerance(tol) = truncation {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(domain("make_state", format!("tol = {tol}")));
        }
    }
    let nu = params.nu();
    let (ln_amp, ln_norm_half, tail_bound) = ln_amplitudes(j, nu, truncation)?;
    Ok(CoherentState {
        j,
        gamma: reduce_gamma(gamma, nu),
        params: *params,
        truncation,
        ln_amp,
        ln_norm_half,
        tail_bound,
    })
}

impl CoherentState {
    pub fn j(&self) -> f64 {
        self.j
    }

    /// γ, reduced to [0, 2π) when ν is an integer.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn nu(&self) -> f64 {
        self.params.nu()
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn n_max(&self) -> usize {
        self.ln_amp.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.ln_amp.len()
    }

    /// Weight of the full series lying beyond n_max, relative to N(J)².
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn ln_amplitudes(&self) -> &[f64] {
        &self.ln_amp
    }

    /// |c_n|² = D(n, J, ν).
    pub fn probabilities(&self) -> Vec<f64> {
        self.ln_amp.iter().map(|v| (2.0 * v).exp()).collect()
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        Complex64::from_polar(self.ln_amp[n].exp(), -self.gamma * self.params.e(n))
    }

    /// c_n of the untruncated series, for any n. Zero past n_max for a fixed cut.
    pub fn coeff_extended(&self, n: usize) -> Complex64 {
        if n <= self.n_max() {
            return self.coeff(n);
        }
        if matches!(self.truncation, Truncation::Fixed(_)) || self.j == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let ln = 0.5 * (n as f64 * self.j.ln() - super::ln_moment(n, self.nu())) - self.ln_norm_half;
        Complex64::from_polar(ln.exp(), -self.gamma * self.params.e(n))
    }

    /// c_n = |c_n| e^{−iγe_n}.
    pub fn coeffs(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|n| self.coeff(n)).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.probabilities().iter().sum()
    }

    /// Indices with |c_n|² ≥ eps · max |c_n|².
    pub fn significant_range(&self, eps: f64) -> Range<usize> {
        let top = self.ln_amp.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let cut = top + 0.5 * eps.ln();
        let lo = self.ln_amp.iter().position(|&v| v >= cut).unwrap_or(0);
        let hi = self.ln_amp.iter().rposition(|&v| v >= cut).unwrap_or(0);
        lo..hi + 1
    }

    /// The same state at γ + dγ.
    pub fn shifted(&self, dgamma: f64) -> CoherentState {
        let mut s = self.clone();
        s.gamma = reduce_gamma(self.gamma + dgamma, self.nu());
        s
    }

    /// e^{−iHt/ħ}|J, γ⟩ = |J, γ + ωt⟩.
    pub fn evolve(&self, t: f64) -> CoherentState {
        self.shifted(self.params.omega() * t)
    }
}

/// ‖a_γ c − √J c‖ for the lowering operator conjugated by the evolution phases.
/// Only the cut row contributes, bounded by √(tail · e_{n_max+1}).
pub fn annihilation_check(state: &CoherentState) -> Result<CheckReport> {
    let n_max = state.n_max();
    let seq = SpectrumSequence::from_params(state.params(), n_max);
    let a = lowering(n_max, &seq)?;
    let phase: Vec<Complex64> = (0..=n_max)
        .map(|n| Complex64::from_polar(1.0, -state.gamma() * seq.values()[n]))
        .collect();
    let a_gamma = TruncatedOperator::from_fn(n_max + 1, |i, k| phase[i] * a.get(i, k) * phase[k].conj());
    let c = state.coeffs();
    let ac = a_gamma.apply(&c);
    let sj = state.j().sqrt();
    let residual = ac.iter().zip(&c).map(|(x, y)| (x - y * sj).norm_sqr()).sum::<f64>().sqrt();
    let bound = (state.tail_bound() * seq.values()[n_max + 1]).sqrt();
    Ok(CheckReport::new(
        "coherent.annihilation",
        residual,
        10.0 * bound + 1e-14 * (1.0 + sj),
    ))
}

/// Σ|c_n|² e_n against J.
pub fn action_identity(state: &CoherentState) -> CheckReport {
    let p = state.params();
    let mean: f64 = state.probabilities().iter().enumerate().map(|(n, w)| w * p.e(n)).sum();
    let j = state.j();
    let residual = if j > 0.0 { (mean - j).abs() / j } else { mean.abs() };
    CheckReport::new("coherent.action_identity", residual, 1e-10)
}

#[derive(Debug, Clone)]
pub struct DarbouxReport {
    /// i⟨J,γ|∂_γ|J,γ⟩ = Σ|c_n|²e_n.
    pub analytic: f64,
    /// i⟨J,γ|(|J+dJ,γ+dγ⟩ − |J−dJ,γ−dγ⟩)/2.
    pub finite_difference: Complex64,
    pub check: CheckReport,
}

/// Symplectic potential against J dγ, from a central difference in (J, γ).
pub fn darboux_check(state: &CoherentState, dj: f64, dgamma: f64) -> Result<DarbouxReport> {
    let (j, nu, n_max) = (state.j(), state.nu(), state.n_max());
    if j - dj.abs() < 0.0 {
        return Err(domain("darboux_check", format!("J - dJ < 0 at J = {j}, dJ = {dj}")));
    }
    let trunc = match state.truncation() {
        Truncation::Tolerance(_) => None,
        fixed @ Truncation::Fixed(_) => Some(fixed),
    };
    let side = |s: f64| -> Result<Vec<Complex64>> {
        let jj = j + s * dj;
        let amp = match trunc {
            Some(t) => ln_amplitudes(jj, nu, t)?.0,
            None => {
                let half = 0.5 * ln_normalization_sq(jj, nu)?;
                ln_raw(jj, nu, n_max).into_iter().map(|v| v - half).collect()
            }
        };
        let g = state.gamma() + s * dgamma;
        Ok((0..=n_max)
            .map(|n| Complex64::from_polar(amp[n].exp(), -g * state.params().e(n)))
            .collect())
    };
    let plus = side(1.0)?;
    let minus = side(-1.0)?;
    let c = state.coeffs();
    let inner: Complex64 = c
        .iter()
        .zip(plus.iter().zip(&minus))
        .map(|(a, (p, m))| a.conj() * (p - m))
        .sum();
    let fd = Complex64::new(0.0, 0.5) * inner;
    let probs = state.probabilities();
    let e: Vec<f64> = (0..=n_max).map(|n| state.params().e(n)).collect();
    let analytic: f64 = probs.iter().zip(&e).map(|(w, e)| w * e).sum();
    let check = if dgamma != 0.0 && j > 0.0 {
        let e3: f64 = probs.iter().zip(&e).map(|(w, e)| w * e * e * e).sum();
        let tol = dgamma * dgamma * e3 / (6.0 * j) + (dj / j).powi(2) * (1.0 + j.sqrt()) + 1e-12;
        CheckReport::new("coherent.darboux", (fd.re - j * dgamma).abs() / (j * dgamma.abs()), tol)
    } else {
        CheckReport::new("coherent.darboux", fd.re.abs() / j.max(1.0), 1e-12)
    };
    Ok(DarbouxReport {
        analytic,
        finite_difference: fd,
        check,
    })
}

/// ⟨a|b⟩, with the shorter state continued analytically up to the longer cut.
pub fn overlap(a: &CoherentState, b: &CoherentState) -> Result<Complex64> {
    if a.nu() != b.nu() {
        return Err(Error::InvalidParams("overlap of states with different spectra".into()));
    }
    let n = a.dim().max(b.dim());
    Ok((0..n).map(|k| a.coeff_extended(k).conj() * b.coeff_extended(k)).sum())
}

/// ⟨J,γ|J′,γ⟩ = Γ(ν+1) I_ν(2(JJ′)^{1/4}) / (N N′ (JJ′)^{ν/4}).
pub fn overlap_equal_gamma(j1: f64, j2: f64, nu: f64) -> Result<f64> {
    check_j("overlap_equal_gamma", j1)?;
    check_j("overlap_equal_gamma", j2)?;
    let norms = 0.5 * (ln_normalization_sq(j1, nu)? + ln_normalization_sq(j2, nu)?);
    let x = (j1 * j2).sqrt();
    if x == 0.0 {
        return Ok((-norms).exp());
    }
    let ln = ln_gamma_pos(nu + 1.0) + ln_bessel_i(nu, 2.0 * x.sqrt())? - 0.5 * nu * x.ln() - norms;
    Ok(ln.exp())
}

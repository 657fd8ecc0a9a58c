//! Number statistics, revival times and wave-packet dynamics of |J, γ⟩.

mod dynamics;

pub use dynamics::{
    autocorrelation, autocorrelation_series, density_map, expectation_dynamics, position_density,
    truncated_square_variances, uncertainty_dynamics, MomentOperators, Observable, UncertaintyDynamics, WINDOW_EPS,
};

use crate::coherent::CoherentState;
use crate::error::{domain, Result};
use crate::specfun::{bessel_i_ratio, ln_bessel_i, ln_gamma_pos};
use crate::spectra::ModelParams;

/// D(n, J, ν) = J^{n+ν/2} / (n! Γ(n+ν+1) I_ν(2√J)).
pub fn weighting_distribution(n: usize, j: f64, nu: f64) -> Result<f64> {
    if !(j.is_finite() && j >= 0.0) {
        return Err(domain("weighting_distribution", format!("J = {j}")));
    }
    if j == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let nf = n as f64;
    let ln = (nf + 0.5 * nu) * j.ln() - ln_gamma_pos(nf + 1.0) - ln_gamma_pos(nf + nu + 1.0)
        - ln_bessel_i(nu, 2.0 * j.sqrt())?;
    Ok(ln.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatisticsReport {
    pub mean_n: f64,
    pub mean_n2: f64,
    pub delta_n: f64,
    /// (Δn)²/⟨n⟩ − 1.
    pub mandel_q: f64,
}

/// Moments of D(n, J, ν) from the ratios I_{ν+1}/I_ν and I_{ν+2}/I_{ν+1} at 2√J.
pub fn number_statistics(j: f64, nu: f64) -> Result<StatisticsReport> {
    if !(j.is_finite() && j >= 0.0) {
        return Err(domain("number_statistics", format!("J = {j}")));
    }
    if j == 0.0 {
        return Ok(StatisticsReport {
            mean_n: 0.0,
            mean_n2: 0.0,
            delta_n: 0.0,
            mandel_q: 0.0,
        });
    }
    let x = 2.0 * j.sqrt();
    let r1 = bessel_i_ratio(nu, x)?;
    let r2 = bessel_i_ratio(nu + 1.0, x)?;
    let mean_n = j.sqrt() * r1;
    let mean_n2 = mean_n + j * r1 * r2;
    let mandel_q = j.sqrt() * (r2 - r1);
    // (Δn)² = ⟨n⟩(1 + Q) avoids the cancellation in ⟨n²⟩ − ⟨n⟩²
    let delta_n = (mean_n * (1.0 + mandel_q)).max(0.0).sqrt();
    Ok(StatisticsReport {
        mean_n,
        mean_n2,
        delta_n,
        mandel_q,
    })
}

/// The same moments summed over the state's coefficients.
pub fn number_statistics_direct(state: &CoherentState) -> StatisticsReport {
    let probs = state.probabilities();
    let total: f64 = probs.iter().sum();
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for (n, w) in probs.iter().enumerate() {
        let n = n as f64;
        m1 += w * n;
        m2 += w * n * n;
    }
    m1 /= total;
    m2 /= total;
    let var: f64 = probs.iter().enumerate().map(|(n, w)| w * (n as f64 - m1).powi(2)).sum::<f64>() / total;
    StatisticsReport {
        mean_n: m1,
        mean_n2: m2,
        delta_n: var.sqrt(),
        mandel_q: if m1 > 0.0 { var / m1 - 1.0 } else { 0.0 },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalTimes {
    /// 2πma²/(ħ(n̄+ν/2)).
    pub t_cl: f64,
    /// 4πma²/ħ.
    pub t_rev: f64,
    pub n_bar: u64,
}

impl RevivalTimes {
    /// ωT_cl.
    pub fn gamma_cl(&self, params: &ModelParams) -> f64 {
        params.omega() * self.t_cl
    }

    /// ωt_rev = 2π.
    pub fn gamma_rev(&self, params: &ModelParams) -> f64 {
        params.omega() * self.t_rev
    }
}

/// Classical and revival times with n̄ = ⟨n⟩ rounded half-up.
pub fn revival_times(j: f64, params: &ModelParams) -> Result<RevivalTimes> {
    let nu = params.nu();
    let n_bar = (number_statistics(j, nu)?.mean_n + 0.5).floor() as u64;
    let t_rev = 4.0 * std::f64::consts::PI * params.m * params.a * params.a / params.hbar;
    Ok(RevivalTimes {
        t_cl: t_rev / (2.0 * n_bar as f64 + nu),
        t_rev,
        n_bar,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub value: f64,
    pub prominence: f64,
}

/// Local maxima whose prominence (height above the higher of the two
/// surrounding saddles) is at least `min_prominence`.
pub fn find_peaks(values: &[f64], min_prominence: f64) -> Vec<Peak> {
    let n = values.len();
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if values[i] > values[i - 1] {
            // plateau: take its left end, require a drop afterwards
            let mut k = i;
            while k + 1 < n && values[k + 1] == values[i] {
                k += 1;
            }
            if k + 1 < n && values[k + 1] < values[i] {
                let v = values[i];
                let mut left_min = v;
                let mut l = i;
                while l > 0 {
                    l -= 1;
                    if values[l] > v {
                        break;
                    }
                    left_min = left_min.min(values[l]);
                }
                let mut right_min = v;
                let mut r = k;
                while r + 1 < n {
                    r += 1;
                    if values[r] > v {
                        break;
                    }
                    right_min = right_min.min(values[r]);
                }
                let prominence = v - left_min.max(right_min);
                if prominence >= min_prominence {
                    peaks.push(Peak {
                        index: i,
                        value: v,
                        prominence,
                    });
                }
            }
            i = k + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianComparison {
    /// √J − ν/2 − ¼.
    pub center: f64,
    /// √J/2.
    pub variance: f64,
    /// sup_n |D(n) − G(n)|.
    pub sup_diff: f64,
}

/// D(n, J, ν) against the normal density with the large-J center and variance.
pub fn gaussian_comparison(state: &CoherentState) -> GaussianComparison {
    let j = state.j();
    let center = j.sqrt() - 0.5 * state.nu() - 0.25;
    let variance = 0.5 * j.sqrt();
    let norm = (2.0 * std::f64::consts::PI * variance).sqrt();
    let sup_diff = state
        .probabilities()
        .iter()
        .enumerate()
        .map(|(n, d)| (d - (-(n as f64 - center).powi(2) / (2.0 * variance)).exp() / norm).abs())
        .fold(0.0, f64::max);
    GaussianComparison {
        center,
        variance,
        sup_diff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peaks_with_prominence() {
        let v = [0.0, 1.0, 0.5, 0.6, 0.55, 2.0, 0.0];
        let p = find_peaks(&v, 0.0);
        assert_eq!(p.iter().map(|p| p.index).collect::<Vec<_>>(), vec![1, 3, 5]);
        assert!((p[1].prominence - 0.05).abs() < 1e-15);
        assert_eq!(find_peaks(&v, 0.2).len(), 2);
        assert!(find_peaks(&[1.0, 1.0, 1.0], 0.0).is_empty());
    }

    #[test]
    fn zero_action() {
        assert_eq!(weighting_distribution(0, 0.0, 2.0).unwrap(), 1.0);
        assert_eq!(weighting_distribution(3, 0.0, 2.0).unwrap(), 0.0);
        assert_eq!(number_statistics(0.0, 2.0).unwrap().mandel_q, 0.0);
    }
}

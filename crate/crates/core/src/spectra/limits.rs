//! Semiclassical energies, scaling with the box size and the λ → 1 limit.

use std::f64::consts::PI;

use super::{well_eigenfunction, EigenstateTable, ModelParams};
use crate::error::{Error, Result};
use crate::report::{linspace, CheckReport};

/// Bohr–Sommerfeld energy. Well: (n+1)²ħ²/2ma². Pöschl–Teller: the rule applied
/// to the shifted action with the model's own coupling V₀ = ħ²/4ma².
pub fn bohr_sommerfeld_energy(n: usize, params: &ModelParams) -> f64 {
    if params.is_well() {
        let p = (n + 1) as f64;
        return p * p * params.energy_unit();
    }
    bohr_sommerfeld_pt(n, params, params.v0())
}

/// a√(2mE) − a√(mV₀)S = ħ(n+½) solved for E, with S = √(λ(λ−1)) + √(κ(κ−1)) and any V₀.
pub fn bohr_sommerfeld_pt(n: usize, params: &ModelParams, v0: f64) -> f64 {
    let (lambda, kappa) = params.exponents();
    let s = (lambda * (lambda - 1.0)).sqrt() + (kappa * (kappa - 1.0)).sqrt();
    let h = n as f64 + 0.5;
    let (hbar, m, a) = (params.hbar, params.m, params.a);
    hbar * hbar / (2.0 * m * a * a) * h * h + hbar / (m * a) * (m * v0).sqrt() * h * s + 0.5 * v0 * s * s
}

/// E_n[a]·a² compared between two box sizes; residual is the worst relative difference.
pub fn scaling_check(a1: f64, a2: f64, n_list: &[usize], params: &ModelParams) -> Result<CheckReport> {
    let p1 = params.with_units(params.hbar, params.m, a1)?;
    let p2 = params.with_units(params.hbar, params.m, a2)?;
    let mut worst = 0.0_f64;
    for &n in n_list {
        let s1 = p1.energy_level(n).1 * a1 * a1;
        let s2 = p2.energy_level(n).1 * a2 * a2;
        if s1 != s2 {
            worst = worst.max((s1 - s2).abs() / s1.abs().max(s2.abs()));
        }
    }
    Ok(CheckReport::new("spectra.scaling", worst, 1e-12))
}

/// Symmetric Pöschl–Teller data along a sequence of λ approaching 1.
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub lambdas: Vec<f64>,
    /// e_n(λ) = n(n+2λ).
    pub energies: Vec<f64>,
    /// sup |Ψ_n^λ − ψ_n| on [0.1πa, 0.9πa].
    pub sup_norms: Vec<f64>,
    pub well_energy: f64,
    pub check: CheckReport,
}

/// Convergence of the symmetric (λ, λ) spectrum and eigenfunction to the well as λ ↓ 1.
pub fn pt_to_well_limit(n: usize, lambda_sequence: &[f64]) -> Result<LimitReport> {
    let well = ModelParams::well();
    let well_energy = well.e(n);
    let xs = linspace(0.1 * PI, 0.9 * PI, 401);
    let mut energies = Vec::new();
    let mut sup_norms = Vec::new();
    for &lambda in lambda_sequence {
        if lambda == 1.0 {
            energies.push(well_energy);
            sup_norms.push(0.0);
            continue;
        }
        let params = ModelParams::poeschl_teller(lambda, lambda)?;
        energies.push(params.e(n));
        let table = EigenstateTable::new(params, n)?;
        let mut sup = 0.0_f64;
        for &x in &xs {
            sup = sup.max((table.psi(n, x)? - well_eigenfunction(n, x, &well)?).abs());
        }
        sup_norms.push(sup);
    }
    if energies.is_empty() {
        return Err(Error::InvalidParams("empty lambda sequence".into()));
    }
    let decreasing_lambda = lambda_sequence.windows(2).all(|w| w[1] < w[0]);
    let monotone = energies.windows(2).all(|w| w[1] <= w[0]) && energies.iter().all(|&e| e >= well_energy);
    let last = *energies.last().unwrap();
    let residual = (last - well_energy).abs();
    let lambda_last = *lambda_sequence.last().unwrap();
    // e_n(λ) − e_n(1) = 2n(λ−1) exactly
    let expected = 2.0 * n as f64 * (lambda_last - 1.0);
    let check = CheckReport::with_verdict(
        "spectra.pt_to_well_limit",
        residual,
        expected.abs() * (1.0 + 1e-12) + 1e-12,
        decreasing_lambda && monotone && residual <= expected.abs() * (1.0 + 1e-12) + 1e-12,
    );
    Ok(LimitReport {
        lambdas: lambda_sequence.to_vec(),
        energies,
        sup_norms,
        well_energy,
        check,
    })
}

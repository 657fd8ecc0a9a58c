//! Eigenbasis of the periodic momentum operator and the expansion of well
//! eigenstates in it.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::ModelParams;
use crate::error::{domain, Result};

/// χ_k(x) = e^{2ikx/a}/√(πa), eigenvalue 2kħ/a.
pub fn momentum_eigenfunction(k: i64, x: f64, params: &ModelParams) -> Result<Complex64> {
    let w = params.width();
    if !(0.0..=w).contains(&x) {
        return Err(domain("momentum_eigenfunction", format!("x = {x} outside [0, {w}]")));
    }
    Ok(Complex64::from_polar(1.0 / w.sqrt(), 2.0 * k as f64 * x / params.a))
}

/// Coefficients ⟨χ_j|ψ_n⟩ for j in a symmetric index window.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumExpansion {
    pub j_min: i64,
    pub coefficients: Vec<Complex64>,
}

impl MomentumExpansion {
    pub fn get(&self, j: i64) -> Complex64 {
        let idx = j - self.j_min;
        if idx < 0 || idx as usize >= self.coefficients.len() {
            return Complex64::new(0.0, 0.0);
        }
        self.coefficients[idx as usize]
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.coefficients.len() as i64).map(move |i| i + self.j_min)
    }

    /// Σ_j |a_j|² over the window.
    pub fn parseval_sum(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Expansion of ψ_n over χ_j, |j| <= j_max.
///
/// Odd n = 2k+1 has the two coefficients ∓i/√2 at j = ±(k+1). Even n = 2k has
/// a_j = −(2√2/π)(2k+1)/(4j² − (2k+1)²).
pub fn well_momentum_expansion(n: usize, j_max: i64) -> MomentumExpansion {
    let coefficients = (-j_max..=j_max)
        .map(|j| {
            if n % 2 == 1 {
                let k1 = (n / 2 + 1) as i64;
                if j == k1 {
                    Complex64::new(0.0, -1.0 / SQRT_2)
                } else if j == -k1 {
                    Complex64::new(0.0, 1.0 / SQRT_2)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            } else {
                let q = (n + 1) as f64;
                let jf = j as f64;
                Complex64::new(-2.0 * SQRT_2 / PI * q / (4.0 * jf * jf - q * q), 0.0)
            }
        })
        .collect();
    MomentumExpansion {
        j_min: -j_max,
        coefficients,
    }
}

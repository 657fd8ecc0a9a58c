//! Position and momentum matrix elements in the energy basis, and eigenstate moments.

use std::f64::consts::PI;
use std::ops::Range;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{EigenstateTable, ModelParams};
use crate::error::Result;
use crate::operator::TruncatedOperator;

/// Matrix elements ⟨m|A|n⟩ available on demand, so that expectations over a
/// window of significant coefficients never need the full matrix.
pub trait MatrixElements: Sync {
    fn element(&self, m: usize, n: usize) -> Complex64;

    /// Σ_{m,n ∈ range} c̄_m A_mn c_n, with `coeffs[i]` the amplitude of |range.start + i⟩.
    fn expectation(&self, coeffs: &[Complex64], range: Range<usize>) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, m) in range.clone().enumerate() {
            let cm = coeffs[i].conj();
            let mut row = Complex64::new(0.0, 0.0);
            for (k, n) in range.clone().enumerate() {
                row += self.element(m, n) * coeffs[k];
            }
            acc += cm * row;
        }
        acc
    }
}

impl MatrixElements for TruncatedOperator {
    fn element(&self, m: usize, n: usize) -> Complex64 {
        self.get(m, n)
    }
}

/// Well ⟨ψ_m|x|ψ_n⟩: πa/2 on the diagonal, −8a pq/(π(p−q)²(p+q)²) for m−n odd
/// (p = m+1, q = n+1), zero otherwise.
#[derive(Debug, Clone, Copy)]
pub struct WellPosition {
    pub a: f64,
}

impl MatrixElements for WellPosition {
    fn element(&self, m: usize, n: usize) -> Complex64 {
        let v = if m == n {
            0.5 * PI * self.a
        } else if (m + n) % 2 == 1 {
            let (p, q) = ((m + 1) as f64, (n + 1) as f64);
            -8.0 * self.a * p * q / (PI * (p - q).powi(2) * (p + q).powi(2))
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    }
}

/// Well ⟨ψ_m|x²|ψ_n⟩ = 8a²(−1)^{m+n} pq/(p²−q²)², diagonal a²(π²/3 − 1/2p²).
#[derive(Debug, Clone, Copy)]
pub struct WellPositionSquared {
    pub a: f64,
}

impl MatrixElements for WellPositionSquared {
    fn element(&self, m: usize, n: usize) -> Complex64 {
        let (p, q) = ((m + 1) as f64, (n + 1) as f64);
        let a2 = self.a * self.a;
        let v = if m == n {
            a2 * (PI * PI / 3.0 - 0.5 / (p * p))
        } else {
            let sign = if (m + n).is_multiple_of(2) { 1.0 } else { -1.0 };
            8.0 * a2 * sign * p * q / (p * p - q * q).powi(2)
        };
        Complex64::new(v, 0.0)
    }
}

/// Well ⟨ψ_m|−iħ d/dx|ψ_n⟩ = −iħ 4pq/(πa(p²−q²)) for m−n odd, zero otherwise.
#[derive(Debug, Clone, Copy)]
pub struct WellMomentum {
    pub a: f64,
    pub hbar: f64,
}

impl MatrixElements for WellMomentum {
    fn element(&self, m: usize, n: usize) -> Complex64 {
        if (m + n).is_multiple_of(2) {
            return Complex64::new(0.0, 0.0);
        }
        let (p, q) = ((m + 1) as f64, (n + 1) as f64);
        Complex64::new(0.0, -self.hbar * 4.0 * p * q / (PI * self.a * (p * p - q * q)))
    }
}

/// Well ⟨Pψ_m|Pψ_n⟩ = δ_mn ħ²(m+1)²/a². This is ‖Pψ‖² for ψ outside the domain of P².
#[derive(Debug, Clone, Copy)]
pub struct WellMomentumGram {
    pub a: f64,
    pub hbar: f64,
}

impl MatrixElements for WellMomentumGram {
    fn element(&self, m: usize, n: usize) -> Complex64 {
        if m != n {
            return Complex64::new(0.0, 0.0);
        }
        let p = (m + 1) as f64;
        Complex64::new((self.hbar * p / self.a).powi(2), 0.0)
    }

    fn expectation(&self, coeffs: &[Complex64], range: Range<usize>) -> Complex64 {
        let s: f64 = range.zip(coeffs).map(|(m, c)| self.element(m, m).re * c.norm_sqr()).sum();
        Complex64::new(s, 0.0)
    }
}

fn dense<M: MatrixElements>(dim: usize, m: &M) -> TruncatedOperator {
    TruncatedOperator::from_fn(dim, |i, j| m.element(i, j))
}

/// Real symmetric Σ_k w_k g(x_k) u_m(x_k) v_n(x_k) over the table's quadrature.
fn quadrature_matrix(
    table: &EigenstateTable,
    g: impl Fn(f64) -> f64,
    left: impl Fn(&EigenstateTable, f64) -> Vec<f64>,
    right: impl Fn(&EigenstateTable, f64) -> Vec<f64>,
) -> DMatrix<f64> {
    let pts = table.quadrature();
    let dim = table.dim();
    let mut l = DMatrix::<f64>::zeros(pts.len(), dim);
    let mut r = DMatrix::<f64>::zeros(pts.len(), dim);
    for (k, &(x, w)) in pts.iter().enumerate() {
        let gw = w * g(x);
        for (n, v) in left(table, x).into_iter().enumerate() {
            l[(k, n)] = gw * v;
        }
        for (n, v) in right(table, x).into_iter().enumerate() {
            r[(k, n)] = v;
        }
    }
    l.transpose() * r
}

fn values(t: &EigenstateTable, x: f64) -> Vec<f64> {
    t.values_unchecked(x)
}

fn derivatives(t: &EigenstateTable, x: f64) -> Vec<f64> {
    t.derivatives_unchecked(x)
}

fn real_operator(m: DMatrix<f64>, symmetrize: bool) -> TruncatedOperator {
    let m = if symmetrize { (&m + m.transpose()) * 0.5 } else { m };
    TruncatedOperator::from_real_fn(m.nrows(), |i, j| m[(i, j)])
}

impl EigenstateTable {
    /// ⟨ψ_m|x|ψ_n⟩.
    pub fn position_matrix(&self) -> TruncatedOperator {
        if self.params().is_well() {
            return dense(self.dim(), &WellPosition { a: self.params().a });
        }
        real_operator(quadrature_matrix(self, |x| x, values, values), true)
    }

    /// ⟨ψ_m|x²|ψ_n⟩.
    pub fn position_squared_matrix(&self) -> TruncatedOperator {
        if self.params().is_well() {
            return dense(self.dim(), &WellPositionSquared { a: self.params().a });
        }
        real_operator(quadrature_matrix(self, |x| x * x, values, values), true)
    }

    /// ⟨ψ_m|−iħ d/dx|ψ_n⟩.
    pub fn momentum_matrix(&self) -> TruncatedOperator {
        let p = self.params();
        if p.is_well() {
            return dense(
                self.dim(),
                &WellMomentum {
                    a: p.a,
                    hbar: p.hbar,
                },
            );
        }
        let d = quadrature_matrix(self, |_| 1.0, values, derivatives);
        // ψ real and vanishing at both ends: ∫ψ_m ψ_n′ is antisymmetric
        let d = (&d - d.transpose()) * 0.5;
        TruncatedOperator::from_fn(self.dim(), |i, j| Complex64::new(0.0, -p.hbar * d[(i, j)]))
    }

    /// ⟨Pψ_m|Pψ_n⟩ = ħ² ∫ψ_m′ψ_n′.
    pub fn momentum_gram_matrix(&self) -> TruncatedOperator {
        let p = self.params();
        if p.is_well() {
            return dense(
                self.dim(),
                &WellMomentumGram {
                    a: p.a,
                    hbar: p.hbar,
                },
            );
        }
        let g = quadrature_matrix(self, |_| 1.0, derivatives, derivatives);
        real_operator(g * (p.hbar * p.hbar), true)
    }
}

pub fn position_matrix(n_max: usize, params: &ModelParams) -> Result<TruncatedOperator> {
    Ok(EigenstateTable::new(*params, n_max)?.position_matrix())
}

pub fn momentum_matrix(n_max: usize, params: &ModelParams) -> Result<TruncatedOperator> {
    Ok(EigenstateTable::new(*params, n_max)?.momentum_matrix())
}

pub fn position_squared_matrix(n_max: usize, params: &ModelParams) -> Result<TruncatedOperator> {
    Ok(EigenstateTable::new(*params, n_max)?.position_squared_matrix())
}

pub fn momentum_gram_matrix(n_max: usize, params: &ModelParams) -> Result<TruncatedOperator> {
    Ok(EigenstateTable::new(*params, n_max)?.momentum_gram_matrix())
}

/// First and second moments of Q and P in a single eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenstateMoments {
    pub mean_q: f64,
    pub mean_q2: f64,
    pub mean_p: f64,
    pub mean_p2: f64,
    pub uncertainty_product: f64,
}

impl EigenstateMoments {
    fn new(mean_q: f64, mean_q2: f64, mean_p: f64, mean_p2: f64) -> Self {
        let dq2 = mean_q2 - mean_q * mean_q;
        let dp2 = mean_p2 - mean_p * mean_p;
        Self {
            mean_q,
            mean_q2,
            mean_p,
            mean_p2,
            uncertainty_product: (dq2 * dp2).sqrt(),
        }
    }
}

/// ⟨Q⟩, ⟨Q²⟩, ⟨P⟩, ⟨P²⟩ = ‖Pψ_n‖² and ΔQΔP in ψ_n.
pub fn eigenstate_moments(n: usize, params: &ModelParams) -> Result<EigenstateMoments> {
    if params.is_well() {
        let a = params.a;
        let p = (n + 1) as f64;
        return Ok(EigenstateMoments::new(
            0.5 * PI * a,
            a * a * (PI * PI / 3.0 - 0.5 / (p * p)),
            0.0,
            (params.hbar * p / a).powi(2),
        ));
    }
    let table = EigenstateTable::new(*params, n)?;
    let q = table.position_matrix().get(n, n).re;
    let q2 = table.position_squared_matrix().get(n, n).re;
    let pm = table.momentum_matrix().get(n, n).re;
    let p2 = table.momentum_gram_matrix().get(n, n).re;
    Ok(EigenstateMoments::new(q, q2, pm, p2))
}

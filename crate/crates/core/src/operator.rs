//! Dense operators on the span of the first `dim` energy eigenstates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type Matrix = DMatrix<Complex64>;

/// A finite section of an operator in the energy basis |0⟩ … |n_max⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    entries: Matrix,
}

impl TruncatedOperator {
    pub fn from_matrix(entries: Matrix) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "operator must be square");
        Self { entries }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self::from_matrix(Matrix::from_fn(dim, dim, f))
    }

    pub fn from_real_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(dim, |i, j| Complex64::new(f(i, j), 0.0))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_real_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(Matrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn n_max(&self) -> usize {
        self.dim() - 1
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix(self.entries.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_matrix(&self.entries * Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_matrix(&self.entries + &other.entries)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_matrix(&self.entries - &other.entries)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_matrix(&self.entries * &other.entries)
    }

    /// AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// max |A − Aᴴ| over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint(), self.dim())
    }

    /// max |A_ij − B_ij| for i, j < `block`.
    pub fn max_abs_diff(&self, other: &Self, block: usize) -> f64 {
        let b = block.min(self.dim()).min(other.dim());
        let mut worst = 0.0_f64;
        for i in 0..b {
            for j in 0..b {
                worst = worst.max((self.entries[(i, j)] - other.entries[(i, j)]).norm());
            }
        }
        worst
    }

    /// The leading `block` × `block` corner.
    pub fn interior(&self, block: usize) -> Self {
        let b = block.min(self.dim());
        Self::from_matrix(self.entries.view((0, 0), (b, b)).into_owned())
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let x = DVector::from_column_slice(v);
        (&self.entries * x).iter().copied().collect()
    }

    /// cᴴ A c.
    pub fn expectation(&self, c: &[Complex64]) -> Complex64 {
        let ac = self.apply(c);
        c.iter().zip(&ac).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn diagonal_values(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.entries[(i, i)]).collect()
    }
}

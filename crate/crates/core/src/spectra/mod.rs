//! Bound-state spectra, eigenfunctions and matrix elements of the infinite well
//! and the trigonometric Pöschl–Teller potential.

mod eigen;
mod limits;
mod matrices;
mod momentum;

pub use eigen::{pt_eigenfunction, pt_eigenfunction_derivative, well_eigenfunction, EigenstateTable};
pub use limits::{
    bohr_sommerfeld_energy, bohr_sommerfeld_pt, pt_to_well_limit, scaling_check, LimitReport,
};
pub use matrices::{
    eigenstate_moments, momentum_gram_matrix, momentum_matrix, position_matrix, position_squared_matrix,
    EigenstateMoments, MatrixElements, WellMomentum, WellMomentumGram, WellPosition, WellPositionSquared,
};
pub use momentum::{momentum_eigenfunction, well_momentum_expansion, MomentumExpansion};

use crate::error::{Error, Result};

/// Which potential the Hamiltonian carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    Well,
    PoeschlTeller { lambda: f64, kappa: f64 },
}

/// Potential family plus the unit system (ħ, m, a).
///
/// The Pöschl–Teller coupling is fixed to V₀ = ħ²/4ma², which makes the shifted
/// spectrum ħω n(n+ν) with ω = ħ/2ma² and ν = λ+κ; the well is ν = 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub potential: Potential,
    pub a: f64,
    pub m: f64,
    pub hbar: f64,
}

impl ModelParams {
    pub fn well() -> Self {
        Self {
            potential: Potential::Well,
            a: 1.0,
            m: 1.0,
            hbar: 1.0,
        }
    }

    pub fn poeschl_teller(lambda: f64, kappa: f64) -> Result<Self> {
        if !(lambda > 1.0 && kappa > 1.0 && lambda.is_finite() && kappa.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "Poschl-Teller needs lambda, kappa > 1 (got {lambda}, {kappa})"
            )));
        }
        Ok(Self {
            potential: Potential::PoeschlTeller { lambda, kappa },
            ..Self::well()
        })
    }

    pub fn with_units(self, hbar: f64, m: f64, a: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", m), ("a", a)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} must be positive (got {v})")));
            }
        }
        Ok(Self { a, m, hbar, ..self })
    }

    pub fn is_well(&self) -> bool {
        matches!(self.potential, Potential::Well)
    }

    /// (λ, κ); the well counts as (1, 1).
    pub fn exponents(&self) -> (f64, f64) {
        match self.potential {
            Potential::Well => (1.0, 1.0),
            Potential::PoeschlTeller { lambda, kappa } => (lambda, kappa),
        }
    }

    pub fn nu(&self) -> f64 {
        let (l, k) = self.exponents();
        l + k
    }

    /// ω = ħ/2ma².
    pub fn omega(&self) -> f64 {
        self.hbar / (2.0 * self.m * self.a * self.a)
    }

    /// ħω = ħ²/2ma², the energy unit of e_n.
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.omega()
    }

    /// V₀ = ħ²/4ma².
    pub fn v0(&self) -> f64 {
        0.5 * self.energy_unit()
    }

    /// Discrete-series label η = (ν+1)/2.
    pub fn eta(&self) -> f64 {
        0.5 * (self.nu() + 1.0)
    }

    /// Width of the box, πa.
    pub fn width(&self) -> f64 {
        std::f64::consts::PI * self.a
    }

    /// e_n = n(n+ν).
    pub fn e(&self, n: usize) -> f64 {
        let n = n as f64;
        n * (n + self.nu())
    }

    /// (e_n, E_n = ħω e_n).
    pub fn energy_level(&self, n: usize) -> (f64, f64) {
        let e = self.e(n);
        (e, self.energy_unit() * e)
    }

    /// The unshifted potential. For the well this is 0 inside the box.
    pub fn potential_at(&self, x: f64) -> f64 {
        match self.potential {
            Potential::Well => 0.0,
            Potential::PoeschlTeller { lambda, kappa } => {
                let u = x / (2.0 * self.a);
                0.5 * self.v0() * (lambda * (lambda - 1.0) / u.cos().powi(2) + kappa * (kappa - 1.0) / u.sin().powi(2))
            }
        }
    }

    /// Constant subtracted from the Hamiltonian so that E_0 = 0.
    pub fn ground_shift(&self) -> f64 {
        let nu = self.nu();
        0.25 * self.energy_unit() * nu * nu
    }

    /// e_0 .. e_{len-1}.
    pub fn spectrum(&self, len: usize) -> Vec<f64> {
        (0..len).map(|n| self.e(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies() {
        assert_eq!(ModelParams::well().energy_level(0), (0.0, 0.0));
        assert_eq!(ModelParams::well().e(3), 15.0);
        assert_eq!(ModelParams::poeschl_teller(4.0, 8.0).unwrap().e(2), 28.0);
        assert_eq!(ModelParams::well().omega(), 0.5);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::poeschl_teller(1.0, 2.0).is_err());
        assert!(ModelParams::well().with_units(0.0, 1.0, 1.0).is_err());
    }
}

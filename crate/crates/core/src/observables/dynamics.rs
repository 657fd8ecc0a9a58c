use num_complex::Complex64;
use rayon::prelude::*;

use crate::coherent::CoherentState;
use crate::error::{domain, Result};
use crate::report::GridFunction;
use crate::spectra::{
    EigenstateTable, MatrixElements, WellMomentum, WellMomentumGram, WellPosition, WellPositionSquared,
};

/// Coefficients with |c_n|² below this fraction of the largest one are left out
/// of matrix expectations.
pub const WINDOW_EPS: f64 = 1e-24;

/// A(γ) = Σ|c_n|² e^{−ie_nγ}, the overlap ⟨J,0|J,γ⟩.
pub fn autocorrelation(state: &CoherentState, gamma: f64) -> Complex64 {
    let p = state.params();
    state
        .probabilities()
        .iter()
        .enumerate()
        .map(|(n, w)| Complex64::from_polar(*w, -gamma * p.e(n)))
        .sum()
}

pub fn autocorrelation_series(state: &CoherentState, gammas: &[f64]) -> GridFunction<Complex64> {
    let probs = state.probabilities();
    let e: Vec<f64> = (0..probs.len()).map(|n| state.params().e(n)).collect();
    let values = gammas
        .par_iter()
        .map(|&g| probs.iter().zip(&e).map(|(w, e)| Complex64::from_polar(*w, -g * e)).sum())
        .collect();
    GridFunction::new(gammas.to_vec(), values, "gamma", "A")
}

fn check_grid(what: &'static str, xs: &[f64], width: f64) -> Result<()> {
    if let Some(x) = xs.iter().find(|&&x| !(0.0..=width).contains(&x)) {
        return Err(domain(what, format!("x = {x} outside [0, {width}]")));
    }
    Ok(())
}

/// ψ_n(x_k) for n ≤ n_max, one row per grid point.
fn basis_values(state: &CoherentState, xs: &[f64]) -> Result<Vec<Vec<f64>>> {
    let table = EigenstateTable::new(*state.params(), state.n_max())?;
    xs.par_iter().map(|&x| table.values(x)).collect()
}

/// |⟨x|J,γ⟩|² on a grid in [0, πa].
pub fn position_density(state: &CoherentState, xs: &[f64]) -> Result<GridFunction<f64>> {
    check_grid("position_density", xs, state.params().width())?;
    let psi = basis_values(state, xs)?;
    let c = state.coeffs();
    let values = psi
        .par_iter()
        .map(|row| row.iter().zip(&c).map(|(p, c)| c * p).sum::<Complex64>().norm_sqr())
        .collect();
    Ok(GridFunction::new(xs.to_vec(), values, "x", "density"))
}

/// Densities of the evolved state, one per γ, sharing one evaluation of the basis.
pub fn density_map(state: &CoherentState, xs: &[f64], gammas: &[f64]) -> Result<Vec<GridFunction<f64>>> {
    check_grid("density_map", xs, state.params().width())?;
    let psi = basis_values(state, xs)?;
    Ok(gammas
        .par_iter()
        .map(|&g| {
            let c = state.shifted(g - state.gamma()).coeffs();
            let values = psi
                .iter()
                .map(|row| row.iter().zip(&c).map(|(p, c)| c * p).sum::<Complex64>().norm_sqr())
                .collect();
            GridFunction::new(xs.to_vec(), values, "x", "density")
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Position,
    Momentum,
}

/// Q, P, Q² and the momentum Gram matrix ⟨Pψ_m|Pψ_n⟩ in the energy basis.
pub struct MomentOperators {
    pub position: Box<dyn MatrixElements>,
    pub momentum: Box<dyn MatrixElements>,
    pub position_squared: Box<dyn MatrixElements>,
    pub momentum_gram: Box<dyn MatrixElements>,
}

impl MomentOperators {
    /// Closed forms for the well, quadrature matrices up to n_max otherwise.
    pub fn new(params: &crate::ModelParams, n_max: usize) -> Result<Self> {
        let (a, hbar) = (params.a, params.hbar);
        if params.is_well() {
            return Ok(Self {
                position: Box::new(WellPosition { a }),
                momentum: Box::new(WellMomentum { a, hbar }),
                position_squared: Box::new(WellPositionSquared { a }),
                momentum_gram: Box::new(WellMomentumGram { a, hbar }),
            });
        }
        let t = EigenstateTable::new(*params, n_max)?;
        Ok(Self {
            position: Box::new(t.position_matrix()),
            momentum: Box::new(t.momentum_matrix()),
            position_squared: Box::new(t.position_squared_matrix()),
            momentum_gram: Box::new(t.momentum_gram_matrix()),
        })
    }

    pub fn for_state(state: &CoherentState) -> Result<Self> {
        Self::new(state.params(), state.n_max())
    }

    fn get(&self, which: Observable) -> &dyn MatrixElements {
        match which {
            Observable::Position => self.position.as_ref(),
            Observable::Momentum => self.momentum.as_ref(),
        }
    }
}

fn windowed(state: &CoherentState, gamma: f64) -> (Vec<Complex64>, std::ops::Range<usize>) {
    let range = state.significant_range(WINDOW_EPS);
    let s = state.shifted(gamma - state.gamma());
    let c = range.clone().map(|n| s.coeff(n)).collect();
    (c, range)
}

/// ⟨J,γ|A|J,γ⟩ over a γ grid; `state` fixes J and the truncation.
pub fn expectation_dynamics(
    state: &CoherentState,
    gammas: &[f64],
    which: Observable,
    ops: &MomentOperators,
) -> GridFunction<f64> {
    let op = ops.get(which);
    let values = gammas
        .par_iter()
        .map(|&g| {
            let (c, range) = windowed(state, g);
            op.expectation(&c, range).re
        })
        .collect();
    let label = match which {
        Observable::Position => "mean_Q",
        Observable::Momentum => "mean_P",
    };
    GridFunction::new(gammas.to_vec(), values, "gamma", label)
}

#[derive(Debug, Clone)]
pub struct UncertaintyDynamics {
    pub var_q: GridFunction<f64>,
    pub var_p: GridFunction<f64>,
    /// (ΔQ)²(ΔP)².
    pub product: GridFunction<f64>,
}

/// (ΔQ)², (ΔP)² and their product from the exact second-moment matrices, with
/// ⟨P²⟩ read as ‖P|J,γ⟩‖².
pub fn uncertainty_dynamics(state: &CoherentState, gammas: &[f64], ops: &MomentOperators) -> UncertaintyDynamics {
    let rows: Vec<(f64, f64)> = gammas
        .par_iter()
        .map(|&g| {
            let (c, range) = windowed(state, g);
            let q = ops.position.expectation(&c, range.clone()).re;
            let q2 = ops.position_squared.expectation(&c, range.clone()).re;
            let p = ops.momentum.expectation(&c, range.clone()).re;
            let p2 = ops.momentum_gram.expectation(&c, range).re;
            ((q2 - q * q).max(0.0), (p2 - p * p).max(0.0))
        })
        .collect();
    let g = gammas.to_vec();
    UncertaintyDynamics {
        var_q: GridFunction::new(g.clone(), rows.iter().map(|r| r.0).collect(), "gamma", "var_Q"),
        var_p: GridFunction::new(g.clone(), rows.iter().map(|r| r.1).collect(), "gamma", "var_P"),
        product: GridFunction::new(g, rows.iter().map(|r| r.0 * r.1).collect(), "gamma", "product"),
    }
}

/// (ΔQ)² and (ΔP)² with ⟨Q²⟩ = ‖Q_K c‖², ⟨P²⟩ = ‖P_K c‖², where Q_K, P_K are the
/// sections with rows 0..=inner_n_max. Biased low; the bias falls roughly like 1/K.
pub fn truncated_square_variances(state: &CoherentState, gamma: f64, inner_n_max: usize) -> Result<(f64, f64)> {
    let dim = inner_n_max.max(state.n_max()) + 1;
    let ops = MomentOperators::new(state.params(), dim - 1)?;
    let s = state.shifted(gamma - state.gamma());
    let c: Vec<Complex64> = (0..dim).map(|n| if n <= s.n_max() { s.coeff(n) } else { Complex64::new(0.0, 0.0) }).collect();
    let apply = |op: &dyn MatrixElements| -> Vec<Complex64> {
        (0..dim)
            .into_par_iter()
            .map(|k| (0..=s.n_max()).map(|n| op.element(k, n) * c[n]).sum())
            .collect()
    };
    let qc = apply(ops.position.as_ref());
    let pc = apply(ops.momentum.as_ref());
    let q: f64 = c.iter().zip(&qc).map(|(a, b)| (a.conj() * b).re).sum();
    let p: f64 = c.iter().zip(&pc).map(|(a, b)| (a.conj() * b).re).sum();
    let q2: f64 = qc.iter().map(|z| z.norm_sqr()).sum();
    let p2: f64 = pc.iter().map(|z| z.norm_sqr()).sum();
    Ok((q2 - q * q, p2 - p * p))
}

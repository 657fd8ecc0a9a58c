//! Coherent states |J, γ⟩ on the quadratic spectrum e_n = n(n+ν), stable under time evolution.
//!
//! Amplitudes J^{n/2}/(N(J)√ρ_n) are kept as logarithms so that J up to 10⁶ is
//! representable; phases e^{−iγe_n} are applied on demand.

mod measure;
mod state;

pub use measure::{
    measure_density, radial_moment, resolution_of_unity_check, weight, RadialIntegral, ResolutionReport,
};
pub use state::{
    action_identity, annihilation_check, darboux_check, make_state, overlap, overlap_equal_gamma, CoherentState,
    DarbouxReport, Truncation, DEFAULT_TOL,
};

use crate::error::{domain, Error, Result};
use crate::specfun::{ln_bessel_i, ln_gamma_pos, ln_hyp1f2_tail, LN_MAX};

fn check_nu(what: &'static str, nu: f64) -> Result<()> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(domain(what, format!("nu = {nu}")));
    }
    Ok(())
}

fn check_j(what: &'static str, j: f64) -> Result<()> {
    if !(j.is_finite() && j >= 0.0) {
        return Err(domain(what, format!("J = {j}")));
    }
    Ok(())
}

/// ln ρ_n = ln n! + ln Γ(n+ν+1) − ln Γ(ν+1).
pub fn ln_moment(n: usize, nu: f64) -> f64 {
    let n = n as f64;
    ln_gamma_pos(n + 1.0) + ln_gamma_pos(n + nu + 1.0) - ln_gamma_pos(nu + 1.0)
}

/// ρ_n = e_1 e_2 ⋯ e_n.
pub fn moments(n: usize, nu: f64) -> Result<f64> {
    check_nu("moments", nu)?;
    let ln = ln_moment(n, nu);
    if ln > LN_MAX {
        return Err(Error::Overflow {
            what: "moments",
            log_value: ln,
        });
    }
    Ok(ln.exp())
}

/// ln N(J)² with N(J)² = Σ Jⁿ/ρ_n = Γ(ν+1) I_ν(2√J)/J^{ν/2}.
pub fn ln_normalization_sq(j: f64, nu: f64) -> Result<f64> {
    check_j("normalization", j)?;
    check_nu("normalization", nu)?;
    if j == 0.0 {
        return Ok(0.0);
    }
    Ok(ln_gamma_pos(nu + 1.0) + ln_bessel_i(nu, 2.0 * j.sqrt())? - 0.5 * nu * j.ln())
}

/// N(J)².
pub fn normalization(j: f64, nu: f64) -> Result<f64> {
    let ln = ln_normalization_sq(j, nu)?;
    if ln > LN_MAX {
        return Err(Error::Overflow {
            what: "normalization",
            log_value: ln,
        });
    }
    Ok(ln.exp())
}

/// Σ_{n > n_max} Jⁿ/ρ_n divided by N(J)².
pub fn relative_tail(n_max: usize, j: f64, nu: f64) -> Result<f64> {
    if j == 0.0 {
        return Ok(0.0);
    }
    let ln = ln_gamma_pos(nu + 1.0) + ln_hyp1f2_tail(n_max, nu, j)? - ln_normalization_sq(j, nu)?;
    Ok(ln.exp().min(1.0))
}

/// Smallest n_max whose discarded weight is at most `tol`. Non-decreasing in J
/// and non-increasing in `tol`.
pub fn choose_truncation(j: f64, nu: f64, tol: f64) -> Result<usize> {
    check_j("choose_truncation", j)?;
    check_nu("choose_truncation", nu)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(domain("choose_truncation", format!("tol = {tol}")));
    }
    if relative_tail(0, j, nu)? <= tol {
        return Ok(0);
    }
    let mut lo = 0;
    let mut hi = (j.sqrt().ceil() as usize).max(1);
    while relative_tail(hi, j, nu)? > tol {
        lo = hi;
        hi *= 2;
    }
    // tail(lo) > tol >= tail(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if relative_tail(mid, j, nu)? > tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_moments() {
        assert_eq!(moments(0, 2.0).unwrap(), 1.0);
        assert_relative_eq!(moments(2, 2.0).unwrap(), 24.0, max_relative = 1e-14);
        assert_relative_eq!(moments(1, 10.0).unwrap(), 11.0, max_relative = 1e-14);
    }

    #[test]
    fn normalization_at_origin() {
        assert_eq!(normalization(0.0, 2.0).unwrap(), 1.0);
        assert_eq!(choose_truncation(0.0, 2.0, 1e-12).unwrap(), 0);
    }
}

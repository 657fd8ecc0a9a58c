//! Terminating ₂F₁ polynomials, Jacobi polynomials, and ₁F₂ series.

use super::gamma::ln_gamma_pos;
use crate::error::{domain, Error, Result};

use super::bessel::LN_MAX;

/// ₂F₁(-n, b; c; z) as the finite sum over k = 0..=n.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, z: f64) -> Result<f64> {
    for j in 0..n {
        if c + j as f64 == 0.0 {
            return Err(Error::Pole {
                what: "hyp2f1_terminating",
                detail: format!("(c)_k vanishes: c = {c}, n = {n}"),
            });
        }
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// Jacobi polynomial P_n^{(α,β)}(t) by the three-term recurrence in n.
pub fn jacobi(n: usize, alpha: f64, beta: f64, t: f64) -> f64 {
    jacobi_all(n, alpha, beta, t)[n]
}

/// P_0 .. P_n at t.
pub fn jacobi_all(n: usize, alpha: f64, beta: f64, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    let ab = alpha + beta;
    out.push(0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * t);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (s - 2.0);
        let a2 = (s - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s - 2.0) * (s - 1.0) * s;
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let len = out.len();
        let next = ((a2 + a3 * t) * out[len - 1] - a4 * out[len - 2]) / a1;
        out.push(next);
    }
    out
}

/// ln Σ_{p > n_max} J^p / (p! Γ(p+ν+1)).
///
/// Summed directly from its largest term outwards, so the result is accurate for
/// tails that are tiny or astronomically large alike. Returns -inf for J = 0.
pub fn ln_hyp1f2_tail(n_max: usize, nu: f64, j: f64) -> Result<f64> {
    if !(j >= 0.0) || !j.is_finite() {
        return Err(domain("hyp1f2_tail", format!("J = {j}")));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(domain("hyp1f2_tail", format!("nu = {nu}")));
    }
    if j == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let first = (n_max + 1) as f64;
    // largest term: p (p + ν) ≈ J
    let peak = (0.5 * ((nu * nu + 4.0 * j).sqrt() - nu)).floor().max(first);
    let ln_peak = peak * j.ln() - ln_gamma_pos(peak + 1.0) - ln_gamma_pos(peak + nu + 1.0);
    let mut sum = 1.0;
    let mut t = 1.0;
    let mut p = peak;
    loop {
        t *= j / ((p + 1.0) * (p + 1.0 + nu));
        sum += t;
        p += 1.0;
        if t < 0.25 * f64::EPSILON * sum {
            break;
        }
    }
    t = 1.0;
    p = peak;
    while p > first {
        t *= p * (p + nu) / j;
        sum += t;
        p -= 1.0;
        if t < 0.25 * f64::EPSILON * sum {
            break;
        }
    }
    Ok(ln_peak + sum.ln())
}

/// Σ_{p > n_max} J^p / (p! Γ(p+ν+1)); signals overflow past the f64 range.
pub fn hyp1f2_tail(n_max: usize, nu: f64, j: f64) -> Result<f64> {
    let ln = ln_hyp1f2_tail(n_max, nu, j)?;
    if ln > LN_MAX {
        return Err(Error::Overflow {
            what: "hyp1f2_tail",
            log_value: ln,
        });
    }
    Ok(ln.exp())
}

/// ₁F₂(a; b1, b2; z) for a, b1, b2 > 0 and z >= 0 (all terms positive).
pub fn hyp1f2(a: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    if !(a > 0.0 && b1 > 0.0 && b2 > 0.0 && z >= 0.0) {
        return Err(domain("hyp1f2", format!("a = {a}, b1 = {b1}, b2 = {b2}, z = {z}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        term *= (a + k) / ((b1 + k) * (b2 + k)) * z / (k + 1.0);
        sum += term;
        k += 1.0;
        if !sum.is_finite() {
            return Err(Error::Overflow {
                what: "hyp1f2",
                log_value: f64::INFINITY,
            });
        }
        if term < f64::EPSILON * 0.25 * sum && (a + k) * z < (b1 + k) * (b2 + k) * (k + 1.0) {
            return Ok(sum);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, ln_bessel_i};
    use approx::assert_relative_eq;

    #[test]
    fn trivial_cases() {
        assert_eq!(hyp2f1_terminating(0, 3.0, 1.5, 0.7).unwrap(), 1.0);
        assert_relative_eq!(hyp2f1_terminating(1, 3.0, 1.5, 0.25).unwrap(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn three_term_rational_value() {
        // 1 - 12/5 + 6/5 in exact rationals
        let exact = -0.2;
        assert_relative_eq!(hyp2f1_terminating(2, 6.0, 2.5, 0.5).unwrap(), exact, max_relative = 1e-14);
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(hyp2f1_terminating(3, 1.0, -1.0, 0.3), Err(Error::Pole { .. })));
        // the pole is beyond reach of a degree-1 sum
        assert!(hyp2f1_terminating(1, 1.0, -1.0, 0.3).is_ok());
    }

    #[test]
    fn jacobi_matches_hypergeometric_form() {
        let (alpha, beta) = (7.5, 3.5);
        for n in 0..8 {
            for &t in &[-0.9, -0.2, 0.0, 0.4, 0.95] {
                let pref = gamma(alpha + 1.0 + n as f64).unwrap()
                    / (gamma(alpha + 1.0).unwrap() * gamma(n as f64 + 1.0).unwrap());
                let f = hyp2f1_terminating(n, n as f64 + alpha + beta + 1.0, alpha + 1.0, 0.5 * (1.0 - t)).unwrap();
                let p = jacobi(n, alpha, beta, t);
                assert!((p - pref * f).abs() <= 1e-11 * pref.max(1.0), "n = {n}, t = {t}");
            }
        }
    }

    fn full_series_ln(nu: f64, j: f64) -> f64 {
        // Σ_p J^p/(p!Γ(p+ν+1)) = J^{-ν/2} I_ν(2√J)
        ln_bessel_i(nu, 2.0 * j.sqrt()).unwrap() - 0.5 * nu * j.ln()
    }

    fn partial(n_max: usize, nu: f64, j: f64) -> f64 {
        (0..=n_max)
            .map(|p| {
                let p = p as f64;
                (p * j.ln() - ln_gamma_pos(p + 1.0) - ln_gamma_pos(p + nu + 1.0)).exp()
            })
            .sum()
    }

    #[test]
    fn tail_plus_partial_is_full() {
        for n in [5, 10, 20] {
            let (nu, j) = (3.7, 25.0);
            let total = partial(n, nu, j) + hyp1f2_tail(n, nu, j).unwrap();
            assert_relative_eq!(total, full_series_ln(nu, j).exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn tail_from_zero() {
        let (nu, j) = (2.0, 1.0);
        let want = full_series_ln(nu, j).exp() - 0.5;
        assert_relative_eq!(hyp1f2_tail(0, nu, j).unwrap(), want, max_relative = 1e-12);
    }

    #[test]
    fn negligible_tail() {
        assert!(hyp1f2_tail(200, 2.0, 1.0).unwrap() < 1e-300);
        assert_eq!(hyp1f2_tail(3, 2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn tail_in_closed_hypergeometric_form() {
        // tail = J^{n+1}/((n+1)! Γ(n+ν+2)) · ₁F₂(1; n+2, n+ν+2; J)
        for &(n, nu, j) in &[(3usize, 2.0, 5.0), (10, 3.7, 40.0), (0, 12.0, 0.3)] {
            let nf = n as f64;
            let lead = ((nf + 1.0) * f64::ln(j) - ln_gamma_pos(nf + 2.0) - ln_gamma_pos(nf + nu + 2.0)).exp();
            let closed = lead * hyp1f2(1.0, nf + 2.0, nf + nu + 2.0, j).unwrap();
            assert_relative_eq!(hyp1f2_tail(n, nu, j).unwrap(), closed, max_relative = 1e-13);
        }
    }

    #[test]
    fn large_tail_stays_in_log_domain() {
        let ln = ln_hyp1f2_tail(10, 2.0, 1e6).unwrap();
        assert_relative_eq!(ln, full_series_ln(2.0, 1e6), max_relative = 1e-13);
        assert!(matches!(hyp1f2_tail(10, 2.0, 1e6), Err(Error::Overflow { .. })));
    }
}

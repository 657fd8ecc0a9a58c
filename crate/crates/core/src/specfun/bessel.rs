//! Modified Bessel functions I_ν and K_ν of real order ν >= 0 and real argument.
//!
//! I_ν is summed from its ascending series. The series has only positive terms,
//! so it is started at its largest term and summed outwards in both directions;
//! this keeps the cost at O(√x) terms and the result free of cancellation for
//! any x. Everything is carried in scaled or logarithmic form, so e^{-x} I_ν(x)
//! is available far beyond the point where I_ν itself overflows.
//!
//! K_ν is computed independently of I_ν: Temme's series (x < 2) or Steed's
//! continued fraction (x >= 2) give K_μ and K_{μ+1} for |μ| <= 1/2, followed by
//! the upward recurrence in order, which is stable for K.

use std::f64::consts::PI;

use super::gamma::{ln_gamma_pos, temme_gammas};
use crate::error::{domain, Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 1_000_000;
/// ln(f64::MAX)
pub(crate) const LN_MAX: f64 = 709.782_712_893_384;

/// A Bessel order ν >= 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealOrder(f64);

impl RealOrder {
    /// Orders closer than this to an integer take the integer-order branch of Temme's series.
    pub const INTEGER_TOLERANCE: f64 = 1e-12;

    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(domain("Bessel order", format!("nu = {nu} must be finite and >= 0")));
        }
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_near_integer(self) -> bool {
        (self.0 - self.0.round()).abs() < Self::INTEGER_TOLERANCE
    }
}

fn check_arg(what: &'static str, x: f64, allow_zero: bool) -> Result<()> {
    let ok = x.is_finite() && if allow_zero { x >= 0.0 } else { x > 0.0 };
    if ok {
        Ok(())
    } else {
        Err(domain(what, format!("x = {x}")))
    }
}

/// ln I_ν(x). Returns -inf at x = 0 for ν > 0.
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    let order = RealOrder::new(nu)?;
    check_arg("bessel_i", x, true)?;
    Ok(ln_i_series(order.value(), x))
}

/// e^{-x} I_ν(x); never overflows.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok((ln_bessel_i(nu, x)? - x).exp())
}

/// I_ν(x). Signals [`Error::Overflow`] once the value leaves the f64 range.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    let ln = ln_bessel_i(nu, x)?;
    if ln > LN_MAX {
        return Err(Error::Overflow {
            what: "bessel_i",
            log_value: ln,
        });
    }
    Ok(ln.exp())
}

fn ln_i_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let half = 0.5 * x;
    let q = half * half;
    // index of the largest term: (k+1)(k+1+ν) ≈ q
    let k0 = (0.5 * ((nu * nu + x * x).sqrt() - nu)).floor().max(0.0);
    let ln_t0 = (2.0 * k0 + nu) * half.ln() - ln_gamma_pos(k0 + 1.0) - ln_gamma_pos(k0 + nu + 1.0);

    let mut sum = 1.0;
    let mut t = 1.0;
    let mut k = k0;
    loop {
        t *= q / ((k + 1.0) * (k + 1.0 + nu));
        sum += t;
        k += 1.0;
        if t < EPS * sum * 0.25 {
            break;
        }
    }
    t = 1.0;
    k = k0;
    while k > 0.0 {
        t *= k * (k + nu) / q;
        sum += t;
        k -= 1.0;
        if t < EPS * sum * 0.25 {
            break;
        }
    }
    ln_t0 + sum.ln()
}

/// I_{ν+1}(x) / I_ν(x) by the Gauss continued fraction (modified Lentz).
///
/// Stays finite for arguments where both Bessel values overflow.
pub fn bessel_i_ratio(nu: f64, x: f64) -> Result<f64> {
    RealOrder::new(nu)?;
    check_arg("bessel_i_ratio", x, true)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    const TINY: f64 = 1e-300;
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..=MAX_ITER {
        let b = 2.0 * (nu + j as f64) / x;
        d += b;
        if d == 0.0 {
            d = TINY;
        }
        c = b + 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < EPS {
            return Ok(f);
        }
    }
    Err(Error::NonConvergence {
        what: "bessel_i_ratio",
        iterations: MAX_ITER,
    })
}

/// A positive value stored as mantissa · e^{scale}.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    value: f64,
    ln_scale: f64,
}

impl Scaled {
    fn ln(self) -> f64 {
        self.value.ln() + self.ln_scale
    }
}

/// (K_μ(x), K_{μ+1}(x)) sharing one log scale, for |μ| <= 1/2.
fn k_base_pair(mu: RealOrder, mu_signed: f64, x: f64) -> Result<(f64, f64, f64)> {
    if x < 2.0 {
        let (k0, k1) = temme_series(mu, mu_signed, x)?;
        Ok((k0, k1, 0.0))
    } else {
        let (k0, k1) = steed_cf2(mu_signed, x)?;
        // steed_cf2 returns e^{x} K
        Ok((k0, k1, -x))
    }
}

fn temme_series(order: RealOrder, mu: f64, x: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if order.is_near_integer() { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < 1e-16 { 1.0 } else { e.sinh() / e };
    let (gam1, gam2) = temme_gammas(mu);
    // 1/Γ(1+μ), 1/Γ(1-μ)
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..=MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.abs() < sum.abs() * EPS {
            return Ok((sum, sum1 * 2.0 / x));
        }
    }
    Err(Error::NonConvergence {
        what: "bessel_k (Temme series)",
        iterations: MAX_ITER,
    })
}

/// Steed's CF2; returns (e^x K_μ, e^x K_{μ+1}).
fn steed_cf2(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..=MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "bessel_k (Steed CF2)",
            iterations: MAX_ITER,
        });
    }
    h *= a1;
    let kmu = (PI / (2.0 * x)).sqrt() / s;
    let k1 = kmu * (mu + x + 0.5 - h) / x;
    Ok((kmu, k1))
}

/// (ln K_ν(x), ln K_{ν+1}(x)).
fn ln_k_pair(nu: RealOrder, x: f64) -> Result<(f64, f64)> {
    let n = (nu.value() + 0.5).floor();
    let mu = nu.value() - n;
    let mu_order = RealOrder(mu.abs());
    let (mut k0, mut k1, mut ln_scale) = k_base_pair(mu_order, mu, x)?;
    let steps = n as usize;
    for i in 1..=steps {
        let next = (mu + i as f64) * (2.0 / x) * k1 + k0;
        k0 = k1;
        k1 = next;
        if k1 > 1e250 {
            k0 /= 1e250;
            k1 /= 1e250;
            ln_scale += 250.0 * std::f64::consts::LN_10;
        }
    }
    let lo = Scaled { value: k0, ln_scale };
    let hi = Scaled { value: k1, ln_scale };
    Ok((lo.ln(), hi.ln()))
}

/// ln K_ν(x) for x > 0.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    let order = RealOrder::new(nu)?;
    check_arg("bessel_k", x, false)?;
    Ok(ln_k_pair(order, x)?.0)
}

/// e^{x} K_ν(x).
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    let ln = ln_bessel_k(nu, x)? + x;
    if ln > LN_MAX {
        return Err(Error::Overflow {
            what: "bessel_k_scaled",
            log_value: ln,
        });
    }
    Ok(ln.exp())
}

/// K_ν(x) for x > 0. Signals [`Error::Overflow`] for tiny x at large order.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let ln = ln_bessel_k(nu, x)?;
    if ln > LN_MAX {
        return Err(Error::Overflow {
            what: "bessel_k",
            log_value: ln,
        });
    }
    Ok(ln.exp())
}

/// I_ν(x) K_ν(x) evaluated from the logarithms, finite wherever x > 0.
pub fn bessel_ik_product(nu: f64, x: f64) -> Result<f64> {
    Ok((ln_bessel_i(nu, x)? + ln_bessel_k(nu, x)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Plain ascending series, summed from k = 0 without any rescaling.
    fn naive_i(nu: f64, x: f64) -> f64 {
        let q = 0.25 * x * x;
        let mut t = (0.5 * x).powf(nu) / crate::specfun::gamma(nu + 1.0).unwrap();
        let mut s = t;
        let mut k = 0.0;
        loop {
            t *= q / ((k + 1.0) * (k + 1.0 + nu));
            s += t;
            k += 1.0;
            if k > q.sqrt() + nu && t < 1e-18 * s {
                return s;
            }
        }
    }

    #[test]
    fn i_at_origin() {
        assert_eq!(bessel_i(2.0, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn i_two_two() {
        assert_relative_eq!(bessel_i(2.0, 2.0).unwrap(), naive_i(2.0, 2.0), max_relative = 1e-14);
        assert_relative_eq!(bessel_i(2.0, 2.0).unwrap(), 0.688_948_447_698_738_2, max_relative = 1e-10);
    }

    #[test]
    fn i_matches_naive_series_on_grid() {
        for &nu in &[0.0, 0.5, 2.0, 3.7, 12.0, 25.3, 40.0] {
            for &x in &[1e-3, 0.1, 1.0, 5.0, 12.0, 30.0, 80.0, 150.0, 200.0] {
                let want = naive_i(nu, x);
                if want < 1e-300 {
                    continue;
                }
                assert_relative_eq!(bessel_i(nu, x).unwrap(), want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn i_overflow_is_signalled() {
        assert!(matches!(bessel_i(2.0, 800.0), Err(Error::Overflow { .. })));
        let scaled = bessel_i_scaled(2.0, 2000.0).unwrap();
        // e^{-x} I_ν(x) ~ 1/√(2πx)
        assert_relative_eq!(scaled, 1.0 / (2.0 * PI * 2000.0).sqrt(), max_relative = 2e-3);
    }

    #[test]
    fn k_half_integer_closed_form() {
        let want = (PI / 2.0).sqrt() * (-1f64).exp();
        assert_relative_eq!(bessel_k(0.5, 1.0).unwrap(), want, max_relative = 1e-14);
        for &x in &[0.01, 0.7, 1.9, 2.0, 2.1, 9.0, 60.0] {
            let k12 = (PI / (2.0 * x)).sqrt() * (-x).exp();
            assert_relative_eq!(bessel_k(0.5, x).unwrap(), k12, max_relative = 1e-13);
            // K_{3/2} = K_{1/2} (1 + 1/x)
            assert_relative_eq!(bessel_k(1.5, x).unwrap(), k12 * (1.0 + 1.0 / x), max_relative = 1e-13);
        }
    }

    #[test]
    fn k_continuity_in_order() {
        let k2 = bessel_k(2.0, 3.0).unwrap();
        let k2p = bessel_k(2.0 + 1e-6, 3.0).unwrap();
        assert!((k2p - k2).abs() <= 1e-5 * k2);
        let k2m = bessel_k(2.0 - 1e-9, 0.5).unwrap();
        assert_relative_eq!(k2m, bessel_k(2.0, 0.5).unwrap(), max_relative = 1e-7);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_k(1.0, 0.0).is_err());
        assert!(bessel_i(-1.0, 1.0).is_err());
        assert!(bessel_i(1.0, -1.0).is_err());
    }

    #[test]
    fn ratio_matches_quotient() {
        for &nu in &[0.0, 2.0, 3.7, 12.0] {
            for &x in &[0.01, 1.0, 10.0, 100.0, 600.0] {
                let want = (ln_bessel_i(nu + 1.0, x).unwrap() - ln_bessel_i(nu, x).unwrap()).exp();
                assert_relative_eq!(bessel_i_ratio(nu, x).unwrap(), want, max_relative = 1e-12);
            }
        }
        assert_eq!(bessel_i_ratio(2.0, 0.0).unwrap(), 0.0);
    }
}

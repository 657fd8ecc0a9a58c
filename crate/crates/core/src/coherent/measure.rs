use std::f64::consts::LN_2;

use super::{check_j, check_nu, ln_moment};
use crate::error::{domain, Error, Result};
use crate::quadrature::{graded_breaks, GaussLegendre};
use crate::report::CheckReport;
use crate::specfun::{bessel_ik_product, ln_bessel_k, ln_gamma_pos};

/// ρ(u) = (2/Γ(ν+1)) u^{ν/2} K_ν(2√u), with ρ(0) = 1/ν.
pub fn measure_density(u: f64, nu: f64) -> Result<f64> {
    check_nu("measure_density", nu)?;
    if !(u.is_finite() && u >= 0.0) {
        return Err(domain("measure_density", format!("u = {u}")));
    }
    if u == 0.0 {
        return Ok(1.0 / nu);
    }
    Ok((LN_2 - ln_gamma_pos(nu + 1.0) + 0.5 * nu * u.ln() + ln_bessel_k(nu, 2.0 * u.sqrt())?).exp())
}

/// k(J) = N(J)² ρ(J) = 2 I_ν(2√J) K_ν(2√J).
pub fn weight(j: f64, nu: f64) -> Result<f64> {
    check_j("weight", j)?;
    check_nu("weight", nu)?;
    if j == 0.0 {
        return Ok(1.0 / nu);
    }
    Ok(2.0 * bessel_ik_product(nu, 2.0 * j.sqrt())?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialIntegral {
    pub value: f64,
    /// Bound on the integral beyond the last panel.
    pub tail_bound: f64,
    pub panels: usize,
}

/// ∫₀^∞ u^p ρ(u) du, after u = s², on Gauss–Legendre panels refined until stable.
pub fn radial_moment(p: f64, nu: f64) -> Result<RadialIntegral> {
    check_nu("radial_moment", nu)?;
    if !(p.is_finite() && p >= 0.0) {
        return Err(domain("radial_moment", format!("p = {p}")));
    }
    let m = 2.0 * p + nu + 1.0;
    let c = 2.0 * LN_2 - ln_gamma_pos(nu + 1.0);
    let ln_g = |s: f64| -> Result<f64> { Ok(c + m * s.ln() + ln_bessel_k(nu, 2.0 * s)?) };
    // s^m e^{−2s} peaks at m/2
    let upper = (1.5 * m).max(0.5 * m + 40.0);
    // d/ds ln g ≤ m/s − 2 past the cut since −K′_ν/K_ν ≥ 1
    let rate = 2.0 - m / upper;
    let tail_bound = ln_g(upper)?.exp() / rate;

    let rule = GaussLegendre::new(24);
    let eval = |panels: usize| -> Result<f64> {
        let breaks = graded_breaks(0.0, upper, panels, 12);
        let mut sum = 0.0;
        for (s, w) in rule.composite_points(&breaks) {
            sum += w * ln_g(s)?.exp();
        }
        Ok(sum)
    };
    let mut panels = 8;
    let mut prev = eval(panels)?;
    for _ in 0..10 {
        panels *= 2;
        let next = eval(panels)?;
        if (next - prev).abs() <= 1e-14 * next.abs() {
            return Ok(RadialIntegral {
                value: next,
                tail_bound,
                panels,
            });
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: "radial_moment",
        iterations: panels,
    })
}

#[derive(Debug, Clone)]
pub struct ResolutionReport {
    /// Radial integrals ∫J^{(m+n)/2}ρ dJ/√(ρ_mρ_n), row-major over m, n ≤ n_max.
    pub radial: Vec<Vec<f64>>,
    /// Half-widths of the γ averaging windows (empty for integer ν).
    pub windows: Vec<f64>,
    /// max_{m≠n} |M_mn| per window.
    pub offdiag_max: Vec<f64>,
    /// |M_01| per window.
    pub m01: Vec<f64>,
    /// Least-squares slope of ln offdiag_max against ln window.
    pub decay_slope: Option<f64>,
    pub check: CheckReport,
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Resolution of unity on the span of |0⟩..|n_max⟩.
///
/// For integer ν the angular mean over a period is exactly δ_mn, leaving the
/// radial integrals. Otherwise the mean of e^{−iγ(e_n−e_m)} over [−G, G] is
/// sinc(G(e_n−e_m)), evaluated for each window G.
pub fn resolution_of_unity_check(n_max: usize, nu: f64, windows: &[f64]) -> Result<ResolutionReport> {
    check_nu("resolution_of_unity_check", nu)?;
    let dim = n_max + 1;
    let mut radial = vec![vec![0.0; dim]; dim];
    for m in 0..dim {
        for n in m..dim {
            let r = radial_moment(0.5 * (m + n) as f64, nu)?;
            let v = r.value / (0.5 * (ln_moment(m, nu) + ln_moment(n, nu))).exp();
            radial[m][n] = v;
            radial[n][m] = v;
        }
    }
    let diag_dev = (0..dim).map(|n| (radial[n][n] - 1.0).abs()).fold(0.0, f64::max);
    let e = |n: usize| n as f64 * (n as f64 + nu);

    if nu == nu.round() || dim == 1 {
        return Ok(ResolutionReport {
            radial,
            windows: Vec::new(),
            offdiag_max: Vec::new(),
            m01: Vec::new(),
            decay_slope: None,
            check: CheckReport::new("coherent.resolution_of_unity", diag_dev, 1e-8),
        });
    }

    let mut offdiag_max = Vec::new();
    let mut m01 = Vec::new();
    let mut within_envelope = true;
    for &g in windows {
        if !(g > 0.0 && g.is_finite()) {
            return Err(domain("resolution_of_unity_check", format!("window {g}")));
        }
        let mut worst = 0.0_f64;
        let mut envelope = 0.0_f64;
        for m in 0..dim {
            for n in m + 1..dim {
                let d = e(n) - e(m);
                worst = worst.max((sinc(g * d) * radial[m][n]).abs());
                envelope = envelope.max(radial[m][n] / (g * d));
            }
        }
        within_envelope &= worst <= envelope * (1.0 + 1e-12);
        offdiag_max.push(worst);
        m01.push((sinc(g * e(1)) * radial[0][1]).abs());
    }
    let decay_slope = if windows.len() >= 2 {
        let xs: Vec<f64> = windows.iter().map(|g| g.ln()).collect();
        let ys: Vec<f64> = offdiag_max.iter().map(|v| v.ln()).collect();
        let k = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        Some(sxy / sxx)
    } else {
        None
    };
    let decays = decay_slope.is_some_and(|s| s <= -0.5);
    let name = if decays {
        "coherent.resolution_of_unity"
    } else {
        "coherent.resolution_of_unity: no off-diagonal decay"
    };
    let check = CheckReport::with_verdict(name, diag_dev, 1e-8, diag_dev <= 1e-8 && within_envelope && decays);
    Ok(ResolutionReport {
        radial,
        windows: windows.to_vec(),
        offdiag_max,
        m01,
        decay_slope,
        check,
    })
}

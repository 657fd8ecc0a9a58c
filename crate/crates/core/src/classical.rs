//! Classical motion in the infinite well and the trigonometric Pöschl–Teller
//! potential: trajectories, periods, turning points and action–angle variables.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::quadrature::Adaptive;

/// Mass, half-width scale `a` (the well is [0, πa]) and, for Pöschl–Teller,
/// the coupling V₀ with exponents λ, κ. The well is the λ = κ = 1 member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalParams {
    pub m: f64,
    pub a: f64,
    pub v0: f64,
    pub lambda: f64,
    pub kappa: f64,
}

impl ClassicalParams {
    pub fn well(m: f64, a: f64) -> Result<Self> {
        check_positive("m", m)?;
        check_positive("a", a)?;
        Ok(Self {
            m,
            a,
            v0: 0.0,
            lambda: 1.0,
            kappa: 1.0,
        })
    }

    pub fn poeschl_teller(m: f64, a: f64, v0: f64, lambda: f64, kappa: f64) -> Result<Self> {
        check_positive("m", m)?;
        check_positive("a", a)?;
        check_positive("V0", v0)?;
        if !(lambda > 1.0 && kappa > 1.0) || !lambda.is_finite() || !kappa.is_finite() {
            return Err(Error::InvalidParams(format!(
                "Poschl-Teller needs lambda, kappa > 1 (got {lambda}, {kappa})"
            )));
        }
        Ok(Self {
            m,
            a,
            v0,
            lambda,
            kappa,
        })
    }

    pub fn is_well(&self) -> bool {
        self.lambda == 1.0 && self.kappa == 1.0
    }

    fn g_lambda(&self) -> f64 {
        self.lambda * (self.lambda - 1.0)
    }

    fn g_kappa(&self) -> f64 {
        self.kappa * (self.kappa - 1.0)
    }

    /// V(x) = (V₀/2)[λ(λ−1)/cos²(x/2a) + κ(κ−1)/sin²(x/2a)].
    pub fn potential(&self, x: f64) -> f64 {
        if self.is_well() {
            return if (0.0..=PI * self.a).contains(&x) { 0.0 } else { f64::INFINITY };
        }
        let u = x / (2.0 * self.a);
        0.5 * self.v0 * (self.g_lambda() / u.cos().powi(2) + self.g_kappa() / u.sin().powi(2))
    }

    /// dV/dx.
    pub fn potential_derivative(&self, x: f64) -> f64 {
        if self.is_well() {
            return 0.0;
        }
        let u = x / (2.0 * self.a);
        let (s, c) = u.sin_cos();
        self.v0 / (2.0 * self.a) * (self.g_lambda() * s / c.powi(3) - self.g_kappa() * c / s.powi(3))
    }

    /// V_min = (V₀/2)(√(λ(λ−1)) + √(κ(κ−1)))².
    pub fn v_min(&self) -> f64 {
        0.5 * self.v0 * (self.g_lambda().sqrt() + self.g_kappa().sqrt()).powi(2)
    }

    /// Location of the potential minimum: tan²(x₀/2a) = √(κ(κ−1)/λ(λ−1)).
    pub fn x_min(&self) -> f64 {
        if self.is_well() {
            return 0.5 * PI * self.a;
        }
        let t2 = (self.g_kappa() / self.g_lambda()).sqrt();
        2.0 * self.a * t2.sqrt().atan()
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must be positive and finite (got {v})")))
    }
}

fn check_energy(e: f64) -> Result<()> {
    if e > 0.0 && e.is_finite() {
        Ok(())
    } else {
        Err(domain("energy", format!("E = {e} must be positive")))
    }
}

/// Round-trip period T = 2πa√(m/2E); the same for both potentials.
pub fn period(e: f64, p: &ClassicalParams) -> Result<f64> {
    check_energy(e)?;
    Ok(2.0 * PI * p.a * (p.m / (2.0 * e)).sqrt())
}

/// Speed √(2E/m) inside the well.
pub fn well_speed(e: f64, p: &ClassicalParams) -> Result<f64> {
    check_energy(e)?;
    Ok((2.0 * e / p.m).sqrt())
}

pub fn well_period(e: f64, p: &ClassicalParams) -> Result<f64> {
    period(e, p)
}

/// Triangle wave with x(0) = 0 and the wall πa reached at T/2.
pub fn well_trajectory(t: f64, e: f64, p: &ClassicalParams) -> Result<f64> {
    let period = well_period(e, p)?;
    let v = well_speed(e, p)?;
    let tau = t.rem_euclid(period);
    Ok(if tau <= 0.5 * period {
        v * tau
    } else {
        2.0 * PI * p.a - v * tau
    })
}

/// Piecewise-constant velocity ±v; at a wall hit the value after the reflection is returned.
pub fn well_velocity(t: f64, e: f64, p: &ClassicalParams) -> Result<f64> {
    let period = well_period(e, p)?;
    let v = well_speed(e, p)?;
    let tau = t.rem_euclid(period);
    Ok(if tau < 0.5 * period { v } else { -v })
}

/// A reflection at a wall: the acceleration is an impulse of strength `dv` at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallHit {
    pub t: f64,
    pub x: f64,
    /// Velocity jump (after minus before).
    pub dv: f64,
}

/// All wall reflections in [0, t_max]. The start at x = 0 counts as a hit at t = 0.
pub fn well_wall_hits(e: f64, p: &ClassicalParams, t_max: f64) -> Result<Vec<WallHit>> {
    let period = well_period(e, p)?;
    let v = well_speed(e, p)?;
    let mut hits = Vec::new();
    let mut k = 0u64;
    loop {
        let t = 0.5 * period * k as f64;
        if t > t_max {
            break;
        }
        let (x, dv) = if k.is_multiple_of(2) { (0.0, 2.0 * v) } else { (PI * p.a, -2.0 * v) };
        hits.push(WallHit { t, x, dv });
        k += 1;
    }
    Ok(hits)
}

/// Partial Fourier sum πa/2 − (4a/π) Σ_{k<n} cos(2π(2k+1)t/T)/(2k+1)².
pub fn well_fourier_trajectory(t: f64, e: f64, p: &ClassicalParams, n_terms: usize) -> Result<f64> {
    let period = well_period(e, p)?;
    let w = 2.0 * PI * t / period;
    let s: f64 = (0..n_terms)
        .map(|k| {
            let j = (2 * k + 1) as f64;
            (j * w).cos() / (j * j)
        })
        .sum();
    Ok(0.5 * PI * p.a - 4.0 * p.a / PI * s)
}

/// Partial Fourier sum of the square-wave velocity, (4v/π) Σ_{k<n} sin(2π(2k+1)t/T)/(2k+1).
pub fn well_fourier_velocity(t: f64, e: f64, p: &ClassicalParams, n_terms: usize) -> Result<f64> {
    let period = well_period(e, p)?;
    let v = well_speed(e, p)?;
    let w = 2.0 * PI * t / period;
    let s: f64 = (0..n_terms)
        .map(|k| {
            let j = (2 * k + 1) as f64;
            (j * w).sin() / j
        })
        .sum();
    Ok(4.0 * v / PI * s)
}

/// Uniform bound on |fourier(n_terms) − triangle|: the omitted coefficients summed,
/// (4a/π) Σ_{k>=n} 1/(2k+1)², attained at t = 0.
pub fn well_fourier_tail_bound(p: &ClassicalParams, n_terms: usize) -> f64 {
    let head: f64 = (0..n_terms).map(|k| 1.0 / ((2 * k + 1) as f64).powi(2)).sum();
    (4.0 * p.a / PI * (PI * PI / 8.0 - head)).max(0.0)
}

/// A = a√(2mE).
pub fn well_action(e: f64, p: &ClassicalParams) -> Result<f64> {
    if !(e >= 0.0) {
        return Err(domain("well_action", format!("E = {e}")));
    }
    Ok(p.a * (2.0 * p.m * e).sqrt())
}

/// Ordered turning points (x₋, x₊) of the Pöschl–Teller motion at energy E.
pub fn pt_turning_points(e: f64, p: &ClassicalParams) -> Result<(f64, f64)> {
    let (c0, sd) = pt_orbit_constants(e, p)?;
    Ok((p.a * (c0 + sd).min(1.0).acos(), p.a * (c0 - sd).max(-1.0).acos()))
}

/// ((α−β)/2, √Δ) for the orbit at energy E.
fn pt_orbit_constants(e: f64, p: &ClassicalParams) -> Result<(f64, f64)> {
    check_energy(e)?;
    let vmin = p.v_min();
    if !(e > vmin) {
        return Err(Error::BelowMinimumEnergy { energy: e, minimum: vmin });
    }
    let alpha = p.v0 / e * p.g_lambda();
    let beta = p.v0 / e * p.g_kappa();
    let c0 = 0.5 * (alpha - beta);
    let delta = 1.0 - (alpha + beta) + c0 * c0;
    Ok((c0, delta.max(0.0).sqrt()))
}

/// x(t) = a·arccos[(α−β)/2 + √Δ cos(√(2E/m) t/a)], starting at x₋.
pub fn pt_trajectory(t: f64, e: f64, p: &ClassicalParams) -> Result<f64> {
    let (c0, sd) = pt_orbit_constants(e, p)?;
    let w = (2.0 * e / p.m).sqrt() / p.a;
    Ok(p.a * (c0 + sd * (w * t).cos()).clamp(-1.0, 1.0).acos())
}

/// dx/dt along the Pöschl–Teller orbit.
pub fn pt_velocity(t: f64, e: f64, p: &ClassicalParams) -> Result<f64> {
    let (c0, sd) = pt_orbit_constants(e, p)?;
    let w = (2.0 * e / p.m).sqrt() / p.a;
    let s = (c0 + sd * (w * t).cos()).clamp(-1.0, 1.0);
    let sin_q = (1.0 - s * s).sqrt();
    if sin_q == 0.0 {
        return Ok(0.0);
    }
    Ok(p.a * sd * w * (w * t).sin() / sin_q)
}

/// d²x/dt² = −V′(x)/m along the orbit.
pub fn pt_acceleration(t: f64, e: f64, p: &ClassicalParams) -> Result<f64> {
    let x = pt_trajectory(t, e, p)?;
    Ok(-p.potential_derivative(x) / p.m)
}

/// A = a√(2mE) − a√(mV₀)(√(λ(λ−1)) + √(κ(κ−1))), zero at V_min.
pub fn pt_action(e: f64, p: &ClassicalParams) -> Result<f64> {
    let vmin = p.v_min();
    if !(e >= vmin) {
        return Err(Error::BelowMinimumEnergy { energy: e, minimum: vmin });
    }
    Ok(p.a * (2.0 * p.m * e).sqrt() - p.a * (2.0 * p.m * vmin).sqrt())
}

/// Unshifted action a[p² + 2mV(q)]^{1/2} = a√(2mE).
pub fn pt_action_unshifted(q: f64, mom: f64, p: &ClassicalParams) -> f64 {
    p.a * (mom * mom + 2.0 * p.m * p.potential(q)).sqrt()
}

/// |p| on the upper branch of the phase curve at position q.
pub fn pt_phase_curve(q: f64, e: f64, p: &ClassicalParams) -> Result<f64> {
    let (xm, xp) = pt_turning_points(e, p)?;
    let slack = 1e-12 * PI * p.a;
    if q < xm - slack || q > xp + slack {
        return Err(domain("pt_phase_curve", format!("q = {q} outside [{xm}, {xp}]")));
    }
    let (c0, sd) = pt_orbit_constants(e, p)?;
    let c = (q / p.a).cos();
    let inner = sd * sd - (c - c0) * (c - c0);
    Ok((2.0 * p.m * e).sqrt() / (q / p.a).sin() * inner.max(0.0).sqrt())
}

/// Which potential a phase-space point refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalModel {
    Well,
    PoeschlTeller,
}

/// Action–angle pair; the angle lies in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionAngle {
    pub action: f64,
    pub angle: f64,
}

/// Action–angle coordinates of (q, p) on the energy-E orbit.
///
/// The Pöschl–Teller action is returned shifted so that it vanishes at V_min;
/// the angle takes the arccos branch in [0, π] for p >= 0 and its mirror in (π, 2π) for p < 0.
pub fn action_angle(q: f64, mom: f64, e: f64, p: &ClassicalParams, model: ClassicalModel) -> Result<ActionAngle> {
    let tol = 1e-9 * e.abs().max(1.0);
    match model {
        ClassicalModel::Well => {
            let mismatch = mom * mom / (2.0 * p.m) - e;
            if mismatch.abs() > tol || !(0.0..=PI * p.a).contains(&q) {
                return Err(Error::OffShell { mismatch });
            }
            let angle = if mom >= 0.0 { q / p.a } else { 2.0 * PI - q / p.a };
            Ok(ActionAngle {
                action: mom.abs() * p.a,
                angle: angle.rem_euclid(2.0 * PI),
            })
        }
        ClassicalModel::PoeschlTeller => {
            let mismatch = mom * mom / (2.0 * p.m) + p.potential(q) - e;
            if !(mismatch.abs() <= tol) {
                return Err(Error::OffShell { mismatch });
            }
            let (c0, sd) = pt_orbit_constants(e, p)?;
            let base = (((q / p.a).cos() - c0) / sd).clamp(-1.0, 1.0).acos();
            let angle = if mom >= 0.0 { base } else { 2.0 * PI - base };
            let shift = p.a * (2.0 * p.m * p.v_min()).sqrt();
            Ok(ActionAngle {
                action: pt_action_unshifted(q, mom, p) - shift,
                angle: angle.rem_euclid(2.0 * PI),
            })
        }
    }
}

/// Principal Maupertuis action ∫_{x₋}^{q} p dq′ along the upper branch.
///
/// With cos(q/a) = (α−β)/2 + √Δ cos θ the integrand becomes
/// a√(2mE) Δ sin²θ / sin²(q/a), smooth up to the turning points.
pub fn pt_principal_action(q: f64, e: f64, p: &ClassicalParams) -> Result<f64> {
    let (xm, xp) = pt_turning_points(e, p)?;
    let q = q.clamp(xm, xp);
    let (c0, sd) = pt_orbit_constants(e, p)?;
    let theta = (((q / p.a).cos() - c0) / sd).clamp(-1.0, 1.0).acos();
    let scale = p.a * (2.0 * p.m * e).sqrt() * sd * sd;
    let integrand = |th: f64| {
        let s = c0 + sd * th.cos();
        th.sin().powi(2) / (1.0 - s * s)
    };
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(scale * Adaptive::new(1e-13, 0.0).integrate(integrand, 0.0, theta)?)
}

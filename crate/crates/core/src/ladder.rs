//! Ladder operators and the su(1,1) algebra they generate, as finite sections
//! of infinite band matrices in the energy basis.
//!
//! Relations involving a product of a lowering and a raising operator lose
//! their last row and column to the truncation; check them on the interior
//! block only.

use crate::error::{Error, Result};
use crate::operator::TruncatedOperator;
use crate::report::CheckReport;
use crate::spectra::ModelParams;

/// Dimensionless spectrum e_0 = 0 < e_1 < e_2 < ... together with ν.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSequence {
    e: Vec<f64>,
    nu: f64,
}

impl SpectrumSequence {
    pub fn new(e: Vec<f64>, nu: f64) -> Result<Self> {
        if e.first() != Some(&0.0) {
            return Err(Error::InvalidParams("spectrum must start at e_0 = 0".into()));
        }
        if !e.windows(2).all(|w| w[1] > w[0]) || !e.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams("spectrum must be finite and strictly increasing".into()));
        }
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::InvalidParams(format!("nu = {nu}")));
        }
        Ok(Self { e, nu })
    }

    /// e_n = n(n+ν) for n = 0 ..= n_max+3.
    pub fn from_nu(nu: f64, n_max: usize) -> Result<Self> {
        let e = (0..n_max + 4)
            .map(|n| {
                let n = n as f64;
                n * (n + nu)
            })
            .collect();
        Self::new(e, nu)
    }

    pub fn from_params(params: &ModelParams, n_max: usize) -> Self {
        Self {
            e: params.spectrum(n_max + 4),
            nu: params.nu(),
        }
    }

    /// e_n + ε n³: stays admissible for ε ≥ 0 but breaks the quadratic law.
    pub fn perturbed(&self, eps: f64) -> Result<Self> {
        let e = self.e.iter().enumerate().map(|(n, &v)| v + eps * (n as f64).powi(3)).collect();
        Self::new(e, self.nu)
    }

    pub fn values(&self) -> &[f64] {
        &self.e
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    /// η = (ν+1)/2.
    pub fn eta(&self) -> f64 {
        0.5 * (self.nu + 1.0)
    }

    fn require(&self, len: usize, what: &'static str) -> Result<()> {
        if self.e.len() < len {
            return Err(Error::Domain {
                what,
                detail: format!("needs {len} spectrum values, have {}", self.e.len()),
            });
        }
        Ok(())
    }
}

/// m-th forward difference of a sequence; the result is `order` entries shorter.
pub fn finite_difference(values: &[f64], order: usize) -> Vec<f64> {
    let mut d = values.to_vec();
    for _ in 0..order {
        d = d.windows(2).map(|w| w[1] - w[0]).collect();
    }
    d
}

/// diag(δ^{(m)}_0 .. δ^{(m)}_{n_max}); `diag` must hold at least n_max+1+m entries.
pub fn diagonal_finite_difference(diag: &[f64], order: usize, n_max: usize) -> Result<TruncatedOperator> {
    if diag.len() < n_max + 1 + order {
        return Err(Error::Domain {
            what: "diagonal_finite_difference",
            detail: format!("order {order} at n_max {n_max} needs {} entries", n_max + 1 + order),
        });
    }
    Ok(TruncatedOperator::diagonal(&finite_difference(diag, order)[..=n_max]))
}

/// a|n⟩ = √e_n |n−1⟩.
pub fn lowering(n_max: usize, seq: &SpectrumSequence) -> Result<TruncatedOperator> {
    seq.require(n_max + 1, "lowering")?;
    let e = seq.values();
    Ok(TruncatedOperator::from_real_fn(n_max + 1, |i, j| if j == i + 1 { e[j].sqrt() } else { 0.0 }))
}

/// a†|n⟩ = √e_{n+1} |n+1⟩.
pub fn raising(n_max: usize, seq: &SpectrumSequence) -> Result<TruncatedOperator> {
    Ok(lowering(n_max, seq)?.adjoint())
}

/// X_N = diag(e_n).
pub fn x_n(n_max: usize, seq: &SpectrumSequence) -> Result<TruncatedOperator> {
    diagonal_finite_difference(seq.values(), 0, n_max)
}

/// X_N^{(m)} = diag of the m-th difference of e_n.
pub fn x_n_difference(n_max: usize, seq: &SpectrumSequence, order: usize) -> Result<TruncatedOperator> {
    diagonal_finite_difference(seq.values(), order, n_max)
}

pub fn commutator(a: &TruncatedOperator, b: &TruncatedOperator) -> TruncatedOperator {
    a.commutator(b)
}

/// Generators of su(1,1) in the discrete series.
#[derive(Debug, Clone)]
pub struct Su11Generators {
    pub lower: TruncatedOperator,
    pub raise: TruncatedOperator,
    /// diag(η+n).
    pub l12: TruncatedOperator,
}

/// L⁻ = a/√2, L⁺ = a†/√2, L₁₂ = ½X′_N.
pub fn su11_generators(n_max: usize, seq: &SpectrumSequence) -> Result<Su11Generators> {
    let a = lowering(n_max, seq)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(Su11Generators {
        raise: a.adjoint().scale(s),
        lower: a.scale(s),
        l12: x_n_difference(n_max, seq, 1)?.scale(0.5),
    })
}

/// L₁₂(L₁₂ − 1) − 2L⁺L⁻, equal to η(η−1) on the discrete series.
pub fn casimir(n_max: usize, seq: &SpectrumSequence) -> Result<TruncatedOperator> {
    let g = su11_generators(n_max, seq)?;
    let id = TruncatedOperator::identity(n_max + 1);
    Ok(g.l12.mul(&g.l12.sub(&id)).sub(&g.raise.mul(&g.lower).scale(2.0)))
}

/// N = −ν/2 + (X_N + ν²/4)^{1/2}.
pub fn number_from_xn(n_max: usize, seq: &SpectrumSequence) -> Result<TruncatedOperator> {
    seq.require(n_max + 1, "number_from_xn")?;
    let h = 0.5 * seq.nu();
    let d: Vec<f64> = seq.values()[..=n_max].iter().map(|&e| (e + h * h).sqrt() - h).collect();
    Ok(TruncatedOperator::diagonal(&d))
}

/// C in X_N = ¼(X′_N² − 2X′_N − C) for e_n = n(n+ν).
pub fn xn_quadratic_constant(nu: f64) -> f64 {
    nu * nu - 1.0
}

/// Entrywise check of X_N = ¼(X′_N² − 2X′_N − (ν²−1)) on diag 0 ..= len−2.
pub fn xn_quadratic_relation(seq: &SpectrumSequence) -> CheckReport {
    let c = xn_quadratic_constant(seq.nu());
    let d = finite_difference(seq.values(), 1);
    let worst = d
        .iter()
        .zip(seq.values())
        .map(|(&dp, &e)| (0.25 * (dp * dp - 2.0 * dp - c) - e).abs() / e.max(1.0))
        .fold(0.0, f64::max);
    CheckReport::new("ladder.xn_quadratic", worst, 1e-12)
}

/// Residuals of the algebra on an n_max section, each on its faithful block.
pub fn algebra_checks(n_max: usize, seq: &SpectrumSequence) -> Result<Vec<CheckReport>> {
    let tol = 1e-12;
    let inner = n_max.saturating_sub(1);
    let a = lowering(n_max, seq)?;
    let ad = a.adjoint();
    let x = x_n(n_max, seq)?;
    let x1 = x_n_difference(n_max, seq, 1)?;
    let x2 = x_n_difference(n_max, seq, 2)?;
    let x3 = x_n_difference(n_max, seq, 3)?;
    let g = su11_generators(n_max, seq)?;
    let eta = seq.eta();
    let scale = |op: &TruncatedOperator| op.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let rel = |lhs: &TruncatedOperator, rhs: &TruncatedOperator, block: usize| {
        lhs.max_abs_diff(rhs, block) / scale(rhs).max(scale(lhs))
    };

    let mut out = vec![
        CheckReport::new("ladder.a_adagger", rel(&a.commutator(&ad), &x1, inner), tol),
        CheckReport::new("ladder.a_x1", rel(&a.commutator(&x1), &a.scale(2.0), inner), tol),
        CheckReport::new("ladder.a_xn", rel(&a.commutator(&x), &x1.mul(&a), n_max + 1), tol),
        CheckReport::new(
            "ladder.a_x1a",
            rel(&a.commutator(&x1.mul(&a)), &a.mul(&a).scale(2.0), inner),
            tol,
        ),
        CheckReport::new(
            "ladder.second_difference",
            x2.max_abs_diff(&TruncatedOperator::identity(n_max + 1).scale(2.0), n_max + 1),
            tol,
        ),
        CheckReport::new("ladder.third_difference", x3.matrix().iter().map(|z| z.norm()).fold(0.0, f64::max), tol),
        CheckReport::new("ladder.su11_lower", rel(&g.lower.commutator(&g.l12), &g.lower, inner), tol),
        CheckReport::new(
            "ladder.su11_raise",
            rel(&g.raise.commutator(&g.l12), &g.raise.scale(-1.0), inner),
            tol,
        ),
        CheckReport::new("ladder.su11_pair", rel(&g.lower.commutator(&g.raise), &g.l12, inner), tol),
    ];
    let cas = casimir(n_max, seq)?;
    let target = TruncatedOperator::identity(n_max + 1).scale(eta * (eta - 1.0));
    // entries of L₁₂² reach (η+n)² and cancel down to η(η−1)
    let cancelled = scale(&g.l12.mul(&g.l12));
    out.push(CheckReport::new("ladder.casimir", cas.max_abs_diff(&target, inner) / cancelled, tol));
    let n_op = number_from_xn(n_max, seq)?;
    let counting: Vec<f64> = (0..=n_max).map(|n| n as f64).collect();
    out.push(CheckReport::new(
        "ladder.number_operator",
        n_op.max_abs_diff(&TruncatedOperator::diagonal(&counting), n_max + 1) / (n_max.max(1) as f64),
        tol,
    ));
    out.push(xn_quadratic_relation(seq));
    Ok(out)
}

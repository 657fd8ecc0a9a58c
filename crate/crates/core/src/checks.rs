//! Registry of invariant checks, one report per entry.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::classical::{self, ClassicalParams};
use crate::coherent::{self, make_state, CoherentState, Truncation};
use crate::error::Result;
use crate::ladder::{algebra_checks, SpectrumSequence};
use crate::observables::{self, MomentOperators};
use crate::quadrature::Adaptive;
use crate::report::{linspace, CheckReport};
use crate::specfun;
use crate::spectra::{self, EigenstateTable, ModelParams};

/// Options shared by all checks.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CheckConfig {
    /// ε added as εn³ to the spectrum fed to the ladder checks; 0 leaves it alone.
    pub perturb_spectrum: f64,
}

type Runner = Box<dyn Fn(&CheckConfig) -> Result<CheckReport> + Send + Sync>;

pub struct Check {
    pub name: String,
    run: Runner,
}

impl Check {
    fn new(name: impl Into<String>, run: impl Fn(&CheckConfig) -> Result<CheckReport> + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            run: Box::new(run),
        }
    }

    /// Runs the check; an error becomes a failed report. The report carries the registered name.
    pub fn run(&self, cfg: &CheckConfig) -> CheckReport {
        match (self.run)(cfg) {
            Ok(mut r) => {
                r.name = self.name.clone();
                r
            }
            Err(_) => CheckReport::failed(self.name.clone()),
        }
    }
}

/// Runs every registered check; the order of the output follows the registry.
pub fn run_all(cfg: &CheckConfig) -> Vec<CheckReport> {
    registry().par_iter().map(|c| c.run(cfg)).collect()
}

const FIG2: [(f64, f64); 3] = [(4.0, 4.0), (4.0, 8.0), (4.0, 16.0)];
const NUS: [f64; 3] = [2.0, 3.7, 12.0];

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}

fn rel_dev(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs()
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn pt(lambda: f64, kappa: f64) -> ModelParams {
    ModelParams::poeschl_teller(lambda, kappa).expect("valid exponents")
}

/// A model whose spectrum has the given ν: the well for ν = 2, symmetric PT otherwise.
fn model_for(nu: f64) -> ModelParams {
    if nu == 2.0 {
        ModelParams::well()
    } else {
        pt(0.5 * nu, 0.5 * nu)
    }
}

fn state(j: f64, gamma: f64, params: &ModelParams) -> Result<CoherentState> {
    make_state(j, gamma, params, Truncation::default())
}

pub fn registry() -> Vec<Check> {
    let mut v = Vec::new();
    specfun_checks(&mut v);
    classical_checks(&mut v);
    spectra_checks(&mut v);
    ladder_checks(&mut v);
    coherent_checks(&mut v);
    observables_checks(&mut v);
    v
}

fn specfun_checks(v: &mut Vec<Check>) {
    const ORDERS: [f64; 5] = [0.0, 0.5, 2.0, 3.7, 12.0];
    v.push(Check::new("specfun.bessel_wronskian", |_| {
        let mut worst = 0.0_f64;
        for nu in ORDERS {
            for x in log_grid(0.01, 50.0, 40) {
                let w = specfun::bessel_i(nu, x)? * specfun::bessel_k(nu + 1.0, x)?
                    + specfun::bessel_i(nu + 1.0, x)? * specfun::bessel_k(nu, x)?;
                worst = worst.max(rel_dev(w, 1.0 / x));
            }
        }
        Ok(CheckReport::new("", worst, 1e-8))
    }));
    v.push(Check::new("specfun.bessel_turan", |_| {
        // worst (I_ν I_{ν+2} − I_{ν+1}²)/I_{ν+1}², must not be positive
        let mut worst = f64::NEG_INFINITY;
        for nu in ORDERS {
            for x in log_grid(0.01, 50.0, 40) {
                let i0 = specfun::bessel_i(nu, x)?;
                let i1 = specfun::bessel_i(nu + 1.0, x)?;
                let i2 = specfun::bessel_i(nu + 2.0, x)?;
                worst = worst.max((i0 * i2 - i1 * i1) / (i1 * i1));
            }
        }
        Ok(CheckReport::new("", worst, 0.0))
    }));
    v.push(Check::new("specfun.bessel_recurrence", |_| {
        let mut worst = 0.0_f64;
        for nu in [1.0, 2.0, 3.7, 12.0] {
            for x in log_grid(0.01, 50.0, 25) {
                let lhs = specfun::bessel_i(nu - 1.0, x)? - specfun::bessel_i(nu + 1.0, x)?;
                worst = worst.max(rel_dev(lhs, 2.0 * nu / x * specfun::bessel_i(nu, x)?));
                let lhs = specfun::bessel_k(nu + 1.0, x)? - specfun::bessel_k(nu - 1.0, x)?;
                worst = worst.max(rel_dev(lhs, 2.0 * nu / x * specfun::bessel_k(nu, x)?));
            }
        }
        Ok(CheckReport::new("", worst, 1e-9))
    }));
    v.push(Check::new("specfun.bessel_k_half_order", |_| {
        let mut worst = 0.0_f64;
        for x in log_grid(0.01, 50.0, 30) {
            let want = (PI / (2.0 * x)).sqrt() * (-x).exp();
            worst = worst.max(rel_dev(specfun::bessel_k(0.5, x)?, want));
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
    v.push(Check::new("specfun.bessel_ratio", |_| {
        let mut worst = 0.0_f64;
        for nu in ORDERS {
            for x in log_grid(0.01, 50.0, 30) {
                let want = specfun::bessel_i(nu + 1.0, x)? / specfun::bessel_i(nu, x)?;
                worst = worst.max(rel_dev(specfun::bessel_i_ratio(nu, x)?, want));
            }
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
    v.push(Check::new("specfun.normalization_series", |_| {
        let mut worst = 0.0_f64;
        for nu in NUS {
            for j in [0.01f64, 0.5, 10.0, 50.0, 300.0] {
                let (mut term, mut sum, mut n) = (1.0_f64, 1.0_f64, 0usize);
                while term > 1e-18 * sum || (n as f64) < j.sqrt() {
                    n += 1;
                    term *= j / (n as f64 * (n as f64 + nu));
                    sum += term;
                }
                worst = worst.max(rel_dev(sum, coherent::normalization(j, nu)?));
            }
        }
        Ok(CheckReport::new("", worst, 1e-11))
    }));
    v.push(Check::new("specfun.jacobi_hypergeometric", |_| {
        // P_n^{(α,β)}(t) = (α+1)_n/n! ₂F₁(−n, n+α+β+1; α+1; (1−t)/2), and for t < 0
        // P_n^{(α,β)}(t) = (−1)ⁿ P_n^{(β,α)}(−t) keeps the argument below ½
        let mut worst = 0.0_f64;
        for (alpha, beta) in [(0.5, 0.5), (7.5, 3.5), (1.2, 3.2)] {
            for n in 0..=12 {
                for t in [-0.9, -0.3, 0.2, 0.8] {
                    let (a, b, s, sign) = if t < 0.0 { (beta, alpha, -t, if n % 2 == 0 { 1.0 } else { -1.0 }) } else { (alpha, beta, t, 1.0) };
                    let mut poch = 1.0;
                    for k in 0..n {
                        poch *= (a + 1.0 + k as f64) / (k + 1) as f64;
                    }
                    let (bb, c, z) = (n as f64 + a + b + 1.0, a + 1.0, 0.5 * (1.0 - s));
                    let want = sign * poch * specfun::hyp2f1_terminating(n, bb, c, z)?;
                    // the alternating sum cancels; Σ|terms| = ₂F₁(−n, b; c; −z) sets its error scale
                    let scale = poch * specfun::hyp2f1_terminating(n, bb, c, -z)?;
                    let got = specfun::jacobi(n, alpha, beta, t);
                    worst = worst.max((got - want).abs() / scale);
                }
            }
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
    v.push(Check::new("specfun.gamma_recurrence", |_| {
        let mut worst = 0.0_f64;
        for x in log_grid(0.1, 150.0, 60) {
            let d = specfun::ln_gamma(x + 1.0)? - specfun::ln_gamma(x)? - x.ln();
            worst = worst.max(d.abs() / specfun::ln_gamma(x + 1.0)?.abs().max(1.0));
        }
        Ok(CheckReport::new("", worst, 1e-13))
    }));
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid)? < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs() {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn cparams_pt(lambda: f64, kappa: f64, v0: f64) -> Result<ClassicalParams> {
    ClassicalParams::poeschl_teller(1.0, 1.0, v0, lambda, kappa)
}

fn classical_checks(v: &mut Vec<Check>) {
    v.push(Check::new("classical.pt_period_independence", |_| {
        let e = 20.0;
        let mut measured = Vec::new();
        for (l, k, v0) in [(2.0, 2.0, 1.0), (4.0, 8.0, 0.1), (1.2, 5.0, 0.5), (3.0, 1.5, 1.0)] {
            let p = cparams_pt(l, k, v0)?;
            let t_nom = classical::period(e, &p)?;
            let vel = |t: f64| classical::pt_velocity(t, e, &p);
            let t1 = bisect(0.75 * t_nom, 1.25 * t_nom, vel)?;
            let t2 = bisect(1.75 * t_nom, 2.25 * t_nom, vel)?;
            measured.push(t2 - t1);
        }
        let t_well = classical::period(e, &ClassicalParams::well(1.0, 1.0)?)?;
        Ok(CheckReport::new("", max_of(measured.iter().map(|t| rel_dev(*t, t_well))), 1e-8))
    }));
    v.push(Check::new("classical.energy_conservation", |_| {
        let mut worst = 0.0_f64;
        for (l, k, v0, e) in [(2.0, 2.0, 1.0, 8.0), (4.0, 8.0, 0.25, 30.0), (1.5, 3.0, 2.0, 40.0)] {
            let p = cparams_pt(l, k, v0)?;
            let t_per = classical::period(e, &p)?;
            for i in 0..200 {
                let t = t_per * i as f64 / 197.0;
                let x = classical::pt_trajectory(t, e, &p)?;
                let vel = classical::pt_velocity(t, e, &p)?;
                worst = worst.max(rel_dev(0.5 * p.m * vel * vel + p.potential(x), e));
            }
        }
        Ok(CheckReport::new("", worst, 1e-10))
    }));
    v.push(Check::new("classical.turning_points", |_| {
        let mut worst = 0.0_f64;
        for (l, k, v0, e) in [(2.0, 2.0, 1.0, 8.0), (4.0, 8.0, 0.25, 30.0)] {
            let p = cparams_pt(l, k, v0)?;
            let t_per = classical::period(e, &p)?;
            let (xm, xp) = classical::pt_turning_points(e, &p)?;
            worst = worst.max((p.potential(xm) - e).abs() / e);
            worst = worst.max((p.potential(xp) - e).abs() / e);
            worst = worst.max((classical::pt_trajectory(0.0, e, &p)? - xm).abs());
            worst = worst.max((classical::pt_trajectory(0.5 * t_per, e, &p)? - xp).abs());
        }
        Ok(CheckReport::new("", worst, 1e-10))
    }));
    v.push(Check::new("classical.well_fourier_tail", |_| {
        let p = ClassicalParams::well(1.0, 1.0)?;
        let e = 1.0;
        let t_per = classical::well_period(e, &p)?;
        let mut worst = 0.0_f64;
        let mut prev = f64::INFINITY;
        let mut decreasing = true;
        for n in [5, 50, 500] {
            let bound = classical::well_fourier_tail_bound(&p, n);
            let mut err = 0.0_f64;
            for i in 0..=2000 {
                let t = t_per * i as f64 / 2000.0;
                err = err.max((classical::well_fourier_trajectory(t, e, &p, n)? - classical::well_trajectory(t, e, &p)?).abs());
            }
            worst = worst.max(err / bound);
            decreasing &= err < prev;
            prev = err;
        }
        Ok(CheckReport::with_verdict("", worst, 1.0 + 1e-9, decreasing && worst <= 1.0 + 1e-9))
    }));
    v.push(Check::new("classical.period_anchors", |_| {
        let p = cparams_pt(2.0, 2.0, 1.0)?;
        let d1 = rel_dev(classical::period(8.0, &p)?, PI / 2.0);
        let d2 = rel_dev(classical::period(16.0, &p)?, PI / (2.0 * 2f64.sqrt()));
        Ok(CheckReport::new("", d1.max(d2), 1e-15))
    }));
    v.push(Check::new("classical.well_periodicity", |_| {
        let p = ClassicalParams::well(1.0, 1.0)?;
        let e = 2.0;
        let t_per = classical::well_period(e, &p)?;
        let mut worst = 0.0_f64;
        for i in 0..100 {
            let t = 0.0137 * i as f64;
            let d = classical::well_trajectory(t + t_per, e, &p)? - classical::well_trajectory(t, e, &p)?;
            worst = worst.max(d.abs());
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
}

fn ode_residual(table: &EigenstateTable, n: usize) -> Result<f64> {
    let p = table.params();
    let kin = p.hbar * p.hbar / (2.0 * p.m);
    let e = table.physical_energies()[n];
    let (mut res, mut scale) = (0.0, 0.0);
    for &(x, w) in table.quadrature() {
        if x <= 0.0 || x >= p.width() {
            continue;
        }
        let psi = table.values(x)?[n];
        let d2 = table.second_derivatives(x)?[n];
        let pot = p.potential_at(x) - p.ground_shift();
        res += w * (-kin * d2 + pot * psi - e * psi).powi(2);
        scale += w * ((kin * d2).powi(2) + (pot * psi).powi(2));
    }
    Ok((res / scale).sqrt())
}

fn gram_deviation(table: &EigenstateTable, n_max: usize) -> Result<f64> {
    let q = Adaptive::new(1e-13, 1e-15);
    let width = table.params().width();
    let mut worst = 0.0_f64;
    for m in 0..=n_max {
        for n in m..=n_max {
            let g = q.integrate(|x| table.psi(m, x).unwrap_or(f64::NAN) * table.psi(n, x).unwrap_or(f64::NAN), 0.0, width)?;
            worst = worst.max((g - if m == n { 1.0 } else { 0.0 }).abs());
        }
    }
    Ok(worst)
}

fn spectra_checks(v: &mut Vec<Check>) {
    v.push(Check::new("spectra.energies", |_| {
        let mut worst = 0.0_f64;
        for params in [ModelParams::well(), pt(4.0, 4.0), pt(4.0, 8.0), pt(4.0, 16.0), pt(2.3, 3.7)] {
            let nu = params.nu();
            for (n, e) in params.spectrum(101).into_iter().enumerate() {
                let n = n as f64;
                worst = worst.max((e - n * (n + nu)).abs());
            }
        }
        Ok(CheckReport::new("", worst, 0.0))
    }));
    v.push(Check::new("spectra.pt_ode_residual", |_| {
        let mut worst = 0.0_f64;
        for (l, k) in FIG2 {
            let table = EigenstateTable::new(pt(l, k), 10)?;
            for n in 0..=10 {
                worst = worst.max(ode_residual(&table, n)?);
            }
        }
        Ok(CheckReport::new("", worst, 1e-8))
    }));
    v.push(Check::new("spectra.pt_gram", |_| {
        let mut worst = 0.0_f64;
        for (l, k) in FIG2 {
            worst = worst.max(gram_deviation(&EigenstateTable::new(pt(l, k), 10)?, 10)?);
        }
        Ok(CheckReport::new("", worst, 1e-10))
    }));
    v.push(Check::new("spectra.well_gram", |_| {
        Ok(CheckReport::new("", gram_deviation(&EigenstateTable::new(ModelParams::well(), 10)?, 10)?, 1e-10))
    }));
    v.push(Check::new("spectra.symmetric_parity", |_| {
        let t = EigenstateTable::new(pt(3.0, 3.0), 8)?;
        let mut worst = 0.0_f64;
        for n in 0..=8 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            for x in [0.3, 0.7, 1.4] {
                worst = worst.max((t.psi(n, x)? - sign * t.psi(n, PI - x)?).abs());
            }
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
    v.push(Check::new("spectra.scaling", |_| {
        let parts = [
            spectra::scaling_check(1.0, 2.0, &[0, 1, 5, 40], &ModelParams::well())?,
            spectra::scaling_check(1.0, 2.0, &[0, 3, 9], &pt(4.0, 8.0))?,
            spectra::scaling_check(0.3, 7.0, &[0, 2, 20], &pt(2.3, 3.7))?,
        ];
        Ok(CheckReport::new("", max_of(parts.iter().map(|r| r.residual)), 1e-12))
    }));
    v.push(Check::new("spectra.symmetric_limit", |_| {
        let parts: Vec<CheckReport> = (0..=3)
            .map(|n| spectra::pt_to_well_limit(n, &[1.1, 1.01, 1.001, 1.0001]).map(|r| r.check))
            .collect::<Result<_>>()?;
        Ok(CheckReport::all("", &parts))
    }));
    v.push(Check::new("spectra.eigenstate_uncertainty", |_| {
        let p = ModelParams::well();
        let floor = spectra::eigenstate_moments(0, &p)?.uncertainty_product;
        let dev = rel_dev(floor, p.hbar * (PI * PI / 12.0 - 0.5).sqrt());
        let mut prev = 0.0;
        let mut monotone = true;
        for n in 0..=20 {
            let u = spectra::eigenstate_moments(n, &p)?.uncertainty_product;
            monotone &= u > prev;
            prev = u;
        }
        Ok(CheckReport::with_verdict("", dev, 1e-10, monotone && dev <= 1e-10))
    }));
    v.push(Check::new("spectra.momentum_parseval", |_| {
        let mut worst = 0.0_f64;
        for n in [0, 1, 4] {
            let tail = 1.0 - spectra::well_momentum_expansion(n, 2000).parseval_sum();
            if tail < -1e-14 {
                return Ok(CheckReport::new("", tail.abs(), 0.0));
            }
            worst = worst.max(tail);
        }
        Ok(CheckReport::new("", worst, 1e-6))
    }));
    v.push(Check::new("spectra.hermitian_matrices", |_| {
        let t = EigenstateTable::new(pt(4.0, 8.0), 12)?;
        let w = EigenstateTable::new(ModelParams::well(), 12)?;
        let worst = max_of([
            t.position_matrix().hermiticity_defect(),
            t.momentum_matrix().hermiticity_defect(),
            w.position_matrix().hermiticity_defect(),
            w.momentum_matrix().hermiticity_defect(),
        ]);
        Ok(CheckReport::new("", worst, 1e-14))
    }));
}

fn ladder_checks(v: &mut Vec<Check>) {
    const N_MAX: usize = 40;
    let models: [(&str, ModelParams); 3] = [
        ("well", ModelParams::well()),
        ("pt_4_8", pt(4.0, 8.0)),
        ("pt_1.7_2", pt(1.7, 2.0)),
    ];
    let names: Vec<String> = SpectrumSequence::from_nu(2.0, 2)
        .and_then(|s| algebra_checks(2, &s))
        .map(|r| r.into_iter().map(|c| c.name).collect())
        .unwrap_or_default();
    for (label, params) in models {
        for (i, full) in names.iter().enumerate() {
            let rel = full.trim_start_matches("ladder.");
            v.push(Check::new(format!("ladder.{label}.{rel}"), move |cfg| {
                let mut seq = SpectrumSequence::from_params(&params, N_MAX);
                if cfg.perturb_spectrum != 0.0 {
                    seq = seq.perturbed(cfg.perturb_spectrum)?;
                }
                Ok(algebra_checks(N_MAX, &seq)?.swap_remove(i))
            }));
        }
    }
}

fn coherent_grid() -> Vec<(f64, f64)> {
    NUS.iter().flat_map(|&nu| [0.5, 10.0, 50.0, 300.0].map(|j| (nu, j))).collect()
}

fn coherent_checks(v: &mut Vec<Check>) {
    v.push(Check::new("coherent.action_identity", |_| {
        let parts: Vec<CheckReport> = coherent_grid()
            .into_iter()
            .map(|(nu, j)| state(j, 0.7, &model_for(nu)).map(|s| coherent::action_identity(&s)))
            .collect::<Result<_>>()?;
        Ok(CheckReport::all("", &parts))
    }));
    v.push(Check::new("coherent.normalization", |_| {
        let mut worst = 0.0_f64;
        for (nu, j) in coherent_grid() {
            let s = state(j, 1.3, &model_for(nu))?;
            // the computed norm may undershoot by rounding only
            let dev = 1.0 - s.norm_sqr();
            worst = worst.max(if dev < 0.0 { -dev / 1e-13 } else { dev / (s.tail_bound() + 1e-13) });
        }
        Ok(CheckReport::new("", worst, 1.0))
    }));
    v.push(Check::new("coherent.moment_duality", |_| {
        let mut worst = 0.0_f64;
        for nu in NUS {
            for n in 0..=10 {
                let r = coherent::radial_moment(n as f64, nu)?;
                worst = worst.max(rel_dev(r.value, coherent::moments(n, nu)?));
            }
        }
        Ok(CheckReport::new("", worst, 1e-7))
    }));
    v.push(Check::new("coherent.resolution_of_unity_integer", |_| {
        let parts: Vec<CheckReport> = [2.0, 12.0]
            .into_iter()
            .map(|nu| coherent::resolution_of_unity_check(12, nu, &[]).map(|r| r.check))
            .collect::<Result<_>>()?;
        Ok(CheckReport::all("", &parts))
    }));
    v.push(Check::new("coherent.resolution_of_unity_noninteger", |_| {
        Ok(coherent::resolution_of_unity_check(6, 3.7, &[1e2, 1e3, 1e4])?.check)
    }));
    v.push(Check::new("coherent.annihilation", |_| {
        let parts: Vec<CheckReport> = coherent_grid()
            .into_iter()
            .map(|(nu, j)| state(j, 0.4, &model_for(nu)).and_then(|s| coherent::annihilation_check(&s)))
            .collect::<Result<_>>()?;
        Ok(CheckReport::all("", &parts))
    }));
    v.push(Check::new("coherent.temporal_stability", |_| {
        let mut worst = 0.0_f64;
        for (nu, j) in coherent_grid() {
            let p = model_for(nu);
            let s = state(j, 0.2, &p)?;
            for t in [0.5, 3.0, 40.0] {
                let evolved = s.evolve(t);
                let rebuilt = state(j, s.gamma() + p.omega() * t, &p)?;
                for n in 0..=s.n_max() {
                    worst = worst.max((evolved.coeff(n) - rebuilt.coeff(n)).norm());
                }
            }
        }
        Ok(CheckReport::new("", worst, 1e-15))
    }));
    v.push(Check::new("coherent.darboux", |_| {
        let parts: Vec<CheckReport> = [(2.0, 10.0), (3.7, 50.0), (12.0, 5.0)]
            .into_iter()
            .map(|(nu, j)| {
                state(j, 0.3, &model_for(nu)).and_then(|s| coherent::darboux_check(&s, 0.0, 1e-4)).map(|r| r.check)
            })
            .collect::<Result<_>>()?;
        Ok(CheckReport::all("", &parts))
    }));
    v.push(Check::new("coherent.weight_limits", |_| {
        let mut worst = 0.0_f64;
        for nu in NUS {
            worst = worst.max(rel_dev(coherent::weight(0.0, nu)?, 1.0 / nu));
            worst = worst.max(rel_dev(coherent::measure_density(0.0, nu)?, 1.0 / nu));
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
}

fn stat_grid() -> Vec<(f64, f64)> {
    let js = log_grid(1e-2, 1e3, 20);
    [2.0, 3.7, 6.0, 12.0].iter().flat_map(|&nu| js.iter().map(move |&j| (nu, j))).collect()
}

/// ν = 2 wave packet, the state used by the revival checks.
fn well_state(j: f64) -> Result<CoherentState> {
    state(j, 0.0, &ModelParams::well())
}

fn observables_checks(v: &mut Vec<Check>) {
    v.push(Check::new("observables.full_revival", |_| {
        let mut worst = 0.0_f64;
        for j in [2.0, 10.0, 50.0] {
            let s = well_state(j)?;
            worst = worst.max((observables::autocorrelation(&s, TAU) - 1.0).norm());
        }
        Ok(CheckReport::new("", worst, 1e-10))
    }));
    v.push(Check::new("observables.autocorrelation_periodic", |_| {
        let mut worst = 0.0_f64;
        for j in [2.0, 10.0, 50.0] {
            let s = well_state(j)?;
            for g in linspace(0.0, TAU, 97) {
                let a = observables::autocorrelation(&s, g);
                worst = worst.max((observables::autocorrelation(&s, g + TAU) - a).norm());
                worst = worst.max(a.norm() - 1.0);
            }
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
    v.push(Check::new("observables.mirror_revival", |_| {
        let mut worst = 0.0_f64;
        let xs = linspace(0.0, PI, 401);
        let mirrored: Vec<f64> = xs.iter().map(|x| PI - x).collect();
        for j in [2.0, 10.0, 50.0] {
            let s = well_state(j)?;
            let d0 = observables::position_density(&s, &mirrored)?;
            let dpi = observables::position_density(&s.shifted(PI), &xs)?;
            worst = worst.max(max_of(dpi.values.iter().zip(&d0.values).map(|(a, b)| (a - b).abs())));
        }
        Ok(CheckReport::new("", worst, 1e-8))
    }));
    v.push(Check::new("observables.density_normalization", |_| {
        let mut worst = 0.0_f64;
        for (params, j, g) in [(ModelParams::well(), 50.0, 0.3), (pt(4.0, 8.0), 20.0, 1.1)] {
            let s = state(j, g, &params)?;
            let d = observables::position_density(&s, &linspace(0.0, params.width(), 4001))?;
            worst = worst.max((d.trapezoid() - 1.0).abs() / (1e-6 + s.tail_bound()));
        }
        Ok(CheckReport::new("", worst, 1.0))
    }));
    v.push(Check::new("observables.mandel_sign", |_| {
        let worst = max_of(
            stat_grid()
                .into_iter()
                .map(|(nu, j)| observables::number_statistics(j, nu).map(|s| s.mandel_q.max(0.0)))
                .collect::<Result<Vec<_>>>()?,
        );
        Ok(CheckReport::new("", worst, 0.0))
    }));
    v.push(Check::new("observables.mandel_ratio_vs_direct", |_| {
        let mut worst = 0.0_f64;
        for (nu, j) in stat_grid() {
            let s = observables::number_statistics(j, nu)?;
            let st = make_state(j, 0.0, &model_for(nu), Truncation::Tolerance(1e-30))?;
            let d = observables::number_statistics_direct(&st);
            worst = worst
                .max(rel_dev(d.mean_n, s.mean_n))
                .max(rel_dev(d.mean_n2, s.mean_n2))
                .max(rel_dev(d.mandel_q, s.mandel_q));
        }
        Ok(CheckReport::new("", worst, 1e-9))
    }));
    v.push(Check::new("observables.mean_n_asymptotics", |_| {
        // √J|⟨n⟩ − (√J − ν/2 − ¼)| must not grow between the lower and upper halves of the range
        let mut worst = 0.0_f64;
        for nu in NUS {
            let scaled = |j: f64| -> Result<f64> {
                let m = observables::number_statistics(j, nu)?.mean_n;
                Ok(j.sqrt() * (m - (j.sqrt() - 0.5 * nu - 0.25)).abs())
            };
            let lower = max_of(log_grid(1e2, 1e4, 9).into_iter().map(scaled).collect::<Result<Vec<_>>>()?);
            let upper = max_of(log_grid(1e4, 1e6, 9).into_iter().map(scaled).collect::<Result<Vec<_>>>()?);
            worst = worst.max(upper / lower);
        }
        Ok(CheckReport::new("", worst, 1.1))
    }));
    v.push(Check::new("observables.mean_n_anchor", |_| {
        let m = observables::number_statistics(300.0, 2.0)?.mean_n;
        Ok(CheckReport::new("", (m - 16.0).abs(), 0.3))
    }));
    v.push(Check::new("observables.revival_times", |_| {
        let p = ModelParams::well();
        let r = observables::revival_times(300.0, &p)?;
        let worst = max_of([
            rel_dev(r.t_rev, (2.0 * r.n_bar as f64 + p.nu()) * r.t_cl),
            rel_dev(r.gamma_rev(&p), TAU),
            rel_dev(r.t_cl, 4.0 * PI / 34.0),
            (r.n_bar as f64 - 16.0).abs(),
        ]);
        Ok(CheckReport::new("", worst, 1e-15))
    }));
    v.push(Check::new("observables.weighting_distribution", |_| {
        let s = well_state(300.0)?;
        let total = s.norm_sqr();
        let mut worst = 0.0_f64;
        for (n, w) in s.probabilities().into_iter().enumerate() {
            if w > 1e-200 {
                worst = worst.max(rel_dev(w / total, observables::weighting_distribution(n, 300.0, 2.0)?));
            }
        }
        Ok(CheckReport::new("", worst, 1e-10))
    }));
    v.push(Check::new("observables.expectation_bounds", |_| {
        let gammas = linspace(0.0, PI, 61);
        let mut worst = 0.0_f64;
        for (params, j) in [(ModelParams::well(), 10.0), (pt(4.0, 8.0), 20.0)] {
            let s = state(j, 0.0, &params)?;
            let ops = MomentOperators::for_state(&s)?;
            let q = observables::expectation_dynamics(&s, &gammas, observables::Observable::Position, &ops);
            for &x in &q.values {
                worst = worst.max(-x).max(x - params.width());
            }
            let p = observables::expectation_dynamics(&s, &[0.0], observables::Observable::Momentum, &ops);
            worst = worst.max(p.values[0].abs());
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
    v.push(Check::new("observables.uncertainty_floor", |_| {
        // (ΔQ)²(ΔP)² ≥ ħ²/4
        let gammas = linspace(0.0, TAU, 129);
        let mut worst = 0.0_f64;
        for (params, j) in [(ModelParams::well(), 2.0), (ModelParams::well(), 10.0), (pt(4.0, 8.0), 20.0)] {
            let s = state(j, 0.0, &params)?;
            let u = observables::uncertainty_dynamics(&s, &gammas, &MomentOperators::for_state(&s)?);
            let h2 = 0.25 * params.hbar * params.hbar;
            for &prod in &u.product.values {
                worst = worst.max(h2 - prod);
            }
        }
        Ok(CheckReport::new("", worst, 1e-12))
    }));
    v.push(Check::new("observables.second_moment_refinement", |_| {
        let p = ModelParams::well();
        let s = well_state(10.0)?;
        let fine = make_state(10.0, 0.0, &p, Truncation::Fixed(2 * s.n_max()))?;
        let gammas = linspace(0.0, PI, 33);
        let a = observables::uncertainty_dynamics(&s, &gammas, &MomentOperators::for_state(&s)?);
        let b = observables::uncertainty_dynamics(&fine, &gammas, &MomentOperators::for_state(&fine)?);
        let worst = max_of(a.product.values.iter().zip(&b.product.values).map(|(x, y)| (x - y).abs()));
        Ok(CheckReport::new("", worst, 1e-6))
    }));
}

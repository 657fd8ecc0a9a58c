//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::{PI, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use wellcs::checks::{self, CheckConfig};
use wellcs::classical::{self, ClassicalParams};
use wellcs::coherent::{self, make_state};
use wellcs::ladder::{self, SpectrumSequence};
use wellcs::observables;
use wellcs::quadrature::Adaptive;
use wellcs::report::linspace;
use wellcs::specfun;
use wellcs::spectra::{self, EigenstateTable};
use wellcs::{CheckReport, ModelParams, Truncation};

const NUS: [f64; 3] = [2.0, 3.7, 12.0];
const FIG2: [(f64, f64); 3] = [(4.0, 4.0), (4.0, 8.0), (4.0, 16.0)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn pt(l: f64, k: f64) -> ModelParams {
    ModelParams::poeschl_teller(l, k).unwrap()
}

fn model_for(nu: f64) -> ModelParams {
    match nu {
        2.0 => ModelParams::well(),
        12.0 => pt(4.0, 8.0),
        _ => pt(0.5 * nu, 0.5 * nu),
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect()
}

fn rel(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs()
    }
}

fn registered(name: &str) -> CheckReport {
    checks::registry()
        .into_iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no check {name}"))
        .run(&CheckConfig::default())
}

fn all_pass(reports: &[CheckReport]) -> (bool, String) {
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    let detail = if failed.is_empty() {
        reports.iter().map(|r| format!("{}={:.1e}", r.name, r.residual)).collect::<Vec<_>>().join(" ")
    } else {
        format!("failed: {}", failed.join(", "))
    };
    (failed.is_empty(), detail)
}

fn action_identity() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0_f64;
    for nu in NUS {
        let p = model_for(nu);
        for j in [0.5, 10.0, 50.0, 300.0] {
            let s = make_state(j, 0.0, &p, Truncation::default()).unwrap();
            let mean: f64 = s.probabilities().iter().enumerate().map(|(n, w)| w * p.e(n)).sum();
            worst = worst.max(rel(mean, j));
        }
    }
    let dt = t0.elapsed();
    outcome(
        worst <= 1e-10 && dt < Duration::from_secs(1),
        format!("max rel err {worst:.2e} (tol 1e-10), {:.3} s (limit 1 s)", dt.as_secs_f64()),
    )
}

fn moment_duality() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0_f64;
    for nu in NUS {
        for n in 0..=10 {
            let r = coherent::radial_moment(n as f64, nu).unwrap();
            worst = worst.max(rel(r.value, coherent::moments(n, nu).unwrap()));
        }
    }
    let dt = t0.elapsed();
    outcome(
        worst <= 1e-7 && dt < Duration::from_secs(10),
        format!("max rel err {worst:.2e} (tol 1e-7), {:.3} s (limit 10 s)", dt.as_secs_f64()),
    )
}

fn resolution_of_unity() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for nu in [2.0, 12.0] {
        let r = coherent::resolution_of_unity_check(12, nu, &[]).unwrap();
        ok &= r.check.passed;
        parts.push(format!("nu={nu}: diag dev {:.1e}", r.check.residual));
    }
    let r = coherent::resolution_of_unity_check(6, 3.7, &[1e2, 1e3, 1e4]).unwrap();
    let slope = r.decay_slope.unwrap_or(f64::NAN);
    // the off-diagonal averages must fall like 1/Γ across both decades
    let decays = (slope + 1.0).abs() <= 0.25 && r.offdiag_max.windows(2).all(|w| w[1] < w[0]);
    ok &= r.check.passed && decays;
    parts.push(format!(
        "nu=3.7: diag dev {:.1e}, off-diagonal max {:?}, slope {slope:.3}",
        r.check.residual,
        r.offdiag_max.iter().map(|v| format!("{v:.2e}")).collect::<Vec<_>>()
    ));
    outcome(ok, parts.join("; "))
}

fn su11_table() -> Outcome {
    let n_max = 40;
    let inner = n_max - 1;
    let mut worst = 0.0_f64;
    let mut eta_ok = true;
    for params in [ModelParams::well(), pt(4.0, 8.0), pt(2.3, 3.7)] {
        let seq = SpectrumSequence::from_params(&params, n_max);
        let (l, k) = params.exponents();
        let eta_expected = if params.is_well() { 1.5 } else { 0.5 * (l + k + 1.0) };
        eta_ok &= (seq.eta() - eta_expected).abs() < 1e-15;
        let a = ladder::lowering(n_max, &seq).unwrap();
        let ad = ladder::raising(n_max, &seq).unwrap();
        let x1 = ladder::x_n_difference(n_max, &seq, 1).unwrap();
        let scale = x1.matrix().iter().map(|z| z.norm()).fold(1.0, f64::max);
        worst = worst
            .max(a.commutator(&ad).max_abs_diff(&x1, inner) / scale)
            .max(a.commutator(&x1).max_abs_diff(&a.scale(2.0), inner) / scale)
            .max(ad.commutator(&x1).max_abs_diff(&ad.scale(-2.0), inner) / scale);
        let cas = ladder::algebra_checks(n_max, &seq)
            .unwrap()
            .into_iter()
            .find(|r| r.name == "ladder.casimir")
            .unwrap();
        worst = worst.max(cas.residual);
    }
    outcome(worst <= 1e-12 && eta_ok, format!("max interior residual {worst:.2e} (tol 1e-12), eta as expected: {eta_ok}"))
}

fn revival_suite() -> Outcome {
    let p = ModelParams::well();
    let xs = linspace(0.0, PI, 401);
    let mirrored: Vec<f64> = xs.iter().map(|x| PI - x).collect();
    let (mut rev, mut mirror, mut per) = (0.0_f64, 0.0_f64, 0.0_f64);
    for j in [2.0, 10.0, 50.0] {
        let s = make_state(j, 0.0, &p, Truncation::default()).unwrap();
        rev = rev.max((observables::autocorrelation(&s, TAU) - 1.0).norm());
        let d0 = observables::position_density(&s, &mirrored).unwrap();
        let dpi = observables::position_density(&s.shifted(PI), &xs).unwrap();
        mirror = mirror.max(d0.values.iter().zip(&dpi.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        for g in linspace(-3.0, 9.0, 121) {
            let d = observables::autocorrelation(&s, g + TAU) - observables::autocorrelation(&s, g);
            per = per.max(d.norm());
        }
    }
    outcome(
        rev <= 1e-10 && mirror <= 1e-8 && per <= 1e-12,
        format!("|A(2pi)-1| {rev:.1e} (1e-10), mirror sup {mirror:.1e} (1e-8), periodicity {per:.1e} (1e-12)"),
    )
}

fn uncertainty_floor() -> Outcome {
    let p = ModelParams::well();
    let u0 = spectra::eigenstate_moments(0, &p).unwrap().uncertainty_product;
    let dev = rel(u0, (PI * PI / 12.0 - 0.5).sqrt());
    let us: Vec<f64> = (0..=20).map(|n| spectra::eigenstate_moments(n, &p).unwrap().uncertainty_product).collect();
    let monotone = us.windows(2).all(|w| w[1] > w[0]);
    outcome(dev <= 1e-10 && monotone, format!("n=0 product {u0:.10} rel dev {dev:.1e} (1e-10), increasing to n=20: {monotone}"))
}

fn statistics() -> Outcome {
    let js = log_grid(1e-2, 1e3, 20);
    let nus = [2.0, 3.7, 6.0, 12.0];
    let mut max_q = f64::NEG_INFINITY;
    let mut agree = 0.0_f64;
    for &nu in &nus {
        for &j in &js {
            let s = observables::number_statistics(j, nu).unwrap();
            max_q = max_q.max(s.mandel_q);
            // summed to convergence: at small J the tail matters at the level of Q itself
            let st = make_state(j, 0.0, &model_for(nu), Truncation::Tolerance(1e-30)).unwrap();
            let d = observables::number_statistics_direct(&st);
            agree = agree.max(rel(d.mean_n, s.mean_n)).max(rel(d.mean_n2, s.mean_n2)).max(rel(d.mandel_q, s.mandel_q));
        }
    }
    let mut fits = Vec::new();
    let mut bounded = true;
    for &nu in &nus {
        let scaled: Vec<f64> = log_grid(1e2, 1e6, 41)
            .into_iter()
            .map(|j| {
                let m = observables::number_statistics(j, nu).unwrap().mean_n;
                j.sqrt() * (m - (j.sqrt() - 0.5 * nu - 0.25)).abs()
            })
            .collect();
        let c_fit = scaled.iter().cloned().fold(0.0, f64::max);
        let first = scaled[..21].iter().cloned().fold(0.0, f64::max);
        let second = scaled[20..].iter().cloned().fold(0.0, f64::max);
        bounded &= c_fit.is_finite() && second <= 1.1 * first;
        fits.push(format!("C(nu={nu})={c_fit:.3}"));
    }
    let anchor = observables::number_statistics(300.0, 2.0).unwrap().mean_n;
    let ok = max_q <= 0.0 && agree <= 1e-9 && bounded && (anchor - 16.0).abs() <= 0.3;
    outcome(
        ok,
        format!(
            "max Q {max_q:.2e} (<=0), ratio vs direct {agree:.1e} (1e-9), {}, <n>(300) = {anchor:.4} (16 +- 0.3)",
            fits.join(" ")
        ),
    )
}

fn spectral() -> Outcome {
    let q = Adaptive::new(1e-13, 1e-15);
    let (mut ode, mut gram) = (0.0_f64, 0.0_f64);
    let mut exact = true;
    for (l, k) in FIG2 {
        let p = pt(l, k);
        let table = EigenstateTable::new(p, 10).unwrap();
        let kin = 0.5 * p.hbar * p.hbar / p.m;
        for n in 0..=10 {
            let e = table.physical_energies()[n];
            let (mut res, mut scale) = (0.0, 0.0);
            for &(x, w) in table.quadrature() {
                if x <= 0.0 || x >= p.width() {
                    continue;
                }
                let psi = table.psi(n, x).unwrap();
                let d2 = table.d2psi(n, x).unwrap();
                let v = p.potential_at(x) - p.ground_shift();
                res += w * (-kin * d2 + v * psi - e * psi).powi(2);
                scale += w * ((kin * d2).powi(2) + (v * psi).powi(2));
            }
            ode = ode.max((res / scale).sqrt());
            for m in 0..=n {
                let g = q.integrate(|x| table.psi(m, x).unwrap() * table.psi(n, x).unwrap(), 0.0, PI).unwrap();
                gram = gram.max((g - if m == n { 1.0 } else { 0.0 }).abs());
            }
        }
        let nu = l + k;
        exact &= p.spectrum(200).iter().enumerate().all(|(n, &e)| e == n as f64 * (n as f64 + nu));
    }
    exact &= ModelParams::well().spectrum(200).iter().enumerate().all(|(n, &e)| e == (n * (n + 2)) as f64);
    outcome(
        ode <= 1e-8 && gram <= 1e-10 && exact,
        format!("ODE residual {ode:.1e} (1e-8), Gram dev {gram:.1e} (1e-10), e_n exact: {exact}"),
    )
}

fn classical_suite() -> Outcome {
    let reports: Vec<CheckReport> = [
        "classical.pt_period_independence",
        "classical.energy_conservation",
        "classical.well_fourier_tail",
    ]
    .into_iter()
    .map(registered)
    .collect();
    let (ok, detail) = all_pass(&reports);
    let p = ClassicalParams::poeschl_teller(1.0, 1.0, 1.0, 2.0, 2.0).unwrap();
    let t8 = classical::period(8.0, &p).unwrap();
    let t16 = classical::period(16.0, &p).unwrap();
    let anchors = t8 == PI / 2.0 && rel(t16, PI / (2.0 * 2f64.sqrt())) <= f64::EPSILON;
    outcome(ok && anchors, format!("{detail}; T(8V0) = {t8:.16}, T(16V0) = {t16:.16}"))
}

fn limits() -> Outcome {
    let mut reports = Vec::new();
    for n in 0..=4 {
        let lim = spectra::pt_to_well_limit(n, &[2.0, 1.5, 1.1, 1.01, 1.001, 1.0001]).unwrap();
        let mut r = lim.check;
        r.name = format!("n={n}");
        reports.push(r);
    }
    for (name, params) in [("well", ModelParams::well()), ("pt", pt(4.0, 8.0))] {
        let mut r = spectra::scaling_check(1.0, 3.0, &[0, 1, 7, 30], &params).unwrap();
        r.name = format!("scaling {name}");
        reports.push(r);
    }
    let (ok, detail) = all_pass(&reports);
    outcome(ok, detail)
}

fn special_functions() -> Outcome {
    let reports: Vec<CheckReport> = ["specfun.bessel_wronskian", "specfun.bessel_turan", "specfun.normalization_series"]
        .into_iter()
        .map(registered)
        .collect();
    // one value the series check does not see
    let n2 = coherent::normalization(1.0, 2.0).unwrap();
    let direct = 2.0 * specfun::bessel_i(2.0, 2.0).unwrap();
    let (ok, detail) = all_pass(&reports);
    outcome(ok && rel(n2, direct) <= 1e-11, detail)
}

fn cli_determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_wellcs");
    let run = |args: &[&str]| Command::new(exe).args(args).output().expect("run wellcs");
    let cases: [&[&str]; 4] = [
        &["autocorrelation", "--J", "2,10,50"],
        &["density", "--J", "10", "--gamma-steps", "64"],
        &["uncertainty", "--model", "pt", "--nmax", "10", "--J", "20", "--gamma-steps", "200"],
        &["classical", "--model", "pt", "--lambda", "2", "--kappa", "2", "--energy", "16"],
    ];
    let mut identical = true;
    for args in cases {
        let a = run(args);
        let b = run(args);
        identical &= a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    }
    let t0 = Instant::now();
    let check = run(&["check"]);
    let dt = t0.elapsed();
    let text = String::from_utf8_lossy(&check.stdout);
    let lines = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    let registered = checks::registry().len();
    let ok = identical && check.status.code() == Some(0) && dt < Duration::from_secs(60) && lines == registered;
    outcome(
        ok,
        format!(
            "byte-identical reruns: {identical}; check exit {:?} in {:.2} s (limit 60 s), {lines} report lines for {registered} checks",
            check.status.code(),
            dt.as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("action identity", action_identity),
        ("moment/measure duality", moment_duality),
        ("resolution of unity", resolution_of_unity),
        ("su(1,1) table", su11_table),
        ("revival suite", revival_suite),
        ("eigenstate uncertainty floor", uncertainty_floor),
        ("number statistics", statistics),
        ("spectral correctness", spectral),
        ("classical suite", classical_suite),
        ("limits", limits),
        ("special functions", special_functions),
        ("CLI determinism", cli_determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.passed {
            failures += 1;
        }
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

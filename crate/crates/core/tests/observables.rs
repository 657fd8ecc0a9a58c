use std::f64::consts::{PI, TAU};

use approx::assert_relative_eq;
use proptest::prelude::*;
use wellcs::classical::{well_period, ClassicalParams};
use wellcs::coherent::{make_state, Truncation};
use wellcs::observables::*;
use wellcs::report::linspace;
use wellcs::ModelParams;

fn params(nu: f64) -> ModelParams {
    if nu == 2.0 {
        ModelParams::well()
    } else {
        ModelParams::poeschl_teller(0.5 * nu, 0.5 * nu).unwrap()
    }
}

#[test]
fn distribution_matches_state() {
    let s = make_state(300.0, 0.0, &ModelParams::well(), Truncation::default()).unwrap();
    let probs = s.probabilities();
    let mut total = 0.0;
    for (n, &p) in probs.iter().enumerate() {
        let d = weighting_distribution(n, 300.0, 2.0).unwrap();
        assert!((d - p).abs() <= 1e-12 * p.max(1e-300) + 1e-300, "n = {n}");
        total += d;
    }
    assert!((1.0 - total).abs() <= s.tail_bound() + 1e-13);
}

#[test]
fn gaussian_limit() {
    let mut prev = f64::INFINITY;
    for j in [1e2, 1e3, 1e4, 1e5] {
        let s = make_state(j, 0.0, &ModelParams::well(), Truncation::default()).unwrap();
        let g = gaussian_comparison(&s);
        assert!(g.sup_diff < prev, "J = {j}: {}", g.sup_diff);
        prev = g.sup_diff;
    }
    assert!(prev < 1e-3);
}

#[test]
fn statistics_anchors() {
    // mpmath values
    let s = number_statistics(300.0, 2.0).unwrap();
    assert_relative_eq!(s.mean_n, 16.098_364_737_877_73, max_relative = 1e-12);
    assert!((s.mean_n - 16.0).abs() <= 0.3);
    assert_relative_eq!(s.mandel_q, -0.462_931_581_481_906_1, max_relative = 1e-10);
    let s = number_statistics(1e6, 2.0).unwrap();
    assert_relative_eq!(s.mean_n, 998.750_468_984_440_9, max_relative = 1e-12);
    assert_relative_eq!(s.mandel_q, -0.499_374_687_754_649_25, max_relative = 1e-9);

    for nu in [2.0, 3.7, 12.0] {
        let j = 1e-3;
        let s = number_statistics(j, nu).unwrap();
        assert_relative_eq!(s.mean_n / j, 1.0 / (nu + 1.0), max_relative = 1e-3);
        // leading slope of Q at small J
        assert_relative_eq!(s.mandel_q / j, -1.0 / ((nu + 1.0) * (nu + 2.0)), max_relative = 1e-3);
    }
}

#[test]
fn mandel_grid_and_direct_sums() {
    let js: Vec<f64> = (0..20).map(|i| 10f64.powf(-2.0 + 5.0 * i as f64 / 19.0)).collect();
    for nu in [2.0, 3.7, 6.0, 12.0] {
        for &j in &js {
            let s = number_statistics(j, nu).unwrap();
            assert!(s.mandel_q <= 0.0, "nu={nu} J={j}");
            assert!(s.delta_n.powi(2) <= s.mean_n2);
            // Q is second order in the tail at small J: sum to convergence
            let st = make_state(j, 0.0, &params(nu), Truncation::Tolerance(1e-30)).unwrap();
            let d = number_statistics_direct(&st);
            assert_relative_eq!(s.mean_n, d.mean_n, max_relative = 1e-9);
            assert_relative_eq!(s.mean_n2, d.mean_n2, max_relative = 1e-9);
            assert!((s.mandel_q - d.mandel_q).abs() <= 1e-9 * s.mandel_q.abs().max(1e-3), "nu={nu} J={j}: {} {}", s.mandel_q, d.mandel_q);
        }
    }
}

#[test]
fn mean_asymptotics_and_width() {
    let mut c_max = 0.0_f64;
    let mut prev_ratio = f64::INFINITY;
    for j in [1e2, 1e3, 1e4, 1e5, 1e6] {
        let s = number_statistics(j, 2.0).unwrap();
        let c = (s.mean_n - (j.sqrt() - 1.25)).abs() * j.sqrt();
        c_max = c_max.max(c);
        let ratio = (s.delta_n.powi(2) / (0.5 * j.sqrt()) - 1.0).abs();
        assert!(ratio < prev_ratio);
        prev_ratio = ratio;
    }
    assert!(c_max < 1.0, "C = {c_max}");
    assert!(prev_ratio < 1e-3);
}

#[test]
fn autocorrelation_revivals() {
    let p = ModelParams::well();
    for j in [2.0, 10.0, 50.0] {
        let s = make_state(j, 0.0, &p, Truncation::default()).unwrap();
        assert!((autocorrelation(&s, 0.0) - 1.0).norm() < 1e-13);
        assert!((autocorrelation(&s, TAU) - 1.0).norm() < 1e-10);
        for g in [0.3, 1.1, 2.9] {
            assert!((autocorrelation(&s, g) - autocorrelation(&s, g + TAU)).norm() < 1e-10);
            assert!(autocorrelation(&s, g).norm() <= 1.0 + 1e-13);
        }
    }
    // fractional revivals at a quarter and three quarters of the revival time
    let s = make_state(10.0, 0.0, &p, Truncation::default()).unwrap();
    let gammas = linspace(0.0, TAU, 4001);
    let a2: Vec<f64> = autocorrelation_series(&s, &gammas).values.iter().map(|a| a.norm_sqr()).collect();
    let peaks = find_peaks(&a2, 0.05);
    for target in [0.5 * PI, 1.5 * PI] {
        let pk = peaks.iter().find(|p| (gammas[p.index] - target).abs() < 0.01 * PI).expect("peak");
        assert!((pk.value - 0.5).abs() < 0.01);
    }
    // |A|² is symmetric about the half revival
    for i in 0..2000 {
        assert!((a2[i] - a2[4000 - i]).abs() < 1e-10);
    }
}

#[test]
fn position_density_properties() {
    let p = ModelParams::well();
    let xs = linspace(0.0, PI, 2001);
    let s0 = make_state(0.0, 0.0, &p, Truncation::default()).unwrap();
    let d0 = position_density(&s0, &xs).unwrap();
    for (x, v) in d0.iter() {
        assert!((v - 2.0 / PI * x.sin().powi(2)).abs() < 1e-14);
    }
    let s = make_state(50.0, 0.3, &p, Truncation::default()).unwrap();
    let d = position_density(&s, &xs).unwrap();
    assert!((d.trapezoid() - 1.0).abs() < 1e-6 + s.tail_bound());
    assert!(d.values.iter().all(|&v| v >= 0.0));

    for j in [2.0, 10.0, 50.0] {
        let s = make_state(j, 0.0, &p, Truncation::default()).unwrap();
        let maps = density_map(&s, &xs, &[0.0, PI]).unwrap();
        let n = xs.len();
        let sup = (0..n).map(|i| (maps[1].values[i] - maps[0].values[n - 1 - i]).abs()).fold(0.0, f64::max);
        assert!(sup <= 1e-8, "J = {j}: {sup}");
        let direct = position_density(&s.shifted(PI), &xs).unwrap();
        assert!(direct.values.iter().zip(&maps[1].values).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    let pt = ModelParams::poeschl_teller(4.0, 8.0).unwrap();
    let s = make_state(20.0, 1.0, &pt, Truncation::default()).unwrap();
    let d = position_density(&s, &xs).unwrap();
    assert!((d.trapezoid() - 1.0).abs() < 1e-6);
    assert!(position_density(&s, &[4.0]).is_err());
}

#[test]
fn expectation_values() {
    let p = ModelParams::well();
    let gammas = linspace(0.0, TAU, 201);
    for j in [2.0, 10.0, 50.0] {
        let s = make_state(j, 0.0, &p, Truncation::default()).unwrap();
        let ops = MomentOperators::for_state(&s).unwrap();
        let q = expectation_dynamics(&s, &gammas, Observable::Position, &ops);
        let mom = expectation_dynamics(&s, &gammas, Observable::Momentum, &ops);
        assert_eq!(mom.values[0], 0.0);
        assert!(q.values.iter().all(|&v| (0.0..=PI).contains(&v)));
        let mean: f64 = q.values[..200].iter().sum::<f64>() / 200.0;
        assert!((mean - 0.5 * PI).abs() < 0.05, "J = {j}: {mean}");
        // mirror revival at γ = π sends ⟨Q⟩ to πa − ⟨Q⟩
        assert!((q.values[100] - (PI - q.values[0])).abs() < 1e-10);
        // Ehrenfest: d⟨Q⟩/dγ = 2⟨P⟩/ω·(1/2m) with ω = 1/2, m = 1
        let h = 1e-5;
        let qd = expectation_dynamics(&s, &[0.7 - h, 0.7 + h], Observable::Position, &ops);
        let pm = expectation_dynamics(&s, &[0.7], Observable::Momentum, &ops).values[0];
        assert!(((qd.values[1] - qd.values[0]) / (2.0 * h) - 2.0 * pm).abs() < 1e-6);
    }

    let pt = ModelParams::poeschl_teller(4.0, 8.0).unwrap();
    let s = make_state(20.0, 0.0, &pt, Truncation::default()).unwrap();
    let ops = MomentOperators::for_state(&s).unwrap();
    let q = expectation_dynamics(&s, &gammas, Observable::Position, &ops);
    assert!(q.values.iter().all(|&v| (0.0..=PI).contains(&v)));
    assert!(expectation_dynamics(&s, &[0.0], Observable::Momentum, &ops).values[0].abs() < 1e-12);
}

#[test]
fn large_action_period() {
    let p = ModelParams::well();
    let j = 1e6;
    let s = make_state(j, 0.0, &p, Truncation::Tolerance(1e-12)).unwrap();
    let ops = MomentOperators::for_state(&s).unwrap();
    let gammas = linspace(0.0, 0.02, 801);
    let q = expectation_dynamics(&s, &gammas, Observable::Position, &ops);
    let peaks = find_peaks(&q.values, 0.5);
    assert!(peaks.len() >= 4);
    let spacing = (gammas[peaks.last().unwrap().index] - gammas[peaks[0].index]) / (peaks.len() - 1) as f64;
    assert!((spacing / (PI / j.sqrt()) - 1.0).abs() < 0.02, "spacing {spacing}");
}

#[test]
fn uncertainty_products() {
    let p = ModelParams::well();
    let gammas = linspace(0.0, TAU, 101);
    let s = make_state(0.01, 0.0, &p, Truncation::default()).unwrap();
    let ops = MomentOperators::for_state(&s).unwrap();
    let u = uncertainty_dynamics(&s, &gammas, &ops);
    let floor = PI * PI / 12.0 - 0.5;
    assert!(u.product.values.iter().all(|&v| (v - floor).abs() < 0.05 * floor));

    for j in [2.0, 10.0, 50.0] {
        let s = make_state(j, 0.0, &p, Truncation::default()).unwrap();
        let ops = MomentOperators::for_state(&s).unwrap();
        let u = uncertainty_dynamics(&s, &gammas, &ops);
        assert!(u.var_q.values.iter().all(|&v| v > 0.0));
        assert!(u.var_p.values.iter().all(|&v| v > 0.0));
        assert!(u.product.values.iter().all(|&v| v >= 0.25));
    }

    // refinement: doubling the cut leaves the product unchanged
    let a = make_state(10.0, 0.0, &p, Truncation::Fixed(30)).unwrap();
    let b = make_state(10.0, 0.0, &p, Truncation::Fixed(60)).unwrap();
    let ua = uncertainty_dynamics(&a, &gammas, &MomentOperators::for_state(&a).unwrap());
    let ub = uncertainty_dynamics(&b, &gammas, &MomentOperators::for_state(&b).unwrap());
    for (x, y) in ua.product.values.iter().zip(&ub.product.values) {
        assert!((x - y).abs() <= 1e-6 * y);
    }

    let pt = ModelParams::poeschl_teller(4.0, 8.0).unwrap();
    let s = make_state(20.0, 0.0, &pt, Truncation::default()).unwrap();
    let u = uncertainty_dynamics(&s, &gammas, &MomentOperators::for_state(&s).unwrap());
    assert!(u.product.values.iter().all(|&v| v >= 0.25));
}

#[test]
fn truncated_squares_are_biased() {
    let p = ModelParams::well();
    let s = make_state(10.0, 0.4, &p, Truncation::default()).unwrap();
    let ops = MomentOperators::for_state(&s).unwrap();
    let exact = uncertainty_dynamics(&s, &[0.4], &ops);
    let (eq, ep) = (exact.var_q.values[0], exact.var_p.values[0]);
    let mut prev = f64::INFINITY;
    for k in [40, 80, 160, 320] {
        let (vq, vp) = truncated_square_variances(&s, 0.4, k).unwrap();
        assert!(vp < ep);
        let bias = ep - vp;
        assert!(bias < prev);
        prev = bias;
        assert!((vq - eq).abs() < 1e-3 * eq);
    }
    // falls like 1/K
    assert!(prev > 1e-3 * ep);
}

#[test]
fn revival_time_values() {
    let p = ModelParams::well();
    let r = revival_times(300.0, &p).unwrap();
    assert_eq!(r.n_bar, 16);
    assert_relative_eq!(r.t_cl, 4.0 * PI / 34.0, max_relative = 1e-15);
    assert_eq!(r.t_rev, 4.0 * PI);
    assert_eq!(r.gamma_rev(&p), TAU);
    assert_relative_eq!((2.0 * r.n_bar as f64 + 2.0) * r.t_cl, r.t_rev, max_relative = 1e-15);
    for j in [1.0, 7.0, 55.0] {
        assert_eq!(revival_times(j, &p).unwrap().t_rev, 4.0 * PI);
    }
    let cp = ClassicalParams::well(1.0, 1.0).unwrap();
    // n̄ is rounded, so the agreement is only O(1/√J)
    for j in [1e2, 1e4, 1e6] {
        let r = revival_times(j, &p).unwrap();
        let t = well_period(p.omega() * j, &cp).unwrap();
        assert!((r.t_cl / t - 1.0).abs() <= 1.0 / j.sqrt());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn autocorrelation_bounded(j in 0.0f64..200.0, g in -20.0f64..20.0, nu in 2.01f64..15.0) {
        let s = make_state(j, 0.0, &params(nu), Truncation::default()).unwrap();
        prop_assert!(autocorrelation(&s, g).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn mandel_nonpositive(j in 0.0f64..1e5, nu in 0.5f64..30.0) {
        prop_assert!(number_statistics(j, nu).unwrap().mandel_q <= 0.0);
    }
}

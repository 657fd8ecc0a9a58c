use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use wellcs::checks::{self, CheckConfig};
use wellcs::classical::{self, ClassicalParams};
use wellcs::coherent::make_state;
use wellcs::observables::{self, MomentOperators, Observable};
use wellcs::report::linspace;
use wellcs::{CoherentState, ModelParams, Truncation};

use crate::args::{Common, Model, Which};
use crate::output::{sci, Table};

#[derive(Debug)]
pub enum CliError {
    Args(String),
    Core(wellcs::Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Args(s) => write!(f, "invalid arguments: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "output: {e}"),
        }
    }
}

impl From<wellcs::Error> for CliError {
    fn from(e: wellcs::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Args(msg.into())
}

/// Validated parameters shared by the quantum commands.
pub struct RunConfig {
    pub params: ModelParams,
    pub js: Vec<f64>,
    pub truncation: Truncation,
    pub gammas: Vec<f64>,
    pub xs: Vec<f64>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_common(c: &Common) -> Res<Self> {
        let base = match c.model {
            Model::Well => ModelParams::well(),
            Model::Pt => {
                if !(c.lambda > 1.0 && c.kappa > 1.0) {
                    return Err(bad(format!("pt needs lambda, kappa > 1 (got {}, {})", c.lambda, c.kappa)));
                }
                ModelParams::poeschl_teller(c.lambda, c.kappa)?
            }
        };
        let params = base.with_units(c.hbar, c.mass, c.a)?;
        if c.j.is_empty() || c.j.iter().any(|j| !(j.is_finite() && *j >= 0.0)) {
            return Err(bad("J must be finite and >= 0"));
        }
        let truncation = match (c.nmax, c.tol) {
            (Some(n), _) => Truncation::Fixed(n),
            (None, Some(t)) if t > 0.0 && t < 1.0 => Truncation::Tolerance(t),
            (None, Some(t)) => return Err(bad(format!("tol = {t} outside (0, 1)"))),
            (None, None) => Truncation::default(),
        };
        if c.gamma_steps == 0 || !c.gamma.is_finite() || !c.gamma_max.is_finite() {
            return Err(bad("gamma grid needs finite ends and at least one step"));
        }
        if c.x_steps == 0 {
            return Err(bad("x grid needs at least one step"));
        }
        Ok(Self {
            params,
            js: c.j.clone(),
            truncation,
            gammas: linspace(c.gamma, c.gamma_max, c.gamma_steps + 1),
            xs: linspace(0.0, params.width(), c.x_steps + 1),
            out: c.out.clone(),
        })
    }

    fn state(&self, j: f64, gamma: f64) -> Res<CoherentState> {
        Ok(make_state(j, gamma, &self.params, self.truncation)?)
    }

    fn metadata(&self, t: &mut Table, command: &str) {
        let p = &self.params;
        t.comment(format!("wellcs {} {command}", env!("WELLCS_GIT_DESCRIBE")));
        let (l, k) = p.exponents();
        let model = if p.is_well() { "well" } else { "pt" };
        t.comment(format!("model={model} lambda={l} kappa={k} nu={}", p.nu()));
        t.comment(format!(
            "units: hbar={} m={} a={} omega={} energy_unit={}",
            p.hbar,
            p.m,
            p.a,
            sci(p.omega()),
            sci(p.energy_unit())
        ));
        let trunc = match self.truncation {
            Truncation::Tolerance(tol) => format!("tol={tol:e}"),
            Truncation::Fixed(n) => format!("nmax={n}"),
        };
        let js: Vec<String> = self.js.iter().map(|j| j.to_string()).collect();
        t.comment(format!("J={} truncation: {trunc}", js.join(",")));
    }

    fn write(&self, t: &Table) -> Res<()> {
        Ok(t.write_to(self.out.as_deref())?)
    }
}

pub fn classical(
    c: &Common,
    energy: Option<f64>,
    v0: f64,
    periods: f64,
    t_steps: usize,
    phase: bool,
    events: Option<&Path>,
) -> Res<()> {
    let p = match c.model {
        Model::Well => ClassicalParams::well(c.mass, c.a)?,
        Model::Pt => ClassicalParams::poeschl_teller(c.mass, c.a, v0, c.lambda, c.kappa)?,
    };
    let e = energy.unwrap_or(8.0 * v0);
    if t_steps == 0 || !(periods > 0.0) || c.x_steps == 0 {
        return Err(bad("t-steps, x-steps and periods must be positive"));
    }
    let period = classical::period(e, &p)?;
    let mut t = Table::default();
    t.comment(format!("wellcs {} classical", env!("WELLCS_GIT_DESCRIBE")));
    let model = if p.is_well() { "well" } else { "pt" };
    t.comment(format!(
        "model={model} lambda={} kappa={} m={} a={} V0={} E={} T={}",
        p.lambda,
        p.kappa,
        p.m,
        p.a,
        p.v0,
        e,
        sci(period)
    ));

    if phase {
        t.header(&["q", "p"]);
        let n = c.x_steps;
        if p.is_well() {
            let mv = p.m * classical::well_speed(e, &p)?;
            let qs = linspace(0.0, PI * p.a, n + 1);
            for &q in &qs {
                t.row(&[q, mv]);
            }
            for &q in qs.iter().rev() {
                t.row(&[q, -mv]);
            }
        } else {
            let (xm, xp) = classical::pt_turning_points(e, &p)?;
            let qs = linspace(xm, xp, n + 1);
            let ps = qs.iter().map(|&q| classical::pt_phase_curve(q, e, &p)).collect::<Result<Vec<_>, _>>()?;
            for (q, mom) in qs.iter().zip(&ps) {
                t.row(&[*q, *mom]);
            }
            for (q, mom) in qs.iter().zip(&ps).rev() {
                t.row(&[*q, -*mom]);
            }
        }
        return Ok(t.write_to(c.out.as_deref())?);
    }

    let ts = linspace(0.0, periods * period, t_steps + 1);
    if p.is_well() {
        t.comment("acceleration is zero between wall reflections; see the event list");
        t.header(&["t", "x", "v"]);
        for &s in &ts {
            t.row(&[s, classical::well_trajectory(s, e, &p)?, classical::well_velocity(s, e, &p)?]);
        }
        if let Some(path) = events {
            let mut ev = Table::default();
            ev.comment(format!("wellcs {} classical wall reflections", env!("WELLCS_GIT_DESCRIBE")));
            ev.comment(format!("m={} a={} E={} T={}", p.m, p.a, e, sci(period)));
            ev.header(&["t", "x", "dv"]);
            for h in classical::well_wall_hits(e, &p, periods * period)? {
                ev.row(&[h.t, h.x, h.dv]);
            }
            ev.write_to(Some(path))?;
        }
    } else {
        if events.is_some() {
            return Err(bad("--events applies to the well only"));
        }
        t.header(&["t", "x", "v", "acc"]);
        for &s in &ts {
            t.row(&[
                s,
                classical::pt_trajectory(s, e, &p)?,
                classical::pt_velocity(s, e, &p)?,
                classical::pt_acceleration(s, e, &p)?,
            ]);
        }
    }
    Ok(t.write_to(c.out.as_deref())?)
}

pub fn density(cfg: &RunConfig) -> Res<()> {
    let &[j] = cfg.js.as_slice() else {
        return Err(bad("density takes a single J"));
    };
    let s = cfg.state(j, 0.0)?;
    let maps = observables::density_map(&s, &cfg.xs, &cfg.gammas)?;
    let mut t = Table::default();
    cfg.metadata(&mut t, "density");
    t.comment("rows: x; columns: gamma");
    let mut head = vec!["x".to_string()];
    head.extend(cfg.gammas.iter().map(|g| sci(*g)));
    t.header_owned(&head);
    for (i, &x) in cfg.xs.iter().enumerate() {
        let mut row = vec![x];
        row.extend(maps.iter().map(|m| m.values[i]));
        t.row(&row);
    }
    cfg.write(&t)
}

pub fn autocorrelation(cfg: &RunConfig, peaks: bool, prominence: f64) -> Res<()> {
    let mut t = Table::default();
    cfg.metadata(&mut t, "autocorrelation");
    let omega = cfg.params.omega();
    if peaks {
        t.comment(format!("local maxima of |A|^2 with prominence >= {prominence}"));
        t.header(&["J", "gamma", "abs2", "prominence"]);
    } else {
        t.header(&["J", "gamma", "t", "re", "im", "abs2"]);
    }
    for &j in &cfg.js {
        let s = cfg.state(j, 0.0)?;
        let a = observables::autocorrelation_series(&s, &cfg.gammas);
        let abs2: Vec<f64> = a.values.iter().map(|z| z.norm_sqr()).collect();
        if peaks {
            for p in observables::find_peaks(&abs2, prominence) {
                t.row(&[j, cfg.gammas[p.index], p.value, p.prominence]);
            }
        } else {
            for ((g, z), a2) in cfg.gammas.iter().zip(&a.values).zip(&abs2) {
                t.row(&[j, *g, g / omega, z.re, z.im, *a2]);
            }
        }
    }
    cfg.write(&t)
}

pub fn expectation(cfg: &RunConfig, which: Which) -> Res<()> {
    let (obs, label) = match which {
        Which::Q => (Observable::Position, "mean_Q"),
        Which::P => (Observable::Momentum, "mean_P"),
    };
    let mut t = Table::default();
    cfg.metadata(&mut t, "expectation");
    t.header(&["J", "gamma", "t", label]);
    let omega = cfg.params.omega();
    for &j in &cfg.js {
        let s = cfg.state(j, 0.0)?;
        let ops = MomentOperators::for_state(&s)?;
        let f = observables::expectation_dynamics(&s, &cfg.gammas, obs, &ops);
        for (g, v) in f.grid.iter().zip(&f.values) {
            t.row(&[j, *g, g / omega, *v]);
        }
    }
    cfg.write(&t)
}

pub fn uncertainty(cfg: &RunConfig) -> Res<()> {
    let mut t = Table::default();
    cfg.metadata(&mut t, "uncertainty");
    t.comment("second moments from the exact Q^2 matrix and the Gram matrix <P psi_m|P psi_n>");
    t.header(&["J", "gamma", "t", "var_Q", "var_P", "product"]);
    let omega = cfg.params.omega();
    for &j in &cfg.js {
        let s = cfg.state(j, 0.0)?;
        let ops = MomentOperators::for_state(&s)?;
        let u = observables::uncertainty_dynamics(&s, &cfg.gammas, &ops);
        for (i, g) in cfg.gammas.iter().enumerate() {
            t.row(&[j, *g, g / omega, u.var_q.values[i], u.var_p.values[i], u.product.values[i]]);
        }
    }
    cfg.write(&t)
}

pub fn distribution(cfg: &RunConfig) -> Res<()> {
    let mut t = Table::default();
    cfg.metadata(&mut t, "distribution");
    t.comment("poisson: e^{-J} J^n / n!, the oscillator weights with |alpha|^2 = J");
    t.header(&["J", "n", "D", "poisson"]);
    for &j in &cfg.js {
        let s = cfg.state(j, 0.0)?;
        // enough levels for the Poisson column too
        let n_end = s.n_max().max((j + 12.0 * j.sqrt() + 30.0) as usize);
        let total = s.norm_sqr();
        let probs = s.probabilities();
        let mut ln_pois = -j;
        for n in 0..=n_end {
            if n > 0 {
                ln_pois += j.ln() - (n as f64).ln();
            }
            let pois = if j == 0.0 { if n == 0 { 1.0 } else { 0.0 } } else { ln_pois.exp() };
            let d = match cfg.truncation {
                Truncation::Fixed(_) => probs.get(n).map_or(0.0, |w| w / total),
                Truncation::Tolerance(_) => s.coeff_extended(n).norm_sqr(),
            };
            t.row(&[j, n as f64, d, pois]);
        }
    }
    cfg.write(&t)
}

pub fn statistics(cfg: &RunConfig) -> Res<()> {
    let mut t = Table::default();
    cfg.metadata(&mut t, "statistics");
    t.comment("n_bar = <n> rounded half-up; T_cl = t_rev/(2 n_bar + nu)");
    t.header(&["J", "nu", "mean_n", "mean_n2", "delta_n", "mandel_Q", "n_bar", "T_cl", "t_rev"]);
    let nu = cfg.params.nu();
    for &j in &cfg.js {
        let st = observables::number_statistics(j, nu)?;
        let r = observables::revival_times(j, &cfg.params)?;
        t.row(&[j, nu, st.mean_n, st.mean_n2, st.delta_n, st.mandel_q, r.n_bar as f64, r.t_cl, r.t_rev]);
    }
    cfg.write(&t)
}

/// Returns whether every check passed.
pub fn check(c: &Common, perturb_spectrum: f64) -> Res<bool> {
    if !(perturb_spectrum.is_finite() && perturb_spectrum >= 0.0) {
        return Err(bad("perturb-spectrum must be finite and >= 0"));
    }
    let reports = checks::run_all(&CheckConfig { perturb_spectrum });
    let mut t = Table::default();
    t.comment(format!("wellcs {} check", env!("WELLCS_GIT_DESCRIBE")));
    t.comment(format!("perturb_spectrum={perturb_spectrum:e} checks={}", reports.len()));
    t.header(&["name", "residual", "tolerance", "verdict"]);
    for r in &reports {
        t.labelled_row(&r.name, &[r.residual, r.tolerance], r.verdict());
    }
    t.write_to(c.out.as_deref())?;
    Ok(reports.iter().all(|r| r.passed))
}

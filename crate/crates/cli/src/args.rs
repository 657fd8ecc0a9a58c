use std::f64::consts::TAU;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wellcs", version = env!("WELLCS_GIT_DESCRIBE"), about = "Square-well and Pöschl–Teller coherent-state data as CSV, plus invariant checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Well,
    Pt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Q,
    P,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Model::Well)]
    pub model: Model,
    #[arg(long, global = true, default_value_t = 4.0)]
    pub lambda: f64,
    #[arg(long, global = true, default_value_t = 8.0)]
    pub kappa: f64,
    /// Comma-separated list of actions.
    #[arg(long = "J", global = true, value_delimiter = ',', default_value = "10")]
    pub j: Vec<f64>,
    /// Start of the γ grid (or the state's γ).
    #[arg(long, global = true, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, global = true, default_value_t = TAU)]
    pub gamma_max: f64,
    /// Number of γ intervals.
    #[arg(long, global = true, default_value_t = 1000)]
    pub gamma_steps: usize,
    /// Number of x intervals on [0, πa].
    #[arg(long, global = true, default_value_t = 200)]
    pub x_steps: usize,
    /// Keep levels 0..=NMAX and renormalize the partial sum.
    #[arg(long, global = true, conflicts_with = "tol")]
    pub nmax: Option<usize>,
    /// Relative tail mass left out of the state.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub a: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical trajectory t, x, v (and acceleration for Pöschl–Teller), or the phase curve.
    Classical {
        /// Energy; defaults to 8 V₀.
        #[arg(long)]
        energy: Option<f64>,
        /// Pöschl–Teller coupling V₀.
        #[arg(long, default_value_t = 1.0)]
        v0: f64,
        #[arg(long, default_value_t = 2.0)]
        periods: f64,
        #[arg(long, default_value_t = 1000)]
        t_steps: usize,
        /// Emit the phase curve q, p instead of the time series.
        #[arg(long)]
        phase: bool,
        /// Well only: write the wall reflections (impulsive accelerations) here.
        #[arg(long)]
        events: Option<PathBuf>,
    },
    /// |⟨x|J,γ⟩|² as a matrix: one row per x, one column per γ.
    Density,
    /// A(γ) = ⟨J,0|J,γ⟩ and |A|², or the peaks of |A|².
    Autocorrelation {
        #[arg(long)]
        peaks: bool,
        #[arg(long, default_value_t = 0.01)]
        prominence: f64,
    },
    /// ⟨Q⟩ or ⟨P⟩ along the γ grid.
    Expectation {
        #[arg(long, value_enum, default_value_t = Which::Q)]
        observable: Which,
    },
    /// (ΔQ)², (ΔP)² and their product along the γ grid.
    Uncertainty,
    /// D(n, J, ν) with the Poisson weights of equal mean action.
    Distribution,
    /// ⟨n⟩, ⟨n²⟩, Δn, Mandel Q and the characteristic times.
    Statistics,
    /// Run every registered invariant check; exit status 1 if any fails.
    Check {
        /// Add ε n³ to the spectrum seen by the ladder checks.
        #[arg(long, default_value_t = 0.0)]
        perturb_spectrum: f64,
    },
}

//! Square well and trigonometric Pöschl–Teller models: classical motion,
//! spectra, su(1,1) ladder algebra, coherent states and their observables.

pub mod checks;
pub mod classical;
pub mod coherent;
mod error;
pub mod ladder;
pub mod observables;
pub mod operator;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod spectra;

pub use coherent::{CoherentState, Truncation};
pub use error::{Error, Result};
pub use operator::TruncatedOperator;
pub use report::{CheckReport, GridFunction};
pub use specfun::RealOrder;
pub use ladder::SpectrumSequence;
pub use spectra::{ModelParams, Potential};

//! Special functions: log-gamma, modified Bessel functions, hypergeometric series.

mod bessel;
mod gamma;
mod hypergeometric;

pub use bessel::{
    bessel_i, bessel_i_ratio, bessel_i_scaled, bessel_ik_product, bessel_k, bessel_k_scaled, ln_bessel_i,
    ln_bessel_k, RealOrder,
};
pub use gamma::{gamma, ln_gamma, rgamma};
pub(crate) use bessel::LN_MAX;
pub(crate) use gamma::ln_gamma_pos;
pub use hypergeometric::{hyp1f2, hyp1f2_tail, hyp2f1_terminating, jacobi, jacobi_all, ln_hyp1f2_tail};

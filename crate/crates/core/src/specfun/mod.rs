//! Special functions needed by the catalog: error functions, the normal
//! CDF and its inverse, exponential and logarithmic integrals, and the
//! real branches of Lambert W.

mod erf;
mod expint;
mod inverse;
mod lambert;

pub use erf::{erf, erfc, phi};
pub use expint::{expint_ei, li};
pub use inverse::{erfcinv, erfinv, probit};
pub use lambert::{lambert_w, wright_omega, Branch};

pub(crate) const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

//! Special functions, derivative-free optimization and seeded randomness.

mod optimize;
mod rng;
mod special;

pub use optimize::{
    nelder_mead_minimize, NelderMeadSettings, OptimizationProblem, OptimizationResult, Transform,
};
pub use rng::RandomSource;
pub use special::{
    chi_square_sf, hurwitz_zeta, ln_beta, ln_std_normal_cdf, log_gamma,
    regularized_incomplete_beta, regularized_incomplete_gamma_lower,
    regularized_incomplete_gamma_upper, std_normal_cdf, student_t_two_tailed,
};

pub(crate) use special::{beta_inc, gamma_p, gamma_q, hurwitz_zeta_unchecked, lgamma};

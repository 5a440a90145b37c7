//! Special functions: Γ, Mittag-Leffler, one-sided stable densities and
//! fractional heat polynomials.

pub mod gamma;
pub mod heat_poly;
pub mod mittag_leffler;
pub mod stable;

pub use gamma::{gamma, ln_gamma, rgamma};
pub use heat_poly::fractional_heat_polynomial;
pub use mittag_leffler::{mittag_leffler, mittag_leffler_real, MLParams};
pub use stable::{
    inverse_stable_density, levy_smirnov, levy_stable_density, levy_stable_two_arg, StableParams,
};

//! Memory-kernel evolution equations solved by subordination.
//!
//! The crate evaluates the leading-process densities of generalized
//! Fokker-Planck (GFPE) and diffusion-wave (GDWE) equations by numerical
//! inverse Laplace transforms, composes them with the parent heat or wave
//! propagators, and checks moments and composition identities.

pub mod cli;
pub mod emit;
pub mod error;
pub mod laplace;
pub mod moments;
pub mod operators;
pub mod properties;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};

//! Inverse Laplace engine, memory-kernel registry and subordination densities.

pub mod density;
pub mod image;
pub mod invert;
pub mod kernel;

pub use density::{density_tail_bound, subordination_density, InversionConfig, SubordinationDensity, Variant};
pub use image::LaplaceImage;
pub use invert::{gaver_stehfest, invert_laplace, talbot, Inversion, Method, TalbotOptions};
pub use kernel::{make_memory_kernel, Equation, KernelKind, MemoryKernel};

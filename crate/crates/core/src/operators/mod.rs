//! Parent propagators, initial data and the subordination solvers.

pub mod ic;
pub mod parent;
pub mod series;
pub mod solve;

pub use ic::{normal_pdf, EndpointRule, InitialCondition, Profile, SampledProfile, Velocity};
pub use parent::{diffusion_parent, wave_parent_cos, wave_parent_sin, wave_parent_sin_with, TransportParams};
pub use series::{gaussian_series_coefficients, gaussian_series_horizon, solve_dwe_series, SeriesValue, Summation};
pub use solve::{
    default_grid, gdwe_point, gfpe_point, solve_gdwe, solve_gdwe_with, solve_gfpe, solve_gfpe_with, uniform_grid,
    FieldMeta, GdweSolver, GfpeSolver, SolutionField, SolverOptions,
};

//! Subordination quadrature for the GFPE and the GDWE.

use super::ic::{InitialCondition, Profile, Velocity};
use super::parent::{diffusion_parent, wave_parent_cos, wave_parent_sin, TransportParams};
use crate::error::{Error, Result};
use crate::laplace::{Equation, MemoryKernel, SubordinationDensity, Variant};
use crate::quad::{self, Adaptive};
use once_cell::sync::Lazy;
use rayon::prelude::*;

/// Environment variable capping the solver thread count.
pub const THREADS_ENV: &str = "MEMKERNEL_THREADS";

static POOL: Lazy<Option<rayon::ThreadPool>> = Lazy::new(|| {
    let n = std::env::var(THREADS_ENV).ok()?.trim().parse::<usize>().ok()?;
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
});

/// Run `f` inside the solver thread pool (honours `MEMKERNEL_THREADS`).
pub fn in_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match POOL.as_ref() {
        Some(p) => p.install(f),
        None => f(),
    }
}

/// Provenance attached to a solution.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FieldMeta {
    pub kernel: String,
    pub ic: String,
    pub transport: TransportParams,
    pub t: f64,
    pub equation: Equation,
}

/// Solution samples on a spatial grid.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SolutionField {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: FieldMeta,
}

impl SolutionField {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, meta: FieldMeta) -> Result<Self> {
        check_grid(&grid)?;
        if values.len() != grid.len() {
            return Err(Error::param("values and grid lengths differ"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::accuracy(format!("non-finite solution value at x={}", grid[i]), f64::NAN));
        }
        Ok(SolutionField { grid, values, meta })
    }

    /// Trapezoid integral of the samples.
    pub fn mass(&self) -> f64 {
        trapezoid(&self.grid, |i| self.values[i])
    }

    /// Smallest sample value and its abscissa.
    pub fn min(&self) -> (f64, f64) {
        self.grid
            .iter()
            .zip(&self.values)
            .fold((f64::NAN, f64::INFINITY), |acc, (&x, &v)| if v < acc.1 { (x, v) } else { acc })
    }

    /// Indices of strict interior local maxima.
    pub fn local_maxima(&self) -> Vec<usize> {
        let v = &self.values;
        (1..v.len().saturating_sub(1))
            .filter(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1])
            .collect()
    }
}

pub(crate) fn trapezoid(x: &[f64], y: impl Fn(usize) -> f64) -> f64 {
    (1..x.len()).map(|i| 0.5 * (y(i) + y(i - 1)) * (x[i] - x[i - 1])).sum()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::param("empty grid"));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::param("grid must be finite and strictly increasing"));
    }
    Ok(())
}

/// `n` uniform points on [lo, hi].
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(hi > lo) {
        return Err(Error::param(format!("bad grid spec [{lo}, {hi}] with {n} points")));
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

/// Default grid: 1001 points on [-10, 10].
pub fn default_grid() -> Vec<f64> {
    uniform_grid(-10.0, 10.0, 1001).unwrap()
}

/// Quadrature settings for the ξ-integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Absolute tolerance per grid point.
    pub abs_tol: f64,
    /// Mass left beyond the truncation point Ξ.
    pub tail_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            abs_tol: 1e-7,
            tail_tol: 1e-9,
        }
    }
}

/// ∫_0^Ξ g(ξ) dξ with ξ = u²; `breaks` are ξ-locations of kinks.
fn xi_integral(g: &(dyn Fn(f64) -> Result<f64> + Sync), big_xi: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    let mut pts = vec![0.0, big_xi.sqrt()];
    for &b in breaks {
        if b > 0.0 && b < big_xi {
            pts.push(b.sqrt());
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let h = |u: f64| -> Result<f64> { Ok(2.0 * u * g(u * u)?) };
    let opts = Adaptive {
        abs_tol: tol,
        ..Adaptive::default()
    };
    Ok(quad::try_integrate_breaks(&h, &pts, opts)?.value)
}

/// Prepared GFPE problem: one density shared by all grid points.
pub struct GfpeSolver {
    pub density: SubordinationDensity,
    pub ic: InitialCondition,
    pub tp: TransportParams,
    pub t: f64,
    pub opts: SolverOptions,
    big_xi: f64,
}

impl GfpeSolver {
    pub fn new(kernel: &MemoryKernel, ic: &InitialCondition, tp: &TransportParams, t: f64, opts: SolverOptions) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::param(format!("time t={t} must be positive")));
        }
        if kernel.equation != Equation::Gfpe {
            return Err(Error::param(format!("kernel '{}' is not a GFPE kernel", kernel.id)));
        }
        tp.check_gfpe()?;
        ic.validate()?;
        if !ic.velocity.is_zero() {
            return Err(Error::param("the GFPE takes no initial velocity"));
        }
        let density = SubordinationDensity::new(kernel.clone(), Variant::FsM)?;
        let big_xi = density.tail_bound(t, opts.tail_tol)?;
        Ok(GfpeSolver {
            density,
            ic: ic.clone(),
            tp: *tp,
            t,
            opts,
            big_xi,
        })
    }

    /// Truncation point of the ξ-integral.
    pub fn cutoff(&self) -> f64 {
        self.big_xi
    }

    /// q(x, t).
    pub fn at(&self, x: f64) -> Result<f64> {
        if self.density.is_atom() {
            return diffusion_parent(&self.ic, &self.tp, self.t, x);
        }
        let t = self.t;
        let g = |xi: f64| -> Result<f64> {
            if xi == 0.0 {
                return Ok(0.0);
            }
            let f = self.density.eval(xi, t)?;
            if f == 0.0 {
                return Ok(0.0);
            }
            Ok(f * diffusion_parent(&self.ic, &self.tp, xi, x)?)
        };
        let mut breaks = Vec::new();
        if self.tp.mu > 0.0 {
            for k in self.ic.profile.kinks() {
                breaks.push((x - k) / self.tp.mu);
            }
            if matches!(self.ic.profile, Profile::Gaussian { .. }) {
                breaks.push(x / self.tp.mu);
            }
        }
        xi_integral(&g, self.big_xi, &breaks, self.opts.abs_tol)
    }
}

/// Prepared GDWE problem.
pub struct GdweSolver {
    pub half: SubordinationDensity,
    pub mixed: SubordinationDensity,
    pub ic: InitialCondition,
    pub a: f64,
    pub t: f64,
    pub opts: SolverOptions,
    xi_half: f64,
    xi_mixed: f64,
}

impl GdweSolver {
    pub fn new(kernel: &MemoryKernel, ic: &InitialCondition, tp: &TransportParams, t: f64, opts: SolverOptions) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::param(format!("time t={t} must be positive")));
        }
        if kernel.equation != Equation::Gdwe {
            return Err(Error::param(format!("kernel '{}' is not a GDWE kernel", kernel.id)));
        }
        tp.check_gdwe()?;
        ic.validate()?;
        let half = SubordinationDensity::new(kernel.clone(), Variant::FHalf)?;
        let mixed = SubordinationDensity::new(kernel.clone(), Variant::FMixed)?;
        let xi_half = half.tail_bound(t, opts.tail_tol)?;
        let xi_mixed = if ic.velocity.is_zero() {
            0.0
        } else {
            mixed.tail_bound(t, opts.tail_tol)?
        };
        Ok(GdweSolver {
            half,
            mixed,
            ic: ic.clone(),
            a: tp.a,
            t,
            opts,
            xi_half,
            xi_mixed,
        })
    }

    /// p(x, t).
    pub fn at(&self, x: f64) -> Result<f64> {
        let (a, t) = (self.a, self.t);
        let p0 = &self.ic.profile;
        if self.half.is_atom() {
            if matches!(p0, Profile::Delta) {
                return Err(Error::Distributional("d'Alembert solution of a δ profile is a pair of spikes".into()));
            }
            return Ok(wave_parent_cos(p0, a, t, x)? + wave_parent_sin(&self.ic, a, t, x)?);
        }
        let first = if matches!(p0, Profile::Delta) {
            self.half.eval(x.abs() / a, t)? / (2.0 * a)
        } else {
            let g = |xi: f64| -> Result<f64> {
                let f = self.half.eval(xi, t)?;
                if f == 0.0 {
                    return Ok(0.0);
                }
                Ok(f * wave_parent_cos(p0, a, xi, x)?)
            };
            let breaks: Vec<f64> = p0.kinks().iter().map(|k| (x - k).abs() / a).collect();
            xi_integral(&g, self.xi_half, &breaks, self.opts.abs_tol)?
        };
        let second = match (&self.ic.velocity, p0) {
            (Velocity::Zero, _) => 0.0,
            (Velocity::NegDerivative, Profile::Delta) => {
                // (2a)⁻¹[δ(x - aξ) - δ(x + aξ)] integrated against F_mixed
                if x == 0.0 {
                    0.0
                } else {
                    x.signum() * self.mixed.eval(x.abs() / a, t)? / (2.0 * a * a)
                }
            }
            _ => {
                let g = |xi: f64| -> Result<f64> {
                    let f = self.mixed.eval(xi, t)?;
                    if f == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(f * wave_parent_sin(&self.ic, a, xi, x)?)
                };
                let breaks: Vec<f64> = self.ic.velocity.kinks(p0).iter().map(|k| (x - k).abs() / a).collect();
                xi_integral(&g, self.xi_mixed, &breaks, self.opts.abs_tol)?
            }
        };
        Ok(first + second)
    }
}

fn sample(grid: &[f64], f: impl Fn(f64) -> Result<f64> + Sync) -> Result<Vec<f64>> {
    in_pool(|| grid.par_iter().map(|&x| f(x)).collect())
}

/// q(x, t) = ∫_0^Ξ f_{sM̂}(ξ, t) N(x - μξ, ξ) dξ on `grid`.
pub fn solve_gfpe(kernel: &MemoryKernel, ic: &InitialCondition, tp: &TransportParams, grid: &[f64], t: f64) -> Result<SolutionField> {
    solve_gfpe_with(kernel, ic, tp, grid, t, SolverOptions::default())
}

pub fn solve_gfpe_with(
    kernel: &MemoryKernel,
    ic: &InitialCondition,
    tp: &TransportParams,
    grid: &[f64],
    t: f64,
    opts: SolverOptions,
) -> Result<SolutionField> {
    check_grid(grid)?;
    let s = GfpeSolver::new(kernel, ic, tp, t, opts)?;
    let values = sample(grid, |x| s.at(x))?;
    SolutionField::new(
        grid.to_vec(),
        values,
        FieldMeta {
            kernel: kernel.id.clone(),
            ic: ic.to_string(),
            transport: *tp,
            t,
            equation: Equation::Gfpe,
        },
    )
}

/// p(x, t) = ∫ F_half(ξ,t) cos(aξ∂ₓ)p₀ dξ + ∫ F_mixed(ξ,t) sin(aξ∂ₓ)v₀ dξ on `grid`.
pub fn solve_gdwe(kernel: &MemoryKernel, ic: &InitialCondition, tp: &TransportParams, grid: &[f64], t: f64) -> Result<SolutionField> {
    solve_gdwe_with(kernel, ic, tp, grid, t, SolverOptions::default())
}

pub fn solve_gdwe_with(
    kernel: &MemoryKernel,
    ic: &InitialCondition,
    tp: &TransportParams,
    grid: &[f64],
    t: f64,
    opts: SolverOptions,
) -> Result<SolutionField> {
    check_grid(grid)?;
    let s = GdweSolver::new(kernel, ic, tp, t, opts)?;
    let values = sample(grid, |x| s.at(x))?;
    SolutionField::new(
        grid.to_vec(),
        values,
        FieldMeta {
            kernel: kernel.id.clone(),
            ic: ic.to_string(),
            transport: *tp,
            t,
            equation: Equation::Gdwe,
        },
    )
}

/// Single-point GFPE value.
pub fn gfpe_point(kernel: &MemoryKernel, ic: &InitialCondition, tp: &TransportParams, x: f64, t: f64) -> Result<f64> {
    GfpeSolver::new(kernel, ic, tp, t, SolverOptions::default())?.at(x)
}

/// Single-point GDWE value.
pub fn gdwe_point(kernel: &MemoryKernel, ic: &InitialCondition, tp: &TransportParams, x: f64, t: f64) -> Result<f64> {
    GdweSolver::new(kernel, ic, tp, t, SolverOptions::default())?.at(x)
}

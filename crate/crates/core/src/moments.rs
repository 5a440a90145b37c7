//! Mean, second moment and MSD: closed forms, inverse-Laplace evaluation,
//! long-time asymptotics and moments of sampled solutions.

use crate::error::{Error, Result};
use crate::laplace::{talbot, Equation, KernelKind, LaplaceImage, MemoryKernel, TalbotOptions};
use crate::operators::{Profile, SolutionField, Velocity};
use crate::specfun::gamma;
use num_complex::Complex64;
use std::path::Path;

/// Fourier data of the initial profile at κ = 0.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ICMomentSpec {
    /// q̃₀(0), the total mass (1 for densities).
    pub q0_at_0: f64,
    /// q̃₀′(0) (0 for real moments).
    pub d1: f64,
    /// C = -q̃₀″(0) ≥ 0.
    #[serde(rename = "C")]
    pub c: f64,
}

impl ICMomentSpec {
    pub fn new(q0_at_0: f64, d1: f64, c: f64) -> Result<Self> {
        let s = ICMomentSpec { q0_at_0, d1, c };
        s.validate()?;
        Ok(s)
    }

    pub fn delta() -> Self {
        ICMomentSpec { q0_at_0: 1.0, d1: 0.0, c: 0.0 }
    }

    pub fn boxed(eps: f64) -> Self {
        ICMomentSpec { q0_at_0: 1.0, d1: 0.0, c: eps * eps / 3.0 }
    }

    pub fn gaussian(sigma: f64) -> Self {
        ICMomentSpec { q0_at_0: 1.0, d1: 0.0, c: sigma * sigma }
    }

    /// Spec of a profile (moments of the sampled interpolant for custom data).
    pub fn from_profile(p: &Profile) -> Result<Self> {
        match p {
            Profile::Delta => Ok(Self::delta()),
            Profile::Box { eps } => Ok(Self::boxed(*eps)),
            Profile::Gaussian { sigma } => Ok(Self::gaussian(*sigma)),
            Profile::Custom(_) => {
                let m0 = p.moment(0);
                let m1 = p.moment(1);
                if m1.abs() > 1e-12 * m0.abs().max(1.0) {
                    return Err(Error::param(format!(
                        "custom profile has non-zero mean {m1:.3e}; moments assume q̃₀′(0) = 0"
                    )));
                }
                Ok(ICMomentSpec { q0_at_0: m0, d1: 0.0, c: p.moment(2) })
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if (self.q0_at_0 - 1.0).abs() > 1e-9 {
            return Err(Error::param(format!("q̃₀(0) = {} must be 1 for a density", self.q0_at_0)));
        }
        if self.d1 != 0.0 {
            return Err(Error::param(format!("q̃₀′(0) = {} must vanish for real moments", self.d1)));
        }
        if !(self.c >= 0.0) || !self.c.is_finite() {
            return Err(Error::param(format!("C = {} must be non-negative", self.c)));
        }
        Ok(())
    }
}

/// Raw moments of the initial velocity: ∫v₀, ∫x v₀ (= i ṽ₀′(0)), ∫x² v₀ (= -ṽ₀″(0)).
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct VelocityMomentSpec {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

impl VelocityMomentSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_velocity(v: &Velocity, p0: &Profile) -> Self {
        VelocityMomentSpec {
            m0: v.moment(p0, 0),
            m1: v.moment(p0, 1),
            m2: v.moment(p0, 2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m0 == 0.0 && self.m1 == 0.0 && self.m2 == 0.0
    }
}

/// How a moment was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    ClosedForm,
    NumericIlt,
    Tauberian,
    Empirical,
}

/// Mean, second moment and MSD at one time.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MomentReport {
    pub mean: f64,
    pub second_moment: f64,
    pub msd: f64,
    pub method: MomentMethod,
}

/// Evaluation path selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentPath {
    /// Closed form for power laws, inverse Laplace otherwise.
    #[default]
    Auto,
    /// Always invert the Laplace images.
    NumericIlt,
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::param(format!("time t={t} must be positive")));
    }
    Ok(())
}

/// L⁻¹[s^{-n} K(s)^{-p}; t] for the kernel image K (M̂ or k̂).
pub fn inverse_power_image(kernel: &MemoryKernel, n: i32, p: i32, t: f64) -> Result<f64> {
    check_t(t)?;
    let k = kernel.clone();
    let img = LaplaceImage::from_log(move |s: Complex64| -(n as f64) * s.ln() - (p as f64) * k.eval(s).ln());
    talbot(&img, t, &TalbotOptions::default())
}

fn power_closed(kernel: &MemoryKernel, path: MomentPath) -> Option<f64> {
    match path {
        MomentPath::Auto => kernel.exponent(),
        MomentPath::NumericIlt => None,
    }
}

/// ⟨x(t)⟩ = μ L⁻¹[s⁻² M̂⁻¹; t] for the GFPE.
pub fn mean_gfpe(kernel: &MemoryKernel, spec: &ICMomentSpec, mu: f64, t: f64) -> Result<f64> {
    mean_gfpe_by(kernel, spec, mu, t, MomentPath::Auto)
}

pub fn mean_gfpe_by(kernel: &MemoryKernel, spec: &ICMomentSpec, mu: f64, t: f64, path: MomentPath) -> Result<f64> {
    check_t(t)?;
    spec.validate()?;
    gfpe_kernel(kernel)?;
    if mu == 0.0 {
        return Ok(0.0);
    }
    Ok(match power_closed(kernel, path) {
        Some(a) => mu * t.powf(a) / gamma(1.0 + a),
        None => mu * spec.q0_at_0 * inverse_power_image(kernel, 2, 1, t)?,
    })
}

fn gfpe_kernel(k: &MemoryKernel) -> Result<()> {
    if k.equation != Equation::Gfpe {
        return Err(Error::param(format!("kernel '{}' is not a GFPE kernel", k.id)));
    }
    Ok(())
}

fn gdwe_kernel(k: &MemoryKernel) -> Result<()> {
    if k.equation != Equation::Gdwe {
        return Err(Error::param(format!("kernel '{}' is not a GDWE kernel", k.id)));
    }
    Ok(())
}

fn finish(mean: f64, second: f64, msd: f64, method: MomentMethod, density: bool) -> Result<MomentReport> {
    if msd < -1e-8 {
        if density {
            return Err(Error::Integrity(format!("negative MSD {msd:.6e}")));
        }
        log::warn!("signed solution: raw second central moment {msd:.6e} is negative");
    }
    Ok(MomentReport {
        mean,
        second_moment: second,
        msd,
        method,
    })
}

/// MSD of the GFPE solution.
pub fn msd_gfpe(kernel: &MemoryKernel, spec: &ICMomentSpec, b: f64, mu: f64, t: f64) -> Result<MomentReport> {
    msd_gfpe_by(kernel, spec, b, mu, t, MomentPath::Auto)
}

pub fn msd_gfpe_by(
    kernel: &MemoryKernel,
    spec: &ICMomentSpec,
    b: f64,
    mu: f64,
    t: f64,
    path: MomentPath,
) -> Result<MomentReport> {
    check_t(t)?;
    spec.validate()?;
    gfpe_kernel(kernel)?;
    if let Some(a) = power_closed(kernel, path) {
        let ta = t.powf(a);
        let g1 = gamma(1.0 + a);
        let g2 = gamma(1.0 + 2.0 * a);
        let mean = mu * ta / g1;
        let second = 2.0 * mu * mu * ta * ta / g2 + 2.0 * b * ta / g1 + spec.c;
        let msd = mu * mu * ta * ta * (2.0 / g2 - 1.0 / (g1 * g1)) + 2.0 * b * ta / g1 + spec.c;
        return finish(mean, second, msd, MomentMethod::ClosedForm, true);
    }
    let l1 = inverse_power_image(kernel, 2, 1, t)?;
    let l2 = if mu != 0.0 { inverse_power_image(kernel, 3, 2, t)? } else { 0.0 };
    let q = spec.q0_at_0;
    let mean = mu * q * l1;
    let second = 2.0 * b * q * l1 + spec.c + 2.0 * mu * mu * q * l2;
    finish(mean, second, second - mean * mean, MomentMethod::NumericIlt, true)
}

/// MSD of the GDWE solution, including the v₀ terms.
pub fn msd_gdwe(kernel: &MemoryKernel, spec: &ICMomentSpec, v: &VelocityMomentSpec, a: f64, t: f64) -> Result<MomentReport> {
    msd_gdwe_by(kernel, spec, v, a, t, MomentPath::Auto)
}

pub fn msd_gdwe_by(
    kernel: &MemoryKernel,
    spec: &ICMomentSpec,
    v: &VelocityMomentSpec,
    a: f64,
    t: f64,
    path: MomentPath,
) -> Result<MomentReport> {
    check_t(t)?;
    spec.validate()?;
    gdwe_kernel(kernel)?;
    if !(a > 0.0) {
        return Err(Error::param(format!("wave speed a={a} must be positive")));
    }
    let a2 = a * a;
    let (l3, l4, method) = match power_closed(kernel, path) {
        Some(beta) => {
            let tb = t.powf(2.0 * beta);
            (tb / gamma(1.0 + 2.0 * beta), t * tb / gamma(2.0 + 2.0 * beta), MomentMethod::ClosedForm)
        }
        None => {
            let l3 = inverse_power_image(kernel, 3, 1, t)?;
            let l4 = if v.m0 != 0.0 { inverse_power_image(kernel, 4, 1, t)? } else { 0.0 };
            (l3, l4, MomentMethod::NumericIlt)
        }
    };
    let mean = t * v.m1;
    let second = 2.0 * a2 * spec.q0_at_0 * l3 + spec.c + 2.0 * a2 * v.m0 * l4 + t * v.m2;
    finish(mean, second, second - mean * mean, method, v.is_zero())
}

/// Parameters for the long-time forms.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AsymptoticParams {
    pub b: f64,
    pub mu: f64,
    pub a: f64,
    pub c: f64,
}

/// Smallest t accepted by [`msd_asymptotic`].
pub const ASYMPTOTIC_MIN_T: f64 = 100.0;

/// Leading long-time MSD from the Tauberian theorem.
pub fn msd_asymptotic(kernel: &MemoryKernel, equation: Equation, p: &AsymptoticParams, t: f64) -> Result<f64> {
    if !(t >= ASYMPTOTIC_MIN_T) {
        return Err(Error::param(format!(
            "asymptotic forms need t ≥ {ASYMPTOTIC_MIN_T}, got t={t}"
        )));
    }
    if kernel.equation != equation {
        return Err(Error::param(format!("kernel '{}' is not a {equation} kernel", kernel.id)));
    }
    let lt = t.ln();
    match (&kernel.kind, equation) {
        (KernelKind::PowerLaw(al), Equation::Gfpe) => {
            let ta = t.powf(*al);
            let g1 = gamma(1.0 + al);
            let drift = p.mu * p.mu * ta * ta * (2.0 / gamma(1.0 + 2.0 * al) - 1.0 / (g1 * g1));
            Ok(drift + 2.0 * p.b * ta / g1 + p.c)
        }
        (KernelKind::DistributedOrder, Equation::Gfpe) => Ok(p.mu * p.mu * lt * lt + 2.0 * p.b * lt + p.c),
        (KernelKind::PowerLaw(be), Equation::Gdwe) => {
            Ok(2.0 * p.a * p.a * t.powf(2.0 * be) / gamma(1.0 + 2.0 * be) + p.c)
        }
        (KernelKind::DistributedOrder, Equation::Gdwe) => Ok(2.0 * p.a * p.a * t * lt + p.c),
        (KernelKind::DistributedOrderSquared, Equation::Gdwe) => Ok(2.0 * p.a * p.a * lt * lt + p.c),
        _ => Err(Error::Unsupported(format!(
            "no registered long-time form for kernel '{}'",
            kernel.id
        ))),
    }
}

/// Trapezoid moment with the boundary diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalMoment {
    pub value: f64,
    /// Largest |value| at the two grid ends.
    pub boundary: f64,
}

/// Threshold on boundary values beyond which moments are flagged as truncated.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// ∫ x^m q(x) dx over sampled data, m ∈ {0, 1, 2}.
pub fn empirical_moments_xy(x: &[f64], y: &[f64], m: i32) -> Result<EmpiricalMoment> {
    if !(0..=2).contains(&m) {
        return Err(Error::param(format!("moment order {m} not in 0..=2")));
    }
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::param("need at least two samples of equal length"));
    }
    let value = crate::operators::solve::trapezoid(x, |i| x[i].powi(m) * y[i]);
    let boundary = y[0].abs().max(y[y.len() - 1].abs());
    if boundary > BOUNDARY_TOL {
        log::warn!("boundary value {boundary:.3e} exceeds {BOUNDARY_TOL:e}: moment may be truncated");
    }
    Ok(EmpiricalMoment { value, boundary })
}

/// ∫ x^m field dx.
pub fn empirical_moments(field: &SolutionField, m: i32) -> Result<f64> {
    Ok(empirical_moments_xy(&field.grid, &field.values, m)?.value)
}

/// Moment report from a sampled field (mass-normalised central moment).
pub fn empirical_report(field: &SolutionField) -> Result<MomentReport> {
    let m1 = empirical_moments(field, 1)?;
    let m2 = empirical_moments(field, 2)?;
    Ok(MomentReport {
        mean: m1,
        second_moment: m2,
        msd: m2 - m1 * m1,
        method: MomentMethod::Empirical,
    })
}

/// Load `x,value` samples written by [`crate::emit::write_csv`].
pub fn load_csv(path: impl AsRef<Path>) -> Result<(Vec<f64>, Vec<f64>)> {
    crate::emit::read_xy_csv(path)
}

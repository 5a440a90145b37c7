//! Numerical checks of structural identities: composition laws, kernel
//! self-reproduction, fractional PDE residuals, complete monotonicity and
//! normalisation of subordination densities.

use crate::error::{Error, Result};
use crate::laplace::{talbot, Equation, LaplaceImage, MemoryKernel, SubordinationDensity, TalbotOptions, Variant};
use crate::operators::{GdweSolver, GfpeSolver, InitialCondition, SolverOptions, TransportParams};
use crate::quad::{self, Adaptive};
use crate::specfun::{gamma, mittag_leffler_real, MLParams};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub sample_points: Vec<Vec<f64>>,
    pub max_abs_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, sample_points: Vec<Vec<f64>>, residual: f64, tolerance: f64) -> Self {
        VerificationReport {
            identity: identity.into(),
            sample_points,
            max_abs_residual: residual,
            tolerance,
            pass: residual <= tolerance,
            detail: None,
        }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// Settings for [`caputo_derivative_with`].
#[derive(Debug, Clone, Default)]
pub struct CaputoOptions {
    /// f(0), f′(0), … up to order ⌈ν⌉-1; estimated by one-sided differences when absent.
    pub initial: Option<Vec<f64>>,
    /// Difference step relative to t (default 1e-2).
    pub rel_step: Option<f64>,
    /// Panels of the composite 20-point Gauss-Legendre rule (default 6).
    pub panels: Option<usize>,
}

type Func<'a> = &'a (dyn Fn(f64) -> Result<f64> + Sync);

/// Caputo derivative ᶜDᵛ f(t) for ν ∈ (0, 2).
pub fn caputo_derivative(f: Func<'_>, nu: f64, t: f64) -> Result<f64> {
    caputo_derivative_with(f, nu, t, &CaputoOptions::default())
}

/// Caputo derivative computed as the Riemann-Liouville derivative of
/// f - Σ f⁽ᵏ⁾(0)τᵏ/k!: the fractional integral is a quadrature with the
/// kernel singularity removed by w = (t-τ)^{n-ν}, the outer integer
/// derivative a Richardson-extrapolated central difference.
pub fn caputo_derivative_with(f: Func<'_>, nu: f64, t: f64, opts: &CaputoOptions) -> Result<f64> {
    if !(nu > 0.0 && nu < 2.0) {
        return Err(Error::param(format!("Caputo order ν={nu} outside (0,2)")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::param(format!("Caputo derivative needs t > 0, got {t}")));
    }
    let h = opts.rel_step.unwrap_or(1e-2) * t;
    let n = nu.ceil() as usize;
    if nu == 1.0 {
        let d1 = (f(t + h)? - f(t - h)?) / (2.0 * h);
        let d2 = (f(t + h / 2.0)? - f(t - h / 2.0)?) / h;
        return richardson(d1, d2, t);
    }
    let init = match &opts.initial {
        Some(v) if v.len() >= n => v[..n].to_vec(),
        Some(_) => return Err(Error::param(format!("need {n} initial values for ν={nu}"))),
        None => {
            let f0 = f(0.0)?;
            let mut v = vec![f0];
            if n == 2 {
                let d = |k: f64| -> Result<f64> { Ok((-3.0 * f0 + 4.0 * f(k)? - f(2.0 * k)?) / (2.0 * k)) };
                let (a, b) = (d(h)?, d(h / 2.0)?);
                v.push((4.0 * b - a) / 3.0);
            }
            v
        }
    };
    let r = n as f64 - nu;
    let panels = opts.panels.unwrap_or(6).max(1);
    let g = |tau: f64| -> Result<f64> {
        let mut taylor = init[0];
        if n == 2 {
            taylor += init[1] * tau;
        }
        Ok(f(tau)? - taylor)
    };
    // J(T) = Γ(1+r)⁻¹ ∫_0^{T^r} g(T - w^{1/r}) dw
    let frac = |big_t: f64| -> Result<f64> {
        let h = |w: f64| g(big_t - w.powf(1.0 / r));
        Ok(quad::try_composite(quad::gl20(), &h, 0.0, big_t.powf(r), panels)? / gamma(1.0 + r))
    };
    let j0 = frac(t)?;
    let (jp, jm) = (frac(t + h)?, frac(t - h)?);
    let (jp2, jm2) = (frac(t + h / 2.0)?, frac(t - h / 2.0)?);
    let (d1, d2) = if n == 1 {
        ((jp - jm) / (2.0 * h), (jp2 - jm2) / h)
    } else {
        ((jp - 2.0 * j0 + jm) / (h * h), 4.0 * (jp2 - 2.0 * j0 + jm2) / (h * h))
    };
    richardson(d1, d2, t)
}

fn richardson(coarse: f64, fine: f64, t: f64) -> Result<f64> {
    let v = (4.0 * fine - coarse) / 3.0;
    if !v.is_finite() {
        return Err(Error::accuracy(format!("non-finite divided differences at t={t}"), f64::NAN));
    }
    let gap = (coarse - fine).abs();
    if gap > 1e-8 && gap > 0.05 * v.abs() {
        return Err(Error::accuracy(
            format!("divided differences disagree at t={t} ({coarse:.6e} vs {fine:.6e}); input not smooth"),
            gap,
        ));
    }
    Ok(v)
}

/// Tolerance of the PDE residual check.
pub const PDE_TOL: f64 = 1e-2;

fn tight() -> SolverOptions {
    SolverOptions {
        abs_tol: 1e-9,
        tail_tol: 1e-10,
    }
}

/// Second x-derivative and first x-derivative by Richardson-extrapolated
/// central differences.
fn space_derivatives(q: &dyn Fn(f64) -> Result<f64>, x: f64, hx: f64) -> Result<(f64, f64)> {
    let (p1, m1, p2, m2, c) = (q(x + hx)?, q(x - hx)?, q(x + hx / 2.0)?, q(x - hx / 2.0)?, q(x)?);
    let d2a = (p1 - 2.0 * c + m1) / (hx * hx);
    let d2b = 4.0 * (p2 - 2.0 * c + m2) / (hx * hx);
    let d1a = (p1 - m1) / (2.0 * hx);
    let d1b = (p2 - m2) / hx;
    Ok(((4.0 * d2b - d2a) / 3.0, (4.0 * d1b - d1a) / 3.0))
}

/// Residual of ᶜD^ν u = L u at (x, t) for power-law kernels, with
/// ν = α (GFPE, L = B∂²ₓ - μ∂ₓ) or ν = 2β (GDWE, L = a²∂²ₓ, v₀ = 0).
pub fn check_pde_residual(
    equation: Equation,
    kernel: &MemoryKernel,
    ic: &InitialCondition,
    tp: &TransportParams,
    x: f64,
    t: f64,
) -> Result<VerificationReport> {
    let e = kernel
        .exponent()
        .ok_or_else(|| Error::Unsupported(format!("kernel '{}' has no Caputo form", kernel.id)))?;
    if kernel.equation != equation {
        return Err(Error::param(format!("kernel '{}' is not a {equation} kernel", kernel.id)));
    }
    let opts = tight();
    let p0 = |x: f64| -> Result<f64> {
        match ic.profile {
            crate::operators::Profile::Delta if x != 0.0 => Ok(0.0),
            _ => ic.profile.eval(x),
        }
    };
    let (nu, lhs, rhs) = match equation {
        Equation::Gfpe => {
            let u = |tau: f64| -> Result<f64> { GfpeSolver::new(kernel, ic, tp, tau, opts)?.at(x) };
            let c = CaputoOptions {
                initial: Some(vec![p0(x)?]),
                ..Default::default()
            };
            let lhs = caputo_derivative_with(&u, e, t, &c)?;
            let s = GfpeSolver::new(kernel, ic, tp, t, opts)?;
            let (d2, d1) = space_derivatives(&|y| s.at(y), x, 0.02)?;
            (e, lhs, tp.b * d2 - tp.mu * d1)
        }
        Equation::Gdwe => {
            if !ic.velocity.is_zero() {
                return Err(Error::Unsupported("residual check covers v₀ = 0 only".into()));
            }
            let u = |tau: f64| -> Result<f64> { GdweSolver::new(kernel, ic, tp, tau, opts)?.at(x) };
            let c = CaputoOptions {
                initial: Some(vec![p0(x)?, 0.0]),
                ..Default::default()
            };
            let nu = 2.0 * e;
            let lhs = if nu == 2.0 {
                let h = 1e-2 * t;
                let d = |h: f64| -> Result<f64> { Ok((u(t + h)? - 2.0 * u(t)? + u(t - h)?) / (h * h)) };
                richardson(d(h)?, d(h / 2.0)?, t)?
            } else {
                caputo_derivative_with(&u, nu, t, &c)?
            };
            let s = GdweSolver::new(kernel, ic, tp, t, opts)?;
            let (d2, _) = space_derivatives(&|y| s.at(y), x, 0.02)?;
            (nu, lhs, tp.a * tp.a * d2)
        }
    };
    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
    let res = (lhs - rhs).abs() / scale;
    Ok(VerificationReport::new(format!("pde_residual:{equation}:{}", kernel.id), vec![vec![x, t]], res, PDE_TOL)
        .with_detail(format!("order {nu}: lhs {lhs:.9e}, rhs {rhs:.9e}")))
}

/// Default tolerance of the self-reproduction check.
pub const EFROS_TOL: f64 = 1e-4;

/// ∫_0^∞ f_{sĝ₂}(y, ξ) f_{sĝ₁}(ξ, t) dξ against the inverse of
/// ĝ₁(s) ĝ₂(σ) e^{-y σ ĝ₂(σ)}, σ = s ĝ₁(s).
pub fn check_efros_selfreproduction(k1: &MemoryKernel, k2: &MemoryKernel, y: f64, t: f64) -> Result<VerificationReport> {
    check_efros_with(k1, k2, y, t, EFROS_TOL)
}

pub fn check_efros_with(k1: &MemoryKernel, k2: &MemoryKernel, y: f64, t: f64, tol: f64) -> Result<VerificationReport> {
    if !(y > 0.0) || !(t > 0.0) {
        return Err(Error::param(format!("need y > 0 and t > 0, got y={y}, t={t}")));
    }
    let d1 = SubordinationDensity::new(k1.clone(), Variant::FsM)?;
    let d2 = SubordinationDensity::new(k2.clone(), Variant::FsM)?;
    let lhs = if d1.is_atom() {
        if d2.is_atom() {
            return Err(Error::param("both kernels are atoms; the composite is δ(y - t)"));
        }
        d2.eval(y, t)?
    } else if d2.is_atom() {
        d1.eval(y, t)?
    } else {
        let big = d1.tail_bound(t, 1e-12)?;
        let g = |xi: f64| -> Result<f64> {
            if xi == 0.0 {
                return Ok(0.0);
            }
            let a = d2.eval(y, xi)?;
            if a == 0.0 {
                return Ok(0.0);
            }
            Ok(a * d1.eval(xi, t)?)
        };
        // the ξ-profile peaks near y and t^α; split there
        let mut pts = vec![0.0, y.min(big), big];
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        quad::try_integrate_breaks(&g, &pts, Adaptive::abs(1e-11))?.value
    };
    let (g1, g2) = (k1.clone(), k2.clone());
    let img = LaplaceImage::from_log(move |s: Complex64| {
        let l1 = g1.eval(s).ln();
        let sigma = s * l1.exp();
        let l2 = g2.eval(sigma).ln();
        l1 + l2 - y * sigma * l2.exp()
    })
    .with_note(format!("composite of '{}' and '{}'", k1.id, k2.id));
    let rhs = talbot(&img, t, &TalbotOptions::default()).map_err(|e| match e {
        Error::Range(m) | Error::Accuracy { msg: m, .. } => Error::Config(format!("composite image not invertible: {m}")),
        other => other,
    })?;
    let res = (lhs - rhs).abs();
    Ok(VerificationReport::new(format!("efros:{}∘{}", k2.id, k1.id), vec![vec![y, t]], res, tol)
        .with_detail(format!("quadrature {lhs:.12e}, composite inversion {rhs:.12e}")))
}

/// Default tolerance of the Mittag-Leffler composition check.
pub fn ml_composition_tol(alpha: f64) -> f64 {
    if alpha == 1.0 {
        1e-4
    } else {
        1e-3
    }
}

/// d/dT₂ ∫_0^1 du ∫_{T₀}^{T₂} dT₁ E_α[-u(T₂-T₁)^α] E_α[-u(T₁-T₀)^α] = E_α[-(T₂-T₀)^α].
pub fn check_ml_composition(alpha: f64, t0: f64, t2: f64) -> Result<VerificationReport> {
    if !(t0 >= 0.0 && t2 > t0) {
        return Err(Error::param(format!("need 0 ≤ T₀ < T₂, got T₀={t0}, T₂={t2}")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param(format!("α={alpha} outside (0,1]")));
    }
    let p = MLParams::one(alpha)?;
    let e = |x: f64| mittag_leffler_real(&p, x);
    // T₁ = T₀ + D v², symmetric in v ↔ 1 - v after the change of variable on [0, 1/2]
    let double = |d: f64| -> Result<f64> {
        let outer = |u: f64| -> Result<f64> {
            let inner = |v: f64| -> Result<f64> {
                let w = v * v;
                let a = e(-u * (d * (1.0 - w)).powf(alpha))?;
                let b = e(-u * (d * w).powf(alpha))?;
                Ok(2.0 * v * a * b)
            };
            let half = std::f64::consts::FRAC_1_SQRT_2;
            Ok(2.0 * d * quad::try_integrate(&inner, 0.0, half, Adaptive::abs(1e-13))?.value)
        };
        Ok(quad::try_integrate(&outer, 0.0, 1.0, Adaptive::abs(1e-12))?.value)
    };
    let d = t2 - t0;
    let h = 1e-3 * d;
    let lhs = (double(d + h)? - double(d - h)?) / (2.0 * h);
    let rhs = e(-d.powf(alpha))?;
    let res = (lhs - rhs).abs();
    Ok(VerificationReport::new(format!("ml_composition:{alpha}"), vec![vec![alpha, t0, t2]], res, ml_composition_tol(alpha))
        .with_detail(format!("derivative {lhs:.12e}, E_α {rhs:.12e}")))
}

/// Form of the wave composition integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WaveForm {
    /// cos[a√u(·)κ]: the α = 2 instance of the Mittag-Leffler composition.
    #[default]
    SqrtU,
    /// cos[au(·)κ] with u entering linearly.
    Literal,
}

/// Tolerance of the wave composition check.
pub const WAVE_TOL: f64 = 1e-4;

/// ½ d/dD ∫_0^1 du ∫_{t₀}^{t₂} dt₁ {cos[c D] + cos[c (t₂+t₀-2t₁)]} = cos(a D κ), D = t₂ - t₀.
pub fn check_wave_composition(a: f64, kappa: f64, t0: f64, t2: f64) -> Result<VerificationReport> {
    check_wave_composition_form(a, kappa, t0, t2, WaveForm::SqrtU)
}

pub fn check_wave_composition_form(a: f64, kappa: f64, t0: f64, t2: f64, form: WaveForm) -> Result<VerificationReport> {
    if !(t2 > t0) || !kappa.is_finite() || !a.is_finite() {
        return Err(Error::param(format!("need t₀ < t₂ and finite a, κ (t₀={t0}, t₂={t2})")));
    }
    let double = |d: f64| -> Result<f64> {
        let outer = |u: f64| -> Result<f64> {
            let c = a * kappa * if form == WaveForm::SqrtU { u.sqrt() } else { u };
            let inner = |t1: f64| -> Result<f64> { Ok((c * d).cos() + (c * (d - 2.0 * (t1 - t0))).cos()) };
            Ok(quad::try_integrate(&inner, t0, t0 + d, Adaptive::abs(1e-13))?.value)
        };
        Ok(quad::try_integrate(&outer, 0.0, 1.0, Adaptive::abs(1e-12))?.value)
    };
    let d = t2 - t0;
    let h = 1e-3 * d;
    let lhs = 0.5 * (double(d + h)? - double(d - h)?) / (2.0 * h);
    let rhs = (a * d * kappa).cos();
    let res = (lhs - rhs).abs();
    let name = match form {
        WaveForm::SqrtU => "wave_composition",
        WaveForm::Literal => "wave_composition_literal",
    };
    Ok(VerificationReport::new(name, vec![vec![a, kappa, t0, t2]], res, WAVE_TOL)
        .with_detail(format!("derivative {lhs:.12e}, cos {rhs:.12e}")))
}

/// Highest derivative order accepted by [`check_complete_monotonicity`].
pub const CMF_MAX_ORDER: usize = 6;
/// Relative tolerance on sign violations.
pub const CMF_TOL: f64 = 1e-9;

/// Sign alternation (-1)ⁿ f⁽ⁿ⁾(s) ≥ 0 for n ≤ n_max at each grid point.
/// Derivatives come from the Cauchy integral on the circle |z - s| = s/2
/// (64 nodes); violations are measured relative to the Cauchy bound.
pub fn check_complete_monotonicity(image: &LaplaceImage, s_grid: &[f64], n_max: usize) -> Result<VerificationReport> {
    if n_max > CMF_MAX_ORDER {
        return Err(Error::param(format!("derivative order {n_max} above {CMF_MAX_ORDER}")));
    }
    if s_grid.is_empty() || s_grid.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::param("grid points must be positive"));
    }
    const NODES: usize = 64;
    let mut worst = 0.0f64;
    let mut first: Option<(f64, usize, f64)> = None;
    for &s in s_grid {
        let r = 0.5 * s;
        if r < 1e-100 || (r.powi(n_max as i32)) == 0.0 {
            return Err(Error::accuracy(format!("Cauchy radius underflow at s={s}"), f64::NAN));
        }
        let vals: Vec<(Complex64, Complex64)> = (0..NODES)
            .map(|k| {
                let th = 2.0 * PI * (k as f64 + 0.5) / NODES as f64;
                let w = Complex64::from_polar(1.0, th);
                (w, image.eval(s + r * w))
            })
            .collect();
        let bound = vals.iter().fold(0.0f64, |m, (_, f)| m.max(f.norm()));
        if !bound.is_finite() {
            return Err(Error::accuracy(format!("image not finite near s={s}"), f64::NAN));
        }
        let mut fact = 1.0;
        for n in 0..=n_max {
            if n > 0 {
                fact *= n as f64;
            }
            let mean: Complex64 = vals.iter().map(|(w, f)| f * w.powi(-(n as i32))).sum::<Complex64>() / NODES as f64;
            let scale = fact / r.powi(n as i32);
            let deriv = scale * mean.re;
            let signed = if n % 2 == 0 { deriv } else { -deriv };
            let v = (-signed).max(0.0) / (scale * bound).max(1e-300);
            if v > CMF_TOL && first.is_none() {
                first = Some((s, n, deriv));
            }
            worst = worst.max(v);
        }
    }
    let mut rep = VerificationReport::new(
        "complete_monotonicity",
        s_grid.iter().map(|&s| vec![s]).collect(),
        worst,
        CMF_TOL,
    );
    if let Some((s, n, d)) = first {
        rep = rep.with_detail(format!("first violation at s={s}, n={n}: f⁽ⁿ⁾ = {d:.6e}"));
    }
    Ok(rep)
}

/// Default tolerance of the normalisation check.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// ∫_0^Ξ density dξ against its Laplace-side mass (1, or L⁻¹[k̂^{1/2}/s] for `FMixed`).
pub fn check_normalization(density: &SubordinationDensity, t: f64) -> Result<VerificationReport> {
    check_normalization_with(density, t, NORMALIZATION_TOL)
}

pub fn check_normalization_with(density: &SubordinationDensity, t: f64, tol: f64) -> Result<VerificationReport> {
    if !(t > 0.0) {
        return Err(Error::param(format!("time t={t} must be positive")));
    }
    let expected = density.total_mass(t)?;
    let mass = if density.is_atom() {
        expected
    } else {
        let big = density.tail_bound(t, 1e-11)?;
        let g = |u: f64| -> Result<f64> {
            let xi = u * u;
            if xi == 0.0 {
                return Ok(0.0);
            }
            Ok(2.0 * u * density.eval(xi, t)?)
        };
        quad::try_integrate(&g, 0.0, big.sqrt(), Adaptive::abs(1e-11))?.value
    };
    let res = (mass - expected).abs();
    Ok(VerificationReport::new(
        format!("normalization:{}:{}", density.variant, density.source_kernel.id),
        vec![vec![t]],
        res,
        tol,
    )
    .with_detail(format!("quadrature {mass:.12e}, expected {expected:.12e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caputo_examples() {
        let lin = |t: f64| -> Result<f64> { Ok(t) };
        let v = caputo_derivative(&lin, 0.5, 1.0).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-8, "{v}");
        let c = |_t: f64| -> Result<f64> { Ok(3.0) };
        assert_eq!(caputo_derivative(&c, 0.3, 2.0).unwrap(), 0.0);
        let sq = |t: f64| -> Result<f64> { Ok(t * t) };
        let v = caputo_derivative(&sq, 1.5, 1.0).unwrap();
        assert!((v - 2.0 / gamma(1.5)).abs() < 1e-7, "{v}");
        // ν = 1 is the ordinary derivative
        assert!((caputo_derivative(&sq, 1.0, 0.7).unwrap() - 1.4).abs() < 1e-10);
    }

    #[test]
    fn caputo_power_oracle() {
        // ᶜDᵛ t^p = Γ(p+1)/Γ(p+1-ν) t^{p-ν}
        for &(p, nu) in &[(2.5, 0.3), (3.0, 1.25), (1.7, 0.75)] {
            let f = move |t: f64| -> Result<f64> { Ok(t.powf(p)) };
            let t = 1.3;
            let v = caputo_derivative(&f, nu, t).unwrap();
            let e = gamma(p + 1.0) / gamma(p + 1.0 - nu) * t.powf(p - nu);
            assert!((v / e - 1.0).abs() < 1e-6, "p={p} ν={nu}: {v} vs {e}");
        }
    }

    #[test]
    fn caputo_rejects_kinks() {
        let f = |t: f64| -> Result<f64> { Ok(if t < 1.0 { 0.0 } else { 1e3 * (t - 1.0) }) };
        assert!(matches!(caputo_derivative(&f, 0.5, 1.0), Err(Error::Accuracy { .. })));
    }

    #[test]
    fn ml_composition_exponential() {
        let r = check_ml_composition(1.0, 0.0, 1.0).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn wave_composition_forms() {
        let r = check_wave_composition(1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(r.pass && r.max_abs_residual < 1e-8);
        let r = check_wave_composition(1.0, 2.0, 0.0, 1.0).unwrap();
        assert!(r.pass, "{r:?}");
        let lit = check_wave_composition_form(1.0, 2.0, 0.0, 1.0, WaveForm::Literal).unwrap();
        assert!(!lit.pass);
        // literal form gives ½[cos(aDκ) + sin(aDκ)/(aDκ)]
        let expect = 0.5 * (2f64.cos() + 2f64.sin() / 2.0);
        assert!((lit.max_abs_residual - (expect - 2f64.cos()).abs()).abs() < 1e-6);
    }

    #[test]
    fn cmf_examples() {
        let inv = LaplaceImage::new(|s| 1.0 / s);
        assert!(check_complete_monotonicity(&inv, &[0.5, 1.0, 2.0], 4).unwrap().pass);
        let f = LaplaceImage::new(|s: Complex64| s.sqrt().inv() * (-s.sqrt()).exp());
        assert!(check_complete_monotonicity(&f, &[0.5, 1.0, 2.0], 4).unwrap().pass);
        let c = LaplaceImage::new(|s: Complex64| s.cos());
        let r = check_complete_monotonicity(&c, &[1.0, 2.0, 4.0], 2).unwrap();
        assert!(!r.pass);
        assert!(r.detail.unwrap().contains("s=1"));
        assert!(check_complete_monotonicity(&inv, &[1.0], 7).is_err());
    }

    #[test]
    fn normalization_examples() {
        let d = SubordinationDensity::new(MemoryKernel::power_law(0.5).unwrap(), Variant::FsM).unwrap();
        assert!(check_normalization(&d, 1.0).unwrap().pass);
        let d = SubordinationDensity::new(MemoryKernel::gdwe_power(0.75).unwrap(), Variant::FMixed).unwrap();
        let r = check_normalization_with(&d, 1.0, 1e-5).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((d.total_mass(1.0).unwrap() - 1.0 / gamma(1.25)).abs() < 1e-9);
    }

    #[test]
    fn efros_degenerate() {
        let one = MemoryKernel::power_law(1.0).unwrap();
        let half = MemoryKernel::power_law(0.5).unwrap();
        let r = check_efros_selfreproduction(&one, &half, 0.8, 1.2).unwrap();
        assert!(r.pass && r.max_abs_residual < 1e-9, "{r:?}");
    }

    #[test]
    fn report_json_keys() {
        let r = VerificationReport::new("x", vec![vec![1.0]], 0.1, 0.2);
        let j = serde_json::to_string(&r).unwrap();
        for k in ["identity", "max_abs_residual", "pass"] {
            assert!(j.contains(k));
        }
    }
}

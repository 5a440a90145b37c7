//! Subordination densities obtained by inverting G(s)^m e^{-ξ s G(s)}.
//!
//! | variant  | equation | image                     | mass over ξ        |
//! |----------|----------|---------------------------|--------------------|
//! | `FsM`    | GFPE     | M̂ e^{-ξ s M̂}              | 1                  |
//! | `FHalf`  | GDWE     | k̂^{1/2} e^{-ξ s k̂^{1/2}}  | 1                  |
//! | `FMixed` | GDWE     | k̂ e^{-ξ s k̂^{1/2}}        | L⁻¹[k̂^{1/2}/s; t]  |

use super::image::LaplaceImage;
use super::invert::{invert_laplace, talbot, Method, TalbotOptions, DEFAULT_NODES};
use super::kernel::{Equation, MemoryKernel};
use crate::error::{Error, Result};
use crate::quad::{self, Adaptive};
use dashmap::DashMap;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Threshold below which a negative density value is an integrity failure.
pub const NEGATIVE_TOL: f64 = 1e-8;

/// Hard cap of the tail scan.
pub const TAIL_CAP: f64 = 1e9;

/// Density family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Variant {
    /// f_{sM̂}(ξ,t), GFPE.
    FsM,
    /// F_{sk̂^{1/2}}(ξ,t), GDWE cosine branch.
    FHalf,
    /// F_{k̂,sk̂^{1/2}}(ξ,t), GDWE sine branch.
    FMixed,
}

impl Variant {
    /// Power m of G in the image G^m e^{-ξ s G}.
    pub fn power(self) -> i32 {
        match self {
            Variant::FsM | Variant::FHalf => 1,
            Variant::FMixed => 2,
        }
    }

    pub fn equation(self) -> Equation {
        match self {
            Variant::FsM => Equation::Gfpe,
            _ => Equation::Gdwe,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::FsM => "f_sM",
            Variant::FHalf => "F_half",
            Variant::FMixed => "F_mixed",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f_sM" | "fsm" | "f_sm" => Ok(Variant::FsM),
            "F_half" | "half" | "f_half" => Ok(Variant::FHalf),
            "F_mixed" | "mixed" | "f_mixed" => Ok(Variant::FMixed),
            _ => Err(Error::Config(format!("unknown density variant '{s}' (f_sM|F_half|F_mixed)"))),
        }
    }
}

/// Inversion settings carried by a density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionConfig {
    pub method: Method,
    pub nodes: usize,
    /// Relative precision target; used by `Auto` to flag disagreement.
    pub tol: f64,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            method: Method::Talbot,
            nodes: DEFAULT_NODES,
            tol: 1e-10,
        }
    }
}

/// Evaluator of a subordination density with a value cache keyed by (ξ, t).
#[derive(Clone)]
pub struct SubordinationDensity {
    pub source_kernel: MemoryKernel,
    pub variant: Variant,
    pub inversion_config: InversionConfig,
    cache: Arc<DashMap<(u64, u64), f64>>,
}

impl fmt::Debug for SubordinationDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubordinationDensity")
            .field("kernel", &self.source_kernel.id)
            .field("variant", &self.variant)
            .field("inversion_config", &self.inversion_config)
            .finish()
    }
}

impl SubordinationDensity {
    pub fn new(kernel: MemoryKernel, variant: Variant) -> Result<Self> {
        if kernel.equation != variant.equation() {
            return Err(Error::param(format!(
                "variant {variant} needs a {} kernel, got '{}' ({})",
                variant.equation(),
                kernel.id,
                kernel.equation
            )));
        }
        Ok(SubordinationDensity {
            source_kernel: kernel,
            variant,
            inversion_config: InversionConfig::default(),
            cache: Arc::new(DashMap::new()),
        })
    }

    pub fn with_config(mut self, cfg: InversionConfig) -> Self {
        self.inversion_config = cfg;
        self.cache = Arc::new(DashMap::new());
        self
    }

    /// True when the density is δ(ξ - t) (G ≡ 1).
    pub fn is_atom(&self) -> bool {
        self.source_kernel.is_atom()
    }

    /// Laplace image G^m e^{-ξ s G} at fixed ξ.
    pub fn image(&self, xi: f64) -> LaplaceImage {
        self.shifted_image(xi, self.variant.power(), false)
    }

    /// G^m e^{-ξ s G} / s^{k}, k ∈ {0,1}.
    fn shifted_image(&self, xi: f64, m: i32, over_s: bool) -> LaplaceImage {
        let g = self.source_kernel.lead_fn();
        let mf = m as f64;
        LaplaceImage::from_log(move |s: Complex64| {
            let gv = g(s);
            let mut l = -xi * s * gv;
            if m != 0 {
                l += gv.ln() * mf;
            }
            if over_s {
                l -= s.ln();
            }
            l
        })
        .with_note(self.source_kernel.laplace_image.branch_note.clone())
    }

    fn invert(&self, img: &LaplaceImage, t: f64) -> Result<f64> {
        let cfg = &self.inversion_config;
        match cfg.method {
            Method::Talbot => talbot(
                img,
                t,
                &TalbotOptions {
                    nodes: cfg.nodes,
                    saddle: true,
                },
            ),
            m => {
                let r = invert_laplace(img, t, m)?;
                if let Some(w) = &r.warning {
                    log::warn!("{w}");
                }
                Ok(r.value)
            }
        }
    }

    /// Density value at (ξ, t). Atoms raise a distributional error.
    pub fn eval(&self, xi: f64, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::param(format!("density time t={t} must be positive")));
        }
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(Error::param(format!("density argument ξ={xi} must be non-negative")));
        }
        if self.is_atom() {
            return Err(Error::Distributional(format!(
                "{} for kernel '{}' is δ(ξ - t)",
                self.variant, self.source_kernel.id
            )));
        }
        let key = (xi.to_bits(), t.to_bits());
        if let Some(v) = self.cache.get(&key) {
            return Ok(*v);
        }
        let raw = self.invert(&self.image(xi), t)?;
        let v = self.check_sign(raw, xi, t)?;
        self.cache.insert(key, v);
        Ok(v)
    }

    fn check_sign(&self, v: f64, xi: f64, t: f64) -> Result<f64> {
        if v >= 0.0 {
            return Ok(v);
        }
        if v >= -NEGATIVE_TOL {
            log::debug!("clamped {} = {v:.3e} at ξ={xi}, t={t}", self.variant);
            return Ok(0.0);
        }
        if self.source_kernel.stieltjes_claimed {
            return Err(Error::Integrity(format!(
                "{} = {v:.3e} < -{NEGATIVE_TOL:e} at ξ={xi}, t={t} for kernel '{}'",
                self.variant, self.source_kernel.id
            )));
        }
        log::warn!(
            "{} negative ({v:.3e}) at ξ={xi}, t={t}; kernel '{}' carries no Stieltjes claim",
            self.variant,
            self.source_kernel.id
        );
        Ok(v)
    }

    /// ∫_Ξ^∞ density dξ = L⁻¹[G^{m-1} e^{-Ξ s G} / s; t].
    pub fn tail_mass(&self, big_xi: f64, t: f64) -> Result<f64> {
        if self.is_atom() {
            let w = match self.variant {
                Variant::FMixed => t,
                _ => 1.0,
            };
            return Ok(if big_xi < t { w } else { 0.0 });
        }
        let img = self.shifted_image(big_xi, self.variant.power() - 1, true);
        self.invert(&img, t)
    }

    /// Total mass ∫_0^∞ density dξ = L⁻¹[G^{m-1}/s; t]: 1 for `FsM`/`FHalf`.
    pub fn total_mass(&self, t: f64) -> Result<f64> {
        match self.variant {
            Variant::FsM | Variant::FHalf => Ok(1.0),
            Variant::FMixed => self.tail_mass(0.0, t),
        }
    }

    /// Truncation point Ξ with ∫_Ξ^∞ density dξ < `mass_tol`.
    pub fn tail_bound(&self, t: f64, mass_tol: f64) -> Result<f64> {
        density_tail_bound(self, t, mass_tol)
    }
}

/// Truncation point Ξ for the ξ-integrals: geometric scan of the tail mass
/// (ratio 1.25), bisection down to the crossing, then a quadrature check of
/// the mass just beyond Ξ.
pub fn density_tail_bound(d: &SubordinationDensity, t: f64, mass_tol: f64) -> Result<f64> {
    if !(mass_tol > 0.0 && mass_tol <= 1e-3) {
        return Err(Error::param(format!("tail tolerance {mass_tol} outside (0, 1e-3]")));
    }
    if !(t > 0.0) {
        return Err(Error::param(format!("time t={t} must be positive")));
    }
    if d.is_atom() {
        return Ok(t * (1.0 + 1e-9) + 1e-12);
    }
    let tail = |x: f64| d.tail_mass(x, t);
    let mut lo = 0.0;
    let mut hi = 1e-4 * t.max(1e-3);
    loop {
        if hi > TAIL_CAP {
            return Err(Error::UnboundedTail(format!(
                "tail mass of {} for '{}' at t={t} still above {mass_tol:e} at ξ={TAIL_CAP:e}",
                d.variant, d.source_kernel.id
            )));
        }
        if tail(hi)?.abs() < mass_tol {
            // confirm by quadrature that the mass past the crossing is small
            let beyond = quad::try_integrate(&|x| d.eval(x, t), hi, 1.5 * hi, Adaptive::abs(0.1 * mass_tol));
            match beyond {
                Ok(e) if e.value.abs() < mass_tol => break,
                Ok(_) | Err(Error::Accuracy { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        lo = hi;
        hi *= 1.25;
    }
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        if tail(mid)?.abs() < mass_tol {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-6 * hi {
            break;
        }
    }
    Ok(hi)
}

/// Convenience: f_{sM̂}, F_half or F_mixed at (ξ, t) for a kernel.
pub fn subordination_density(kernel: &MemoryKernel, variant: Variant, xi: f64, t: f64) -> Result<f64> {
    SubordinationDensity::new(kernel.clone(), variant)?.eval(xi, t)
}

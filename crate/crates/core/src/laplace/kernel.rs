//! Memory kernels and the string registry used by the CLI.
//!
//! A GFPE kernel supplies M̂(s); a GDWE kernel supplies k̂(s). Both feed the
//! subordination densities through the *leading function* G(s): G = M̂ for the
//! GFPE and G = k̂^{1/2} for the GDWE.

use super::image::LaplaceImage;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

type CFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Which evolution equation a kernel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Gfpe,
    Gdwe,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Gfpe => "gfpe",
            Equation::Gdwe => "gdwe",
        })
    }
}

impl FromStr for Equation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gfpe" => Ok(Equation::Gfpe),
            "gdwe" => Ok(Equation::Gdwe),
            _ => Err(Error::Config(format!("unknown equation '{s}' (gfpe|gdwe)"))),
        }
    }
}

/// Kernel family.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelKind {
    /// M̂ = s^{α-1} (GFPE) or k̂ = s^{2β-2} (GDWE); the field is α or β.
    PowerLaw(f64),
    /// M̂_d = (s-1)/(s ln s), or k̂ = M̂_d for the GDWE.
    DistributedOrder,
    /// k̂ = M̂_d², GDWE only.
    DistributedOrderSquared,
    /// User supplied image.
    Custom(String),
}

/// A memory kernel with its Laplace image and the leading function G(s).
#[derive(Clone)]
pub struct MemoryKernel {
    pub id: String,
    pub kind: KernelKind,
    pub equation: Equation,
    pub laplace_image: LaplaceImage,
    /// Whether G(s) is known to be a Stieltjes function (guarantees
    /// non-negative subordination densities).
    pub stieltjes_claimed: bool,
    lead: CFn,
}

impl fmt::Debug for MemoryKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MemoryKernel")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("equation", &self.equation)
            .field("stieltjes_claimed", &self.stieltjes_claimed)
            .finish()
    }
}

const MD_SERIES: [f64; 6] = [1.0, -0.5, 5.0 / 12.0, -3.0 / 8.0, 251.0 / 720.0, -95.0 / 288.0];

/// M̂_d(s) = (s-1)/(s ln s), with the removable point s = 1 handled by series.
pub fn distributed_order_image(s: Complex64) -> Complex64 {
    let w = s - 1.0;
    if w.norm() < 1e-3 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in MD_SERIES.iter().rev() {
            acc = acc * w + c;
        }
        return acc;
    }
    w / (s * s.ln())
}

fn powc(s: Complex64, p: f64) -> Complex64 {
    if p == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        (s.ln() * p).exp()
    }
}

impl MemoryKernel {
    /// GFPE power law M̂(s) = s^{α-1}, α ∈ (0, 1].
    pub fn power_law(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::param(format!("power-law exponent α={alpha} outside (0,1]")));
        }
        let e = alpha - 1.0;
        let f: CFn = Arc::new(move |s| powc(s, e));
        Ok(MemoryKernel {
            id: format!("power_law:{alpha}"),
            kind: KernelKind::PowerLaw(alpha),
            equation: Equation::Gfpe,
            laplace_image: image_of(f.clone(), "s^(α-1), principal power, cut on (-inf, 0]"),
            stieltjes_claimed: true,
            lead: f,
        })
    }

    /// GFPE distributed-order kernel M̂_d(s) = (s-1)/(s ln s).
    pub fn distributed_order() -> Self {
        let f: CFn = Arc::new(distributed_order_image);
        MemoryKernel {
            id: "distributed_order".into(),
            kind: KernelKind::DistributedOrder,
            equation: Equation::Gfpe,
            laplace_image: image_of(
                f.clone(),
                "(s-1)/(s ln s), removable point s=1 (value 1), cut on (-inf, 0]",
            ),
            stieltjes_claimed: true,
            lead: f,
        }
    }

    /// GDWE power law k̂(s) = s^{2β-2}, β ∈ [1/2, 1].
    pub fn gdwe_power(beta: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&beta) {
            return Err(Error::param(format!("GDWE exponent β={beta} outside [1/2,1]")));
        }
        let k = 2.0 * beta - 2.0;
        let h = beta - 1.0;
        Ok(MemoryKernel {
            id: format!("gdwe_power:{beta}"),
            kind: KernelKind::PowerLaw(beta),
            equation: Equation::Gdwe,
            laplace_image: image_of(
                Arc::new(move |s| powc(s, k)),
                "s^(2β-2), principal power, cut on (-inf, 0]",
            ),
            stieltjes_claimed: true,
            lead: Arc::new(move |s| powc(s, h)),
        })
    }

    /// GDWE kernel k̂(s) = (s-1)/(s ln s).
    pub fn gdwe_distributed() -> Self {
        MemoryKernel {
            id: "gdwe_distributed".into(),
            kind: KernelKind::DistributedOrder,
            equation: Equation::Gdwe,
            laplace_image: image_of(
                Arc::new(distributed_order_image),
                "(s-1)/(s ln s), removable point s=1, cut on (-inf, 0]",
            ),
            stieltjes_claimed: false,
            lead: Arc::new(|s| distributed_order_image(s).sqrt()),
        }
    }

    /// GDWE kernel k̂(s) = (s-1)²/(s ln s)², so k̂^{1/2} = M̂_d.
    pub fn gdwe_distributed_sq() -> Self {
        MemoryKernel {
            id: "gdwe_distributed_sq".into(),
            kind: KernelKind::DistributedOrderSquared,
            equation: Equation::Gdwe,
            laplace_image: image_of(
                Arc::new(|s| {
                    let m = distributed_order_image(s);
                    m * m
                }),
                "(s-1)^2/(s ln s)^2, removable point s=1, cut on (-inf, 0]",
            ),
            stieltjes_claimed: false,
            lead: Arc::new(distributed_order_image),
        }
    }

    /// Kernel from a user image. For the GDWE the leading function is the
    /// principal square root of the image.
    pub fn custom(id: impl Into<String>, equation: Equation, image: LaplaceImage, stieltjes: bool) -> Self {
        let id = id.into();
        let img = image.clone();
        let lead: CFn = match equation {
            Equation::Gfpe => Arc::new(move |s| img.eval(s)),
            Equation::Gdwe => Arc::new(move |s| img.eval(s).sqrt()),
        };
        MemoryKernel {
            kind: KernelKind::Custom(id.clone()),
            id,
            equation,
            laplace_image: image,
            stieltjes_claimed: stieltjes,
            lead,
        }
    }

    /// Resolve a registry id: `power_law:α`, `distributed_order`,
    /// `gdwe_power:β`, `gdwe_distributed`, `gdwe_distributed_sq`.
    pub fn parse(id: &str) -> Result<Self> {
        let id = id.trim();
        let (name, arg) = match id.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (id, None),
        };
        let num = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(|| Error::Config(format!("kernel '{name}' needs an exponent, e.g. {name}:0.5")))?
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad kernel exponent in '{id}'")))
        };
        match name {
            "power_law" => Self::power_law(num(arg)?),
            "gdwe_power" => Self::gdwe_power(num(arg)?),
            "distributed_order" if arg.is_none() => Ok(Self::distributed_order()),
            "gdwe_distributed" if arg.is_none() => Ok(Self::gdwe_distributed()),
            "gdwe_distributed_sq" if arg.is_none() => Ok(Self::gdwe_distributed_sq()),
            _ => Err(Error::Config(format!("unknown kernel id '{id}'"))),
        }
    }

    /// M̂(s) or k̂(s).
    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.laplace_image.eval(s)
    }

    /// Leading function G(s): M̂ (GFPE) or k̂^{1/2} (GDWE).
    pub fn lead(&self, s: Complex64) -> Complex64 {
        (self.lead)(s)
    }

    /// G on the positive real axis.
    pub fn lead_real(&self, s: f64) -> f64 {
        self.lead(Complex64::new(s, 0.0)).re
    }

    /// Power-law exponent (α or β), if any.
    pub fn exponent(&self) -> Option<f64> {
        match self.kind {
            KernelKind::PowerLaw(e) => Some(e),
            _ => None,
        }
    }

    /// True when G ≡ 1, so the subordination densities collapse to δ(ξ - t).
    pub fn is_atom(&self) -> bool {
        self.exponent() == Some(1.0)
    }

    pub(crate) fn lead_fn(&self) -> CFn {
        self.lead.clone()
    }
}

fn image_of(f: CFn, note: &str) -> LaplaceImage {
    LaplaceImage::new(move |s| f(s)).with_note(note).positive(true)
}

/// Build a kernel from its family and target equation.
pub fn make_memory_kernel(kind: KernelKind, equation: Equation) -> Result<MemoryKernel> {
    match (kind, equation) {
        (KernelKind::PowerLaw(a), Equation::Gfpe) => MemoryKernel::power_law(a),
        (KernelKind::PowerLaw(b), Equation::Gdwe) => MemoryKernel::gdwe_power(b),
        (KernelKind::DistributedOrder, Equation::Gfpe) => Ok(MemoryKernel::distributed_order()),
        (KernelKind::DistributedOrder, Equation::Gdwe) => Ok(MemoryKernel::gdwe_distributed()),
        (KernelKind::DistributedOrderSquared, Equation::Gdwe) => Ok(MemoryKernel::gdwe_distributed_sq()),
        (k, e) => Err(Error::param(format!("kernel {k:?} not available for {e}; use MemoryKernel::custom"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn registry_ids() {
        let k = MemoryKernel::parse("power_law:0.5").unwrap();
        assert!((k.eval(c(4.0)).re - 0.5).abs() < 1e-15);
        assert_eq!(k.equation, Equation::Gfpe);
        let k = MemoryKernel::parse("gdwe_power:0.75").unwrap();
        assert!((k.eval(c(4.0)).re - 0.5).abs() < 1e-15);
        assert!((k.lead(c(4.0)).re - 4f64.powf(-0.25)).abs() < 1e-15);
        assert!(MemoryKernel::parse("distributed_order").is_ok());
        assert!(MemoryKernel::parse("gdwe_distributed").is_ok());
        assert!(MemoryKernel::parse("gdwe_distributed_sq").is_ok());
        assert!(matches!(MemoryKernel::parse("nope"), Err(Error::Config(_))));
        assert!(matches!(MemoryKernel::parse("power_law:1.5"), Err(Error::Parameter(_))));
        assert!(matches!(MemoryKernel::parse("gdwe_power:0.4"), Err(Error::Parameter(_))));
    }

    #[test]
    fn distributed_order_removable_point() {
        assert_eq!(distributed_order_image(c(1.0)).re, 1.0);
        for &w in &[1e-4, -7e-4, 9.9e-4, 1.01e-3] {
            let s = c(1.0 + w);
            let exact = w / ((1.0 + w) * w.ln_1p());
            assert!((distributed_order_image(s).re - exact).abs() < 1e-12);
        }
        let z = Complex64::new(1.0, 5e-4);
        let direct = (z - 1.0) / (z * z.ln());
        assert!((distributed_order_image(z) - direct).norm() < 1e-12);
    }

    #[test]
    fn atoms() {
        assert!(MemoryKernel::power_law(1.0).unwrap().is_atom());
        assert!(MemoryKernel::gdwe_power(1.0).unwrap().is_atom());
        assert!(!MemoryKernel::gdwe_power(0.5).unwrap().is_atom());
        assert!(!MemoryKernel::distributed_order().is_atom());
    }

    #[test]
    fn squared_kernel_lead_is_md() {
        let k = MemoryKernel::gdwe_distributed_sq();
        let s = Complex64::new(2.0, 3.0);
        assert!((k.lead(s) - distributed_order_image(s)).norm() < 1e-15);
        assert!((k.eval(s) - k.lead(s) * k.lead(s)).norm() < 1e-14);
    }
}

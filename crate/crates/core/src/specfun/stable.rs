//! One-sided Lévy stable densities Φ_α(σ) = L⁻¹[e^{-s^α}; σ], 0 < α < 1.

use crate::error::{Error, Result};
use crate::laplace::image::LaplaceImage;
use crate::laplace::invert::{talbot, TalbotOptions};

/// Parameters of Φ_α(σ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    pub alpha: f64,
    pub sigma: f64,
}

impl StableParams {
    pub fn new(alpha: f64, sigma: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::param(format!("stable argument σ={sigma} must be positive")));
        }
        Ok(StableParams { alpha, sigma })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param(format!("stability index α={alpha} outside (0,1)")));
    }
    Ok(())
}

/// Laplace image e^{-s^α}.
pub fn stable_image(alpha: f64) -> LaplaceImage {
    LaplaceImage::from_log(move |s| -s.powf(alpha))
        .with_note("e^{-s^α}, principal power, cut on (-inf, 0]")
}

/// Φ_α(σ) by contour inversion of e^{-s^α}.
pub fn levy_stable_density(p: &StableParams) -> Result<f64> {
    check_alpha(p.alpha)?;
    let v = talbot(&stable_image(p.alpha), p.sigma, &TalbotOptions::default())?;
    Ok(v.max(0.0))
}

/// Φ_α(ξ, t) = ξ^{-1/α} Φ_α(t ξ^{-1/α}) = L⁻¹[e^{-ξ s^α}; t].
pub fn levy_stable_two_arg(alpha: f64, xi: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(xi > 0.0) || !(t > 0.0) {
        return Err(Error::param(format!("need ξ > 0 and t > 0, got ξ={xi}, t={t}")));
    }
    let scale = xi.powf(-1.0 / alpha);
    Ok(scale * levy_stable_density(&StableParams::new(alpha, t * scale)?)?)
}

/// f(α; ξ, t) = (t/(αξ)) Φ_α(ξ, t), the inverse-subordinator density built
/// from the two-argument stable law.
pub fn inverse_stable_density(alpha: f64, xi: f64, t: f64) -> Result<f64> {
    Ok(t / (alpha * xi) * levy_stable_two_arg(alpha, xi, t)?)
}

/// Lévy-Smirnov closed form Φ_{1/2}(σ) = e^{-1/(4σ)} / (2√π σ^{3/2}).
pub fn levy_smirnov(sigma: f64) -> f64 {
    (-0.25 / sigma).exp() / (2.0 * std::f64::consts::PI.sqrt() * sigma.powf(1.5))
}

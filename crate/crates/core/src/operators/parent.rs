//! Parent propagators: drifted heat flow and the two d'Alembert pieces.

use super::ic::{normal_pdf, EndpointRule, InitialCondition, Profile, SampledProfile, Velocity};
use crate::error::{Error, Result};
use libm::erf;
use std::f64::consts::SQRT_2;

/// B (diffusion), μ (drift) and a (wave speed).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TransportParams {
    #[serde(rename = "B")]
    pub b: f64,
    pub mu: f64,
    pub a: f64,
}

impl Default for TransportParams {
    fn default() -> Self {
        TransportParams { b: 1.0, mu: 0.0, a: 1.0 }
    }
}

impl TransportParams {
    pub fn new(b: f64, mu: f64, a: f64) -> Self {
        TransportParams { b, mu, a }
    }

    pub fn check_gfpe(&self) -> Result<()> {
        if !(self.b > 0.0) || !self.b.is_finite() {
            return Err(Error::param(format!("diffusion coefficient B={} must be positive", self.b)));
        }
        if !(self.mu >= 0.0) || !self.mu.is_finite() {
            return Err(Error::param(format!("drift μ={} must be non-negative", self.mu)));
        }
        Ok(())
    }

    pub fn check_gdwe(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::param(format!("wave speed a={} must be positive", self.a)));
        }
        Ok(())
    }
}

fn std_cdf(u: f64) -> f64 {
    0.5 * (1.0 + erf(u / SQRT_2))
}

/// ∫ p(y) φ(y; z, sd) dy for a piecewise-linear p (exact per segment).
fn sampled_convolution(p: &SampledProfile, z: f64, sd: f64) -> f64 {
    let var = sd * sd;
    let mut acc = 0.0;
    for i in 0..p.x.len() - 1 {
        let (y0, y1) = (p.x[i], p.x[i + 1]);
        let (u0, u1) = ((y0 - z) / sd, (y1 - z) / sd);
        if u1 < -40.0 || u0 > 40.0 {
            continue;
        }
        let m = (p.y[i + 1] - p.y[i]) / (y1 - y0);
        let dphi = normal_pdf(y1 - z, sd) - normal_pdf(y0 - z, sd);
        let dcdf = std_cdf(u1) - std_cdf(u0);
        acc += (p.y[i] + m * (z - y0)) * dcdf - m * var * dphi;
    }
    acc
}

/// Drifted heat flow of the initial profile at internal time ξ:
/// N(x - μξ, ξ) = ∫ G_{2Bξ}(x - μξ - y) q₀(y) dy.
pub fn diffusion_parent(ic: &InitialCondition, tp: &TransportParams, xi: f64, x: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(Error::param(format!("internal time ξ={xi} must be non-negative")));
    }
    let z = x - tp.mu * xi;
    if xi == 0.0 {
        return ic.profile.eval(z);
    }
    let sd = (2.0 * tp.b * xi).sqrt();
    Ok(match &ic.profile {
        Profile::Delta => normal_pdf(z, sd),
        Profile::Gaussian { sigma } => normal_pdf(z, (sigma * sigma + sd * sd).sqrt()),
        Profile::Box { eps } => {
            let r = 1.0 / (sd * SQRT_2);
            let (hi, lo) = ((z + eps) * r, (z - eps) * r);
            // erfc form keeps precision far out in the tails
            let d = if lo > 0.0 {
                libm::erfc(lo) - libm::erfc(hi)
            } else if hi < 0.0 {
                libm::erfc(-hi) - libm::erfc(-lo)
            } else {
                erf(hi) - erf(lo)
            };
            d / (4.0 * eps)
        }
        Profile::Custom(p) => sampled_convolution(p, z, sd),
    })
}

/// cos(aξ∂ₓ) p₀(x) = ½[p₀(x + aξ) + p₀(x - aξ)].
pub fn wave_parent_cos(p0: &Profile, a: f64, xi: f64, x: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(Error::param(format!("internal time ξ={xi} must be non-negative")));
    }
    Ok(0.5 * (p0.eval(x + a * xi)? + p0.eval(x - a * xi)?))
}

/// sin(aξ∂ₓ) v₀(x) = (2a)⁻¹ ∫_{x-aξ}^{x+aξ} v₀(y) dy, endpoint spikes at half weight.
pub fn wave_parent_sin(ic: &InitialCondition, a: f64, xi: f64, x: f64) -> Result<f64> {
    wave_parent_sin_with(ic, a, xi, x, EndpointRule::HalfWeight)
}

/// [`wave_parent_sin`] with an explicit endpoint convention.
pub fn wave_parent_sin_with(ic: &InitialCondition, a: f64, xi: f64, x: f64, rule: EndpointRule) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(Error::param(format!("internal time ξ={xi} must be non-negative")));
    }
    let (lo, hi) = (x - a * xi, x + a * xi);
    let scale = 0.5 / a;
    Ok(match ic.velocity.resolve(&ic.profile) {
        Velocity::Zero => 0.0,
        Velocity::GaussianSlope { sigma } => scale * (normal_pdf(lo, sigma) - normal_pdf(hi, sigma)),
        Velocity::BoxSpikes { eps } => {
            let weight = |c: f64| {
                if c > lo && c < hi {
                    1.0
                } else if (c == lo || c == hi) && lo < hi {
                    log::debug!("δ spike at {c} on window endpoint");
                    match rule {
                        EndpointRule::HalfWeight => 0.5,
                        EndpointRule::Open => 0.0,
                    }
                } else {
                    0.0
                }
            };
            scale * (weight(eps) - weight(-eps)) / (2.0 * eps)
        }
        Velocity::NegDerivative => scale * (ic.profile.eval(lo)? - ic.profile.eval(hi)?),
        Velocity::Custom(p) => scale * (p.primitive(hi) - p.primitive(lo)),
    })
}

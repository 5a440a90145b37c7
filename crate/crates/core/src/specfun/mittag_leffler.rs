//! Two-parameter Mittag-Leffler function E_{α,β}(z) = Σ zⁿ/Γ(αn+β).
//!
//! Evaluation paths:
//! - closed forms for α, β ∈ {1, 2};
//! - log-space Taylor sum for real z ≥ 0 (positive terms, no cancellation);
//! - Taylor sum for |z| ≤ 5 when the term magnitudes do not cancel badly;
//! - otherwise the Bromwich integral of s^{α-β}/(s^α - z) on the Weideman
//!   contour, adding residues (1/α) s_k^{1-β} e^{s_k} for poles left outside.

use super::gamma::{ln_gamma, rgamma};
use crate::error::{Error, Result};
use crate::laplace::invert::{contour, contour_re_at, shape, X0};
use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::f64::consts::PI;

/// Radius below which the Taylor series is tried first.
pub const TAYLOR_RADIUS: f64 = 5.0;

/// Largest admissible |z|^{1/α} (the growth scale e^{|z|^{1/α}} must stay finite).
pub const OVERFLOW_BOUND: f64 = 700.0;

const CANCELLATION_LIMIT: f64 = 1e3;
const NODES: usize = 48;

/// Parameters (α, β₂) of E_{α,β₂}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub beta2: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta2: f64) -> Result<Self> {
        let p = MLParams { alpha, beta2 };
        p.validate()?;
        Ok(p)
    }

    /// One-parameter function E_α.
    pub fn one(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(Error::param(format!("Mittag-Leffler order α={} outside (0,2]", self.alpha)));
        }
        if !(self.beta2 > 0.0) || !self.beta2.is_finite() {
            return Err(Error::param(format!("Mittag-Leffler β₂={} must be positive", self.beta2)));
        }
        Ok(())
    }
}

/// E_{α,β₂}(z) for complex z.
pub fn mittag_leffler(p: &MLParams, z: Complex64) -> Result<Complex64> {
    p.validate()?;
    let (a, b) = (p.alpha, p.beta2);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(rgamma(b), 0.0));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Range(format!("non-finite argument {z}")));
    }
    if let Some(v) = closed_form(a, b, z)? {
        return Ok(v);
    }
    let growth = z.norm().powf(1.0 / a);
    if growth > OVERFLOW_BOUND {
        return Err(Error::Range(format!(
            "|z|^(1/α) = {growth:.1} exceeds the overflow bound {OVERFLOW_BOUND}"
        )));
    }
    if z.im == 0.0 && z.re > 0.0 {
        return Ok(Complex64::new(taylor_positive(a, b, z.re), 0.0));
    }
    if z.norm() <= TAYLOR_RADIUS {
        let (sum, mag) = taylor(a, b, z);
        if mag <= CANCELLATION_LIMIT * sum.norm() {
            return Ok(sum);
        }
    }
    let v = contour_eval(a, b, z)?;
    if z.im == 0.0 {
        return Ok(Complex64::new(v.re, 0.0));
    }
    Ok(v)
}

/// E_{α,β₂}(x) for real x.
pub fn mittag_leffler_real(p: &MLParams, x: f64) -> Result<f64> {
    Ok(mittag_leffler(p, Complex64::new(x, 0.0))?.re)
}

fn closed_form(a: f64, b: f64, z: Complex64) -> Result<Option<Complex64>> {
    let check = |re: f64| {
        if re > 709.0 {
            Err(Error::Range(format!("E_{{{a},{b}}}({z}) overflows")))
        } else {
            Ok(())
        }
    };
    if a == 1.0 && b == 1.0 {
        check(z.re)?;
        return Ok(Some(z.exp()));
    }
    if a == 1.0 && b == 2.0 {
        check(z.re)?;
        if z.norm() < 1e-4 {
            return Ok(Some(1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0));
        }
        return Ok(Some((z.exp() - 1.0) / z));
    }
    if a == 2.0 && (b == 1.0 || b == 2.0) {
        let r = z.sqrt();
        check(r.re.abs())?;
        if b == 1.0 {
            return Ok(Some(r.cosh()));
        }
        if z.norm() < 1e-4 {
            return Ok(Some(1.0 + z / 6.0 + z * z / 120.0));
        }
        return Ok(Some(r.sinh() / r));
    }
    Ok(None)
}

/// Σ zⁿ/Γ(αn+β) for real z > 0, summed in log space.
fn taylor_positive(a: f64, b: f64, z: f64) -> f64 {
    let lz = z.ln();
    let mut peak = f64::NEG_INFINITY;
    let mut lterms = Vec::new();
    let mut n = 0usize;
    loop {
        let lt = n as f64 * lz - ln_gamma(a * n as f64 + b);
        peak = peak.max(lt);
        lterms.push(lt);
        if n > 10 && lt < peak - 40.0 && a * n as f64 + b > 2.0 {
            break;
        }
        n += 1;
    }
    let s: f64 = lterms.iter().map(|lt| (lt - peak).exp()).sum();
    s * peak.exp()
}

/// Taylor sum and Σ|term| (cancellation indicator).
fn taylor(a: f64, b: f64, z: Complex64) -> (Complex64, f64) {
    let lz = z.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut peak = f64::NEG_INFINITY;
    let mut n = 0usize;
    loop {
        let lt = lz * n as f64 - ln_gamma(a * n as f64 + b);
        let term = if n == 0 {
            Complex64::new(rgamma(b), 0.0)
        } else {
            lt.exp()
        };
        sum += term;
        mag += term.norm();
        peak = peak.max(lt.re);
        if n > 10 && lt.re < peak - 40.0 && a * n as f64 + b > 2.0 {
            break;
        }
        n += 1;
    }
    (sum, mag)
}

fn poles(a: f64, z: Complex64) -> Vec<Complex64> {
    let r = z.norm().powf(1.0 / a);
    let th = z.arg();
    let mut out = Vec::new();
    let kmax = (a / 2.0).ceil() as i64 + 1;
    for k in -kmax..=kmax {
        let ang = (th + 2.0 * PI * k as f64) / a;
        if ang.abs() < PI {
            out.push(Complex64::from_polar(r, ang));
        }
    }
    out
}

struct Fine {
    z: Vec<Complex64>,
    speed: Vec<f64>,
}

static FINE: Lazy<Fine> = Lazy::new(|| {
    let m = 1000;
    let mut z = Vec::with_capacity(m);
    let mut speed = Vec::with_capacity(m);
    for k in 0..m {
        let th = -PI + (k as f64 + 0.5) * 2.0 * PI / m as f64;
        let h = 1e-6;
        let d = (shape(th + h) - shape(th - h)) / (2.0 * h);
        z.push(shape(th));
        speed.push(d.norm());
    }
    Fine { z, speed }
});

fn contour_eval(a: f64, b: f64, z: Complex64) -> Result<Complex64> {
    let ps = poles(a, z);
    let (mu, n) = if ps.is_empty() {
        (NODES as f64, NODES)
    } else {
        choose_scale(&ps)
    };
    let ls = ps.iter().map(|p| p.re).fold(0.0, f64::max);
    if ls > 709.0 {
        return Err(Error::Range(format!("E_{{{a},{b}}}({z}) overflows")));
    }
    let c = contour(n);
    let mut sum = Complex64::new(0.0, 0.0);
    for (u, du) in c.z.iter().zip(&c.dz) {
        let s = u * mu;
        let ls_ = s.ln();
        let f = (ls_ * (a - b)).exp() / ((ls_ * a).exp() - z);
        sum += s.exp() * f * du * mu;
    }
    let mut val = sum / Complex64::new(0.0, n as f64);
    for p in ps {
        if outside(p, mu) {
            val += p.powf(1.0 - b) * p.exp() / a;
        }
    }
    if !val.re.is_finite() || !val.im.is_finite() {
        return Err(Error::accuracy("Mittag-Leffler contour sum not finite", f64::INFINITY));
    }
    Ok(val)
}

fn outside(p: Complex64, mu: f64) -> bool {
    match contour_re_at(p.im / mu) {
        None => true,
        Some(re) => p.re > mu * re,
    }
}

fn choose_scale(ps: &[Complex64]) -> (f64, usize) {
    let ls = ps.iter().map(|p| p.re).fold(0.0, f64::max);
    let fine = &*FINE;
    let mut best = (f64::INFINITY, NODES as f64, NODES);
    for j in -2..=12 {
        let mu = NODES as f64 * 2f64.powf(j as f64 / 4.0);
        let n = NODES.max(2 * (mu / 2.0).ceil() as usize);
        let mut est = 2e-16 * (X0 * mu - ls).exp();
        for p in ps {
            let mut dth = f64::INFINITY;
            for (w, sp) in fine.z.iter().zip(&fine.speed) {
                let d = (w * mu - p).norm() / (mu * sp);
                if d < dth {
                    dth = d;
                }
            }
            est += (p.re - ls - n as f64 * dth).exp();
        }
        if est < best.0 {
            best = (est, mu, n);
        }
    }
    (best.1, best.2)
}

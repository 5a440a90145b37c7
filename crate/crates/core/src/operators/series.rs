//! Short-time power-series solution of the diffusion-wave equation with
//! v₀ = 0: p(x,t) = Σ cₙ ₂βHₙ(x, a²t^{2β}) for p₀(x) = Σ cₙ xⁿ.

use crate::error::{Error, Result};
use crate::specfun::fractional_heat_polynomial;
use std::f64::consts::PI;

/// How the partial sums were turned into a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    /// Terms decayed below round-off; plain partial sum.
    Direct,
    /// Terms decayed too slowly; Levin u-transform of the partial sums.
    Levin,
}

/// Series value with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms_used: usize,
    pub summation: Summation,
    /// Size of the last term (Direct) or of the last Levin update (Levin).
    pub error_estimate: f64,
}

/// Taylor coefficients of the normal density with standard deviation σ.
pub fn gaussian_series_coefficients(sigma: f64, n_terms: usize) -> Vec<f64> {
    let norm = 1.0 / ((2.0 * PI).sqrt() * sigma);
    let mut c = vec![0.0; n_terms];
    let mut term = norm;
    for k in 0..n_terms.div_ceil(2) {
        if 2 * k < n_terms {
            c[2 * k] = term;
        }
        term *= -1.0 / ((k + 1) as f64 * 2.0 * sigma * sigma);
    }
    c
}

/// Plain convergence horizon of the Gaussian series for β = 1/2:
/// t < σ²/(2a²). For β > 1/2 the series is entire in t.
pub fn gaussian_series_horizon(beta: f64, sigma: f64, a: f64) -> f64 {
    if beta > 0.5 {
        f64::INFINITY
    } else {
        sigma * sigma / (2.0 * a * a)
    }
}

fn levin_u(partial: &[f64], terms: &[f64]) -> Option<f64> {
    let n = partial.len() - 1;
    let (mut num, mut den) = (0.0, 0.0);
    let mut binom = 1.0;
    for j in 0..=n {
        if j > 0 {
            binom *= (n + 1 - j) as f64 / j as f64;
        }
        let om = (j + 1) as f64 * terms[j];
        if om == 0.0 {
            return None;
        }
        let c = if j % 2 == 0 { binom } else { -binom } * ((j + 1) as f64 / (n + 1) as f64).powi(n as i32 - 1);
        num += c * partial[j] / om;
        den += c / om;
    }
    let v = num / den;
    v.is_finite().then_some(v)
}

/// Σ_{n<N} cₙ ₂βHₙ(x, a²t^{2β}).
///
/// Terms are grouped in pairs (degrees 2k, 2k+1). Growing groups mean the
/// series diverges at this t and raise a horizon error; slowly decaying
/// groups (on the horizon itself) are resummed with the Levin u-transform.
pub fn solve_dwe_series(beta: f64, coeffs: &[f64], a: f64, x: f64, t: f64, n_terms: usize) -> Result<SeriesValue> {
    if !(t >= 0.0) {
        return Err(Error::param(format!("time t={t} must be non-negative")));
    }
    let n = n_terms.min(coeffs.len());
    if n == 0 {
        return Err(Error::param("series needs at least one coefficient"));
    }
    let mut groups = Vec::with_capacity(n.div_ceil(2));
    let mut k = 0;
    while k < n {
        let mut g = coeffs[k] * fractional_heat_polynomial(beta, k, x, a, t)?;
        if k + 1 < n {
            g += coeffs[k + 1] * fractional_heat_polynomial(beta, k + 1, x, a, t)?;
        }
        groups.push(g);
        k += 2;
    }
    let mut partial = Vec::with_capacity(groups.len());
    let mut s = 0.0;
    for g in &groups {
        s += g;
        partial.push(s);
    }
    let m = groups.len();
    let scale = groups.iter().fold(0.0f64, |acc, g| acc.max(g.abs())).max(s.abs());
    let last = groups[m - 1].abs();
    if last <= 1e-15 * scale || m < 8 {
        return Ok(SeriesValue {
            value: s,
            terms_used: n,
            summation: Summation::Direct,
            error_estimate: last,
        });
    }
    let window = |lo: usize, hi: usize| groups[lo..hi].iter().fold(0.0f64, |acc, g| acc.max(g.abs()));
    let mid = window(m / 3, 2 * m / 3);
    let tail = window(2 * m / 3, m);
    if tail > 2.0 * mid {
        return Err(Error::Horizon(format!(
            "series terms grow (|T| {mid:.3e} -> {tail:.3e}) at t={t}, x={x}; t is beyond the convergence horizon"
        )));
    }
    let nz: Vec<usize> = (0..m).filter(|&i| groups[i] != 0.0).collect();
    let use_n = nz.len().min(30);
    if use_n < 6 {
        return Ok(SeriesValue {
            value: s,
            terms_used: n,
            summation: Summation::Direct,
            error_estimate: last,
        });
    }
    // Levin on the first nonzero groups, compared with one order less
    let idx = &nz[..use_n];
    let ps: Vec<f64> = idx.iter().map(|&i| partial[i]).collect();
    let ts: Vec<f64> = idx.iter().map(|&i| groups[i]).collect();
    let v1 = levin_u(&ps, &ts).ok_or_else(|| Error::accuracy("Levin transform breakdown", f64::NAN))?;
    let v0 = levin_u(&ps[..use_n - 1], &ts[..use_n - 1]).ok_or_else(|| Error::accuracy("Levin transform breakdown", f64::NAN))?;
    let err = (v1 - v0).abs();
    if err > 1e-8 * v1.abs().max(1e-300) + 1e-12 {
        return Err(Error::accuracy("series resummation did not settle", err));
    }
    Ok(SeriesValue {
        value: v1,
        terms_used: n,
        summation: Summation::Levin,
        error_estimate: err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::ic::normal_pdf;

    #[test]
    fn quadratic_profile() {
        // p₀ = x², β = 1: x² + a²t²
        let c = [0.0, 0.0, 1.0];
        let v = solve_dwe_series(1.0, &c, 1.0, 0.7, 1.3, 3).unwrap();
        assert!((v.value - (0.49 + 1.69)).abs() < 1e-14);
    }

    #[test]
    fn zero_time_returns_profile() {
        let c = gaussian_series_coefficients(1.0, 60);
        let v = solve_dwe_series(0.75, &c, 1.0, 0.4, 0.0, 60).unwrap();
        assert!((v.value - normal_pdf(0.4, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn heat_inside_horizon() {
        let c = gaussian_series_coefficients(1.0, 80);
        for &x in &[0.0, 0.5, -1.0] {
            let v = solve_dwe_series(0.5, &c, 1.0, x, 0.25, 80).unwrap();
            let exact = normal_pdf(x, 1.5f64.sqrt());
            assert!((v.value - exact).abs() < 1e-6, "x={x}: {v:?} vs {exact}");
        }
    }

    #[test]
    fn heat_on_horizon_resummed() {
        let c = gaussian_series_coefficients(1.0, 60);
        let v = solve_dwe_series(0.5, &c, 1.0, 0.0, 0.5, 60).unwrap();
        assert_eq!(v.summation, Summation::Levin);
        assert!((v.value - normal_pdf(0.0, 2f64.sqrt())).abs() < 1e-6);
    }

    #[test]
    fn beyond_horizon_is_error() {
        let c = gaussian_series_coefficients(1.0, 60);
        assert!(matches!(
            solve_dwe_series(0.5, &c, 1.0, 0.3, 1.0, 60),
            Err(Error::Horizon(_))
        ));
    }
}

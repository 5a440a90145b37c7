//! Fractional heat polynomials
//! ₂βH_n(x, a²t^{2β}) = n! Σ_{r ≤ n/2} (a t^β)^{2r} x^{n-2r} / [Γ(1+2βr) (n-2r)!].

use super::gamma::{ln_gamma, rgamma};
use crate::error::{Error, Result};

/// Evaluate the fractional heat polynomial of degree `n`.
pub fn fractional_heat_polynomial(beta: f64, n: usize, x: f64, a: f64, t: f64) -> Result<f64> {
    if !(0.5..=1.0).contains(&beta) {
        return Err(Error::param(format!("heat polynomial order β={beta} outside [1/2,1]")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::param(format!("time t={t} must be non-negative")));
    }
    if !a.is_finite() || !x.is_finite() {
        return Err(Error::param("non-finite speed or position"));
    }
    let c = a * t.powf(beta);
    if n <= 150 {
        Ok(direct(beta, n, x, c))
    } else {
        Ok(via_logs(beta, n, x, c))
    }
}

fn direct(beta: f64, n: usize, x: f64, c: f64) -> f64 {
    let mut sum = 0.0;
    for r in 0..=n / 2 {
        // n!/(n-2r)!
        let mut fall = 1.0;
        for k in (n - 2 * r + 1)..=n {
            fall *= k as f64;
        }
        sum += fall * c.powi(2 * r as i32) * x.powi((n - 2 * r) as i32) * rgamma(1.0 + 2.0 * beta * r as f64);
    }
    sum
}

fn via_logs(beta: f64, n: usize, x: f64, c: f64) -> f64 {
    let lf = ln_gamma(n as f64 + 1.0);
    let mut sum = 0.0;
    for r in 0..=n / 2 {
        let m = n - 2 * r;
        if (c == 0.0 && r > 0) || (x == 0.0 && m > 0) {
            continue;
        }
        let sign = if x < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
        let mut l = lf - ln_gamma(1.0 + 2.0 * beta * r as f64) - ln_gamma(m as f64 + 1.0);
        if r > 0 {
            l += 2.0 * r as f64 * c.abs().ln();
        }
        if m > 0 {
            l += m as f64 * x.abs().ln();
        }
        sum += sign * l.exp();
    }
    sum
}

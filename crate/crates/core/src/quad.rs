//! Gauss-Legendre quadrature: fixed rules and adaptive bisection.
//!
//! The adaptive driver compares a panel's rule against the sum over its two
//! halves and bisects dyadically, so node positions repeat across calls that
//! share the same outer interval. That makes value caches keyed on the
//! abscissa effective.

use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use std::f64::consts::PI;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Build the rule by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Rule { nodes, weights }
    }

    /// Apply the rule on [a, b].
    pub fn apply(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x);
        }
        s * h
    }

    fn try_apply<F>(&self, f: &F, a: f64, b: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x)?;
        }
        Ok(s * h)
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

static GL10: Lazy<Rule> = Lazy::new(|| Rule::new(10));
static GL20: Lazy<Rule> = Lazy::new(|| Rule::new(20));

/// Shared 10-point rule used by the adaptive driver.
pub fn gl10() -> &'static Rule {
    &GL10
}

/// Shared 20-point rule.
pub fn gl20() -> &'static Rule {
    &GL20
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Settings for [`integrate`] and friends.
#[derive(Debug, Clone, Copy)]
pub struct Adaptive {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for Adaptive {
    fn default() -> Self {
        Adaptive {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_depth: 40,
        }
    }
}

impl Adaptive {
    pub fn abs(tol: f64) -> Self {
        Adaptive {
            abs_tol: tol,
            ..Default::default()
        }
    }
}

/// Adaptive integral of a fallible integrand over [a, b].
pub fn try_integrate<F>(f: &F, a: f64, b: f64, opts: Adaptive) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    try_integrate_breaks(f, &[a, b], opts)
}

/// Adaptive integral over consecutive panels `pts[0]..pts[1]..`; breakpoints
/// outside the range or repeated are ignored.
pub fn try_integrate_breaks<F>(f: &F, pts: &[f64], opts: Adaptive) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if pts.len() < 2 {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    let mut cuts: Vec<f64> = pts
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > a.min(b) && *p < a.max(b))
        .collect();
    cuts.push(a);
    cuts.push(b);
    if a <= b {
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    } else {
        cuts.sort_by(|x, y| y.partial_cmp(x).unwrap());
    }
    cuts.dedup();
    let span = (b - a).abs();
    let rule = gl10();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut converged = true;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let share = if span > 0.0 { (hi - lo).abs() / span } else { 1.0 };
        let whole = rule.try_apply(f, lo, hi)?;
        let tol = opts.abs_tol * share;
        let r = recurse(f, rule, lo, hi, whole, tol, opts, 0, &mut converged)?;
        value += r.0;
        error += r.1;
    }
    let target = opts.abs_tol.max(opts.rel_tol * value.abs());
    if !converged && error > target {
        return Err(Error::accuracy(
            format!("adaptive quadrature did not converge on [{a}, {b}]"),
            error,
        ));
    }
    Ok(Estimate { value, error })
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    rule: &Rule,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    opts: Adaptive,
    depth: u32,
    converged: &mut bool,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let l = rule.try_apply(f, a, m)?;
    let r = rule.try_apply(f, m, b)?;
    let sum = l + r;
    let diff = (sum - whole).abs();
    let rel = opts.rel_tol * sum.abs();
    if diff <= tol.max(rel) || diff <= 1e-15 * sum.abs() {
        return Ok((sum, diff));
    }
    if depth >= opts.max_depth || m == a || m == b {
        *converged = false;
        return Ok((sum, diff));
    }
    let left = recurse(f, rule, a, m, l, 0.5 * tol, opts, depth + 1, converged)?;
    let right = recurse(f, rule, m, b, r, 0.5 * tol, opts, depth + 1, converged)?;
    Ok((left.0 + right.0, left.1 + right.1))
}

/// Infallible convenience wrapper around [`try_integrate`].
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, opts: Adaptive) -> Result<Estimate> {
    let g = |x: f64| Ok(f(x));
    try_integrate(&g, a, b, opts)
}

/// Composite fixed rule with `panels` equal panels.
pub fn composite(rule: &Rule, f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            rule.apply(&f, lo, lo + h)
        })
        .sum()
}

/// [`composite`] for a fallible integrand.
pub fn try_composite<F>(rule: &Rule, f: &F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for k in 0..panels {
        let lo = a + k as f64 * h;
        let (c, r) = (lo + 0.5 * h, 0.5 * h);
        let mut p = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            p += w * f(c + r * x)?;
        }
        s += p * r;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 10, 20, 40, 64] {
            let r = Rule::new(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let r = Rule::new(10);
        // exact through degree 19
        let v = r.apply(|x| x.powi(18) + 3.0 * x.powi(7), -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_sqrt_endpoint() {
        let e = integrate(|x| x.sqrt(), 0.0, 1.0, Adaptive::abs(1e-12)).unwrap();
        assert!((e.value - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn breakpoints_handle_jumps() {
        let f = |x: f64| if x < 0.3 { 1.0 } else { 2.0 };
        let e = try_integrate_breaks(&|x| Ok(f(x)), &[0.0, 0.3, 1.0], Adaptive::abs(1e-12)).unwrap();
        assert!((e.value - (0.3 + 1.4)).abs() < 1e-13);
    }

    #[test]
    fn reversed_interval() {
        let e = integrate(|x| x.exp(), 1.0, 0.0, Adaptive::abs(1e-12)).unwrap();
        assert!((e.value + (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let opts = Adaptive {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_depth: 3,
        };
        let r = integrate(|x| (1.0 / x).sin(), 1e-6, 1.0, opts);
        assert!(matches!(r, Err(Error::Accuracy { .. })));
    }
}

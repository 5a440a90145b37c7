//! Special-function invariants: stable densities against an independent
//! real-integral oracle, normalisation, scaling and Mittag-Leffler splitting.

use memkernel::laplace::{subordination_density, MemoryKernel, Variant};
use memkernel::quad::{integrate, Adaptive};
use memkernel::specfun::{
    gamma, inverse_stable_density, levy_smirnov, levy_stable_density, levy_stable_two_arg, mittag_leffler_real,
    MLParams, StableParams,
};
use proptest::prelude::*;
use std::f64::consts::PI;

fn phi(alpha: f64, s: f64) -> f64 {
    levy_stable_density(&StableParams::new(alpha, s).unwrap()).unwrap()
}

/// Zolotarev's integral for the one-sided stable density with image e^{-s^α}.
fn zolotarev(alpha: f64, x: f64) -> f64 {
    let q = 1.0 / (1.0 - alpha);
    let a = |p: f64| ((alpha * p).sin() / p.sin()).powf(q) * ((1.0 - alpha) * p).sin() / (alpha * p).sin();
    let c = x.powf(-alpha * q);
    // A is smallest at φ → 0, where it equals α^{q-1}(1-α)
    if c * alpha.powf(q - 1.0) * (1.0 - alpha) > 690.0 {
        return 0.0;
    }
    let f = |p: f64| {
        if p >= PI {
            return 0.0;
        }
        let ap = a(p);
        ap * (-c * ap).exp()
    };
    let scale = alpha * q * x.powf(-q) / PI;
    let opts = Adaptive { abs_tol: 1e-300, rel_tol: 1e-13, max_depth: 30 };
    let v = integrate(f, 0.0, PI, opts).unwrap().value;
    scale * v
}

#[test]
fn zolotarev_oracle_half_is_levy_smirnov() {
    for &x in &[0.05, 0.3, 1.0, 4.0, 20.0] {
        let z = zolotarev(0.5, x);
        assert!((z / levy_smirnov(x) - 1.0).abs() < 1e-11, "x={x}");
    }
}

#[test]
fn stable_density_matches_zolotarev() {
    for &alpha in &[0.25, 0.5, 2.0 / 3.0, 0.75, 0.9] {
        for &x in &[0.1, 0.3, 1.0, 3.0, 10.0, 50.0] {
            // the real-integral peak sits against φ = π for α near 1 and large x
            if alpha > 0.8 && x > 10.0 {
                continue;
            }
            let z = zolotarev(alpha, x);
            if z < 1e-200 {
                continue;
            }
            let v = phi(alpha, x);
            assert!((v / z - 1.0).abs() < 1e-8, "α={alpha} x={x}: {v} vs {z}");
        }
    }
}

#[test]
fn two_thirds_at_one() {
    let z = zolotarev(2.0 / 3.0, 1.0);
    assert!((phi(2.0 / 3.0, 1.0) / z - 1.0).abs() < 1e-8);
}

/// ∫_Σ^∞ Φ_α from the large-σ expansion Φ_α(σ) ~ π⁻¹ Σ (-1)^{k+1} Γ(kα+1) sin(πkα)/k! σ^{-kα-1}.
fn tail(alpha: f64, big: f64) -> f64 {
    let mut s = 0.0;
    let mut fact = 1.0;
    for k in 1..=8 {
        let kf = k as f64;
        fact *= kf;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        s += sign * gamma(kf * alpha + 1.0) * (PI * kf * alpha).sin() / (fact * kf * alpha) * big.powf(-kf * alpha);
    }
    s / PI
}

#[test]
fn stable_density_normalised() {
    for &alpha in &[1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75] {
        let big: f64 = 1e8;
        let f = |u: f64| {
            let s = u.exp();
            phi(alpha, s) * s
        };
        let body = integrate(f, (1e-8f64).ln(), big.ln(), Adaptive::abs(1e-10)).unwrap().value;
        let total = body + tail(alpha, big);
        assert!((total - 1.0).abs() < 1e-6, "α={alpha}: {total}");
    }
}

#[test]
fn stable_density_non_negative_on_log_grid() {
    for &alpha in &[0.1, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, 0.95] {
        for i in 0..=120 {
            let s = 10f64.powf(-3.0 + 6.0 * i as f64 / 120.0);
            assert!(phi(alpha, s) >= 0.0, "α={alpha} σ={s}");
        }
    }
}

#[test]
fn ml_at_zero_is_one() {
    for i in 1..=40 {
        let a = 0.05 * i as f64;
        assert_eq!(mittag_leffler_real(&MLParams::one(a).unwrap(), 0.0).unwrap(), 1.0);
    }
}

fn ml(a: f64, x: f64) -> f64 {
    mittag_leffler_real(&MLParams::one(a).unwrap(), x).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// E_{2β}(b²t^{2β}) = ½[E_β(bt^β) + E_β(-bt^β)]; error absolute below
    /// magnitude 1 and relative above (values reach ~1e14 near β = 1/2).
    #[test]
    fn cosh_splitting(beta in 0.5000001f64..=1.0, b in 0.0f64..=2.0, t in 1e-6f64..=3.0) {
        let y = b * t.powf(beta);
        let lhs = ml(2.0 * beta, y * y);
        let rhs = 0.5 * (ml(beta, y) + ml(beta, -y));
        let err = (lhs - rhs).abs() / lhs.abs().max(1.0);
        prop_assert!(err < 1e-9, "β={} b={} t={}: {} vs {}", beta, b, t, lhs, rhs);
    }

    #[test]
    fn self_reproduction_scaling(alpha in 0.1f64..0.95, xi in 0.1f64..10.0, t in 0.1f64..10.0) {
        let two = levy_stable_two_arg(alpha, xi, t).unwrap();
        let c = xi.powf(-1.0 / alpha);
        let one = c * phi(alpha, t * c);
        prop_assert!((two - one).abs() <= 1e-12 * one.abs().max(1e-300));
    }

    #[test]
    fn stable_non_negative(alpha in 0.05f64..0.95, e in -3.0f64..3.0) {
        prop_assert!(phi(alpha, 10f64.powf(e)) >= 0.0);
    }

    #[test]
    fn inverse_stable_forms_agree(alpha in 0.2f64..0.95, xi in 0.05f64..4.0, t in 0.2f64..3.0) {
        let k = MemoryKernel::power_law(alpha).unwrap();
        let a = subordination_density(&k, Variant::FsM, xi, t).unwrap();
        let b = inverse_stable_density(alpha, xi, t).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1e-3), "{} vs {}", a, b);
    }

    #[test]
    fn exponential_case(x in -20.0f64..20.0) {
        let v = ml(1.0, x);
        prop_assert!((v / x.exp() - 1.0).abs() < 1e-12);
    }
}

//! Solver invariants: mass, symmetry, velocity normalisation, series
//! agreement and the α/2 composition of inverse-stable densities.

use memkernel::laplace::MemoryKernel;
use memkernel::operators::{
    gaussian_series_coefficients, gdwe_point, solve_dwe_series, solve_gdwe, solve_gfpe, uniform_grid, InitialCondition,
    SolutionField, TransportParams, Velocity,
};
use memkernel::quad::{integrate, Adaptive};
use memkernel::specfun::inverse_stable_density;
use std::f64::consts::PI;

fn wide() -> Vec<f64> {
    uniform_grid(-20.0, 20.0, 801).unwrap()
}

fn asymmetry(f: &SolutionField) -> f64 {
    let n = f.values.len();
    (0..n).map(|i| (f.values[i] - f.values[n - 1 - i]).abs()).fold(0.0, f64::max)
}

#[test]
fn gfpe_mass_conserved_for_registry_kernels() {
    let ic = InitialCondition::gaussian(1.0).unwrap();
    let tp = TransportParams::new(1.0, 0.0, 1.0);
    for k in [
        MemoryKernel::power_law(0.5).unwrap(),
        MemoryKernel::power_law(0.75).unwrap(),
        MemoryKernel::distributed_order(),
    ] {
        for t in [0.5, 1.0, 3.0] {
            let f = solve_gfpe(&k, &ic, &tp, &wide(), t).unwrap();
            assert!((f.mass() - 1.0).abs() < 1e-4, "{} t={t}: {}", k.id, f.mass());
        }
    }
}

#[test]
fn gdwe_mass_conserved_for_registry_kernels() {
    let ic = InitialCondition::gaussian(1.0).unwrap();
    let tp = TransportParams::new(1.0, 0.0, 1.0);
    for k in [
        MemoryKernel::gdwe_power(0.75).unwrap(),
        MemoryKernel::gdwe_distributed(),
        MemoryKernel::gdwe_distributed_sq(),
    ] {
        for t in [0.5, 1.0, 3.0] {
            let f = solve_gdwe(&k, &ic, &tp, &wide(), t).unwrap();
            assert!((f.mass() - 1.0).abs() < 1e-4, "{} t={t}: {}", k.id, f.mass());
        }
    }
}

#[test]
fn drifted_delta_mass_on_wide_grid() {
    let k = MemoryKernel::power_law(0.5).unwrap();
    // the delta solution has a cusp at x = 0; the trapezoid mass error is O(h²) there
    let grid = uniform_grid(-30.0, 40.0, 2801).unwrap();
    let f = solve_gfpe(&k, &InitialCondition::delta(), &TransportParams::new(1.0, 1.0, 1.0), &grid, 1.0).unwrap();
    assert!((f.mass() - 1.0).abs() < 1e-4, "{}", f.mass());
}

#[test]
fn even_initial_data_give_even_solutions() {
    let grid = uniform_grid(-8.0, 8.0, 321).unwrap();
    let tp = TransportParams::new(1.0, 0.0, 1.0);
    for ic in [InitialCondition::gaussian(0.7).unwrap(), InitialCondition::boxed(1.0).unwrap()] {
        let f = solve_gfpe(&MemoryKernel::power_law(0.6).unwrap(), &ic, &tp, &grid, 1.2).unwrap();
        assert!(asymmetry(&f) < 1e-8);
        let w = solve_gdwe(&MemoryKernel::gdwe_power(0.8).unwrap(), &ic, &tp, &grid, 1.2).unwrap();
        assert!(asymmetry(&w) < 1e-8);
    }
}

#[test]
fn velocity_preserves_normalisation() {
    let ic = InitialCondition::gaussian(1.0).unwrap().with_velocity(Velocity::NegDerivative);
    let tp = TransportParams::new(1.0, 0.0, 1.0);
    for k in [MemoryKernel::gdwe_power(0.75).unwrap(), MemoryKernel::gdwe_distributed()] {
        for t in [0.5, 1.0, 3.0] {
            let f = solve_gdwe(&k, &ic, &tp, &wide(), t).unwrap();
            assert!((f.mass() - 1.0).abs() < 1e-4, "{} t={t}: {}", k.id, f.mass());
        }
    }
}

#[test]
fn series_matches_subordination() {
    let k = MemoryKernel::gdwe_power(0.75).unwrap();
    let ic = InitialCondition::gaussian(1.0).unwrap();
    let tp = TransportParams::new(1.0, 0.0, 1.0);
    let c = gaussian_series_coefficients(1.0, 80);
    for &t in &[0.2, 0.5] {
        for &x in &[0.0, 0.5, 1.2] {
            let s = solve_dwe_series(0.75, &c, 1.0, x, t, 80).unwrap().value;
            let p = gdwe_point(&k, &ic, &tp, x, t).unwrap();
            assert!((s - p).abs() < 1e-6, "x={x} t={t}: {s} vs {p}");
        }
    }
}

/// ∫ f(½;ξ,t) f(½;u,ξ) dξ with both factors in closed form.
fn half_composition(u: f64, t: f64) -> f64 {
    let f_half = |xi: f64, tt: f64| (-xi * xi / (4.0 * tt)).exp() / (PI * tt).sqrt();
    let g = |xi: f64| if xi == 0.0 { 0.0 } else { f_half(xi, t) * f_half(u, xi) };
    integrate(g, 0.0, 40.0 * t.sqrt(), Adaptive::abs(1e-13)).unwrap().value
}

#[test]
fn composition_gives_quarter_index() {
    let lhs = half_composition(1.0, 1.0);
    let rhs = inverse_stable_density(0.25, 1.0, 1.0).unwrap();
    assert!((lhs - rhs).abs() < 1e-5, "{lhs} vs {rhs}");
    for (u, t) in [(0.3, 2.0), (2.0, 0.7)] {
        let lhs = half_composition(u, t);
        let rhs = inverse_stable_density(0.25, u, t).unwrap();
        assert!((lhs - rhs).abs() < 1e-5, "u={u} t={t}: {lhs} vs {rhs}");
    }
}

#[test]
fn fig1_curves_are_positive_with_shared_mean() {
    let k = MemoryKernel::power_law(0.5).unwrap();
    let tp = TransportParams::new(1.0, 1.0, 1.0);
    let grid = uniform_grid(-30.0, 40.0, 1401).unwrap();
    for ic in [
        InitialCondition::delta(),
        InitialCondition::boxed(1.0).unwrap(),
        InitialCondition::gaussian(1.0).unwrap(),
    ] {
        let f = solve_gfpe(&k, &ic, &tp, &grid, 1.0).unwrap();
        assert!(f.min().1 >= -1e-12);
        let m1: f64 = memkernel::moments::empirical_moments(&f, 1).unwrap();
        assert!((m1 - 2.0 / PI.sqrt()).abs() < 1e-3, "{m1}");
    }
}

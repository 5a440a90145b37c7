//! One-sided stable densities Φ_α(σ) and the closed form at α = 1/2.

use memkernel::specfun::{inverse_stable_density, levy_smirnov, levy_stable_density, StableParams};

fn main() -> memkernel::Result<()> {
    println!("{:>8} {:>16} {:>16} {:>10}", "sigma", "contour", "closed form", "rel err");
    for &s in &[0.01, 0.1, 0.5, 1.0, 5.0, 100.0] {
        let v = levy_stable_density(&StableParams::new(0.5, s)?)?;
        let c = levy_smirnov(s);
        println!("{s:>8} {v:>16.10e} {c:>16.10e} {:>10.2e}", (v / c - 1.0).abs());
    }

    println!();
    println!("{:>8} {:>12} {:>12} {:>12}", "sigma", "a=1/3", "a=2/3", "a=0.9");
    for &s in &[0.25, 0.5, 1.0, 2.0, 4.0] {
        let row: Vec<String> = [1.0 / 3.0, 2.0 / 3.0, 0.9]
            .iter()
            .map(|&a| format!("{:>12.6e}", levy_stable_density(&StableParams::new(a, s).unwrap()).unwrap()))
            .collect();
        println!("{s:>8} {}", row.join(" "));
    }

    // inverse-subordinator density f(α; ξ, t)
    println!();
    for &xi in &[0.0, 0.5, 1.0, 2.0] {
        let f = if xi == 0.0 { f64::NAN } else { inverse_stable_density(0.5, xi, 1.0)? };
        println!("f(1/2; {xi}, 1) = {f:.9}");
    }
    Ok(())
}

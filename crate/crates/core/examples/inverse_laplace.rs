//! Talbot-type contour inversion next to the Gaver-Stehfest cross-check.

use memkernel::laplace::{invert_laplace, LaplaceImage, Method};
use num_complex::Complex64;

fn main() -> memkernel::Result<()> {
    let pairs: Vec<(&str, LaplaceImage, fn(f64) -> f64)> = vec![
        ("1/(s+1)", LaplaceImage::new(|s: Complex64| 1.0 / (s + 1.0)).with_singularities(vec![-1.0]), |t| (-t).exp()),
        ("1/(s^2+1)", LaplaceImage::new(|s: Complex64| 1.0 / (s * s + 1.0)), f64::sin),
        ("s^-1.5", LaplaceImage::from_log(|s: Complex64| -1.5 * s.ln()), |t| {
            2.0 * (t / std::f64::consts::PI).sqrt()
        }),
    ];
    for (name, img, exact) in &pairs {
        println!("{name}");
        for &t in &[0.5, 1.0, 3.0] {
            let tv = invert_laplace(img, t, Method::Talbot)?.value;
            let gs = invert_laplace(img, t, Method::GaverStehfest)?.value;
            let auto = invert_laplace(img, t, Method::Auto)?;
            println!(
                "  t={t:<4} talbot={tv:.12} stehfest={gs:.12} exact={:.12} auto discrepancy={:.1e}",
                exact(t),
                auto.discrepancy.unwrap_or(0.0)
            );
        }
    }
    Ok(())
}

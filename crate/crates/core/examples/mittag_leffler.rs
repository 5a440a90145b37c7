//! Mittag-Leffler values and the cosh splitting E_{2β}(z²) = ½[E_β(z) + E_β(-z)].

use memkernel::specfun::{mittag_leffler, mittag_leffler_real, MLParams};
use num_complex::Complex64;

fn main() -> memkernel::Result<()> {
    println!("{:>6} {:>14} {:>14} {:>14}", "x", "E_1/2(-x)", "E_3/4(-x)", "E_1(-x)");
    for &x in &[0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let v: Vec<f64> = [0.5, 0.75, 1.0]
            .iter()
            .map(|&a| mittag_leffler_real(&MLParams::one(a).unwrap(), -x).unwrap())
            .collect();
        println!("{x:>6} {:>14.10} {:>14.10} {:>14.10}", v[0], v[1], v[2]);
    }

    let beta = 0.8;
    println!();
    for &z in &[0.5, 1.5, 3.0] {
        let lhs = mittag_leffler_real(&MLParams::one(2.0 * beta)?, z * z)?;
        let e = MLParams::one(beta)?;
        let rhs = 0.5 * (mittag_leffler_real(&e, z)? + mittag_leffler_real(&e, -z)?);
        println!("z={z}: E_1.6(z^2)={lhs:.12} half-sum={rhs:.12}");
    }

    let v = mittag_leffler(&MLParams::new(0.6, 1.2)?, Complex64::new(-2.0, 1.0))?;
    println!("\nE_(0.6,1.2)(-2+i) = {:.10} {:+.10}i", v.re, v.im);
    Ok(())
}

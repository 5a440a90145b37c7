//! Subordination densities for several memory kernels and their ξ-mass.

use memkernel::laplace::{MemoryKernel, SubordinationDensity, Variant};
use memkernel::properties::check_normalization;

fn main() -> memkernel::Result<()> {
    let cases = [
        (MemoryKernel::power_law(0.5)?, Variant::FsM),
        (MemoryKernel::distributed_order(), Variant::FsM),
        (MemoryKernel::gdwe_power(0.75)?, Variant::FHalf),
        (MemoryKernel::gdwe_power(0.75)?, Variant::FMixed),
    ];
    for (k, v) in cases {
        let id = k.id.clone();
        let d = SubordinationDensity::new(k, v)?;
        let row: Vec<String> = [0.0, 0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&xi| format!("{:.6}", d.eval(xi, 1.0).unwrap()))
            .collect();
        let r = check_normalization(&d, 1.0)?;
        println!("{v} {id}: {}", row.join(" "));
        println!("    mass residual {:.2e} ({})", r.max_abs_residual, r.detail.unwrap_or_default());
    }
    Ok(())
}

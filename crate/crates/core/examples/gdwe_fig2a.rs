//! Diffusion-wave equation with β = 3/4: a Gaussian peak splitting in two.

use memkernel::laplace::MemoryKernel;
use memkernel::operators::{default_grid, solve_gdwe, InitialCondition, TransportParams};

fn main() -> memkernel::Result<()> {
    let k = MemoryKernel::gdwe_power(0.75)?;
    let ic = InitialCondition::gaussian(1.0)?;
    let tp = TransportParams::new(1.0, 0.0, 1.0);
    let grid = default_grid();
    for t in [0.5, 1.0, 2.0, 3.0] {
        let f = solve_gdwe(&k, &ic, &tp, &grid, t)?;
        let peaks: Vec<String> = f.local_maxima().iter().map(|&i| format!("{:.2}", f.grid[i])).collect();
        println!("t={t}: mass {:.8}, maxima at [{}]", f.mass(), peaks.join(", "));
    }
    Ok(())
}

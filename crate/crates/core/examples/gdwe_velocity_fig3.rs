//! Diffusion-wave solutions with an initial velocity v₀ = -p₀′. The solution
//! stays normalised but develops negative parts; the mean drifts with t.

use memkernel::laplace::MemoryKernel;
use memkernel::moments::empirical_moments;
use memkernel::operators::{default_grid, solve_gdwe, InitialCondition, TransportParams, Velocity};

fn main() -> memkernel::Result<()> {
    let k = MemoryKernel::gdwe_power(0.75)?;
    let tp = TransportParams::new(1.0, 0.0, 1.0);
    let grid = default_grid();
    for sigma in [0.5, 1.0, 1.5] {
        let ic = InitialCondition::gaussian(sigma)?.with_velocity(Velocity::NegDerivative);
        for t in [0.5, 1.0] {
            let f = solve_gdwe(&k, &ic, &tp, &grid, t)?;
            let (x, m) = f.min();
            let mean = empirical_moments(&f, 1)?;
            println!("sigma={sigma} t={t}: mass {:.6}, min {m:.4} at x={x:.2}, mean {mean:.4}", f.mass());
        }
    }
    Ok(())
}

//! Closed-form, numerically inverted and long-time mean squared displacements.

use memkernel::laplace::{Equation, MemoryKernel};
use memkernel::moments::{msd_asymptotic, msd_gdwe, msd_gfpe, AsymptoticParams, ICMomentSpec, VelocityMomentSpec};

fn main() -> memkernel::Result<()> {
    let pl = MemoryKernel::power_law(0.5)?;
    let r = msd_gfpe(&pl, &ICMomentSpec::delta(), 1.0, 1.0, 1.0)?;
    println!("GFPE a=1/2 mu=1: mean {:.7} msd {:.7} ({:?})", r.mean, r.msd, r.method);

    let w = MemoryKernel::gdwe_power(0.75)?;
    let r = msd_gdwe(&w, &ICMomentSpec::gaussian(1.0), &VelocityMomentSpec::zero(), 1.0, 1.0)?;
    println!("GDWE b=3/4 gaussian: msd {:.7} ({:?})", r.msd, r.method);

    let d = MemoryKernel::distributed_order();
    let p = AsymptoticParams { b: 1.0, mu: 0.0, a: 1.0, c: 0.0 };
    println!("\ndistributed order, mu=0:");
    for t in [1e2, 1e3, 1e4, 1e5] {
        let n = msd_gfpe(&d, &ICMomentSpec::delta(), 1.0, 0.0, t)?.msd;
        let a = msd_asymptotic(&d, Equation::Gfpe, &p, t)?;
        println!("  t={t:>8}: numeric {n:.6}  2 ln t {a:.6}  ratio {:.4}", n / a);
    }
    Ok(())
}

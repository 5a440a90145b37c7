//! Identity checks with their JSON reports.

use memkernel::laplace::MemoryKernel;
use memkernel::properties::{
    check_efros_selfreproduction, check_ml_composition, check_wave_composition, check_wave_composition_form,
    VerificationReport, WaveForm,
};

fn show(r: &VerificationReport) {
    println!("{}", serde_json::to_string(r).unwrap());
}

fn main() -> memkernel::Result<()> {
    for (a, t0, t2) in [(1.0, 0.0, 1.0), (0.5, 0.0, 1.0), (0.75, 0.5, 2.0)] {
        show(&check_ml_composition(a, t0, t2)?);
    }
    show(&check_wave_composition(1.0, 2.0, 0.0, 1.0)?);
    // with u in place of √u the identity does not hold
    show(&check_wave_composition_form(1.0, 2.0, 0.0, 1.0, WaveForm::Literal)?);
    let half = MemoryKernel::power_law(0.5)?;
    show(&check_efros_selfreproduction(&half, &half, 1.0, 1.0)?);
    show(&check_efros_selfreproduction(&half, &MemoryKernel::distributed_order(), 1.0, 1.0)?);
    Ok(())
}

//! Distillable-entanglement bounds for n copies of a Bell-diagonal state.
//!
//!     cargo run --example distillation

use unext::bounds::{distillation_bound_bell_diagonal, ExtOrder};

pub fn run_example() -> unext::Result<()> {
    let spectra = [
        ("Werner 0.85", [0.85, 0.05, 0.05, 0.05]),
        ("skewed 0.85", [0.85, 0.10, 0.05, 0.0]),
        ("pure Bell", [1.0, 0.0, 0.0, 0.0]),
    ];
    for (name, spectrum) in spectra {
        for n in [1, 4, 8] {
            let r = distillation_bound_bell_diagonal(spectrum, n, 0.05, ExtOrder::Finite(2))?;
            println!(
                "{name:<12} n={n}: {:.6} ebits/copy (D = {:.4})",
                r.rate_bound, r.divergence
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    run_example()
}

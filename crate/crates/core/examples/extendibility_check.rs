//! Decides k-extendibility of a few named states and checks the certificate
//! the solver returns.
//!
//!     cargo run --release --example extendibility_check

use unext::extendibility::{check_k_extendible, verify_certificate, ExtensionProblem};
use unext::states::NamedState;

pub fn run_example() -> unext::Result<()> {
    for (name, k) in [
        ("erasure:0.5", 2),
        ("isotropic:0.25:2", 4),
        ("isotropic:0.7:2", 2),
        ("isotropic:0.7:2", 3),
        ("max-entangled:2", 2),
    ] {
        let rho = name.parse::<NamedState>()?.build()?;
        let verdict = check_k_extendible(&ExtensionProblem::new(rho.clone(), k)?)?;
        print!(
            "{name:<18} k={k}: {:<16} residual {:.2e} after {} iterations",
            verdict.status.as_str(),
            verdict.residual,
            verdict.iterations
        );
        if let Some(omega) = &verdict.certificate {
            let report = verify_certificate(omega, &rho, k)?;
            print!("  (certificate defect {:.1e})", report.worst());
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    run_example()
}

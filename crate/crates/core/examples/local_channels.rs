//! Local channels on Bob's side cannot create unextendibility: extendible
//! inputs stay extendible.
//!
//!     cargo run --release --example local_channels

use unext::extendibility::{
    check_k_extendible, erasure_certificate, verify_certificate, ExtensionProblem,
};
use unext::states::{erasure_family, isotropic, LocalChannel};

pub fn run_example() -> unext::Result<()> {
    let omega = erasure_certificate(3)?;
    let report = verify_certificate(&omega, &erasure_family(2.0 / 3.0)?, 3)?;
    println!(
        "explicit 3-extension of erasure_family(2/3): defect {:.1e}",
        report.worst()
    );

    let inputs = [
        ("erasure(2/3)", erasure_family(2.0 / 3.0)?, 3),
        ("isotropic(0.6)", isotropic(0.6, 2)?, 3),
    ];
    let channels = [LocalChannel::Depolarizing(0.4), LocalChannel::Erasure(0.25)];
    for (name, rho, k) in &inputs {
        for ch in &channels {
            let out = ch.apply_to_b(rho)?;
            let v = check_k_extendible(&ExtensionProblem::new(out, *k)?)?;
            println!("{name} through {ch:?}, k={k}: {}", v.status.as_str());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    run_example()
}

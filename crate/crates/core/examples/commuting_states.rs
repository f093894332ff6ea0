//! Divergences between commuting states: the depolarizing Choi state against
//! isotropic states, on single copies and tensor powers.
//!
//!     cargo run --example commuting_states

use unext::hypothesis::{
    commuting_dh, d_max_commuting, dh_from_spectrum, joint_spectrum, np_divergence,
    tensor_power_spectrum, BinaryHypothesisPair,
};
use unext::states::{depolarizing_choi, isotropic};

pub fn run_example() -> unext::Result<()> {
    let tau = depolarizing_choi(0.15)?;
    let sigma = isotropic(0.75, 2)?;
    println!(
        "D_max(choi || iso(0.75)) = {:.6}",
        d_max_commuting(&tau, &sigma)?
    );

    // Dense on two copies (16x16), from the single-copy spectrum beyond.
    let dense = commuting_dh(&tau.tensor_power(2), &sigma.tensor_power(2), 0.05)?;
    println!("n=2 dense D_h = {dense:.12}");
    let single = joint_spectrum(&tau, &sigma)?;
    for n in [2, 4, 6] {
        let spectral = dh_from_spectrum(&tensor_power_spectrum(&single, n), 0.05)?.divergence();
        let binary = np_divergence(&BinaryHypothesisPair::new(0.85, 0.75, n)?, 0.05)?.divergence();
        println!("n={n} spectral {spectral:.12}  binary {binary:.12}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    run_example()
}

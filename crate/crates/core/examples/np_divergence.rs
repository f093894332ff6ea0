//! Hypothesis-testing divergence between i.i.d. Bernoulli sources, checked
//! against brute force and exact rational arithmetic.
//!
//!     cargo run --example np_divergence

use unext::hypothesis::{
    np_divergence, np_divergence_with, np_oracle, BinaryHypothesisPair, Engine,
};

pub fn run_example() -> unext::Result<()> {
    let hyp = BinaryHypothesisPair::new(0.85, 0.75, 1)?;
    let r = np_divergence(&hyp, 0.05)?;
    println!(
        "n=1: D = {:.6} bits, beta = {:.6}, boundary class {} accepted w.p. {:.4}",
        r.divergence(),
        r.beta(),
        r.threshold_weight,
        r.gamma
    );

    println!("  n   D_h (log)      D_h (brute)    D_h (exact)");
    for n in [2, 5, 10] {
        let hyp = BinaryHypothesisPair::new(0.85, 0.75, n)?;
        let fast = np_divergence(&hyp, 0.05)?.divergence();
        let brute = -np_oracle(&hyp, 0.05)?;
        let exact = np_divergence_with(Engine::Exact, "0.85", "0.75", n, "0.05")?.divergence();
        println!("{n:>3}   {fast:.12}  {brute:.12}  {exact:.12}");
    }

    // Large blocks stay finite in the log domain.
    let big = np_divergence(&BinaryHypothesisPair::new(0.85, 0.5, 2000)?, 0.05)?;
    println!(
        "n=2000 against a fair coin: D = {:.3} bits",
        big.divergence()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    run_example()
}

//! Bounds for protocols interleaved by k-extendible channels, and the
//! antidegradable special case.
//!
//!     cargo run --example interleaved_bound

use unext::bounds::{
    antidegradable_bound, post_processing_bound, theorem3_bound, BoundQuery, ExtOrder,
};
use unext::states::ChannelSpec;

pub fn run_example() -> unext::Result<()> {
    let channel = ChannelSpec::depolarizing(0.15)?;
    println!("  n   interleaved(k=inf)  post-processing(k=inf)");
    for n in [1, 10, 100, 1000] {
        let q = BoundQuery::new(channel, n, 0.05, ExtOrder::Infinity)?;
        println!(
            "{n:>4}   {:<18.6}  {:.6}",
            theorem3_bound(&q)?.rate_bound,
            post_processing_bound(&q)?.rate_bound
        );
    }
    let q = BoundQuery::new(channel, 1, 0.05, ExtOrder::Finite(2))?;
    let r = theorem3_bound(&q)?;
    println!(
        "k=2, n=1: sigma t = {}, bound {:.6}",
        r.sigma_param_used, r.rate_bound
    );

    // Heavily depolarized qubits are antidegradable.
    for eps in [0.0, 0.05, 0.25] {
        println!(
            "antidegradable, eps={eps}: n=1 {:.6}, n=10 {:.6}",
            antidegradable_bound(1, eps)?.rate_bound,
            antidegradable_bound(10, eps)?.rate_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    run_example()
}

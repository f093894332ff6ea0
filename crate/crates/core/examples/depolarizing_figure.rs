//! Rate bounds for the qubit depolarizing channel at p = 0.15, eps = 0.05,
//! optimized over k, next to the k -> infinity limit.
//!
//!     cargo run --release --example depolarizing_figure [n_max]

use unext::cli::{figure_to_csv, run_figure, DEFAULT_K_MAX};
use unext::states::ChannelKind;

pub fn run_example() -> unext::Result<()> {
    run_with(20)
}

pub fn run_with(n_max: u32) -> unext::Result<()> {
    let rows = run_figure(ChannelKind::Depolarizing, 0.15, 0.05, n_max, DEFAULT_K_MAX)?;
    print!("{}", figure_to_csv(&rows)?);
    let wins = rows
        .iter()
        .filter(|r| r.rate_primary < r.rate_limit - 1e-3)
        .count();
    eprintln!("finite k is tighter at {wins} of {n_max} block lengths");
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    let n_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50);
    run_with(n_max)
}

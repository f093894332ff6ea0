//! Rate bounds for the erasure channel at p = 0.35, eps = 0.05. The k-th
//! extendible state is erasure_family(1 - 1/k).
//!
//!     cargo run --release --example erasure_figure [n_max]

use unext::bounds::{erasure_bound, BoundQuery, ExtOrder};
use unext::cli::{figure_to_csv, run_figure, DEFAULT_K_MAX};
use unext::states::{ChannelKind, ChannelSpec};

pub fn run_example() -> unext::Result<()> {
    run_with(10)
}

pub fn run_with(n_max: u32) -> unext::Result<()> {
    let rows = run_figure(ChannelKind::Erasure, 0.35, 0.05, n_max, DEFAULT_K_MAX)?;
    print!("{}", figure_to_csv(&rows)?);

    // Fixed k: the bound turns vacuous once 2^-D drops below 1/k.
    let channel = ChannelSpec::erasure(0.35)?;
    for k in [2, 3, 8] {
        let last = (1..=200)
            .take_while(|&n| {
                BoundQuery::new(channel, n, 0.05, ExtOrder::Finite(k))
                    .and_then(|q| erasure_bound(&q))
                    .map(|r| !r.is_vacuous())
                    .unwrap_or(false)
            })
            .last();
        eprintln!(
            "k={k}: finite up to n = {}",
            last.map_or("none".into(), |n| n.to_string())
        );
    }
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

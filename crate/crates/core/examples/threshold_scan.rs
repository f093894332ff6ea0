//! Bisects the k-extendibility boundary of the qubit isotropic family and of
//! the erasure family, and compares with the tabulated thresholds.
//!
//!     cargo run --release --example threshold_scan

use unext::extendibility::{bracket_threshold, ISOTROPIC_QUBIT_THRESHOLDS};
use unext::states::{erasure_family, isotropic};

pub fn run_example() -> unext::Result<()> {
    run_with(&[2, 3], 1e-3)
}

pub fn run_with(orders: &[u32], resolution: f64) -> unext::Result<()> {
    println!("isotropic family (t = overlap with Φ)");
    for &k in orders {
        let b = bracket_threshold(|t| isotropic(t, 2), k as usize, 0.5, 1.0, resolution)?;
        let table = ISOTROPIC_QUBIT_THRESHOLDS
            .iter()
            .find(|(order, _)| *order == k)
            .map(|&(_, t)| format!("{t:.4}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "  k={k}: feasible at {:.6}, not at {:.6}  (table {table})",
            b.feasible, b.infeasible
        );
    }
    println!("erasure family (q = erasure weight)");
    let b = bracket_threshold(erasure_family, 2, 1.0, 0.0, resolution.max(1e-3))?;
    println!(
        "  k=2: feasible at {:.6}, not at {:.6}",
        b.feasible, b.infeasible
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> unext::Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    if full {
        run_with(&[2, 3, 4, 5], 1e-4)
    } else {
        run_example()
    }
}

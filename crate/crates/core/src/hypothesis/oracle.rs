//! Brute-force reference for the binary Neyman–Pearson problem.
//!
//! Enumerates every test that is constant on Hamming-weight classes and
//! accepts a subset `S` fully plus at most one further class partially. The
//! optimal likelihood-ratio test is one of them, so the minimum type-II mass
//! over the enumeration is the optimum. Masses are computed in plain linear
//! arithmetic with direct binomial coefficients, independent of the
//! log-domain engine.

use super::{check_eps, BinaryHypothesisPair};
use crate::error::{Error, Result};

pub const ORACLE_MAX_N: u32 = 10;

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn class_masses(s: f64, n: u32) -> Vec<f64> {
    (0..=n)
        .map(|w| binomial(n, w) * s.powi(w as i32) * (1.0 - s).powi((n - w) as i32))
        .collect()
}

/// `log₂ β` of the optimal test, found by exhaustive enumeration.
pub fn np_oracle(hyp: &BinaryHypothesisPair, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let n = hyp.n();
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let p = class_masses(hyp.p_success(), n);
    let q = class_masses(hyp.t_success(), n);
    let classes = p.len();
    let mut best = f64::INFINITY;
    for subset in 0u32..(1 << classes) {
        let inside = |i: usize| subset & (1 << i) != 0;
        let rejected_p: f64 = (0..classes).filter(|&i| !inside(i)).map(|i| p[i]).sum();
        let accepted_q: f64 = (0..classes).filter(|&i| inside(i)).map(|i| q[i]).sum();
        if rejected_p <= eps {
            best = best.min(accepted_q);
        }
        for j in (0..classes).filter(|&j| !inside(j) && p[j] > 0.0) {
            // Mass rejected outside S ∪ {j}, summed directly from the small terms.
            let rest: f64 = (0..classes)
                .filter(|&i| !inside(i) && i != j)
                .map(|i| p[i])
                .sum();
            let slack = eps - rest;
            if slack < 0.0 {
                continue;
            }
            let gamma = ((p[j] - slack) / p[j]).clamp(0.0, 1.0);
            best = best.min(accepted_q + gamma * q[j]);
        }
    }
    Ok(best.log2())
}

//! Arbitrary-precision rational Neyman–Pearson engine, used to cross-check
//! the log-domain engine.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NpResult;
use crate::error::{Error, Result};

/// Exact optimum of the binary problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactNpResult {
    pub beta: BigRational,
    pub threshold_weight: u32,
    pub gamma: BigRational,
    pub achieved_type1: BigRational,
}

fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("at most 64 bits remain");
    (top as f64).log2() + shift as f64
}

/// `log₂` of a positive rational with full double precision.
pub fn log2_rational(x: &BigRational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    assert!(x.is_positive(), "log of a negative rational");
    log2_biguint(x.numer().magnitude()) - log2_biguint(x.denom().magnitude())
}

fn to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        log2_rational(x).exp2()
    }
}

impl ExactNpResult {
    pub fn log2_beta(&self) -> f64 {
        log2_rational(&self.beta)
    }

    pub fn to_np_result(&self) -> NpResult {
        NpResult {
            log2_beta: self.log2_beta(),
            threshold_weight: self.threshold_weight,
            gamma: to_f64(&self.gamma),
            achieved_type1: to_f64(&self.achieved_type1),
        }
    }
}

/// Parses a plain decimal such as `0.15` or `1e-3` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("'{s}' is not a decimal number"));
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    if neg {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

fn binomial_masses(s: &BigRational, n: u32) -> Vec<BigRational> {
    let one = BigRational::one();
    let fail = &one - s;
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut coeff = BigInt::one();
    for w in 0..=n {
        if w > 0 {
            coeff = coeff * BigInt::from(n - w + 1) / BigInt::from(w);
        }
        let mass = BigRational::from_integer(coeff.clone())
            * num_traits::pow(s.clone(), w as usize)
            * num_traits::pow(fail.clone(), (n - w) as usize);
        out.push(mass);
    }
    out
}

/// Compares `p1/q1` with `p2/q2` where a zero `q` means `+∞` (`p > 0`).
fn cmp_ratio(p1: &BigRational, q1: &BigRational, p2: &BigRational, q2: &BigRational) -> Ordering {
    match (q1.is_zero(), q2.is_zero()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => (p1 * q2).cmp(&(p2 * q1)),
    }
}

/// Exact `D_h^ε` between `Bernoulli(p)^n` and `Bernoulli(t)^n` in rationals.
pub fn np_divergence_exact(
    p: &BigRational,
    t: &BigRational,
    n: u32,
    eps: &BigRational,
) -> Result<ExactNpResult> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    for (name, x) in [("p", p), ("t", t)] {
        if *x < zero || *x > one {
            return Err(Error::InvalidParameter(format!(
                "{name} = {x} is not in [0, 1]"
            )));
        }
    }
    if *eps < zero || *eps >= one {
        return Err(Error::InvalidParameter(format!(
            "type-I error budget {eps} must lie in [0, 1)"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "copy count must be at least 1".into(),
        ));
    }
    let pm = binomial_masses(p, n);
    let qm = binomial_masses(t, n);
    let mut order: Vec<usize> = (0..=n as usize).filter(|&w| !pm[w].is_zero()).collect();
    order.sort_by(|&a, &b| cmp_ratio(&pm[b], &qm[b], &pm[a], &qm[a]).then(a.cmp(&b)));

    // Merge equal-ratio classes.
    let mut groups: Vec<(BigRational, BigRational, u32)> = Vec::new();
    let mut last: Option<usize> = None;
    for w in order {
        let tie =
            last.is_some_and(|l| cmp_ratio(&pm[w], &qm[w], &pm[l], &qm[l]) == Ordering::Equal);
        if tie {
            let g = groups.last_mut().expect("tie implies a group");
            g.0 += &pm[w];
            g.1 += &qm[w];
            g.2 = g.2.min(w as u32);
        } else {
            groups.push((pm[w].clone(), qm[w].clone(), w as u32));
        }
        last = Some(w);
    }

    let mut tails = vec![zero.clone(); groups.len() + 1];
    for g in (0..groups.len()).rev() {
        tails[g] = &tails[g + 1] + &groups[g].0;
    }
    let mut beta = zero.clone();
    for (g, (pg, qg, label)) in groups.iter().enumerate() {
        let rest = &tails[g + 1];
        if rest <= eps || g + 1 == groups.len() {
            let slack = eps - rest;
            let slack = if slack < zero { zero.clone() } else { slack };
            let mut gamma = (pg - &slack) / pg;
            if gamma < zero {
                gamma = zero.clone();
            }
            beta += &gamma * qg;
            let achieved_type1 = rest + (&one - &gamma) * pg;
            return Ok(ExactNpResult {
                beta,
                threshold_weight: *label,
                gamma,
                achieved_type1,
            });
        }
        beta += qg;
    }
    Ok(ExactNpResult {
        beta: one.clone(),
        threshold_weight: 0,
        gamma: one,
        achieved_type1: zero,
    })
}

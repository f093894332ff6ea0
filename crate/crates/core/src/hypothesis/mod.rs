//! Neyman–Pearson hypothesis testing.
//!
//! `D_h^ε(P‖Q) = -log₂ min { Q(Λ) : P(Λ) ≥ 1 - ε }` over tests `0 ≤ Λ ≤ 1`.
//! For commuting operands the optimum is the likelihood-ratio test: accept
//! outcomes in decreasing order of `P/Q` and randomize on the class where the
//! type-I budget runs out.
//!
//! The default engine works with log-masses so that `n` in the hundreds
//! neither overflows the binomial coefficients nor underflows `β`.

mod commuting;
mod exact;
mod oracle;

pub use commuting::{
    commuting_dh, commuting_np, d_max_commuting, d_max_from_spectrum, dh_from_spectrum,
    joint_spectrum, tensor_power_spectrum, JointSpectrum,
};
pub use exact::{np_divergence_exact, parse_decimal, ExactNpResult};
pub use oracle::{np_oracle, ORACLE_MAX_N};

use serde::Serialize;

use crate::error::{Error, Result};

/// Two Bernoulli hypotheses repeated over `n` independent copies.
///
/// `p_success` is the per-copy probability of the "success" outcome under
/// the null, `t_success` under the alternative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryHypothesisPair {
    p_success: f64,
    t_success: f64,
    n: u32,
}

impl BinaryHypothesisPair {
    pub fn new(p_success: f64, t_success: f64, n: u32) -> Result<Self> {
        for (name, x) in [("p_success", p_success), ("t_success", t_success)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {x} is not in [0, 1]"
                )));
            }
        }
        if n == 0 {
            return Err(Error::InvalidParameter(
                "copy count must be at least 1".into(),
            ));
        }
        Ok(Self {
            p_success,
            t_success,
            n,
        })
    }

    pub fn p_success(&self) -> f64 {
        self.p_success
    }

    pub fn t_success(&self) -> f64 {
        self.t_success
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Optimal test for a binary problem.
///
/// `threshold_weight` names the class that is accepted with probability
/// `gamma`; every class with a larger likelihood ratio is accepted fully.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NpResult {
    pub log2_beta: f64,
    pub threshold_weight: u32,
    pub gamma: f64,
    pub achieved_type1: f64,
}

impl NpResult {
    pub fn beta(&self) -> f64 {
        self.log2_beta.exp2()
    }

    /// `D_h^ε` in bits; `+∞` when the optimal type-II error vanishes.
    pub fn divergence(&self) -> f64 {
        -self.log2_beta
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!(
            "type-I error budget {eps} must lie in [0, 1)"
        )));
    }
    Ok(())
}

/// One outcome class of a classical discrimination problem, in log-masses.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogClass {
    pub ln_p: f64,
    pub ln_q: f64,
    pub label: u32,
}

impl LogClass {
    fn ln_ratio(&self) -> f64 {
        if self.ln_q == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            self.ln_p - self.ln_q
        }
    }
}

pub(crate) fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Kahan-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Likelihood-ratio fill over outcome classes.
///
/// Classes whose log-ratios differ by at most `tie_tol` are merged first, so
/// the randomization weight is unique. The budget check runs on tail sums
/// (mass of the classes not yet accepted), which stays accurate when `ε` is
/// zero or the boundary class is tiny. Masses are taken relative to their
/// computed totals, which cancels rounding common to every class.
pub(crate) fn neyman_pearson_fill(classes: &[LogClass], eps: f64, tie_tol: f64) -> NpResult {
    let mut q_total = KahanSum::default();
    for c in classes {
        q_total.add(c.ln_q.exp());
    }
    let ln_q_total = q_total.value().ln();
    let mut live: Vec<LogClass> = classes
        .iter()
        .copied()
        .filter(|c| c.ln_p > f64::NEG_INFINITY)
        .collect();
    live.sort_by(|a, b| {
        b.ln_ratio()
            .total_cmp(&a.ln_ratio())
            .then(a.label.cmp(&b.label))
    });

    let mut groups: Vec<LogClass> = Vec::with_capacity(live.len());
    let mut group_key = f64::NAN;
    for c in live {
        let key = c.ln_ratio();
        match groups.last_mut() {
            Some(g) if key == group_key || (key - group_key).abs() <= tie_tol => {
                g.ln_p = ln_add(g.ln_p, c.ln_p);
                g.ln_q = ln_add(g.ln_q, c.ln_q);
                g.label = g.label.min(c.label);
            }
            _ => {
                groups.push(c);
                group_key = key;
            }
        }
    }

    // tails[g] = P-mass of groups g.. (summed from the least likely end).
    let mut tails = vec![0.0; groups.len() + 1];
    let mut acc = KahanSum::default();
    for (g, c) in groups.iter().enumerate().rev() {
        acc.add(c.ln_p.exp());
        tails[g] = acc.value();
    }

    let p_total = tails[0];
    let budget = eps * p_total;
    let mut ln_beta = f64::NEG_INFINITY;
    for (g, c) in groups.iter().enumerate() {
        let rest = tails[g + 1];
        if rest <= budget || g + 1 == groups.len() {
            let p = c.ln_p.exp();
            let gamma = if p > 0.0 {
                ((p - (budget - rest).max(0.0)) / p).clamp(0.0, 1.0)
            } else {
                1.0
            };
            if gamma > 0.0 {
                ln_beta = ln_add(ln_beta, gamma.ln() + c.ln_q);
            }
            return NpResult {
                log2_beta: (ln_beta - ln_q_total) / std::f64::consts::LN_2,
                threshold_weight: c.label,
                gamma,
                achieved_type1: (rest + (1.0 - gamma) * p) / p_total,
            };
        }
        ln_beta = ln_add(ln_beta, c.ln_q);
    }
    // No outcome carries P-mass; only reachable for an empty problem.
    NpResult {
        log2_beta: 0.0,
        threshold_weight: 0,
        gamma: 1.0,
        achieved_type1: 0.0,
    }
}

fn ln_mass(count: u32, prob: f64) -> f64 {
    if count == 0 {
        0.0
    } else {
        count as f64 * prob.ln()
    }
}

/// Log-masses of the `n + 1` Hamming-weight classes of `Bernoulli(s)^n`.
pub(crate) fn binomial_log_masses(s: f64, n: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut ln_binom = KahanSum::default();
    for w in 0..=n {
        if w > 0 {
            ln_binom.add(((n - w + 1) as f64 / w as f64).ln());
        }
        out.push(ln_binom.value() + ln_mass(w, s) + ln_mass(n - w, 1.0 - s));
    }
    out
}

/// Exact `D_h^ε` between `Bernoulli(p)^n` and `Bernoulli(t)^n`.
///
/// Classes are indexed by the number of successes; the result's
/// `threshold_weight` is such a count.
pub fn np_divergence(hyp: &BinaryHypothesisPair, eps: f64) -> Result<NpResult> {
    check_eps(eps)?;
    let ln_p = binomial_log_masses(hyp.p_success, hyp.n);
    let ln_q = binomial_log_masses(hyp.t_success, hyp.n);
    let classes: Vec<LogClass> = (0..=hyp.n)
        .map(|w| LogClass {
            ln_p: ln_p[w as usize],
            ln_q: ln_q[w as usize],
            label: w,
        })
        .collect();
    // Ratios are affine in the weight; they only tie when p = t, where the
    // log-masses of each class coincide exactly.
    let tie_tol = if hyp.p_success == hyp.t_success {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(neyman_pearson_fill(&classes, eps, tie_tol))
}

/// Choice of arithmetic for [`np_divergence_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Log,
    Exact,
}

impl std::str::FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Engine::Log),
            "exact" => Ok(Engine::Exact),
            other => Err(Error::Parse(format!("unknown engine '{other}'"))),
        }
    }
}

/// Runs either engine on decimal inputs such as `"0.15"`.
///
/// The exact engine reads the decimals as exact rationals.
pub fn np_divergence_with(engine: Engine, p: &str, t: &str, n: u32, eps: &str) -> Result<NpResult> {
    match engine {
        Engine::Log => {
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number '{s}'")))
            };
            np_divergence(&BinaryHypothesisPair::new(num(p)?, num(t)?, n)?, num(eps)?)
        }
        Engine::Exact => {
            let r = np_divergence_exact(
                &parse_decimal(p)?,
                &parse_decimal(t)?,
                n,
                &parse_decimal(eps)?,
            )?;
            Ok(r.to_np_result())
        }
    }
}

//! Rate upper bounds from the unextendibility resource theory.
//!
//! For an `(n, M, ε)` protocol assisted by k-extendible post-processing,
//!
//! ```text
//! -log₂[1/M + 1/k - 1/(Mk)] ≤ D_h^ε(τ^{⊗n} ‖ σ^{⊗n})
//! ```
//!
//! for every k-extendible `σ`. Solving for `M` gives
//! `log₂ M ≤ log₂(1 - 1/k) - log₂(2^{-D} - 1/k)` whenever `2^{-D} > 1/k`.
//! For the depolarizing and erasure channels `τ` is the Choi state and `σ` is
//! taken from a one-parameter family sitting on the extendibility boundary,
//! which reduces `D` to a binary Neyman–Pearson problem.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extendibility::isotropic_qubit_threshold;
use crate::hypothesis::{
    d_max_commuting, neyman_pearson_fill, np_divergence, BinaryHypothesisPair, LogClass,
};
use crate::states::{depolarizing_choi, isotropic, ChannelKind, ChannelSpec};

/// Extension order `k`, or the `k → ∞` limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtOrder {
    Finite(u32),
    Infinity,
}

impl ExtOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtOrder::Finite(k) => Some(k),
            ExtOrder::Infinity => None,
        }
    }

    /// `1/k`, zero in the limit.
    pub fn inverse(self) -> f64 {
        match self {
            ExtOrder::Finite(k) => 1.0 / k as f64,
            ExtOrder::Infinity => 0.0,
        }
    }
}

impl fmt::Display for ExtOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtOrder::Finite(k) => write!(f, "{k}"),
            ExtOrder::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" => Ok(ExtOrder::Infinity),
            _ => s
                .parse::<u32>()
                .map(ExtOrder::Finite)
                .map_err(|_| Error::Parse(format!("bad extension order '{s}'"))),
        }
    }
}

impl Serialize for ExtOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtOrder::Finite(k) => s.serialize_u32(*k),
            ExtOrder::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Post-processing bound with `D_h^ε`.
    Thm2,
    /// Interleaved-protocol bound with `D_max`.
    Thm3,
    /// `k → ∞` limit of the post-processing bound.
    LimitKInf,
    Antidegradable,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Thm2 => "Thm2",
            Method::Thm3 => "Thm3",
            Method::LimitKInf => "LimitKInf",
            Method::Antidegradable => "Antidegradable",
        }
    }
}

/// Where the k-extendibility of the chosen `σ` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SigmaProvenance {
    /// Isotropic threshold bisected with the feasibility solver.
    Solver,
    /// Explicit extension (erasure certificate) or a separable state.
    Constructive,
    /// Isotropic threshold extrapolated past the bisected table.
    Interpolated,
}

/// Channel, block length, error and extension order for one bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery {
    pub channel: ChannelSpec,
    pub n: u32,
    pub eps: f64,
    pub k: ExtOrder,
    pub sigma_param: Option<f64>,
}

impl BoundQuery {
    pub fn new(channel: ChannelSpec, n: u32, eps: f64, k: ExtOrder) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "block length n must be at least 1".into(),
            ));
        }
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::InvalidParameter(format!(
                "eps = {eps} must lie in [0, 1)"
            )));
        }
        if let ExtOrder::Finite(k) = k {
            if k < 2 {
                return Err(Error::InvalidParameter(format!("extension order {k} < 2")));
            }
        }
        Ok(Self {
            channel,
            n,
            eps,
            k,
            sigma_param: None,
        })
    }

    pub fn with_sigma_param(mut self, x: f64) -> Self {
        self.sigma_param = Some(x);
        self
    }
}

/// A rate upper bound in qubits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult {
    pub n: u32,
    /// `(1/n) log₂ M` ceiling; `+∞` when the bound is vacuous.
    pub rate_bound: f64,
    pub k_used: ExtOrder,
    pub sigma_param_used: f64,
    pub method: Method,
    /// Divergence fed into the inversion, in bits.
    pub divergence: f64,
    pub sigma_provenance: SigmaProvenance,
}

impl BoundResult {
    /// `log₂ M` ceiling for the whole block.
    pub fn log2_m(&self) -> f64 {
        self.rate_bound * self.n as f64
    }

    pub fn is_vacuous(&self) -> bool {
        self.rate_bound.is_infinite()
    }
}

/// Largest `log₂ M` with `-log₂[1/M + 1/k - 1/(Mk)] ≤ d_total`.
///
/// Returns `+∞` when `2^{-d_total} ≤ 1/k`.
pub fn invert_theorem2(d_total: f64, k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("extension order {k} < 2")));
    }
    if d_total.is_nan() || d_total < -1e-12 {
        return Err(Error::InvalidParameter(format!(
            "divergence {d_total} must be >= 0"
        )));
    }
    let d = d_total.max(0.0);
    let inv_k = 1.0 / k as f64;
    let f = (-d).exp2();
    if f <= inv_k {
        return Ok(f64::INFINITY);
    }
    Ok(((1.0 - inv_k).log2() - (f - inv_k).log2()).max(0.0))
}

fn invert(d_total: f64, k: ExtOrder) -> Result<f64> {
    match k {
        ExtOrder::Finite(k) => invert_theorem2(d_total, k),
        ExtOrder::Infinity => Ok(d_total.max(0.0)),
    }
}

/// Largest isotropic fidelity `t` with `isotropic(t, 2)` k-extendible.
pub fn isotropic_threshold(k: ExtOrder) -> (f64, SigmaProvenance) {
    match k {
        ExtOrder::Infinity => (0.5, SigmaProvenance::Constructive),
        ExtOrder::Finite(k) => isotropic_qubit_threshold(k),
    }
}

const OVERRIDE_SLACK: f64 = 1e-12;

/// Post-processing bound for the qubit depolarizing channel with an
/// isotropic `σ^{⊗n}`.
///
/// Without an override `σ` sits at the extendibility threshold, or equals
/// the Choi state when that is already below it.
pub fn depolarizing_bound(q: &BoundQuery) -> Result<BoundResult> {
    if q.channel.kind() != ChannelKind::Depolarizing {
        return Err(Error::InvalidParameter(
            "depolarizing_bound needs a depolarizing channel".into(),
        ));
    }
    let (t_max, provenance) = isotropic_threshold(q.k);
    let t = match q.sigma_param {
        Some(t) if !(0.0..=t_max + OVERRIDE_SLACK).contains(&t) => {
            return Err(Error::InvalidParameter(format!(
                "isotropic parameter {t} is not k-extendible for k = {} (threshold {t_max})",
                q.k
            )))
        }
        Some(t) => t,
        // When the Choi state is itself below the threshold it is the best σ.
        None => t_max.min(1.0 - q.channel.p()),
    };
    let hyp = BinaryHypothesisPair::new(1.0 - q.channel.p(), t, q.n)?;
    let divergence = np_divergence(&hyp, q.eps)?.divergence();
    finish(q, divergence, t, provenance)
}

fn finish(
    q: &BoundQuery,
    divergence: f64,
    sigma: f64,
    provenance: SigmaProvenance,
) -> Result<BoundResult> {
    let log2_m = invert(divergence, q.k)?;
    Ok(BoundResult {
        n: q.n,
        rate_bound: log2_m / q.n as f64,
        k_used: q.k,
        sigma_param_used: sigma,
        method: match q.k {
            ExtOrder::Finite(_) => Method::Thm2,
            ExtOrder::Infinity => Method::LimitKInf,
        },
        divergence,
        sigma_provenance: provenance,
    })
}

/// Post-processing bound for the erasure channel with
/// `σ = erasure_family(max(1 - 1/k, p))^{⊗n}`. At `q = 1 - 1/k` the Φ-weight
/// is `1/k`; `q = p` makes `σ` the channel output itself.
pub fn erasure_bound(q: &BoundQuery) -> Result<BoundResult> {
    if q.channel.kind() != ChannelKind::Erasure {
        return Err(Error::InvalidParameter(
            "erasure_bound needs an erasure channel".into(),
        ));
    }
    let q_min = 1.0 - q.k.inverse();
    let sigma_q = match q.sigma_param {
        Some(x) if !(q_min - OVERRIDE_SLACK..=1.0).contains(&x) => {
            return Err(Error::InvalidParameter(format!(
                "erasure weight {x} is below the certified k-extendible range [{q_min}, 1]"
            )))
        }
        Some(x) => x,
        None => q_min.max(q.channel.p()),
    };
    let hyp = BinaryHypothesisPair::new(1.0 - q.channel.p(), (1.0 - sigma_q).max(0.0), q.n)?;
    let divergence = np_divergence(&hyp, q.eps)?.divergence();
    finish(q, divergence, sigma_q, SigmaProvenance::Constructive)
}

/// Dispatches on the channel kind.
pub fn post_processing_bound(q: &BoundQuery) -> Result<BoundResult> {
    match q.channel.kind() {
        ChannelKind::Depolarizing => depolarizing_bound(q),
        ChannelKind::Erasure => erasure_bound(q),
    }
}

/// Distillation bound for `n` copies of a Bell-diagonal state.
///
/// `spectrum[0]` is the weight on `Φ`, the rest the weights on the other
/// three Bell states. `σ` is the isotropic state at the k-extendibility
/// boundary; both are Bell-diagonal, so `D_h^ε` is a classical problem over
/// the multinomial types of the four Bell outcomes. When the three non-Φ
/// weights coincide this is the binomial problem of the depolarizing bound.
pub fn distillation_bound_bell_diagonal(
    spectrum: [f64; 4],
    n: u32,
    eps: f64,
    k: ExtOrder,
) -> Result<BoundResult> {
    if spectrum.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::InvalidParameter(format!(
            "malformed Bell spectrum {spectrum:?}"
        )));
    }
    let total: f64 = spectrum.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "Bell spectrum sums to {total}, expected 1"
        )));
    }
    let q = BoundQuery::new(ChannelSpec::depolarizing(1.0 - spectrum[0])?, n, eps, k)?;
    let (t_max, provenance) = isotropic_threshold(k);
    let t = t_max.min(spectrum[0]);
    let isotropic_type = spectrum[1] == spectrum[2] && spectrum[2] == spectrum[3];
    let divergence = if isotropic_type {
        np_divergence(&BinaryHypothesisPair::new(spectrum[0], t, n)?, eps)?.divergence()
    } else {
        bell_multinomial_divergence(spectrum, t, n, eps)
    };
    finish(&q, divergence, t, provenance)
}

fn bell_multinomial_divergence(spectrum: [f64; 4], t: f64, n: u32, eps: f64) -> f64 {
    let off = (1.0 - t) / 3.0;
    let sigma = [t, off, off, off];
    let ln_fact: Vec<f64> = std::iter::once(0.0)
        .chain((1..=n).scan(0.0, |acc, i| {
            *acc += (i as f64).ln();
            Some(*acc)
        }))
        .collect();
    let term = |count: u32, x: f64| {
        if count == 0 {
            0.0
        } else {
            count as f64 * x.ln()
        }
    };
    let mut classes = Vec::new();
    let mut label = 0u32;
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let d = n - a - b - c;
                let counts = [a, b, c, d];
                let ln_coeff =
                    ln_fact[n as usize] - counts.iter().map(|&m| ln_fact[m as usize]).sum::<f64>();
                let ln_p = ln_coeff
                    + counts
                        .iter()
                        .zip(&spectrum)
                        .map(|(&m, &x)| term(m, x))
                        .sum::<f64>();
                let ln_q = ln_coeff
                    + counts
                        .iter()
                        .zip(&sigma)
                        .map(|(&m, &x)| term(m, x))
                        .sum::<f64>();
                classes.push(LogClass { ln_p, ln_q, label });
                label += 1;
            }
        }
    }
    neyman_pearson_fill(&classes, eps, 1e-12).divergence()
}

/// Interleaved-protocol bound for the depolarizing channel:
/// `log₂ M ≤ inverse(n Ẽ + log₂(1/(1-ε)))` with `Ẽ` the max-relative entropy
/// from the Choi state to the best isotropic `σ` below the threshold.
///
/// Restricting the infimum to isotropic states can only raise `Ẽ`, so the
/// bound remains valid.
pub fn theorem3_bound(q: &BoundQuery) -> Result<BoundResult> {
    if q.channel.kind() != ChannelKind::Depolarizing {
        return Err(Error::InvalidParameter(format!(
            "interleaved bound is implemented for the depolarizing channel, not {}",
            q.channel.kind()
        )));
    }
    let (t_max, provenance) = isotropic_threshold(q.k);
    let p = q.channel.p();
    let t = match q.sigma_param {
        Some(t) if !(t > 0.0 && t <= t_max + OVERRIDE_SLACK) => {
            return Err(Error::InvalidParameter(format!(
                "isotropic parameter {t} is not in (0, {t_max}]"
            )))
        }
        Some(t) => t,
        // Φ-ratio (1-p)/t falls and the complement ratio p/(1-t) rises with t;
        // their maximum is smallest at t = 1 - p, capped by the threshold.
        None => t_max.min(1.0 - p).max(f64::MIN_POSITIVE),
    };
    let e_max = d_max_commuting(&depolarizing_choi(p)?, &isotropic(t, 2)?)?.max(0.0);
    let divergence = q.n as f64 * e_max + (1.0 / (1.0 - q.eps)).log2();
    let log2_m = invert(divergence, q.k)?;
    Ok(BoundResult {
        n: q.n,
        rate_bound: log2_m / q.n as f64,
        k_used: q.k,
        sigma_param_used: t,
        method: Method::Thm3,
        divergence,
        sigma_provenance: provenance,
    })
}

/// `(1/n) log₂(1/(1 - 2ε))` for antidegradable channels, `ε ∈ [0, 1/2)`.
pub fn antidegradable_bound(n: u32, eps: f64) -> Result<BoundResult> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "block length n must be at least 1".into(),
        ));
    }
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::InvalidParameter(format!(
            "antidegradable bound needs eps in [0, 1/2), got {eps}"
        )));
    }
    let divergence = (1.0 / (1.0 - eps)).log2();
    Ok(BoundResult {
        n,
        rate_bound: (1.0 / (1.0 - 2.0 * eps)).log2() / n as f64,
        k_used: ExtOrder::Finite(2),
        sigma_param_used: f64::NAN,
        method: Method::Antidegradable,
        divergence,
        sigma_provenance: SigmaProvenance::Constructive,
    })
}

/// Largest `k_max` scanned exhaustively by [`optimize_k`]; beyond it the
/// scan uses a doubling grid with local refinement.
pub const EXHAUSTIVE_K_LIMIT: u32 = 4096;

fn better(candidate: &BoundResult, incumbent: &BoundResult) -> bool {
    let (c, b) = (candidate.rate_bound, incumbent.rate_bound);
    if b.is_infinite() {
        return c.is_finite();
    }
    c < b - 1e-12 * b.abs().max(1.0)
}

/// Minimum post-processing bound over `k ∈ {2, …, k_max} ∪ {∞}`.
///
/// Ties go to the smaller `k`; the limit wins only when strictly better.
pub fn optimize_k(channel: ChannelSpec, n: u32, eps: f64, k_max: u32) -> Result<BoundResult> {
    if k_max < 2 {
        return Err(Error::InvalidParameter(format!("k_max = {k_max} < 2")));
    }
    let eval =
        |k: u32| post_processing_bound(&BoundQuery::new(channel, n, eps, ExtOrder::Finite(k))?);
    let mut best = eval(2)?;
    let consider = |k: u32, best: &mut BoundResult| -> Result<()> {
        let r = eval(k)?;
        if better(&r, best) {
            *best = r;
        }
        Ok(())
    };
    if k_max <= EXHAUSTIVE_K_LIMIT {
        for k in 3..=k_max {
            consider(k, &mut best)?;
        }
    } else {
        let mut grid: Vec<u32> = std::iter::successors(Some(2u32), |&k| k.checked_mul(2))
            .take_while(|&k| k <= k_max)
            .collect();
        if *grid.last().expect("grid starts at 2") != k_max {
            grid.push(k_max);
        }
        for &k in &grid[1..] {
            consider(k, &mut best)?;
        }
        let center = best.k_used.finite().expect("finite candidates only");
        let lo = (center / 2).max(2);
        let hi = center.saturating_mul(2).min(k_max);
        for k in lo..=hi {
            consider(k, &mut best)?;
        }
    }
    let limit = post_processing_bound(&BoundQuery::new(channel, n, eps, ExtOrder::Infinity)?)?;
    if better(&limit, &best) {
        best = limit;
    }
    Ok(best)
}

/// Rate of the `k → ∞` limit (the separable-`σ` bound).
pub fn limit_bound(channel: ChannelSpec, n: u32, eps: f64) -> Result<BoundResult> {
    post_processing_bound(&BoundQuery::new(channel, n, eps, ExtOrder::Infinity)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::depolarizing_choi;

    fn dep(p: f64) -> ChannelSpec {
        ChannelSpec::depolarizing(p).unwrap()
    }

    fn era(p: f64) -> ChannelSpec {
        ChannelSpec::erasure(p).unwrap()
    }

    fn bound(channel: ChannelSpec, n: u32, eps: f64, k: ExtOrder) -> BoundResult {
        post_processing_bound(&BoundQuery::new(channel, n, eps, k).unwrap()).unwrap()
    }

    fn np_d(p: f64, t: f64, n: u32, eps: f64) -> f64 {
        np_divergence(&BinaryHypothesisPair::new(p, t, n).unwrap(), eps)
            .unwrap()
            .divergence()
    }

    #[test]
    fn inversion_examples() {
        for k in [2, 3, 100] {
            assert_eq!(invert_theorem2(0.0, k).unwrap(), 0.0);
            assert_eq!(invert_theorem2(10.0, k).unwrap(), f64::INFINITY);
        }
        assert_eq!(invert_theorem2(1.0, 2).unwrap(), f64::INFINITY);
        let d = np_d(0.85, 0.75, 1, 0.05);
        assert!((invert_theorem2(d, 2).unwrap() - 1.2f64.log2()).abs() < 1e-9);
        assert!(invert_theorem2(0.5, 1).is_err());
        assert!(invert_theorem2(-1.0, 2).is_err());
    }

    #[test]
    fn inversion_round_trips_through_theorem2() {
        for k in [2u32, 5, 40] {
            for d in [0.01, 0.1, 0.3] {
                let log2_m = invert_theorem2(d, k).unwrap();
                if log2_m.is_finite() {
                    let m = log2_m.exp2();
                    let kf = k as f64;
                    let lhs = -(1.0 / m + 1.0 / kf - 1.0 / (m * kf)).log2();
                    assert!((lhs - d).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn depolarizing_examples() {
        let r = bound(dep(0.15), 1, 0.05, ExtOrder::Finite(2));
        assert!((r.rate_bound - 1.2f64.log2()).abs() < 1e-9);
        assert_eq!(r.sigma_param_used, 0.75);
        assert_eq!(r.method, Method::Thm2);

        let r = bound(dep(0.15), 1, 0.05, ExtOrder::Infinity);
        assert_eq!(r.rate_bound, np_d(0.85, 0.5, 1, 0.05));
        assert_eq!(r.method, Method::LimitKInf);

        let r = bound(dep(0.0), 1, 0.0, ExtOrder::Finite(2));
        assert!((r.rate_bound - 1.0).abs() < 1e-12);

        // Extendible Choi state: 1 - p below the threshold, so σ = τ.
        let eps = 0.05;
        let floor = invert_theorem2((1.0f64 / (1.0 - eps)).log2(), 3).unwrap();
        for n in [1, 4, 9] {
            let r = bound(dep(0.4), n, eps, ExtOrder::Finite(3));
            assert_eq!(r.sigma_param_used, 0.6);
            assert!((r.rate_bound - floor / n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_overrides() {
        let q = BoundQuery::new(dep(0.15), 3, 0.05, ExtOrder::Infinity)
            .unwrap()
            .with_sigma_param(0.5);
        assert_eq!(
            depolarizing_bound(&q).unwrap().rate_bound,
            np_d(0.85, 0.5, 3, 0.05) / 3.0
        );
        let bad = BoundQuery::new(dep(0.15), 1, 0.05, ExtOrder::Finite(2))
            .unwrap()
            .with_sigma_param(0.8);
        assert!(depolarizing_bound(&bad).is_err());
        let looser = BoundQuery::new(dep(0.15), 1, 0.05, ExtOrder::Finite(2))
            .unwrap()
            .with_sigma_param(0.6);
        assert!(
            depolarizing_bound(&looser).unwrap().rate_bound
                >= bound(dep(0.15), 1, 0.05, ExtOrder::Finite(2)).rate_bound
        );
        let bad = BoundQuery::new(era(0.35), 1, 0.05, ExtOrder::Finite(4))
            .unwrap()
            .with_sigma_param(0.5);
        assert!(erasure_bound(&bad).is_err());
        assert!(
            erasure_bound(&BoundQuery::new(dep(0.1), 1, 0.05, ExtOrder::Finite(2)).unwrap())
                .is_err()
        );
        assert!(depolarizing_bound(
            &BoundQuery::new(era(0.1), 1, 0.05, ExtOrder::Finite(2)).unwrap()
        )
        .is_err());
    }

    #[test]
    fn erasure_examples() {
        let r = bound(era(0.5), 1, 0.05, ExtOrder::Finite(2));
        assert!((r.divergence - (1.0f64 / 0.95).log2()).abs() < 1e-12);
        assert!((r.rate_bound - (0.5f64 / 0.45).log2()).abs() < 1e-12);
        assert_eq!(r.sigma_provenance, SigmaProvenance::Constructive);

        let r = bound(era(0.35), 1, 0.05, ExtOrder::Finite(2));
        let expected = invert_theorem2(np_d(0.65, 0.5, 1, 0.05), 2).unwrap();
        assert!((r.rate_bound - expected).abs() < 1e-12);

        // Full erasure against the threshold state: success probability 0 against 1/k.
        for k in [2, 3, 5] {
            let q = BoundQuery::new(era(1.0), 1, 0.05, ExtOrder::Finite(k)).unwrap();
            let r = erasure_bound(&q.with_sigma_param(1.0 - 1.0 / k as f64)).unwrap();
            let beta = 0.95 * (1.0 - 1.0 / k as f64);
            assert!((r.divergence + beta.log2()).abs() < 1e-12);
            let inv_k = 1.0 / k as f64;
            if beta > inv_k {
                assert!((r.log2_m() - ((1.0 - inv_k) / (beta - inv_k)).log2()).abs() < 1e-12);
            } else {
                assert!(r.is_vacuous());
            }
            // The default σ is the channel's own output, which is k-extendible.
            let own = bound(era(1.0), 1, 0.05, ExtOrder::Finite(k));
            assert_eq!(own.sigma_param_used, 1.0);
            assert!((own.divergence - (1.0f64 / 0.95).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn distillation_examples() {
        for (p, n, eps, k) in [
            (0.15, 1, 0.05, 2),
            (0.1, 7, 0.05, 3),
            (0.3, 20, 0.2, 5),
            (0.05, 12, 0.01, 40),
        ] {
            let spec = depolarizing_choi(p).unwrap();
            let mut w = spec.eigenvalues().unwrap();
            w.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let spectrum = [1.0 - p, p / 3.0, p / 3.0, p / 3.0];
            assert!((w[0] - spectrum[0]).abs() < 1e-12);
            let a =
                distillation_bound_bell_diagonal(spectrum, n, eps, ExtOrder::Finite(k)).unwrap();
            let b = bound(dep(p), n, eps, ExtOrder::Finite(k));
            assert_eq!(a.rate_bound, b.rate_bound);
        }
        let r = distillation_bound_bell_diagonal(
            [0.75, 0.25 / 3.0, 0.25 / 3.0, 0.25 / 3.0],
            1,
            0.05,
            ExtOrder::Finite(2),
        )
        .unwrap();
        assert!((r.divergence - (1.0f64 / 0.95).log2()).abs() < 1e-12);
        let r = distillation_bound_bell_diagonal([1.0, 0.0, 0.0, 0.0], 1, 0.0, ExtOrder::Finite(2))
            .unwrap();
        assert!((r.divergence + 0.75f64.log2()).abs() < 1e-12);
        assert!((r.rate_bound - 1.0).abs() < 1e-12);
        assert!(distillation_bound_bell_diagonal(
            [0.5, 0.5, 0.5, 0.0],
            1,
            0.05,
            ExtOrder::Finite(2)
        )
        .is_err());
    }

    #[test]
    fn multinomial_path_agrees_with_binomial_on_isotropic_spectra() {
        let spectrum = [0.85, 0.05, 0.05, 0.05];
        for n in [1, 3, 6] {
            let b = np_d(0.85, 0.75, n, 0.05);
            let m = bell_multinomial_divergence(spectrum, 0.75, n, 0.05);
            assert!((b - m).abs() < 1e-9, "n={n}: {b} vs {m}");
        }
        // Redistributing weight among the non-Φ outcomes can only help the tester.
        let skew = bell_multinomial_divergence([0.85, 0.1, 0.05, 0.0], 0.75, 4, 0.05);
        assert!(skew >= np_d(0.85, 0.75, 4, 0.05) - 1e-12);
    }

    #[test]
    fn theorem3_examples() {
        let eps = 0.05;
        let q = BoundQuery::new(dep(0.4), 3, eps, ExtOrder::Finite(2)).unwrap();
        let r = theorem3_bound(&q).unwrap();
        let expected = invert_theorem2((1.0f64 / (1.0 - eps)).log2(), 2).unwrap() / 3.0;
        assert!((r.rate_bound - expected).abs() < 1e-12);

        let q = BoundQuery::new(dep(0.15), 1, eps, ExtOrder::Finite(2)).unwrap();
        let r = theorem3_bound(&q).unwrap();
        let e_max = r.divergence - (1.0f64 / (1.0 - eps)).log2();
        assert!((e_max - (0.85f64 / 0.75).log2()).abs() < 1e-10);
        assert_eq!(r.method, Method::Thm3);

        let e_limit = (0.85f64 / 0.5).log2();
        let e_max = e_limit;
        let mut prev = f64::INFINITY;
        for n in 1..=100 {
            let q = BoundQuery::new(dep(0.15), n, eps, ExtOrder::Infinity).unwrap();
            let r = theorem3_bound(&q).unwrap();
            assert!(r.rate_bound >= e_max - 1e-12 && r.rate_bound <= prev + 1e-12);
            prev = r.rate_bound;
        }
        assert!(prev - e_max < 0.001);
        assert!(
            theorem3_bound(&BoundQuery::new(era(0.1), 1, eps, ExtOrder::Finite(2)).unwrap())
                .is_err()
        );
    }

    #[test]
    fn antidegradable_examples() {
        for n in [1, 5, 50] {
            assert_eq!(antidegradable_bound(n, 0.0).unwrap().rate_bound, 0.0);
        }
        assert!(
            (antidegradable_bound(1, 0.05).unwrap().rate_bound - (1.0f64 / 0.9).log2()).abs()
                < 1e-12
        );
        assert!((antidegradable_bound(10, 0.25).unwrap().rate_bound - 0.1).abs() < 1e-12);
        assert!(antidegradable_bound(1, 0.5).is_err());
        assert!(antidegradable_bound(0, 0.1).is_err());
    }

    #[test]
    fn optimize_k_examples() {
        // At n = 1 every order ties with the limit at log₂(1.2); ties go to k = 2.
        let one = optimize_k(dep(0.15), 1, 0.05, 64).unwrap();
        assert!((one.rate_bound - 1.2f64.log2()).abs() < 1e-9);
        assert_eq!(one.k_used, ExtOrder::Finite(2));
        let small = optimize_k(dep(0.15), 5, 0.05, 64).unwrap();
        assert!(small.rate_bound < limit_bound(dep(0.15), 5, 0.05).unwrap().rate_bound - 1e-3);
        assert!(small.k_used.finite().unwrap() <= 8);
        for n in [1, 5, 20, 60] {
            let opt = optimize_k(dep(0.15), n, 0.05, 256).unwrap();
            let limit = limit_bound(dep(0.15), n, 0.05).unwrap().rate_bound;
            assert!(opt.rate_bound <= limit * (1.0 + 1e-12));
        }
        let mut prev = f64::INFINITY;
        for k_max in [2, 3, 8, 64, 512, 5000] {
            let r = optimize_k(dep(0.15), 10, 0.05, k_max).unwrap();
            assert!(r.rate_bound <= prev);
            prev = r.rate_bound;
        }
        assert!(optimize_k(dep(0.15), 1, 0.05, 1).is_err());
    }

    #[test]
    fn vacuity_is_monotone_in_n() {
        for k in [2, 3, 4] {
            let mut vacuous = false;
            for n in 1..=80 {
                let r = bound(dep(0.15), n, 0.05, ExtOrder::Finite(k));
                if vacuous {
                    assert!(r.is_vacuous(), "k={k} n={n}");
                }
                vacuous |= r.is_vacuous();
            }
        }
    }

    #[test]
    fn ext_order_parsing() {
        assert_eq!("inf".parse::<ExtOrder>().unwrap(), ExtOrder::Infinity);
        assert_eq!("7".parse::<ExtOrder>().unwrap(), ExtOrder::Finite(7));
        assert!("x".parse::<ExtOrder>().is_err());
        assert_eq!(ExtOrder::Infinity.to_string(), "inf");
        assert!(BoundQuery::new(dep(0.1), 0, 0.05, ExtOrder::Finite(2)).is_err());
        assert!(BoundQuery::new(dep(0.1), 1, 1.0, ExtOrder::Finite(2)).is_err());
    }
}

//! Built-in consistency suites run by `unext selftest`.

use num_rational::BigRational;

use crate::bounds::{depolarizing_bound, distillation_bound_bell_diagonal, BoundQuery, ExtOrder};
use crate::error::Result;
use crate::extendibility::{
    check_k_extendible, erasure_certificate, verify_certificate, ExtStatus, ExtensionProblem,
    ISOTROPIC_QUBIT_THRESHOLDS,
};
use crate::hypothesis::{
    dh_from_spectrum, joint_spectrum, np_divergence, np_divergence_exact, np_oracle,
    tensor_power_spectrum, BinaryHypothesisPair,
};
use crate::states::{depolarizing_choi, erasure_family, erasure_output, isotropic, ChannelSpec};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SelftestOptions {
    /// Added to every tabulated isotropic threshold before it is checked.
    pub threshold_perturbation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for suite in &self.suites {
            let tag = if suite.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("{tag} {}: {}\n", suite.name, suite.detail));
        }
        let failed = self.suites.iter().filter(|s| !s.passed).count();
        s.push_str(&format!(
            "{} suites, {} failed\n",
            self.suites.len(),
            failed
        ));
        s
    }
}

const GRID: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

fn oracle_agreement() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for &p in &GRID {
        for &t in &GRID {
            for &eps in &[0.0, 0.05, 0.3] {
                for n in 1..=8 {
                    let hyp = BinaryHypothesisPair::new(p, t, n)?;
                    let fast = np_divergence(&hyp, eps)?.log2_beta;
                    let slow = np_oracle(&hyp, eps)?;
                    worst = worst.max((fast - slow).abs());
                    cases += 1;
                }
            }
        }
    }
    Ok((
        worst <= 1e-12,
        format!("{cases} cases, max |Δlog2 β| = {worst:.2e}"),
    ))
}

fn identical_hypotheses() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for &p in &GRID {
        for &(n, eps) in &[(1, 0.05), (7, 0.3), (40, 0.01), (200, 0.2)] {
            let d = np_divergence(&BinaryHypothesisPair::new(p, p, n)?, eps)?.divergence();
            worst = worst.max((d - (1.0 / (1.0 - eps)).log2()).abs());
        }
    }
    Ok((
        worst <= 1e-12,
        format!("20 cases, max deviation {worst:.2e}"),
    ))
}

fn certificates() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for k in 2..=4 {
        let cert = erasure_certificate(k)?;
        let rho = erasure_family(1.0 - 1.0 / k as f64)?;
        worst = worst.max(verify_certificate(&cert, &rho, k)?.worst());
    }
    let v = check_k_extendible(&ExtensionProblem::new(erasure_family(0.5)?, 2)?)?;
    let solver_ok = v.is_feasible();
    Ok((
        worst <= 1e-10 && solver_ok,
        format!(
            "erasure certificates k=2..4 worst defect {worst:.2e}; erasure:0.5 k=2 {}",
            v.status.as_str()
        ),
    ))
}

fn thresholds(perturbation: f64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for &(k, t) in ISOTROPIC_QUBIT_THRESHOLDS.iter().filter(|(k, _)| *k <= 4) {
        let t = t + perturbation;
        let status = |x: f64| -> Result<ExtStatus> {
            if !(0.0..=1.0).contains(&x) {
                return Ok(ExtStatus::InfeasibleSignal);
            }
            Ok(check_k_extendible(&ExtensionProblem::new(isotropic(x, 2)?, k as usize)?)?.status)
        };
        let at = status(t)?;
        let above = status(t + 0.05)?;
        let good = at == ExtStatus::Feasible && above == ExtStatus::InfeasibleSignal;
        ok &= good;
        notes.push(format!(
            "k={k} t={t:.4}: {}/{}",
            at.as_str(),
            above.as_str()
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn cross_module() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    // Commuting reduction on tensor powers.
    let dep = joint_spectrum(&depolarizing_choi(0.15)?, &isotropic(0.75, 2)?)?;
    for n in 1..=6 {
        let quantum = dh_from_spectrum(&tensor_power_spectrum(&dep, n), 0.05)?.divergence();
        let binary = np_divergence(&BinaryHypothesisPair::new(0.85, 0.75, n)?, 0.05)?.divergence();
        worst = worst.max((quantum - binary).abs());
    }
    let era = joint_spectrum(&erasure_output(0.35)?, &erasure_family(0.5)?)?;
    for n in 1..=4 {
        let quantum = dh_from_spectrum(&tensor_power_spectrum(&era, n), 0.05)?.divergence();
        let binary = np_divergence(&BinaryHypothesisPair::new(0.65, 0.5, n)?, 0.05)?.divergence();
        worst = worst.max((quantum - binary).abs());
    }
    // Choi-state distillation bound against the channel bound.
    let spectrum = [0.85, 0.05, 0.05, 0.05];
    for &n in &[1, 5, 20] {
        for k in [ExtOrder::Finite(2), ExtOrder::Finite(3), ExtOrder::Infinity] {
            let a = distillation_bound_bell_diagonal(spectrum, n, 0.05, k)?.rate_bound;
            let b = depolarizing_bound(&BoundQuery::new(
                ChannelSpec::depolarizing(0.15)?,
                n,
                0.05,
                k,
            )?)?
            .rate_bound;
            if a.is_finite() || b.is_finite() {
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok((worst <= 1e-9, format!("max deviation {worst:.2e}")))
}

fn engines() -> Result<(bool, String)> {
    let p = BigRational::new(17.into(), 20.into());
    let t = BigRational::new(3.into(), 4.into());
    let eps = BigRational::new(1.into(), 20.into());
    let n = 50;
    let exact = np_divergence_exact(&p, &t, n, &eps)?.log2_beta();
    let fast = np_divergence(&BinaryHypothesisPair::new(0.85, 0.75, n)?, 0.05)?.log2_beta;
    let rel = ((fast - exact) * std::f64::consts::LN_2).abs();
    Ok((rel <= 1e-9, format!("n=50 relative β gap {rel:.2e}")))
}

type Suite = Box<dyn Fn() -> Result<(bool, String)>>;

/// Runs every suite with the tabulated thresholds as they are.
pub fn run_selftest() -> SelftestReport {
    run_selftest_with(SelftestOptions::default())
}

pub fn run_selftest_with(opts: SelftestOptions) -> SelftestReport {
    let suites: Vec<(&'static str, Suite)> = vec![
        ("np-oracle-agreement", Box::new(oracle_agreement)),
        ("identical-hypotheses", Box::new(identical_hypotheses)),
        ("certificate-soundness", Box::new(certificates)),
        (
            "threshold-fixtures",
            Box::new(move || thresholds(opts.threshold_perturbation)),
        ),
        ("cross-module-equality", Box::new(cross_module)),
        ("engine-cross-validation", Box::new(engines)),
    ];
    let suites = suites
        .into_iter()
        .map(|(name, f)| match f() {
            Ok((passed, detail)) => SuiteOutcome {
                name,
                passed,
                detail,
            },
            Err(e) => SuiteOutcome {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect();
    SelftestReport { suites }
}

//! k-extendibility of bipartite states.
//!
//! A state `ρ_AB` is k-extendible when some state `ω_{A B_1 … B_k}` is
//! invariant under every permutation of the B factors and reduces to `ρ_AB`
//! on `A B_1`. Membership is decided by Dykstra's alternating projections
//! between the PSD cone and the affine set cut out by those two linear
//! conditions; a feasible run hands back the extension as a certificate.

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, eig_hermitian_warm, kron, partial_trace, permutation_index_map, psd_from_eigen,
    ComplexMatrix, Eigen, HermitianMatrix, SubsystemDims, C64, ZERO,
};
use crate::states::{isotropic, max_entangled_vector, DensityMatrix};

/// Largest extension dimension `d_A d_B^k` the solver accepts.
pub const SCALE_GUARD: usize = 4096;

pub const DEFAULT_TOL: f64 = 1e-7;
pub const DEFAULT_MAX_ITER: usize = 50_000;

/// Consecutive stalled iterations before infeasibility is signalled.
const STALL_WINDOW: usize = 200;
/// Relative change of the inter-set distance counted as a stall.
const STALL_RELATIVE_CHANGE: f64 = 1e-6;

/// All permutations of `0..k` in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// How the B-factor permutation average is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetrizeStrategy {
    /// Exact average over all k! permutations.
    FullGroup,
    /// Repeated averaging over the adjacent transpositions until the
    /// invariance defect drops below 1e-13. Needs only k-1 maps per step.
    GeneratorOrbit,
}

/// Precomputed basis-index maps of `I_A ⊗ W^π` on `A B_1 … B_k`.
#[derive(Debug, Clone)]
pub struct Symmetrizer {
    d_a: usize,
    d_b: usize,
    k: usize,
    strategy: SymmetrizeStrategy,
    maps: Vec<Vec<usize>>,
}

impl Symmetrizer {
    pub fn new(d_a: usize, d_b: usize, k: usize) -> Self {
        Self::with_strategy(d_a, d_b, k, SymmetrizeStrategy::FullGroup)
    }

    pub fn with_strategy(d_a: usize, d_b: usize, k: usize, strategy: SymmetrizeStrategy) -> Self {
        let perms: Vec<Vec<usize>> = match strategy {
            SymmetrizeStrategy::FullGroup => all_permutations(k),
            SymmetrizeStrategy::GeneratorOrbit => (0..k.saturating_sub(1))
                .map(|i| {
                    let mut p: Vec<usize> = (0..k).collect();
                    p.swap(i, i + 1);
                    p
                })
                .collect(),
        };
        let block = d_b.pow(k as u32);
        let maps = perms
            .iter()
            .map(|perm| {
                let local = permutation_index_map(d_b, perm);
                let mut full = Vec::with_capacity(d_a * block);
                for a in 0..d_a {
                    full.extend(local.iter().map(|&b| a * block + b));
                }
                full
            })
            .collect();
        Self {
            d_a,
            d_b,
            k,
            strategy,
            maps,
        }
    }

    pub fn dim(&self) -> usize {
        self.d_a * self.d_b.pow(self.k as u32)
    }

    fn average(&self, omega: &ComplexMatrix, include_identity: bool) -> ComplexMatrix {
        let n = omega.rows();
        let count = self.maps.len() + usize::from(include_identity);
        let w = 1.0 / count as f64;
        let mut out = if include_identity {
            omega.scale(w)
        } else {
            ComplexMatrix::zeros(n, n)
        };
        for map in &self.maps {
            for i in 0..n {
                let mi = map[i];
                for j in 0..n {
                    let v = omega[(i, j)];
                    if v != ZERO {
                        out[(mi, map[j])] += v * w;
                    }
                }
            }
        }
        out
    }

    /// Largest entry change under any stored permutation.
    pub fn invariance_defect(&self, omega: &HermitianMatrix) -> f64 {
        let m = omega.as_matrix();
        let n = m.rows();
        let mut worst = 0.0f64;
        for map in &self.maps {
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((m[(map[i], map[j])] - m[(i, j)]).norm());
                }
            }
        }
        worst
    }

    /// Projects onto the permutation-invariant operators.
    pub fn symmetrize(&self, omega: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(omega.dim(), self.dim(), "symmetrize: dimension mismatch");
        match self.strategy {
            SymmetrizeStrategy::FullGroup => {
                HermitianMatrix::hermitize(self.average(omega.as_matrix(), false))
            }
            SymmetrizeStrategy::GeneratorOrbit => {
                let mut cur = omega.clone();
                for _ in 0..100_000 {
                    if self.invariance_defect(&cur) <= 1e-13 {
                        break;
                    }
                    cur = HermitianMatrix::hermitize(self.average(cur.as_matrix(), true));
                }
                cur
            }
        }
    }
}

/// Average of `ω` over all permutations of the `k` B factors.
pub fn symmetrize(omega: &HermitianMatrix, d_a: usize, d_b: usize, k: usize) -> HermitianMatrix {
    Symmetrizer::new(d_a, d_b, k).symmetrize(omega)
}

fn extension_dims(d_a: usize, d_b: usize, k: usize) -> SubsystemDims {
    SubsystemDims::extension(d_a, d_b, k).expect("positive dims")
}

/// `Tr_{B_2 … B_k} ω`.
pub fn marginal_ab1(
    omega: &HermitianMatrix,
    d_a: usize,
    d_b: usize,
    k: usize,
) -> Result<HermitianMatrix> {
    partial_trace(omega, &extension_dims(d_a, d_b, k), &[0, 1])
}

/// Frobenius projection onto the affine set of permutation-invariant
/// operators whose `A B_1` marginal equals `ρ`.
///
/// With `S` the symmetrizer and `L` the marginal map, the projection is
/// `S ω + L*(L L*)^{-1}(ρ - L S ω)`; `L L*` has the closed-form inverse
/// used below, so no inner iteration is needed.
#[derive(Debug, Clone)]
pub struct AffineProjector {
    sym: Symmetrizer,
    rho: HermitianMatrix,
    d_a: usize,
    d_b: usize,
    k: usize,
}

impl AffineProjector {
    pub fn new(rho: &DensityMatrix, k: usize) -> Result<Self> {
        let (d_a, d_b) = rho.bipartite_dims()?;
        if k < 2 {
            return Err(Error::InvalidParameter(format!("extension order {k} < 2")));
        }
        Ok(Self {
            sym: Symmetrizer::new(d_a, d_b, k),
            rho: rho.matrix().clone(),
            d_a,
            d_b,
            k,
        })
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.sym
    }

    pub fn project(&self, omega: &HermitianMatrix) -> Result<HermitianMatrix> {
        let (d_a, d_b, k) = (self.d_a, self.d_b, self.k);
        if omega.dim() != self.sym.dim() {
            return Err(Error::DimensionMismatch(format!(
                "extension operator has dimension {}, expected {}",
                omega.dim(),
                self.sym.dim()
            )));
        }
        let s = self.sym.symmetrize(omega);
        let gap = self.rho.sub(&marginal_ab1(&s, d_a, d_b, k)?);
        let gap_a = partial_trace(&gap, &SubsystemDims::new(vec![d_a, d_b])?, &[0])?;
        let rest = d_b.pow(k as u32 - 1) as f64;
        let x_a = gap_a.scale(1.0 / rest);
        let coupling = (k - 1) as f64 * d_b.pow(k as u32 - 2) as f64;
        let x = HermitianMatrix::hermitize(kron(x_a.as_matrix(), &ComplexMatrix::identity(d_b)))
            .scale(coupling);
        let x = gap.scale(k as f64).sub(&x).scale(1.0 / rest);
        let lifted = HermitianMatrix::hermitize(kron(
            x.as_matrix(),
            &ComplexMatrix::identity(d_b.pow(k as u32 - 1)),
        ));
        Ok(s.add(&self.sym.symmetrize(&lifted)))
    }

    /// Max-entry violation of the marginal constraint.
    pub fn marginal_defect(&self, omega: &HermitianMatrix) -> Result<f64> {
        Ok(marginal_ab1(omega, self.d_a, self.d_b, self.k)?.max_abs_diff(&self.rho))
    }
}

/// One-shot affine projection; see [`AffineProjector`].
pub fn affine_project(
    omega: &HermitianMatrix,
    rho: &DensityMatrix,
    k: usize,
) -> Result<HermitianMatrix> {
    let proj = AffineProjector::new(rho, k)?;
    let out = proj.project(omega)?;
    let defect = proj
        .marginal_defect(&out)?
        .max(proj.symmetrizer().invariance_defect(&out));
    if defect > 1e-9 {
        return Err(Error::Numerical(format!(
            "affine projection left residual {defect:.3e}"
        )));
    }
    Ok(out)
}

/// Input to [`check_k_extendible`].
#[derive(Debug, Clone)]
pub struct ExtensionProblem {
    pub rho: DensityMatrix,
    pub k: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl ExtensionProblem {
    pub fn new(rho: DensityMatrix, k: usize) -> Result<Self> {
        Self::with_options(rho, k, DEFAULT_TOL, DEFAULT_MAX_ITER)
    }

    pub fn with_options(rho: DensityMatrix, k: usize, tol: f64, max_iter: usize) -> Result<Self> {
        let (d_a, d_b) = rho.bipartite_dims()?;
        if k < 2 {
            return Err(Error::InvalidParameter(format!("extension order {k} < 2")));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tolerance {tol} must be positive"
            )));
        }
        let dim = (d_b as u128)
            .checked_pow(k as u32)
            .map(|x| x * d_a as u128)
            .unwrap_or(u128::MAX);
        if dim > SCALE_GUARD as u128 {
            return Err(Error::ScaleGuard {
                dim: dim.min(usize::MAX as u128) as usize,
                limit: SCALE_GUARD,
            });
        }
        Ok(Self {
            rho,
            k,
            tol,
            max_iter,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ExtStatus {
    Feasible,
    InfeasibleSignal,
    Inconclusive,
}

impl ExtStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtStatus::Feasible => "Feasible",
            ExtStatus::InfeasibleSignal => "InfeasibleSignal",
            ExtStatus::Inconclusive => "Inconclusive",
        }
    }
}

/// Outcome of a k-extendibility check.
///
/// `residual` is the Frobenius norm of the negative part of the certificate
/// for feasible runs, and the stalled inter-set distance otherwise.
#[derive(Debug, Clone)]
pub struct ExtendibilityVerdict {
    pub status: ExtStatus,
    pub certificate: Option<HermitianMatrix>,
    pub residual: f64,
    pub iterations: usize,
}

impl ExtendibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        self.status == ExtStatus::Feasible
    }
}

fn negative_part_norm(eig: &Eigen) -> f64 {
    eig.values
        .iter()
        .filter(|&&x| x < 0.0)
        .fold(0.0, |acc, x| acc + x * x)
        .sqrt()
}

/// Warm-started eigensolver for a slowly moving sequence of matrices.
struct EigenTracker {
    basis: Option<ComplexMatrix>,
}

impl EigenTracker {
    fn new() -> Self {
        Self { basis: None }
    }

    fn eig(&mut self, h: &HermitianMatrix) -> Result<Eigen> {
        let eig = match &self.basis {
            Some(b) => eig_hermitian_warm(h, b)?,
            None => eig_hermitian(h)?,
        };
        self.basis = Some(eig.vectors.clone());
        Ok(eig)
    }
}

/// Decides k-extendibility of `prob.rho` with respect to its B system.
pub fn check_k_extendible(prob: &ExtensionProblem) -> Result<ExtendibilityVerdict> {
    let (_, d_b) = prob.rho.bipartite_dims()?;
    let k = prob.k;
    let proj = AffineProjector::new(&prob.rho, k)?;
    let rest = d_b.pow(k as u32 - 1);
    let start = HermitianMatrix::hermitize(kron(
        prob.rho.matrix().as_matrix(),
        &ComplexMatrix::identity(rest).scale(1.0 / rest as f64),
    ));

    let mut x = start;
    let mut correction = HermitianMatrix::zeros(x.dim());
    let mut y_eigs = EigenTracker::new();
    let mut z_eigs = EigenTracker::new();
    let mut previous: Option<f64> = None;
    let mut stalled = 0usize;
    let mut last_negative = f64::INFINITY;

    for it in 0..prob.max_iter {
        let y = proj.project(&x)?;
        let y_eig = y_eigs.eig(&y)?;
        let negative = negative_part_norm(&y_eig);
        last_negative = negative;
        if negative <= prob.tol {
            return Ok(ExtendibilityVerdict {
                status: ExtStatus::Feasible,
                certificate: Some(y),
                residual: negative,
                iterations: it + 1,
            });
        }
        let shifted = y.add(&correction);
        let z = psd_from_eigen(&z_eigs.eig(&shifted)?);
        correction = shifted.sub(&z);
        let distance = y.sub(&z).frobenius_norm();
        x = z;

        match previous {
            Some(prev)
                if distance > 10.0 * prob.tol
                    && (prev - distance).abs() <= STALL_RELATIVE_CHANGE * distance =>
            {
                stalled += 1;
            }
            _ => stalled = 0,
        }
        if stalled >= STALL_WINDOW {
            return Ok(ExtendibilityVerdict {
                status: ExtStatus::InfeasibleSignal,
                certificate: None,
                residual: distance,
                iterations: it + 1,
            });
        }
        previous = Some(distance);
    }
    Ok(ExtendibilityVerdict {
        status: ExtStatus::Inconclusive,
        certificate: None,
        residual: last_negative,
        iterations: prob.max_iter,
    })
}

/// Constraint violations of a candidate extension, measured without the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateReport {
    /// `max(0, -λ_min(ω))`.
    pub psd_defect: f64,
    /// Largest entry change under a permutation of the B factors.
    pub symmetry_defect: f64,
    /// Largest entry of `Tr_{B_2…B_k} ω - ρ`.
    pub marginal_defect: f64,
}

impl CertificateReport {
    pub fn worst(&self) -> f64 {
        self.psd_defect
            .max(self.symmetry_defect)
            .max(self.marginal_defect)
    }
}

/// Checks every defining constraint of a k-extension directly.
///
/// The symmetry check uses explicit permutation unitaries rather than the
/// solver's index maps.
pub fn verify_certificate(
    omega: &HermitianMatrix,
    rho: &DensityMatrix,
    k: usize,
) -> Result<CertificateReport> {
    let (d_a, d_b) = rho.bipartite_dims()?;
    let dims = extension_dims(d_a, d_b, k);
    dims.check_matches(omega.dim())?;
    let psd_defect = (-eig_hermitian(omega)?.min_value()).max(0.0);
    let id_a = ComplexMatrix::identity(d_a);
    let mut symmetry_defect = 0.0f64;
    for i in 0..k - 1 {
        let mut perm: Vec<usize> = (0..k).collect();
        perm.swap(i, i + 1);
        let w = kron(&id_a, &crate::linalg::permutation_operator(d_b, k, &perm)?);
        let moved = w.matmul(omega.as_matrix()).matmul(&w.adjoint());
        symmetry_defect = symmetry_defect.max(moved.max_abs_diff(omega.as_matrix()));
    }
    let marginal_defect = partial_trace(omega, &dims, &[0, 1])?.max_abs_diff(rho.matrix());
    Ok(CertificateReport {
        psd_defect,
        symmetry_defect,
        marginal_defect,
    })
}

/// Extension of `erasure_family(1 - 1/k)` on dims `[2, 3, …, 3]`:
/// `(1/k) Σ_i Φ_{A B_i} ⊗ |e><e|` on the remaining B factors.
pub fn erasure_certificate(k: usize) -> Result<HermitianMatrix> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("extension order {k} < 2")));
    }
    let d_b = 3usize;
    let flag = 2usize;
    let block = d_b.pow(k as u32);
    let mut omega = ComplexMatrix::zeros(2 * block, 2 * block);
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for i in 0..k {
        let mut psi = vec![ZERO; 2 * block];
        for a in 0..2usize {
            let b_index = (0..k).fold(0, |acc, j| acc * d_b + if j == i { a } else { flag });
            psi[a * block + b_index] = amp;
        }
        omega = &omega + &ComplexMatrix::projector(&psi).scale(1.0 / k as f64);
    }
    Ok(HermitianMatrix::hermitize(omega))
}

/// Projects a `[d, d]` state onto the `U ⊗ U*`-invariant (isotropic) states.
pub fn twirl_uu(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let (d_a, d_b) = rho.bipartite_dims()?;
    if d_a != d_b {
        return Err(Error::DimensionMismatch(format!(
            "U⊗U* twirl needs equal local dimensions, got [{d_a}, {d_b}]"
        )));
    }
    let overlap = rho.expectation(&max_entangled_vector(d_a)).clamp(0.0, 1.0);
    isotropic(overlap, d_a)
}

/// Bracket around an extendibility boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdBracket {
    /// Parameter at which the family was verified feasible.
    pub feasible: f64,
    /// Parameter at which the family was not verified feasible.
    pub infeasible: f64,
}

impl ThresholdBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.feasible + self.infeasible)
    }

    pub fn width(&self) -> f64 {
        (self.feasible - self.infeasible).abs()
    }
}

/// Bisects a one-parameter family on its k-extendibility verdicts.
///
/// `feasible_end` must be k-extendible and `infeasible_end` must signal
/// infeasibility; the endpoints may come in either order. Inconclusive runs
/// inside the bracket are counted as infeasible, so the feasible side of the
/// result is always backed by a certificate.
pub fn bracket_threshold<F>(
    family: F,
    k: usize,
    feasible_end: f64,
    infeasible_end: f64,
    resolution: f64,
) -> Result<ThresholdBracket>
where
    F: Fn(f64) -> Result<DensityMatrix>,
{
    let verdict = |x: f64| -> Result<ExtStatus> {
        Ok(check_k_extendible(&ExtensionProblem::new(family(x)?, k)?)?.status)
    };
    if verdict(feasible_end)? != ExtStatus::Feasible {
        return Err(Error::InvalidParameter(format!(
            "family is not feasible at {feasible_end}"
        )));
    }
    if verdict(infeasible_end)? != ExtStatus::InfeasibleSignal {
        return Err(Error::InvalidParameter(format!(
            "family does not signal infeasibility at {infeasible_end}"
        )));
    }
    let mut b = ThresholdBracket {
        feasible: feasible_end,
        infeasible: infeasible_end,
    };
    while b.width() > resolution {
        let mid = b.midpoint();
        if verdict(mid)? == ExtStatus::Feasible {
            b.feasible = mid;
        } else {
            b.infeasible = mid;
        }
    }
    Ok(b)
}

/// Boundary parameter within `±0.005`, the midpoint of a bisection bracket.
pub fn threshold_bisect<F>(
    family: F,
    k: usize,
    feasible_end: f64,
    infeasible_end: f64,
) -> Result<f64>
where
    F: Fn(f64) -> Result<DensityMatrix>,
{
    Ok(bracket_threshold(family, k, feasible_end, infeasible_end, 0.01)?.midpoint())
}

/// Bisected k-extendibility thresholds of the qubit isotropic family.
///
/// Each entry is the feasible end of a bracket of width 1e-4 produced by
/// [`bracket_threshold`] on `isotropic(t, 2)` (see the `threshold_scan`
/// example), rounded down to six digits, so every tabulated `t` carries a
/// solver certificate.
pub const ISOTROPIC_QUBIT_THRESHOLDS: [(u32, f64); 4] =
    [(2, 0.75), (3, 0.666626), (4, 0.625), (5, 0.599976)];

/// Threshold for order `k`; orders past the table are extrapolated as
/// `1/2 + c/k` through the last entry and flagged as interpolated.
pub fn isotropic_qubit_threshold(k: u32) -> (f64, crate::bounds::SigmaProvenance) {
    use crate::bounds::SigmaProvenance;
    assert!(k >= 2, "extension order must be at least 2");
    if let Some(&(_, t)) = ISOTROPIC_QUBIT_THRESHOLDS
        .iter()
        .find(|(order, _)| *order == k)
    {
        return (t, SigmaProvenance::Solver);
    }
    let (k_last, t_last) = ISOTROPIC_QUBIT_THRESHOLDS[ISOTROPIC_QUBIT_THRESHOLDS.len() - 1];
    let slope = (t_last - 0.5) * k_last as f64;
    (0.5 + slope / k as f64, SigmaProvenance::Interpolated)
}

//! Named bipartite states, the depolarizing and erasure channels, and fidelity.
//!
//! Bipartite operators use the `A ⊗ B` ordering with B's index varying
//! fastest. The erasure flag `|e>` is the last basis vector of the enlarged
//! output space, so erasure outputs of a qubit live on dims `[2, 3]`.

use std::fmt;
use std::str::FromStr;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{
    apply_kraus, c, eig_hermitian, kron, kron_hermitian, partial_trace, sqrt_psd, ComplexMatrix,
    HermitianMatrix, SubsystemDims, C64, ONE, ZERO,
};

/// Unit-trace positive semidefinite operator with a tensor factorization.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    dims: SubsystemDims,
}

impl DensityMatrix {
    pub fn new(matrix: HermitianMatrix, dims: SubsystemDims) -> Result<Self> {
        Self::with_tolerances(matrix, dims, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(
        matrix: HermitianMatrix,
        dims: SubsystemDims,
        tol: &Tolerances,
    ) -> Result<Self> {
        dims.check_matches(matrix.dim())?;
        let tr = matrix.trace();
        if (tr - 1.0).abs() > tol.trace {
            return Err(Error::NotDensity(format!("trace is {tr}, expected 1")));
        }
        let min = eig_hermitian(&matrix)?.min_value();
        if min < -tol.psd {
            return Err(Error::NotDensity(format!("minimum eigenvalue {min:.3e}")));
        }
        Ok(Self { matrix, dims })
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn from_parts(matrix: HermitianMatrix, dims: SubsystemDims) -> Self {
        debug_assert_eq!(matrix.dim(), dims.total());
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Local dimensions `(d_A, d_B)` of a bipartite state.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            &[a, b] => Ok((a, b)),
            other => Err(Error::DimensionMismatch(format!(
                "expected a bipartite state, got subsystem dims {other:?}"
            ))),
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(eig_hermitian(&self.matrix)?.values)
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: kron_hermitian(&self.matrix, &other.matrix),
            dims: self.dims.concat(&other.dims),
        }
    }

    pub fn tensor_power(&self, n: usize) -> DensityMatrix {
        assert!(n >= 1, "tensor power needs n >= 1");
        let mut out = self.clone();
        for _ in 1..n {
            out = out.tensor(self);
        }
        out
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let matrix = partial_trace(&self.matrix, &self.dims, keep)?;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let dims = SubsystemDims::new(kept.iter().map(|&i| self.dims.as_slice()[i]).collect())?;
        Ok(DensityMatrix { matrix, dims })
    }

    /// Convex combination `w * self + (1 - w) * other`.
    pub fn mix(&self, w: f64, other: &DensityMatrix) -> Result<DensityMatrix> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(
                "mixing states of different shapes".into(),
            ));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight {w} outside [0, 1]"
            )));
        }
        Ok(DensityMatrix {
            matrix: self.matrix.scale(w).add(&other.matrix.scale(1.0 - w)),
            dims: self.dims.clone(),
        })
    }

    pub fn maximally_mixed(dims: SubsystemDims) -> DensityMatrix {
        let d = dims.total();
        DensityMatrix {
            matrix: HermitianMatrix::identity(d).scale(1.0 / d as f64),
            dims,
        }
    }

    /// `<v|rho|v>` for a vector `v`.
    pub fn expectation(&self, v: &[C64]) -> f64 {
        let mv = self.matrix.as_matrix().apply(v);
        v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum::<C64>().re
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DensityMatrix(dims={:?}) {:?}",
            self.dims.as_slice(),
            self.matrix
        )
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "{name} = {p} is not in [0, 1]"
        )));
    }
    Ok(())
}

/// Vector of the maximally entangled state `(1/sqrt m) Σ |ii>`.
pub fn max_entangled_vector(m: usize) -> Vec<C64> {
    let amp = c(1.0 / (m as f64).sqrt());
    let mut v = vec![ZERO; m * m];
    for i in 0..m {
        v[i * m + i] = amp;
    }
    v
}

/// Maximally entangled state of Schmidt rank `m` on dims `[m, m]`.
pub fn max_entangled(m: usize) -> Result<DensityMatrix> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "Schmidt rank must be at least 1".into(),
        ));
    }
    let proj = ComplexMatrix::projector(&max_entangled_vector(m));
    Ok(DensityMatrix::from_parts(
        HermitianMatrix::hermitize(proj),
        SubsystemDims::new(vec![m, m])?,
    ))
}

/// Isotropic state `t Φ_d + (1 - t)(I - Φ_d)/(d² - 1)`.
pub fn isotropic(t: f64, d: usize) -> Result<DensityMatrix> {
    check_probability("isotropic fidelity", t)?;
    if d < 2 {
        return Err(Error::InvalidParameter(
            "isotropic states need d >= 2".into(),
        ));
    }
    let phi = max_entangled(d)?;
    let dd = d * d;
    let complement = HermitianMatrix::identity(dd).sub(phi.matrix());
    let matrix = phi
        .matrix()
        .scale(t)
        .add(&complement.scale((1.0 - t) / (dd - 1) as f64));
    Ok(DensityMatrix::from_parts(matrix, phi.dims.clone()))
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| if i != j { ONE } else { ZERO })
}

pub fn pauli_y() -> ComplexMatrix {
    let mut y = ComplexMatrix::zeros(2, 2);
    y[(0, 1)] = C64::new(0.0, -1.0);
    y[(1, 0)] = C64::new(0.0, 1.0);
    y
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_diag(&[1.0, -1.0])
}

/// The depolarizing or erasure channel on a qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelKind {
    Depolarizing,
    Erasure,
}

impl FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "depolarizing" => Ok(Self::Depolarizing),
            "erasure" => Ok(Self::Erasure),
            other => Err(Error::Parse(format!("unknown channel '{other}'"))),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Depolarizing => "depolarizing",
            Self::Erasure => "erasure",
        })
    }
}

/// A qubit channel with its noise parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    kind: ChannelKind,
    p: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, p: f64) -> Result<Self> {
        check_probability("channel parameter", p)?;
        Ok(Self { kind, p })
    }

    pub fn depolarizing(p: f64) -> Result<Self> {
        Self::new(ChannelKind::Depolarizing, p)
    }

    pub fn erasure(p: f64) -> Result<Self> {
        Self::new(ChannelKind::Erasure, p)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `(id ⊗ N)(Φ_2)`.
    pub fn choi_state(&self) -> Result<DensityMatrix> {
        match self.kind {
            ChannelKind::Depolarizing => depolarizing_choi(self.p),
            ChannelKind::Erasure => erasure_output(self.p),
        }
    }
}

/// A channel acting on Bob's share of a bipartite state.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalChannel {
    /// `(1 - p) ρ + (p/3)(XρX + YρY + ZρZ)`; qubit only.
    PauliDepolarizing(f64),
    /// `(1 - p) ρ + p Tr(ρ) I/d` on a d-dimensional system.
    Depolarizing(f64),
    /// `(1 - p) ρ + p |e><e|` with `|e>` appended as a new basis vector.
    Erasure(f64),
    /// `U ρ U^dagger`.
    Unitary(ComplexMatrix),
}

impl LocalChannel {
    /// Kraus operators for input dimension `d`, and the output dimension.
    pub fn kraus(&self, d: usize) -> Result<(Vec<ComplexMatrix>, usize)> {
        match self {
            LocalChannel::PauliDepolarizing(p) => {
                check_probability("depolarizing parameter", *p)?;
                if d != 2 {
                    return Err(Error::DimensionMismatch(
                        "Pauli depolarizing acts on a qubit".into(),
                    ));
                }
                let w = (p / 3.0).sqrt();
                Ok((
                    vec![
                        ComplexMatrix::identity(2).scale((1.0 - p).sqrt()),
                        pauli_x().scale(w),
                        pauli_y().scale(w),
                        pauli_z().scale(w),
                    ],
                    2,
                ))
            }
            LocalChannel::Depolarizing(p) => {
                check_probability("depolarizing parameter", *p)?;
                // Replacement by I/d: Kraus set sqrt(p/d)|i><j| plus sqrt(1-p) I.
                let mut ks = vec![ComplexMatrix::identity(d).scale((1.0 - p).sqrt())];
                let w = (p / d as f64).sqrt();
                for i in 0..d {
                    for j in 0..d {
                        let mut k = ComplexMatrix::zeros(d, d);
                        k[(i, j)] = c(w);
                        ks.push(k);
                    }
                }
                Ok((ks, d))
            }
            LocalChannel::Erasure(p) => {
                check_probability("erasure probability", *p)?;
                let mut keep = ComplexMatrix::zeros(d + 1, d);
                for i in 0..d {
                    keep[(i, i)] = c((1.0 - p).sqrt());
                }
                let mut ks = vec![keep];
                for j in 0..d {
                    let mut k = ComplexMatrix::zeros(d + 1, d);
                    k[(d, j)] = c(p.sqrt());
                    ks.push(k);
                }
                Ok((ks, d + 1))
            }
            LocalChannel::Unitary(u) => {
                if u.rows() != d || u.cols() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "unitary is {}x{}, system has dimension {d}",
                        u.rows(),
                        u.cols()
                    )));
                }
                let defect = u
                    .adjoint()
                    .matmul(u)
                    .max_abs_diff(&ComplexMatrix::identity(d));
                if defect > 1e-10 {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not unitary (defect {defect:.3e})"
                    )));
                }
                Ok((vec![u.clone()], d))
            }
        }
    }

    /// `(id_A ⊗ Λ_B)(ρ_AB)`.
    pub fn apply_to_b(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let (da, db) = rho.bipartite_dims()?;
        let (kraus, dout) = self.kraus(db)?;
        let id_a = ComplexMatrix::identity(da);
        let lifted: Vec<ComplexMatrix> = kraus.iter().map(|k| kron(&id_a, k)).collect();
        Ok(DensityMatrix::from_parts(
            apply_kraus(rho.matrix(), &lifted),
            SubsystemDims::new(vec![da, dout])?,
        ))
    }
}

/// Choi state `(id ⊗ D^p)(Φ_2)` of the qubit depolarizing channel.
pub fn depolarizing_choi(p: f64) -> Result<DensityMatrix> {
    LocalChannel::PauliDepolarizing(p).apply_to_b(&max_entangled(2)?)
}

/// `(id ⊗ E^p)(Φ_2)` on dims `[2, 3]`.
pub fn erasure_output(p: f64) -> Result<DensityMatrix> {
    LocalChannel::Erasure(p).apply_to_b(&max_entangled(2)?)
}

/// `(1 - q) Φ + q (I_A/2 ⊗ |e><e|)` built directly from its two terms.
pub fn erasure_family(q: f64) -> Result<DensityMatrix> {
    check_probability("erasure mixing weight", q)?;
    let mut phi = ComplexMatrix::zeros(6, 6);
    for &i in &[0usize, 4] {
        for &j in &[0usize, 4] {
            phi[(i, j)] = c(0.5);
        }
    }
    let mut flag = ComplexMatrix::zeros(3, 3);
    flag[(2, 2)] = ONE;
    let erased = kron(&ComplexMatrix::identity(2).scale(0.5), &flag);
    let m = &phi.scale(1.0 - q) + &erased.scale(q);
    Ok(DensityMatrix::from_parts(
        HermitianMatrix::hermitize(m),
        SubsystemDims::new(vec![2, 3])?,
    ))
}

/// Uhlmann fidelity `‖√ρ √σ‖₁²`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dims != sigma.dims {
        return Err(Error::DimensionMismatch(format!(
            "fidelity between dims {:?} and {:?}",
            rho.dims.as_slice(),
            sigma.dims.as_slice()
        )));
    }
    let root = sqrt_psd(rho.matrix())?;
    let inner = HermitianMatrix::hermitize(
        root.as_matrix()
            .matmul(sigma.matrix().as_matrix())
            .matmul(root.as_matrix()),
    );
    let eig = eig_hermitian(&inner)?;
    let s: f64 = eig.values.iter().map(|&x| x.max(0.0).sqrt()).sum();
    Ok((s * s).clamp(0.0, 1.0))
}

/// A state named on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedState {
    MaxEntangled(usize),
    Isotropic { t: f64, d: usize },
    DepolarizingChoi(f64),
    Erasure(f64),
}

impl NamedState {
    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            NamedState::MaxEntangled(m) => max_entangled(m),
            NamedState::Isotropic { t, d } => isotropic(t, d),
            NamedState::DepolarizingChoi(p) => depolarizing_choi(p),
            NamedState::Erasure(q) => erasure_family(q),
        }
    }
}

impl FromStr for NamedState {
    type Err = Error;

    /// Parses `max-entangled:m`, `isotropic:t:d`, `depolarizing-choi:p`
    /// or `erasure:q`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| -> Result<f64> {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number '{x}' in state '{s}'")))
        };
        let int = |x: &str| -> Result<usize> {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer '{x}' in state '{s}'")))
        };
        match parts.as_slice() {
            ["max-entangled", m] => Ok(NamedState::MaxEntangled(int(m)?)),
            ["isotropic", t, d] => Ok(NamedState::Isotropic {
                t: num(t)?,
                d: int(d)?,
            }),
            ["depolarizing-choi", p] => Ok(NamedState::DepolarizingChoi(num(p)?)),
            ["erasure", q] => Ok(NamedState::Erasure(num(q)?)),
            _ => Err(Error::Parse(format!("unrecognized state '{s}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }

    fn assert_spectrum(rho: &DensityMatrix, expected: &[f64], tol: f64) {
        let got = sorted(rho.eigenvalues().unwrap());
        for (g, e) in got.iter().zip(sorted(expected.to_vec())) {
            assert!((g - e).abs() < tol, "{got:?} vs {expected:?}");
        }
    }

    #[test]
    fn max_entangled_examples() {
        let one = max_entangled(1).unwrap();
        assert_eq!(one.dim(), 1);
        assert!((one.matrix().trace() - 1.0).abs() < 1e-15);
        let phi = max_entangled(2).unwrap();
        assert_spectrum(&phi, &[1.0, 0.0, 0.0, 0.0], 1e-12);
        let half = HermitianMatrix::identity(2).scale(0.5);
        assert!(
            phi.partial_trace(&[0])
                .unwrap()
                .matrix()
                .max_abs_diff(&half)
                < 1e-15
        );
        assert!(
            phi.partial_trace(&[1])
                .unwrap()
                .matrix()
                .max_abs_diff(&half)
                < 1e-15
        );
        assert!((fidelity(&phi, &isotropic(1.0, 2).unwrap()).unwrap() - 1.0).abs() < 1e-10);
        assert!(max_entangled(0).is_err());
    }

    #[test]
    fn isotropic_examples() {
        let phi = max_entangled(3).unwrap();
        assert!(
            isotropic(1.0, 3)
                .unwrap()
                .matrix()
                .max_abs_diff(phi.matrix())
                < 1e-15
        );
        let mixed = isotropic(0.25, 2).unwrap();
        assert!(
            mixed
                .matrix()
                .max_abs_diff(&HermitianMatrix::identity(4).scale(0.25))
                < 1e-15
        );
        assert_spectrum(
            &isotropic(0.85, 2).unwrap(),
            &[0.85, 0.05, 0.05, 0.05],
            1e-12,
        );
        assert!(isotropic(1.2, 2).is_err());
        assert!(isotropic(0.5, 1).is_err());
    }

    #[test]
    fn depolarizing_choi_examples() {
        let phi = max_entangled(2).unwrap();
        assert!(
            depolarizing_choi(0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(phi.matrix())
                < 1e-15
        );
        let mixed = depolarizing_choi(0.75).unwrap();
        assert!(
            mixed
                .matrix()
                .max_abs_diff(&HermitianMatrix::identity(4).scale(0.25))
                < 1e-15
        );
        assert_spectrum(
            &depolarizing_choi(0.15).unwrap(),
            &[0.85, 0.05, 0.05, 0.05],
            1e-12,
        );
        assert!(depolarizing_choi(-0.1).is_err());
    }

    #[test]
    fn depolarizing_choi_matches_isotropic_spectrum_on_grid() {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let a = sorted(depolarizing_choi(p).unwrap().eigenvalues().unwrap());
            let b = sorted(isotropic(1.0 - p, 2).unwrap().eigenvalues().unwrap());
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12, "p={p}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn erasure_examples() {
        let e0 = erasure_output(0.0).unwrap();
        assert_eq!(e0.dims().as_slice(), &[2, 3]);
        assert_spectrum(&e0, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1e-12);
        let e1 = erasure_output(1.0).unwrap();
        let mut flag = ComplexMatrix::zeros(3, 3);
        flag[(2, 2)] = c(1.0);
        let expected = kron(&ComplexMatrix::identity(2).scale(0.5), &flag);
        assert!(e1.matrix().as_matrix().max_abs_diff(&expected) < 1e-15);
        assert_spectrum(
            &erasure_output(0.5).unwrap(),
            &[0.5, 0.25, 0.25, 0.0, 0.0, 0.0],
            1e-12,
        );
    }

    #[test]
    fn erasure_constructors_agree_on_grid() {
        for i in 0..=20 {
            let q = i as f64 / 20.0;
            let a = erasure_output(q).unwrap();
            let b = erasure_family(q).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15, "q={q}");
        }
    }

    #[test]
    fn fidelity_examples() {
        let phi = max_entangled(2).unwrap();
        let mixed = isotropic(0.25, 2).unwrap();
        assert!((fidelity(&phi, &phi).unwrap() - 1.0).abs() < 1e-10);
        assert!((fidelity(&phi, &mixed).unwrap() - 0.25).abs() < 1e-10);
        for t in [0.1, 0.5, 0.85] {
            let s = isotropic(t, 2).unwrap();
            assert!((fidelity(&s, &phi).unwrap() - t).abs() < 1e-10);
            assert!((fidelity(&phi, &s).unwrap() - t).abs() < 1e-10);
        }
        assert!(fidelity(&phi, &erasure_family(0.5).unwrap()).is_err());
    }

    #[test]
    fn fidelity_respects_data_processing_on_commuting_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        let draw = |rng: &mut ChaCha8Rng| {
            let w: Vec<f64> = (0..6).map(|_| rng.gen_range(0.01..1.0)).collect();
            let s: f64 = w.iter().sum();
            let diag: Vec<f64> = w.iter().map(|x| x / s).collect();
            DensityMatrix::new(HermitianMatrix::from_real_diag(&diag), dims.clone()).unwrap()
        };
        for _ in 0..20 {
            let rho = draw(&mut rng);
            let sigma = draw(&mut rng);
            let full = fidelity(&rho, &sigma).unwrap();
            let reduced = fidelity(
                &rho.partial_trace(&[0]).unwrap(),
                &sigma.partial_trace(&[0]).unwrap(),
            )
            .unwrap();
            assert!(full <= reduced + 1e-12);
        }
    }

    #[test]
    fn density_matrix_validation() {
        let dims = SubsystemDims::new(vec![2]).unwrap();
        assert!(matches!(
            DensityMatrix::new(HermitianMatrix::identity(2), dims.clone()),
            Err(Error::NotDensity(_))
        ));
        assert!(DensityMatrix::new(HermitianMatrix::from_real_diag(&[1.5, -0.5]), dims).is_err());
    }

    #[test]
    fn local_channels_preserve_trace() {
        let rho = isotropic(0.7, 2).unwrap();
        let h = ComplexMatrix::from_fn(2, 2, |i, j| c(if i == 1 && j == 1 { -1.0 } else { 1.0 }))
            .scale(std::f64::consts::FRAC_1_SQRT_2);
        for ch in [
            LocalChannel::PauliDepolarizing(0.2),
            LocalChannel::Depolarizing(0.3),
            LocalChannel::Erasure(0.4),
            LocalChannel::Unitary(h),
        ] {
            let out = ch.apply_to_b(&rho).unwrap();
            assert!((out.matrix().trace() - 1.0).abs() < 1e-12, "{ch:?}");
        }
        assert!(LocalChannel::Unitary(ComplexMatrix::identity(2).scale(2.0))
            .apply_to_b(&rho)
            .is_err());
    }

    #[test]
    fn named_states_parse() {
        assert_eq!(
            "max-entangled:3".parse::<NamedState>().unwrap(),
            NamedState::MaxEntangled(3)
        );
        assert_eq!(
            "isotropic:0.8:2".parse::<NamedState>().unwrap(),
            NamedState::Isotropic { t: 0.8, d: 2 }
        );
        assert_eq!(
            "erasure:0.5".parse::<NamedState>().unwrap(),
            NamedState::Erasure(0.5)
        );
        assert!("erasure".parse::<NamedState>().is_err());
        assert!("isotropic:x:2".parse::<NamedState>().is_err());
        let built = "depolarizing-choi:0.15"
            .parse::<NamedState>()
            .unwrap()
            .build()
            .unwrap();
        assert!(
            built
                .matrix()
                .max_abs_diff(depolarizing_choi(0.15).unwrap().matrix())
                < 1e-15
        );
    }
}

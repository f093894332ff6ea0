//! Divergences between commuting density matrices via their joint spectrum.

use super::{check_eps, neyman_pearson_fill, LogClass, NpResult};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{commutator_norm, eig_hermitian, ComplexMatrix, HermitianMatrix};
use crate::states::DensityMatrix;

/// Log-ratio tolerance under which spectral outcome classes are lumped.
const SPECTRAL_TIE_TOL: f64 = 1e-9;

/// Eigenvalue pairs `(r_i, s_i)` of two commuting operators in a common
/// eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectrum {
    pub pairs: Vec<(f64, f64)>,
}

fn clean(x: f64, zero: f64) -> f64 {
    if x.abs() <= zero {
        0.0
    } else {
        x.max(0.0)
    }
}

/// Co-diagonalizes `rho` and `sigma`.
///
/// `rho` is diagonalized first; `sigma` is then diagonalized inside each
/// degenerate eigenspace of `rho`.
pub fn joint_spectrum(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<JointSpectrum> {
    let tol = Tolerances::DEFAULT;
    if rho.dims() != sigma.dims() {
        return Err(Error::DimensionMismatch(format!(
            "states have dims {:?} and {:?}",
            rho.dims().as_slice(),
            sigma.dims().as_slice()
        )));
    }
    let norm = commutator_norm(rho.matrix(), sigma.matrix());
    if norm > tol.commutator {
        return Err(Error::NonCommuting { norm });
    }
    let eig = eig_hermitian(rho.matrix())?;
    let n = eig.values.len();
    let mut pairs = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (eig.values[end] - eig.values[start]).abs() <= 1e-9 {
            end += 1;
        }
        let width = end - start;
        let basis = ComplexMatrix::from_fn(n, width, |i, j| eig.vectors[(i, start + j)]);
        let block = HermitianMatrix::hermitize(
            basis
                .adjoint()
                .matmul(sigma.matrix().as_matrix())
                .matmul(&basis),
        );
        let r = eig.values[start..end].iter().sum::<f64>() / width as f64;
        for s in eig_hermitian(&block)?.values {
            pairs.push((clean(r, tol.spectral_zero), clean(s, tol.spectral_zero)));
        }
        start = end;
    }
    Ok(JointSpectrum { pairs })
}

/// Joint spectrum of `ρ^{⊗n}` and `σ^{⊗n}` from a single-copy spectrum.
pub fn tensor_power_spectrum(single: &JointSpectrum, n: u32) -> JointSpectrum {
    let mut pairs = vec![(1.0, 1.0)];
    for _ in 0..n {
        pairs = pairs
            .iter()
            .flat_map(|&(r, s)| single.pairs.iter().map(move |&(a, b)| (r * a, s * b)))
            .collect();
    }
    JointSpectrum { pairs }
}

fn spectrum_classes(spec: &JointSpectrum) -> Vec<LogClass> {
    spec.pairs
        .iter()
        .enumerate()
        .map(|(i, &(r, s))| LogClass {
            ln_p: r.ln(),
            ln_q: s.ln(),
            label: i as u32,
        })
        .collect()
}

/// `D_h^ε` of a classical pair given as a joint spectrum.
pub fn dh_from_spectrum(spec: &JointSpectrum, eps: f64) -> Result<NpResult> {
    check_eps(eps)?;
    Ok(neyman_pearson_fill(
        &spectrum_classes(spec),
        eps,
        SPECTRAL_TIE_TOL,
    ))
}

/// Optimal test between commuting states; `threshold_weight` indexes the
/// joint eigenbasis.
pub fn commuting_np(rho: &DensityMatrix, sigma: &DensityMatrix, eps: f64) -> Result<NpResult> {
    check_eps(eps)?;
    dh_from_spectrum(&joint_spectrum(rho, sigma)?, eps)
}

/// `D_h^ε(ρ‖σ)` in bits for commuting `ρ`, `σ`.
pub fn commuting_dh(rho: &DensityMatrix, sigma: &DensityMatrix, eps: f64) -> Result<f64> {
    Ok(commuting_np(rho, sigma, eps)?.divergence())
}

/// `max_i log₂(r_i / s_i)` over `r_i > 0`; `+∞` when the support of `ρ` is
/// not inside that of `σ`.
pub fn d_max_from_spectrum(spec: &JointSpectrum) -> f64 {
    spec.pairs
        .iter()
        .filter(|&&(r, _)| r > 0.0)
        .map(|&(r, s)| {
            if s > 0.0 {
                (r / s).log2()
            } else {
                f64::INFINITY
            }
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Max-relative entropy `D_max(ρ‖σ)` in bits for commuting states.
pub fn d_max_commuting(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(d_max_from_spectrum(&joint_spectrum(rho, sigma)?))
}

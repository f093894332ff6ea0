//! Numerical tolerances shared across the crate.

/// Tolerance record used by the linear-algebra, state and solver layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum |h_ij - conj(h_ji)| accepted for a Hermitian matrix.
    pub hermiticity: f64,
    /// Off-diagonal Frobenius mass at which the Jacobi sweep stops,
    /// relative to the Frobenius norm of the input.
    pub eigen_residual: f64,
    /// Trace deviation accepted for a density matrix.
    pub trace: f64,
    /// Most negative eigenvalue accepted for a density matrix.
    pub psd: f64,
    /// Max commutator entry accepted by the commuting-state divergences.
    pub commutator: f64,
    /// Eigenvalues with magnitude below this are treated as exact zeros
    /// when building joint spectra.
    pub spectral_zero: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermiticity: 1e-12,
        eigen_residual: 1e-10,
        trace: 1e-10,
        psd: 1e-10,
        commutator: 1e-10,
        spectral_zero: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

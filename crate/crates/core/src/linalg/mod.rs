//! Dense complex linear algebra for small Hermitian operators.

mod eigen;
mod io;
mod matrix;
mod ops;

pub use eigen::{eig_hermitian, eig_hermitian_warm, Eigen};
pub use io::MatrixFile;
pub use matrix::{ComplexMatrix, HermitianMatrix, SubsystemDims, C64};
pub use ops::{
    apply_kraus, commutator_norm, is_permutation, kron, kron_hermitian, partial_trace,
    permutation_index_map, permutation_operator, psd_project, sqrt_psd,
};

pub(crate) use matrix::{ONE, ZERO};
pub(crate) use ops::{c, psd_from_eigen};

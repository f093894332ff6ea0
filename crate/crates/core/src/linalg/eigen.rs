//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` and then applies
//! the classical real Jacobi rotation, so one 2x2 unitary zeroes the pair.

use super::matrix::{ComplexMatrix, HermitianMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_STOP: f64 = 1e-15;

/// Eigen-decomposition `h = V diag(values) V^dagger`, values ascending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|x| x)
    }

    /// `V diag(f(values)) V^dagger`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let weights: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                if vik == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }
}

/// Diagonalizes a Hermitian matrix.
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<Eigen> {
    jacobi(h.as_matrix().clone(), ComplexMatrix::identity(h.dim()))
}

/// Diagonalizes `h` starting from an approximate eigenbasis `guess`.
///
/// When `guess` nearly diagonalizes `h` (successive iterates of an
/// alternating-projection loop) the sweep count drops to one or two.
pub fn eig_hermitian_warm(h: &HermitianMatrix, guess: &ComplexMatrix) -> Result<Eigen> {
    let rotated = guess.adjoint().matmul(h.as_matrix()).matmul(guess);
    let rotated = HermitianMatrix::hermitize(rotated).into_matrix();
    jacobi(rotated, guess.clone())
}

fn off_diagonal_norm_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn jacobi(mut a: ComplexMatrix, mut v: ComplexMatrix) -> Result<Eigen> {
    let n = a.rows();
    let scale = a.frobenius_norm();
    if scale == 0.0 || n == 1 {
        return Ok(sorted(&a, v));
    }
    let stop = (OFF_DIAGONAL_STOP * scale).powi(2);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sqr(&a) <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm_sqr(&a) > stop {
        return Err(Error::Numerical(format!(
            "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps"
        )));
    }
    Ok(sorted(&a, v))
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Pivot negligible against both diagonal entries: skip, as in the
    // classical threshold Jacobi.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    // A <- A J
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * jpp + aiq * jqp;
        a[(i, q)] = aip * jpq + aiq * jqq;
    }
    // A <- J^dagger A
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = jpp.conj() * apj + jqp.conj() * aqj;
        a[(q, j)] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * jpp + viq * jqp;
        v[(i, q)] = vip * jpq + viq * jqq;
    }
}

fn sorted(a: &ComplexMatrix, v: ComplexMatrix) -> Eigen {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Eigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(seed: u64, n: usize) -> HermitianMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        HermitianMatrix::hermitize(ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }))
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let e = eig_hermitian(&HermitianMatrix::from_real_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = HermitianMatrix::new(ComplexMatrix::from_fn(2, 2, |i, j| {
            if i != j {
                C64::new(1.0, 0.0)
            } else {
                ZERO
            }
        }))
        .unwrap();
        let e = eig_hermitian(&x).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_16x16_reconstructs() {
        let h = random_hermitian(42, 16);
        let e = eig_hermitian(&h).unwrap();
        assert!(e.reconstruct().max_abs_diff(h.as_matrix()) <= 1e-10);
        let vtv = e.vectors.adjoint().matmul(&e.vectors);
        assert!(vtv.max_abs_diff(&ComplexMatrix::identity(16)) <= 1e-10);
        assert!((e.values.iter().sum::<f64>() - h.trace()).abs() <= 1e-10);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn warm_start_agrees_with_cold_start() {
        let h = random_hermitian(1, 12);
        let cold = eig_hermitian(&h).unwrap();
        let nudged = h.add(&random_hermitian(2, 12).scale(1e-3));
        let warm = eig_hermitian_warm(&nudged, &cold.vectors).unwrap();
        let direct = eig_hermitian(&nudged).unwrap();
        for (a, b) in warm.values.iter().zip(&direct.values) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(warm.reconstruct().max_abs_diff(nudged.as_matrix()) < 1e-12);
    }

    #[test]
    fn degenerate_and_zero_matrices() {
        let e = eig_hermitian(&HermitianMatrix::zeros(3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = eig_hermitian(&HermitianMatrix::identity(4).scale(2.5)).unwrap();
        assert!(e.values.iter().all(|&x| (x - 2.5).abs() < 1e-15));
    }
}

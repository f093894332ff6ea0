use super::eigen::{eig_hermitian, Eigen};
use super::matrix::{ComplexMatrix, HermitianMatrix, SubsystemDims, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn kron_hermitian(a: &HermitianMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    HermitianMatrix::hermitize(kron(a.as_matrix(), b.as_matrix()))
}

/// Offsets of every multi-index over the listed subsystems, in row-major
/// order of those subsystems.
fn offsets(dims: &[usize], strides: &[usize], which: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &s in which {
        let mut next = Vec::with_capacity(out.len() * dims[s]);
        for &base in &out {
            for x in 0..dims[s] {
                next.push(base + x * strides[s]);
            }
        }
        out = next;
    }
    out
}

/// Traces out every subsystem not listed in `keep`.
///
/// The kept subsystems appear in ascending index order in the result.
pub fn partial_trace(
    m: &HermitianMatrix,
    dims: &SubsystemDims,
    keep: &[usize],
) -> Result<HermitianMatrix> {
    dims.check_matches(m.dim())?;
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::InvalidParameter(
            "partial trace needs at least one kept subsystem".into(),
        ));
    }
    if let Some(&bad) = keep.iter().find(|&&i| i >= dims.len()) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem index {bad} out of range for {} subsystems",
            dims.len()
        )));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let strides = dims.strides();
    let kept_off = offsets(dims.as_slice(), &strides, &keep);
    let traced_off = offsets(dims.as_slice(), &strides, &traced);
    let n = kept_off.len();
    let src = m.as_matrix();
    let mut out = ComplexMatrix::zeros(n, n);
    for (r, &ro) in kept_off.iter().enumerate() {
        for (c, &co) in kept_off.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &traced_off {
                acc += src[(ro + t, co + t)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(HermitianMatrix::hermitize(out))
}

/// Checks that `perm` is a bijection on `0..perm.len()`.
pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Basis-index map of the factor permutation: the basis vector with
/// index `i` is sent to index `map[i]`.
///
/// Factor `j` of the input moves to position `perm[j]`, so that
/// `W(p1) W(p2) = W(p1 ∘ p2)`.
pub fn permutation_index_map(d: usize, perm: &[usize]) -> Vec<usize> {
    let k = perm.len();
    let total = d.pow(k as u32);
    let mut digits = vec![0usize; k];
    let mut moved = vec![0usize; k];
    (0..total)
        .map(|mut idx| {
            for j in (0..k).rev() {
                digits[j] = idx % d;
                idx /= d;
            }
            for j in 0..k {
                moved[perm[j]] = digits[j];
            }
            moved.iter().fold(0, |acc, &x| acc * d + x)
        })
        .collect()
}

/// Unitary `W^π` permuting `k` tensor factors of local dimension `d`.
pub fn permutation_operator(d: usize, k: usize, perm: &[usize]) -> Result<ComplexMatrix> {
    if perm.len() != k || !is_permutation(perm) {
        return Err(Error::InvalidParameter(format!(
            "{perm:?} is not a permutation of {k} elements"
        )));
    }
    let map = permutation_index_map(d, perm);
    let mut w = ComplexMatrix::zeros(map.len(), map.len());
    for (src, &dst) in map.iter().enumerate() {
        w[(dst, src)] = ONE;
    }
    Ok(w)
}

/// Frobenius-nearest positive semidefinite matrix.
pub fn psd_project(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = eig_hermitian(h)?;
    Ok(psd_from_eigen(&eig))
}

pub(crate) fn psd_from_eigen(eig: &Eigen) -> HermitianMatrix {
    HermitianMatrix::hermitize(eig.map_values(|x| x.max(0.0)))
}

/// Principal square root of a PSD matrix (negative eigenvalues clamped).
pub fn sqrt_psd(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = eig_hermitian(h)?;
    Ok(HermitianMatrix::hermitize(
        eig.map_values(|x| x.max(0.0).sqrt()),
    ))
}

/// Max entry of the commutator `[a, b]`.
pub fn commutator_norm(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    let ab = a.as_matrix().matmul(b.as_matrix());
    let ba = b.as_matrix().matmul(a.as_matrix());
    ab.max_abs_diff(&ba)
}

/// Applies `x -> sum_i K_i x K_i^dagger`.
pub fn apply_kraus(x: &HermitianMatrix, kraus: &[ComplexMatrix]) -> HermitianMatrix {
    let mut acc: Option<ComplexMatrix> = None;
    for k in kraus {
        let term = k.matmul(x.as_matrix()).matmul(&k.adjoint());
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    HermitianMatrix::hermitize(acc.expect("at least one Kraus operator"))
}

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
        let m = ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        HermitianMatrix::hermitize(m)
    }

    fn random_psd(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        HermitianMatrix::hermitize(g.matmul(&g.adjoint()))
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let k = kron(
            &ComplexMatrix::from_diag(&[1.0, 0.0]),
            &ComplexMatrix::from_diag(&[0.0, 1.0]),
        );
        assert_eq!(k, ComplexMatrix::from_diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_x_x_maps_00_to_11() {
        let x = ComplexMatrix::from_fn(2, 2, |i, j| if i != j { ONE } else { ZERO });
        let xx = kron(&x, &x);
        let out = xx.apply(&[ONE, ZERO, ZERO, ZERO]);
        assert_eq!(out, vec![ZERO, ZERO, ZERO, ONE]);
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let mut v = vec![ZERO; 4];
        v[0] = c(std::f64::consts::FRAC_1_SQRT_2);
        v[3] = c(std::f64::consts::FRAC_1_SQRT_2);
        let phi = HermitianMatrix::hermitize(ComplexMatrix::projector(&v));
        let dims = SubsystemDims::new(vec![2, 2]).unwrap();
        let a = partial_trace(&phi, &dims, &[0]).unwrap();
        assert!(a.max_abs_diff(&HermitianMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_recovers_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_psd(&mut rng, 2);
        let a = a.scale(1.0 / a.trace());
        let b = random_psd(&mut rng, 3);
        let b = b.scale(1.0 / b.trace());
        let ab = kron_hermitian(&a, &b);
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        assert!(partial_trace(&ab, &dims, &[0]).unwrap().max_abs_diff(&a) < 1e-14);
        assert!(partial_trace(&ab, &dims, &[1]).unwrap().max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_input() {
        let m = HermitianMatrix::identity(4);
        let bad = SubsystemDims::new(vec![2, 3]).unwrap();
        assert!(matches!(
            partial_trace(&m, &bad, &[0]),
            Err(Error::DimensionMismatch(_))
        ));
        let dims = SubsystemDims::new(vec![2, 2]).unwrap();
        assert!(partial_trace(&m, &dims, &[]).is_err());
        assert!(partial_trace(&m, &dims, &[5]).is_err());
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dims = SubsystemDims::new(vec![2, 3, 2]).unwrap();
        for _ in 0..10 {
            let h = random_hermitian(&mut rng, 12);
            for keep in [vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]] {
                let r = partial_trace(&h, &dims, &keep).unwrap();
                assert!((r.trace() - h.trace()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn swap_operator_is_textbook() {
        let w = permutation_operator(2, 2, &[1, 0]).unwrap();
        let mut swap = ComplexMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(i, j)] = ONE;
        }
        assert_eq!(w, swap);
        assert_eq!(
            permutation_operator(3, 3, &[0, 1, 2]).unwrap(),
            ComplexMatrix::identity(27)
        );
        assert!(permutation_operator(2, 3, &[0, 0, 1]).is_err());
    }

    #[test]
    fn permutations_form_a_representation() {
        let perms = [[1, 2, 0], [0, 2, 1], [2, 1, 0], [1, 0, 2], [2, 0, 1]];
        for p1 in &perms {
            let w1 = permutation_operator(2, 3, p1).unwrap();
            assert!(
                w1.adjoint()
                    .matmul(&w1)
                    .max_abs_diff(&ComplexMatrix::identity(8))
                    == 0.0
            );
            for p2 in &perms {
                let w2 = permutation_operator(2, 3, p2).unwrap();
                let composed: Vec<usize> = (0..3).map(|j| p1[p2[j]]).collect();
                let w12 = permutation_operator(2, 3, &composed).unwrap();
                assert_eq!(w1.matmul(&w2), w12);
            }
            let mut inv = [0usize; 3];
            for (j, &pj) in p1.iter().enumerate() {
                inv[pj] = j;
            }
            assert_eq!(permutation_operator(2, 3, &inv).unwrap(), w1.adjoint());
        }
    }

    #[test]
    fn psd_projection_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_psd(&mut rng, 5);
        assert!(psd_project(&p).unwrap().max_abs_diff(&p) < 1e-12);
        let h = HermitianMatrix::from_real_diag(&[1.0, -1.0]);
        assert!(
            psd_project(&h)
                .unwrap()
                .max_abs_diff(&HermitianMatrix::from_real_diag(&[1.0, 0.0]))
                < 1e-15
        );
    }

    #[test]
    fn psd_projection_is_nearest_and_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let h = random_hermitian(&mut rng, 6);
            let proj = psd_project(&h).unwrap();
            assert!(eig_hermitian(&proj).unwrap().min_value() > -1e-12);
            let d = h.sub(&proj).frobenius_norm();
            for _ in 0..10 {
                let p = random_psd(&mut rng, 6).scale(rng.gen_range(0.0..0.5));
                assert!(d <= h.sub(&p).frobenius_norm() + 1e-12);
            }
            assert!(psd_project(&proj).unwrap().max_abs_diff(&proj) < 1e-12);
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::collection::vec;
    use proptest::prelude::*;

    fn hermitian(n: usize) -> impl Strategy<Value = HermitianMatrix> {
        vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |xs| {
            HermitianMatrix::hermitize(ComplexMatrix::from_fn(n, n, |i, j| {
                let (re, im) = xs[i * n + j];
                C64::new(re, im)
            }))
        })
    }

    proptest! {
        #[test]
        fn partial_trace_keeps_the_trace(h in hermitian(12), keep in 0usize..3) {
            let dims = SubsystemDims::new(vec![2, 3, 2]).unwrap();
            let r = partial_trace(&h, &dims, &[keep]).unwrap();
            prop_assert!((r.trace() - h.trace()).abs() < 1e-12);
        }

        #[test]
        fn permutation_operators_are_unitary(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(), d in 2usize..4) {
            let w = permutation_operator(d, 4, &perm).unwrap();
            let n = w.rows();
            prop_assert_eq!(w.adjoint().matmul(&w), ComplexMatrix::identity(n));
        }

        #[test]
        fn psd_projection_is_idempotent(h in hermitian(5)) {
            let p = psd_project(&h).unwrap();
            prop_assert!(psd_project(&p).unwrap().max_abs_diff(&p) < 1e-12);
        }
    }
}

//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues closer than this are treated as degenerate when ordering.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Components below this magnitude are skipped when fixing eigenvector phase.
const PHASE_EPS: f64 = 1e-12;

/// Eigenvalues in non-increasing order with matching unit eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, j: usize) -> Vec<Complex64> {
        self.eigenvectors.column(j)
    }

    /// `sum_j lambda_j v_j v_j^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, k| {
            (0..n)
                .map(|j| v[(i, j)] * v[(k, j)].conj() * self.eigenvalues[j])
                .sum()
        })
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Output is deterministic: eigenvalues sorted descending, eigenvectors of
/// (near-)equal eigenvalues ordered by the index of their first non-negligible
/// component, and each eigenvector's first non-negligible component made real
/// positive.
pub fn eig_hermitian(m: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let deviation = m.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { tol, deviation });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    let target = f64::EPSILON * scale;
    let mut converged = n <= 1;
    let mut residual = off_diagonal_norm(&a);
    for _ in 0..MAX_SWEEPS {
        if residual <= target || residual == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        residual = off_diagonal_norm(&a);
    }
    if !converged && residual > target && residual != 0.0 {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }

    let eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let columns: Vec<Vec<Complex64>> = (0..n).map(|j| v.column(j)).collect();
    Ok(canonicalize(eigenvalues, columns))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with `G = D R`, where `D = diag(1, e^{-i phi})`
/// makes the pivot real and `R` is the real Jacobi rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / abs;
    let theta = (aqq - app) / (2.0 * abs);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.rows();
    // A <- A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A <- G^dagger A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

fn leading_index(v: &[Complex64]) -> usize {
    v.iter().position(|z| z.norm() > PHASE_EPS).unwrap_or(0)
}

fn canonicalize(eigenvalues: Vec<f64>, mut columns: Vec<Vec<Complex64>>) -> SpectralDecomposition {
    let n = eigenvalues.len();
    for col in columns.iter_mut() {
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let lead = col[leading_index(col)];
        let fix = if lead.norm() > 0.0 {
            lead.conj() / (lead.norm() * norm)
        } else {
            Complex64::new(1.0 / norm, 0.0)
        };
        for z in col.iter_mut() {
            *z *= fix;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eigenvalues[j].total_cmp(&eigenvalues[i]).then(i.cmp(&j)));

    // Reorder runs of degenerate eigenvalues by leading component index.
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[order[end - 1]] - eigenvalues[order[end]] <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            order[start..end].sort_by_key(|&k| (leading_index(&columns[k]), k));
        }
        start = end;
    }

    let sorted_values = order.iter().map(|&k| eigenvalues[k]).collect();
    let sorted_columns: Vec<Vec<Complex64>> = order.iter().map(|&k| columns[k].clone()).collect();
    SpectralDecomposition {
        eigenvalues: sorted_values,
        eigenvectors: ComplexMatrix::from_columns(n, &sorted_columns).expect("square"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        g.hermitian_part()
    }

    #[test]
    fn diagonal_input_is_returned_as_is() {
        let m = ComplexMatrix::from_real_diagonal(&[0.7, 0.3]);
        let s = eig_hermitian(&m, 1e-10).unwrap();
        assert_eq!(s.eigenvalues, vec![0.7, 0.3]);
        assert_eq!(s.eigenvectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn ascending_diagonal_is_sorted() {
        let m = ComplexMatrix::from_real_diagonal(&[0.1, 0.2, 0.7]);
        let s = eig_hermitian(&m, 1e-10).unwrap();
        assert_eq!(s.eigenvalues, vec![0.7, 0.2, 0.1]);
        assert_eq!(s.eigenvector(0)[2], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn all_ones_projector() {
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let s = eig_hermitian(&m, 1e-10).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!(s.eigenvalues[1].abs() < 1e-14);
        let v = s.eigenvector(0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v[0] - Complex64::new(r, 0.0)).norm() < 1e-14);
        assert!((v[1] - Complex64::new(r, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn degenerate_identity_keeps_canonical_order() {
        let s = eig_hermitian(&ComplexMatrix::identity(4).scale_real(0.25), 1e-10).unwrap();
        assert_eq!(s.eigenvectors, ComplexMatrix::identity(4));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(eig_hermitian(&m, 1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn phase_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_hermitian(5, &mut rng);
        let s = eig_hermitian(&m, 1e-10).unwrap();
        for j in 0..5 {
            let v = s.eigenvector(j);
            let lead = v[leading_index(&v)];
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
    }

    #[test]
    fn random_round_trip_is_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[2usize, 4, 8] {
            for _ in 0..200 {
                let m = random_hermitian(n, &mut rng);
                let s = eig_hermitian(&m, 1e-10).unwrap();
                assert!((&s.reconstruct() - &m).frobenius_norm() < 1e-10);
                assert!(s.eigenvectors.is_unitary(1e-10));
                assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn deterministic_for_identical_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_hermitian(6, &mut rng);
        assert_eq!(eig_hermitian(&m, 1e-10).unwrap(), eig_hermitian(&m, 1e-10).unwrap());
    }
}

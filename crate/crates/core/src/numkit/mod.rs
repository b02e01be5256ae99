//! Dense complex linear algebra shared by the rest of the crate.
//!
//! Qubit 0 is the most significant bit of a basis-state index throughout.

mod eigen;
mod matrix;

pub use eigen::{eig_hermitian, SpectralDecomposition, DEGENERACY_TOL};
pub use matrix::ComplexMatrix;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance used when a caller does not supply one.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Residual norm below which a canonical vector is skipped during completion.
const COMPLETION_ACCEPT: f64 = 1e-3;

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-tol, 0)` are clamped to zero.
pub fn matrix_sqrt_psd(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let spec = eig_hermitian(m, tol)?;
    if let Some(&min) = spec.eigenvalues.last() {
        if min < -tol {
            return Err(Error::NotPsd { eigenvalue: min, tol });
        }
    }
    let roots: Vec<f64> = spec.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok(SpectralDecomposition {
        eigenvalues: roots,
        eigenvectors: spec.eigenvectors,
    }
    .reconstruct())
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Index contributions of each local basis state of `qubits` inside an
/// `total_qubits`-qubit register. `qubits[0]` is the local most significant bit.
pub(crate) fn basis_offsets(qubits: &[usize], total_qubits: usize) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|local| {
            qubits.iter().enumerate().fold(0usize, |acc, (pos, &q)| {
                if (local >> (k - 1 - pos)) & 1 == 1 {
                    acc | (1 << (total_qubits - 1 - q))
                } else {
                    acc
                }
            })
        })
        .collect()
}

/// Validates a qubit subset and returns it sorted.
pub(crate) fn normalize_subset(keep: &[usize], total_qubits: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::DimensionMismatch("kept qubit set is empty".into()));
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DimensionMismatch(format!("duplicate qubit in {keep:?}")));
    }
    if let Some(&bad) = sorted.iter().find(|&&q| q >= total_qubits) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            num_qubits: total_qubits,
        });
    }
    Ok(sorted)
}

/// Reduced state on the qubits in `keep`, tracing out the rest.
pub fn partial_trace(state: &ComplexMatrix, keep: &[usize], total_qubits: usize) -> Result<ComplexMatrix> {
    let dim = 1usize
        .checked_shl(total_qubits as u32)
        .ok_or_else(|| Error::DimensionMismatch(format!("{total_qubits} qubits")))?;
    if state.rows() != dim || state.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "expected {dim}x{dim} for {total_qubits} qubits, got {}x{}",
            state.rows(),
            state.cols()
        )));
    }
    let keep = normalize_subset(keep, total_qubits)?;
    let traced: Vec<usize> = (0..total_qubits).filter(|q| !keep.contains(q)).collect();
    let kept_off = basis_offsets(&keep, total_qubits);
    let traced_off = basis_offsets(&traced, total_qubits);
    let out_dim = kept_off.len();
    Ok(ComplexMatrix::from_fn(out_dim, out_dim, |i, j| {
        traced_off
            .iter()
            .map(|&t| state[(kept_off[i] | t, kept_off[j] | t)])
            .sum()
    }))
}

/// Extends orthonormal columns to a full unitary.
///
/// The added columns come from Gram-Schmidt over the canonical basis vectors
/// in index order.
pub fn orthonormal_completion(partial: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let d = partial.rows();
    let m = partial.cols();
    if m > d {
        return Err(Error::DimensionMismatch(format!("{m} columns exceed dimension {d}")));
    }
    if m > 0 {
        let deviation = (&partial.adjoint().matmul(partial)? - &ComplexMatrix::identity(m)).max_abs();
        if deviation > tol {
            return Err(Error::NotOrthonormal { tol, deviation });
        }
    }
    let mut basis: Vec<Vec<Complex64>> = (0..m).map(|j| partial.column(j)).collect();
    for k in 0..d {
        if basis.len() == d {
            break;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[k] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > COMPLETION_ACCEPT {
            v.iter_mut().for_each(|z| *z /= norm);
            basis.push(v);
        }
    }
    debug_assert_eq!(basis.len(), d);
    ComplexMatrix::from_columns(d, &basis)
}

/// Singular values of `a`, descending, from the Hermitian dilation
/// `[[0, A], [A^dagger, 0]]` whose spectrum is `+-sigma_i` padded with zeros.
///
/// Small singular values keep absolute accuracy near `eps * |A|`, which
/// `sqrt(eig(A A^dagger))` would lose.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (r, c) = (a.rows(), a.cols());
    let k = r.min(c);
    if k == 0 {
        return Ok(Vec::new());
    }
    let dilation = ComplexMatrix::from_fn(r + c, r + c, |i, j| match (i < r, j < r) {
        (true, false) => a[(i, j - r)],
        (false, true) => a[(j, i - r)].conj(),
        _ => Complex64::new(0.0, 0.0),
    });
    let spec = eig_hermitian(&dilation, f64::INFINITY)?;
    let mut sv: Vec<f64> = spec.eigenvalues[..k].iter().map(|s| s.abs()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Single-qubit Pauli matrix for a label in `I, X, Y, Z`.
pub fn pauli(label: char) -> Result<ComplexMatrix> {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let data = match label {
        'I' => vec![one, o, o, one],
        'X' => vec![o, one, one, o],
        'Y' => vec![o, -i, i, o],
        'Z' => vec![one, o, o, -one],
        other => return Err(Error::BadLabel(other.to_string())),
    };
    ComplexMatrix::new(2, 2, data)
}

/// Tensor product of single-qubit Paulis, leftmost label on qubit 0.
pub fn pauli_string(labels: &str) -> Result<ComplexMatrix> {
    if labels.is_empty() {
        return Err(Error::BadLabel(String::new()));
    }
    let mut out = ComplexMatrix::identity(1);
    for ch in labels.chars() {
        out = kron(&out, &pauli(ch).map_err(|_| Error::BadLabel(labels.to_string()))?);
    }
    Ok(out)
}

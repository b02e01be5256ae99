//! Linear-inversion Pauli tomography.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numkit::{eig_hermitian, normalize_subset, pauli_string, ComplexMatrix, SpectralDecomposition};
use crate::simcore::{sample_pauli, StateVector};

/// All `4^n` Pauli strings over `I, X, Y, Z`, identity first.
pub fn pauli_labels(n: usize) -> Vec<String> {
    const L: [char; 4] = ['I', 'X', 'Y', 'Z'];
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            let mut s = vec!['I'; n];
            for pos in (0..n).rev() {
                s[pos] = L[k % 4];
                k /= 4;
            }
            s.into_iter().collect()
        })
        .collect()
}

/// Exact `Tr(rho P)` for every Pauli string on `n` qubits.
pub fn pauli_expectations(rho: &ComplexMatrix, n: usize) -> Result<BTreeMap<String, f64>> {
    let dim = 1usize << n;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for {n} qubits",
            rho.rows(),
            rho.cols()
        )));
    }
    pauli_labels(n)
        .into_iter()
        .map(|label| {
            let p = pauli_string(&label)?;
            let v = rho.matmul(&p)?.trace().re;
            Ok((label, v))
        })
        .collect()
}

/// Shot estimates of every non-identity Pauli string on the `system` qubits
/// of `state`; other qubits are left unmeasured. Each string gets its own
/// seed derived from `seed`.
pub fn estimate_expectations(
    state: &StateVector,
    system: &[usize],
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<String, f64>> {
    let total = state.num_qubits();
    let system = normalize_subset(system, total)?;
    let mut out = BTreeMap::new();
    for (idx, label) in pauli_labels(system.len()).into_iter().enumerate() {
        if label.chars().all(|c| c == 'I') {
            out.insert(label, 1.0);
            continue;
        }
        let mut full = vec!['I'; total];
        for (q, ch) in system.iter().zip(label.chars()) {
            full[*q] = ch;
        }
        let full: String = full.into_iter().collect();
        let string_seed = seed.wrapping_add((idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let est = sample_pauli(state, &full, shots, string_seed)?;
        out.insert(label, est.expectation);
    }
    Ok(out)
}

/// Nearest density matrix by eigenvalue clipping: Hermitize, clamp negative
/// eigenvalues to zero, rescale to unit trace.
pub fn project_to_density(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = eig_hermitian(&m.hermitian_part(), f64::INFINITY)?;
    let clipped: Vec<f64> = spec.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if total <= 0.0 {
        return Err(Error::NotDensityMatrix("reconstruction has no positive eigenvalue".into()));
    }
    Ok(SpectralDecomposition {
        eigenvalues: clipped.iter().map(|l| l / total).collect(),
        eigenvectors: spec.eigenvectors,
    }
    .reconstruct())
}

/// `rho = 2^-n sum_P <P> P`, projected onto the density matrices.
/// A missing all-identity entry is taken as 1.
pub fn tomography_reconstruct(expectations: &BTreeMap<String, f64>, n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::DimensionMismatch("tomography needs at least one qubit".into()));
    }
    let dim = 1usize << n;
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for label in pauli_labels(n) {
        let value = match expectations.get(&label) {
            Some(&v) => v,
            None if label.chars().all(|c| c == 'I') => 1.0,
            None => return Err(Error::MissingExpectation(label)),
        };
        if value != 0.0 {
            acc = &acc + &pauli_string(&label)?.scale_real(value);
        }
    }
    project_to_density(&acc.scale_real(1.0 / dim as f64))
}

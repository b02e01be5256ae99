//! State verification quantities: Uhlmann fidelity, l1-norm coherence,
//! Wootters concurrence, two-qubit Pauli coefficients and tomography.

mod tomography;

pub use tomography::{
    estimate_expectations, pauli_expectations, pauli_labels, project_to_density, tomography_reconstruct,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkit::{
    eig_hermitian, kron, partial_trace, pauli, pauli_string, singular_values, ComplexMatrix, SpectralDecomposition,
    DEFAULT_TOL,
};

/// Eigenvalues at or below this are treated as outside a state's support.
pub const SUPPORT_CUTOFF: f64 = 1e-13;

/// Largest-eigenvalue threshold for the pure-state fidelity shortcut.
const PURE_THRESHOLD: f64 = 1.0 - 1e-12;

fn require_density(m: &ComplexMatrix, tol: f64, what: &str) -> Result<()> {
    match m.density_violation(tol) {
        Some(msg) => Err(Error::NotDensityMatrix(format!("{what}: {msg}"))),
        None => Ok(()),
    }
}

fn require_two_qubit(m: &ComplexMatrix) -> Result<()> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit state must be 4x4, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// `V_r diag(sqrt p)` restricted to eigenvalues above [`SUPPORT_CUTOFF`].
fn support_factor(spec: &SpectralDecomposition) -> ComplexMatrix {
    let keep: Vec<usize> = (0..spec.dim())
        .filter(|&j| spec.eigenvalues[j] > SUPPORT_CUTOFF)
        .collect();
    let cols: Vec<Vec<Complex64>> = keep
        .iter()
        .map(|&j| {
            let s = spec.eigenvalues[j].sqrt();
            spec.eigenvector(j).into_iter().map(|z| z * s).collect()
        })
        .collect();
    ComplexMatrix::from_columns(spec.dim(), &cols).expect("consistent rows")
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
pub fn fidelity(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    fidelity_with_tol(rho, sigma, DEFAULT_TOL)
}

pub fn fidelity_with_tol(rho: &ComplexMatrix, sigma: &ComplexMatrix, tol: f64) -> Result<f64> {
    if rho.rows() != sigma.rows() || rho.cols() != sigma.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} against {}x{}",
            rho.rows(),
            rho.cols(),
            sigma.rows(),
            sigma.cols()
        )));
    }
    require_density(rho, tol, "first argument")?;
    require_density(sigma, tol, "second argument")?;
    let rho_spec = eig_hermitian(&rho.hermitian_part(), tol)?;
    let sigma_spec = eig_hermitian(&sigma.hermitian_part(), tol)?;

    for (spec, other) in [(&rho_spec, sigma), (&sigma_spec, rho)] {
        if spec.eigenvalues[0] >= PURE_THRESHOLD {
            let psi = spec.eigenvector(0);
            let o_psi = other.mul_vec(&psi)?;
            let v: Complex64 = psi.iter().zip(&o_psi).map(|(a, b)| a.conj() * b).sum();
            return Ok(v.re.clamp(0.0, 1.0));
        }
    }

    // F = ||sqrt(rho) sqrt(sigma)||_tr^2, and the singular values of
    // sqrt(rho) sqrt(sigma) are those of (V_r S_r)^dagger (U_s S_s).
    let a = support_factor(&rho_spec).adjoint().matmul(&support_factor(&sigma_spec))?;
    let trace_norm: f64 = singular_values(&a)?.iter().sum();
    Ok((trace_norm * trace_norm).clamp(0.0, 1.0))
}

/// Sum of off-diagonal magnitudes in the computational basis.
pub fn l1_coherence(rho: &ComplexMatrix) -> Result<f64> {
    require_density(rho, DEFAULT_TOL, "state")?;
    Ok(off_diagonal_l1(rho))
}

fn off_diagonal_l1(m: &ComplexMatrix) -> f64 {
    let mut s = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

/// Qubit of a two-qubit state: `A` is qubit 0, `B` is qubit 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn qubit(self) -> usize {
        match self {
            Subsystem::A => 0,
            Subsystem::B => 1,
        }
    }
}

/// l1-norm coherence of one qubit's reduced state.
pub fn local_l1_coherence(rho: &ComplexMatrix, subsystem: Subsystem) -> Result<f64> {
    require_two_qubit(rho)?;
    let reduced = partial_trace(rho, &[subsystem.qubit()], 2)?;
    Ok(off_diagonal_l1(&reduced))
}

/// `sigma_y (x) sigma_y rho^* sigma_y (x) sigma_y`.
pub fn spin_flip(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_two_qubit(rho)?;
    let y = pauli('Y')?;
    let yy = kron(&y, &y);
    yy.matmul(&rho.conj())?.matmul(&yy)
}

/// Wootters concurrence `max(0, s1 - s2 - s3 - s4)`, where `s_i^2` are the
/// eigenvalues of `rho rho~` in descending order.
pub fn concurrence(rho: &ComplexMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let spec = eig_hermitian(&rho.hermitian_part(), DEFAULT_TOL)?;
    if let Some(&min) = spec.eigenvalues.last() {
        if min < -DEFAULT_TOL {
            return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
    }
    // sqrt(lambda_i) are the singular values of sqrt(rho) sqrt(rho~), which
    // share their nonzero spectrum with F^dagger Y F^*, F = V_r diag(sqrt p).
    let f = support_factor(&spec);
    let y = pauli('Y')?;
    let yy = kron(&y, &y);
    let a = f.adjoint().matmul(&yy)?.matmul(&f.conj())?;
    let mut roots = singular_values(&a)?;
    roots.resize(4, 0.0);
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Two-qubit Pauli coefficients: `4 rho = I + sum b_k I(x)s_k + sum a_j s_j(x)I + sum T_jk s_j(x)s_k`,
/// with `T`'s diagonal in `c` and its off-diagonal part in `cross`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliDecomposition2Q {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [f64; 3],
    /// Off-diagonal correlators `T_jk`, `j != k`; the diagonal is zero.
    pub cross: [[f64; 3]; 3],
}

impl PauliDecomposition2Q {
    pub fn correlation(&self, j: usize, k: usize) -> f64 {
        if j == k {
            self.c[j]
        } else {
            self.cross[j][k]
        }
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let s = |k: usize| pauli(['I', 'X', 'Y', 'Z'][k]).expect("valid label");
        let mut acc = kron(&s(0), &s(0));
        for k in 0..3 {
            acc = &acc + &kron(&s(0), &s(k + 1)).scale_real(self.b[k]);
            acc = &acc + &kron(&s(k + 1), &s(0)).scale_real(self.a[k]);
            for j in 0..3 {
                acc = &acc + &kron(&s(j + 1), &s(k + 1)).scale_real(self.correlation(j, k));
            }
        }
        acc.scale_real(0.25)
    }
}

fn expectation(rho: &ComplexMatrix, labels: &str) -> Result<f64> {
    Ok(rho.matmul(&pauli_string(labels)?)?.trace().re)
}

pub fn pauli_decompose_2q(rho: &ComplexMatrix) -> Result<PauliDecomposition2Q> {
    require_two_qubit(rho)?;
    const L: [char; 3] = ['X', 'Y', 'Z'];
    let mut out = PauliDecomposition2Q {
        a: [0.0; 3],
        b: [0.0; 3],
        c: [0.0; 3],
        cross: [[0.0; 3]; 3],
    };
    for j in 0..3 {
        out.a[j] = expectation(rho, &format!("{}I", L[j]))?;
        out.b[j] = expectation(rho, &format!("I{}", L[j]))?;
        for k in 0..3 {
            let t = expectation(rho, &format!("{}{}", L[j], L[k]))?;
            if j == k {
                out.c[j] = t;
            } else {
                out.cross[j][k] = t;
            }
        }
    }
    Ok(out)
}

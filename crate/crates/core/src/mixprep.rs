//! Purification circuits for arbitrary density matrices.
//!
//! For `rho = sum_j r_j |r_j><r_j|` on `n` qubits the circuit acts on `2n`
//! qubits initialised to `|0>`:
//!
//! 1. load `sum_j sqrt(r_j) |j>` on the system qubits `0..n`,
//! 2. copy each system qubit onto its ancilla with a CNOT (`s -> s + n`),
//! 3. apply `U = [|r_0> ... |r_{d-1}>]` to the system qubits.
//!
//! Tracing out the ancillas `n..2n` then leaves `rho` on the system register.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::numkit::{eig_hermitian, orthonormal_completion, ComplexMatrix, SpectralDecomposition};
use crate::pureprep::{compile_real_state, RealAmplitudeVector};
use crate::simcore::{reduced_density, run};

/// Compiled circuit together with the data it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedCircuitBundle {
    pub circuit: Circuit,
    pub system_qubits: Vec<usize>,
    pub ancilla_qubits: Vec<usize>,
    /// Spectrum of `target`; eigenvector columns are the basis-change unitary.
    pub spectral: SpectralDecomposition,
    /// Target padded to a power-of-two dimension.
    pub target: ComplexMatrix,
}

impl PreparedCircuitBundle {
    pub fn num_system_qubits(&self) -> usize {
        self.system_qubits.len()
    }

    /// Loading and CNOT stages only, without the basis change.
    pub fn correlation_stage(&self) -> Circuit {
        let mut c = self.circuit.clone();
        c.gates.pop();
        c.label = format!("{} [correlation stage]", self.circuit.label);
        c
    }

    /// Simulates the circuit and traces out the ancillas.
    pub fn prepared_state(&self) -> Result<ComplexMatrix> {
        reduced_density(&run(&self.circuit)?, &self.system_qubits)
    }
}

/// Embeds `rho` top-left in the next power-of-two dimension.
pub fn pad_to_qubit_dimension(rho: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if let Some(msg) = rho.density_violation(tol) {
        return Err(Error::NotDensityMatrix(msg));
    }
    let d = rho.rows();
    if d < 2 {
        return Err(Error::NotDensityMatrix(format!("dimension {d} < 2")));
    }
    if d.is_power_of_two() {
        return Ok(rho.clone());
    }
    let padded = d.next_power_of_two();
    let mut out = ComplexMatrix::zeros(padded, padded);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] = rho[(i, j)];
        }
    }
    Ok(out)
}

/// `sqrt` of the eigenvalues, clamping `[-tol, 0)` to zero.
pub fn eigenvalue_amplitudes(spectral: &SpectralDecomposition, tol: f64) -> Result<RealAmplitudeVector> {
    if let Some(&bad) = spectral.eigenvalues.iter().find(|&&l| l < -tol || !l.is_finite()) {
        return Err(Error::NotAProbabilityVector(format!("eigenvalue {bad:e} below -{tol:e}")));
    }
    let sum: f64 = spectral.eigenvalues.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(Error::NotAProbabilityVector(format!("eigenvalues sum to {sum}")));
    }
    let clamped: Vec<f64> = spectral.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let clamped_sum: f64 = clamped.iter().sum();
    let scale = if (clamped_sum - sum).abs() > 1e-12 {
        1.0 / clamped_sum
    } else {
        1.0
    };
    RealAmplitudeVector::new(clamped.iter().map(|l| (l * scale).sqrt()).collect())
}

/// Assembles loading, CNOT layer and basis change on `2n` qubits.
pub(crate) fn assemble_circuit(
    amplitudes: &RealAmplitudeVector,
    basis_change: &ComplexMatrix,
    label: String,
) -> Result<Circuit> {
    let n = amplitudes.num_qubits();
    let mut circuit = compile_real_state(amplitudes)?.embedded(0, 2 * n)?;
    circuit.label = label;
    for s in 0..n {
        circuit.push(Gate::Cnot {
            control: s,
            target: s + n,
        })?;
    }
    circuit.push(Gate::UnitaryBlock {
        qubits: (0..n).collect(),
        matrix: basis_change.clone(),
    })?;
    Ok(circuit)
}

/// Compiles `rho` into its `2n`-qubit purification circuit.
pub fn build_preparation_circuit(rho: &ComplexMatrix, tol: f64) -> Result<PreparedCircuitBundle> {
    let original_dim = rho.rows();
    let target = pad_to_qubit_dimension(rho, tol)?.hermitian_part();
    let d = target.rows();
    let n = d.trailing_zeros() as usize;

    let mut spectral = eig_hermitian(&target, tol)?;
    let amplitudes = eigenvalue_amplitudes(&spectral, tol)?;

    let rank = spectral.eigenvalues.iter().filter(|&&l| l > tol).count();
    if rank < d {
        let support: Vec<_> = (0..rank).map(|j| spectral.eigenvector(j)).collect();
        let partial = ComplexMatrix::from_columns(d, &support)?;
        spectral.eigenvectors = orthonormal_completion(&partial, tol)?;
    }

    let label = format!("mixed-state preparation, d={original_dim} on {n}+{n} qubits");
    let circuit = assemble_circuit(&amplitudes, &spectral.eigenvectors, label)?;
    Ok(PreparedCircuitBundle {
        circuit,
        system_qubits: (0..n).collect(),
        ancilla_qubits: (n..2 * n).collect(),
        spectral,
        target,
    })
}

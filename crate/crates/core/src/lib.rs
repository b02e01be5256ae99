//! Mixed-state preparation through purification circuits.
//!
//! A target density matrix on `n` qubits is compiled into a `2n`-qubit
//! circuit: a real-amplitude loader for the square roots of its eigenvalues,
//! a CNOT layer correlating each system qubit with an ancilla, and a
//! basis-change unitary built from its eigenvectors. Tracing out the
//! ancillas of the simulated output recovers the target.
//!
//! ```
//! use mixstate::{build_preparation_circuit, fidelity, ginibre_density, DEFAULT_TOL};
//!
//! let rho = ginibre_density(4, 7).unwrap();
//! let bundle = build_preparation_circuit(&rho, DEFAULT_TOL).unwrap();
//! assert_eq!(bundle.circuit.num_qubits, 4);
//! let prepared = bundle.prepared_state().unwrap();
//! assert!(fidelity(&prepared, &rho).unwrap() > 1.0 - 1e-9);
//! ```
//!
//! Qubit 0 is the most significant bit of every basis-state index.

pub mod circuit;
pub mod error;
pub mod metrics;
pub mod mixprep;
pub mod numkit;
pub mod pureprep;
pub mod simcore;
pub mod statesgen;

pub use circuit::{Circuit, Control, Gate};
pub use error::{Error, Result};
pub use metrics::{
    concurrence, fidelity, l1_coherence, local_l1_coherence, pauli_decompose_2q, tomography_reconstruct,
    PauliDecomposition2Q, Subsystem,
};
pub use mixprep::{build_preparation_circuit, pad_to_qubit_dimension, PreparedCircuitBundle};
pub use numkit::{eig_hermitian, ComplexMatrix, SpectralDecomposition, DEFAULT_TOL};
pub use pureprep::{compile_real_state, RealAmplitudeVector};
pub use simcore::{reduced_density, run, StateVector};
pub use statesgen::{c1_state, ginibre_density, p00_family, x_state, XStateParams};

pub use num_complex::Complex64;

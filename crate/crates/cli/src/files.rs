//! On-disk formats: density matrices and circuits as JSON.

use std::fs;
use std::path::Path;

use mixstate::{Circuit, Complex64, ComplexMatrix, Control, Gate};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityMatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let (re, im) = split_parts(m);
        Self { dim: m.rows(), re, im }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        join_parts(self.dim, &self.re, &self.im)
            .map_err(|e| CliError::invalid(format!("density matrix file: {e}")))
    }
}

fn split_parts(m: &ComplexMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let rows = |f: fn(&Complex64) -> f64| {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| f(&m[(i, j)])).collect())
            .collect()
    };
    (rows(|z| z.re), rows(|z| z.im))
}

fn join_parts(dim: usize, re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<ComplexMatrix, String> {
    let square = |part: &[Vec<f64>]| part.len() == dim && part.iter().all(|r| r.len() == dim);
    if !square(re) || !square(im) {
        return Err(format!("\"re\" and \"im\" must both be {dim}x{dim}"));
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| Complex64::new(re[i][j], im[i][j])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GateRecord {
    Ry {
        target: usize,
        theta: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Mcry {
        controls: Vec<usize>,
        bits: Vec<u8>,
        target: usize,
        theta: f64,
    },
    Unitary {
        qubits: Vec<usize>,
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    },
}

impl GateRecord {
    pub fn from_gate(g: &Gate) -> Self {
        match g {
            Gate::Ry { target, theta } => GateRecord::Ry {
                target: *target,
                theta: *theta,
            },
            Gate::Cnot { control, target } => GateRecord::Cnot {
                control: *control,
                target: *target,
            },
            Gate::MultiControlledRy { controls, target, theta } => GateRecord::Mcry {
                controls: controls.iter().map(|c| c.qubit).collect(),
                bits: controls.iter().map(|c| c.active_on as u8).collect(),
                target: *target,
                theta: *theta,
            },
            Gate::UnitaryBlock { qubits, matrix } => {
                let (re, im) = split_parts(matrix);
                GateRecord::Unitary {
                    qubits: qubits.clone(),
                    re,
                    im,
                }
            }
        }
    }

    pub fn to_gate(&self) -> Result<Gate, String> {
        Ok(match self {
            GateRecord::Ry { target, theta } => Gate::Ry {
                target: *target,
                theta: *theta,
            },
            GateRecord::Cnot { control, target } => Gate::Cnot {
                control: *control,
                target: *target,
            },
            GateRecord::Mcry {
                controls,
                bits,
                target,
                theta,
            } => {
                if controls.len() != bits.len() {
                    return Err(format!(
                        "mcry gate has {} controls but {} bits",
                        controls.len(),
                        bits.len()
                    ));
                }
                if let Some(b) = bits.iter().find(|&&b| b > 1) {
                    return Err(format!("mcry control bit {b} is not 0 or 1"));
                }
                Gate::MultiControlledRy {
                    controls: controls.iter().zip(bits).map(|(&q, &b)| Control::new(q, b == 1)).collect(),
                    target: *target,
                    theta: *theta,
                }
            }
            GateRecord::Unitary { qubits, re, im } => Gate::UnitaryBlock {
                qubits: qubits.clone(),
                matrix: join_parts(re.len(), re, im)?,
            },
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitMeta {
    #[serde(default)]
    pub tool: String,
    #[serde(default)]
    pub label: String,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub source_sha256: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub num_qubits: usize,
    pub gates: Vec<GateRecord>,
    #[serde(default)]
    pub meta: CircuitMeta,
}

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

impl CircuitFile {
    pub fn from_circuit(c: &Circuit, seed: Option<u64>, source: Option<&[u8]>) -> Self {
        Self {
            num_qubits: c.num_qubits,
            gates: c.gates.iter().map(GateRecord::from_gate).collect(),
            meta: CircuitMeta {
                tool: TOOL_VERSION.to_string(),
                label: c.label.clone(),
                seed,
                source_sha256: source.map(sha256_hex),
            },
        }
    }

    /// Rebuilds the circuit, validating every gate against the register.
    pub fn to_circuit(&self) -> Result<Circuit, CliError> {
        let mut c = Circuit::new(self.num_qubits, self.meta.label.clone());
        for (i, rec) in self.gates.iter().enumerate() {
            let gate = rec
                .to_gate()
                .map_err(|e| CliError::invalid(format!("malformed circuit: gate {i}: {e}")))?;
            c.push(gate)
                .map_err(|e| CliError::invalid(format!("malformed circuit: gate {i}: {e}")))?;
        }
        Ok(c)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("file types always serialize");
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

pub fn parse_density(bytes: &[u8]) -> Result<ComplexMatrix, CliError> {
    let file: DensityMatrixFile =
        serde_json::from_slice(bytes).map_err(|e| CliError::invalid(format!("malformed density matrix file: {e}")))?;
    file.to_matrix()
}

pub fn parse_circuit(bytes: &[u8]) -> Result<CircuitFile, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::invalid(format!("malformed circuit: {e}")))
}

pub fn read_density(path: &Path) -> Result<ComplexMatrix, CliError> {
    parse_density(&read_bytes(path)?)
}

pub fn read_circuit(path: &Path) -> Result<Circuit, CliError> {
    parse_circuit(&read_bytes(path)?)?.to_circuit()
}

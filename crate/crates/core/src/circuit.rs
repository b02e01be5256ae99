//! Circuit intermediate representation.

use crate::error::{Error, Result};
use crate::numkit::ComplexMatrix;

/// Tolerance applied to unitary blocks during validation.
pub const UNITARY_TOL: f64 = 1e-10;

/// A control qubit together with the basis value that activates the gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub active_on: bool,
}

impl Control {
    pub fn new(qubit: usize, active_on: bool) -> Self {
        Self { qubit, active_on }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `Ry(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]`.
    Ry { target: usize, theta: f64 },
    Cnot { control: usize, target: usize },
    /// Ry on `target` applied only on basis states matching every control bit.
    MultiControlledRy {
        controls: Vec<Control>,
        target: usize,
        theta: f64,
    },
    /// Arbitrary unitary on `qubits`; `qubits[0]` is the block's most significant bit.
    UnitaryBlock { qubits: Vec<usize>, matrix: ComplexMatrix },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Ry { target, .. } => vec![*target],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::MultiControlledRy { controls, target, .. } => {
                let mut q: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
                q.push(*target);
                q
            }
            Gate::UnitaryBlock { qubits, .. } => qubits.clone(),
        }
    }

    /// Checks index bounds, distinctness, and block unitarity.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if let Some(&bad) = qubits.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::IndexOutOfRange { index: bad, num_qubits });
        }
        let mut sorted = qubits.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGate(format!("repeated qubit in {qubits:?}")));
        }
        match self {
            Gate::Ry { theta, .. } | Gate::MultiControlledRy { theta, .. } if !theta.is_finite() => {
                Err(Error::InvalidGate(format!("non-finite angle {theta}")))
            }
            Gate::UnitaryBlock { qubits, matrix } => {
                if qubits.is_empty() {
                    return Err(Error::InvalidGate("unitary block acts on no qubits".into()));
                }
                let dim = 1usize << qubits.len();
                if matrix.rows() != dim || matrix.cols() != dim {
                    return Err(Error::InvalidGate(format!(
                        "unitary block on {} qubits has a {}x{} matrix",
                        qubits.len(),
                        matrix.rows(),
                        matrix.cols()
                    )));
                }
                let deviation = matrix.unitary_deviation();
                if deviation > UNITARY_TOL {
                    return Err(Error::NotUnitary {
                        tol: UNITARY_TOL,
                        deviation,
                    });
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    pub label: String,
}

impl Circuit {
    pub fn new(num_qubits: usize, label: impl Into<String>) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
            label: label.into(),
        }
    }

    /// Appends a gate after validating it against the register size.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.num_qubits))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Copy of this circuit with every qubit index shifted by `offset`
    /// inside a register of `num_qubits`.
    pub fn embedded(&self, offset: usize, num_qubits: usize) -> Result<Circuit> {
        let shift = |q: usize| q + offset;
        let mut out = Circuit::new(num_qubits, self.label.clone());
        for g in &self.gates {
            let moved = match g {
                Gate::Ry { target, theta } => Gate::Ry {
                    target: shift(*target),
                    theta: *theta,
                },
                Gate::Cnot { control, target } => Gate::Cnot {
                    control: shift(*control),
                    target: shift(*target),
                },
                Gate::MultiControlledRy { controls, target, theta } => Gate::MultiControlledRy {
                    controls: controls.iter().map(|c| Control::new(shift(c.qubit), c.active_on)).collect(),
                    target: shift(*target),
                    theta: *theta,
                },
                Gate::UnitaryBlock { qubits, matrix } => Gate::UnitaryBlock {
                    qubits: qubits.iter().map(|&q| shift(q)).collect(),
                    matrix: matrix.clone(),
                },
            };
            out.push(moved)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_and_repeated_qubits() {
        let mut c = Circuit::new(2, "t");
        assert!(matches!(
            c.push(Gate::Ry { target: 2, theta: 0.1 }),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
        assert!(matches!(
            c.push(Gate::Cnot { control: 1, target: 1 }),
            Err(Error::InvalidGate(_))
        ));
        assert!(c.is_empty());
    }

    #[test]
    fn rejects_bad_blocks() {
        let g = Gate::UnitaryBlock {
            qubits: vec![0],
            matrix: ComplexMatrix::identity(4),
        };
        assert!(matches!(g.validate(2), Err(Error::InvalidGate(_))));
        let g = Gate::UnitaryBlock {
            qubits: vec![0],
            matrix: ComplexMatrix::identity(2).scale_real(2.0),
        };
        assert!(matches!(g.validate(2), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn embedding_shifts_indices() {
        let mut c = Circuit::new(2, "x");
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        let e = c.embedded(2, 4).unwrap();
        assert_eq!(e.gates[0], Gate::Cnot { control: 2, target: 3 });
    }
}

//! Compilation of nonnegative real-amplitude pure states into one Ry
//! followed by layers of multi-controlled Ry rotations.
//!
//! Level `k` rotates qubit `k` conditioned on every bit pattern of qubits
//! `0..k`, splitting each prefix's branch norm between its two children.

use crate::circuit::{Circuit, Control, Gate};
use crate::error::{Error, Result};

/// Tolerance on the squared norm of an amplitude vector.
pub const NORM_TOL: f64 = 1e-10;

/// Unit-norm vector of `2^n` nonnegative real amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct RealAmplitudeVector {
    amplitudes: Vec<f64>,
    num_qubits: usize,
}

impl RealAmplitudeVector {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector length {len} is not a power of two >= 2"
            )));
        }
        if let Some((index, &value)) = amplitudes.iter().enumerate().find(|(_, &a)| a.is_nan() || a < 0.0) {
            return Err(Error::NegativeAmplitude { index, value });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a * a).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }
}

/// Root-sum-square of the amplitudes over every suffix, for each prefix of
/// length `level + 1`. Level `n - 1` returns the amplitudes themselves.
pub fn branch_norms(amps: &RealAmplitudeVector, level: usize) -> Result<Vec<f64>> {
    let n = amps.num_qubits();
    if level >= n {
        return Err(Error::LevelOutOfRange { level, num_qubits: n });
    }
    let block = 1usize << (n - 1 - level);
    Ok(amps
        .amplitudes()
        .chunks(block)
        .map(|c| c.iter().map(|a| a * a).sum::<f64>().sqrt())
        .collect())
}

/// `2 atan(r1 / r0)`, with `(0, r1 > 0) -> pi` and `(0, 0) -> 0`.
pub fn rotation_angle(r0: f64, r1: f64) -> f64 {
    if r0 == 0.0 && r1 == 0.0 {
        return 0.0;
    }
    2.0 * r1.atan2(r0)
}

/// Branch norms for every level, finest (`n - 1`) last, built bottom-up
/// by pairwise root-sum-square.
fn all_levels(amps: &RealAmplitudeVector) -> Vec<Vec<f64>> {
    let n = amps.num_qubits();
    let mut levels = vec![Vec::new(); n];
    levels[n - 1] = amps.amplitudes().to_vec();
    for k in (0..n - 1).rev() {
        levels[k] = levels[k + 1]
            .chunks(2)
            .map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt())
            .collect();
    }
    levels
}

/// Builds the `2^n - 1` gate circuit preparing `amps` from `|0...0>`.
pub fn compile_real_state(amps: &RealAmplitudeVector) -> Result<Circuit> {
    let n = amps.num_qubits();
    let levels = all_levels(amps);
    let mut circuit = Circuit::new(n, format!("real-amplitude state on {n} qubits"));

    let top = &levels[0];
    circuit.push(Gate::Ry {
        target: 0,
        theta: rotation_angle(top[0], top[1]),
    })?;

    for (k, norms) in levels.iter().enumerate().skip(1) {
        for prefix in 0..(1usize << k) {
            let controls = (0..k)
                .map(|q| Control::new(q, (prefix >> (k - 1 - q)) & 1 == 1))
                .collect();
            circuit.push(Gate::MultiControlledRy {
                controls,
                target: k,
                theta: rotation_angle(norms[2 * prefix], norms[2 * prefix + 1]),
            })?;
        }
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simcore::run;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn branch_norm_examples() {
        let a = RealAmplitudeVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(branch_norms(&a, 0).unwrap(), vec![1.0, 0.0]);

        let a = RealAmplitudeVector::new(vec![0.5; 4]).unwrap();
        let r = branch_norms(&a, 0).unwrap();
        assert!(r.iter().all(|x| (x - FRAC_1_SQRT_2).abs() < 1e-15));

        let v = vec![0.4f64.sqrt(), 0.3f64.sqrt(), 0.2f64.sqrt(), 0.1f64.sqrt()];
        let a = RealAmplitudeVector::new(v.clone()).unwrap();
        assert_eq!(branch_norms(&a, 1).unwrap(), v);
        assert!(matches!(branch_norms(&a, 2), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn angle_examples() {
        assert_eq!(rotation_angle(1.0, 0.0), 0.0);
        assert!((rotation_angle(FRAC_1_SQRT_2, FRAC_1_SQRT_2) - PI / 2.0).abs() < 1e-15);
        // single-qubit form: 2 arccos(|c0|)
        assert!((rotation_angle(FRAC_1_SQRT_2, FRAC_1_SQRT_2) - 2.0 * FRAC_1_SQRT_2.acos()).abs() < 1e-15);
        assert_eq!(rotation_angle(0.0, 1.0), PI);
        assert_eq!(rotation_angle(0.0, 0.0), 0.0);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            RealAmplitudeVector::new(vec![0.6, 0.6]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            RealAmplitudeVector::new(vec![-0.6, 0.8]),
            Err(Error::NegativeAmplitude { index: 0, .. })
        ));
        assert!(RealAmplitudeVector::new(vec![1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn single_qubit_circuit() {
        let a = RealAmplitudeVector::new(vec![0.7f64.sqrt(), 0.3f64.sqrt()]).unwrap();
        let c = compile_real_state(&a).unwrap();
        assert_eq!(c.gates.len(), 1);
        match c.gates[0] {
            Gate::Ry { target: 0, theta } => assert!((theta - 2.0 * 0.7f64.sqrt().acos()).abs() < 1e-14),
            ref g => panic!("unexpected gate {g:?}"),
        }
    }

    #[test]
    fn basis_state_has_zero_angles() {
        let a = RealAmplitudeVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let c = compile_real_state(&a).unwrap();
        for g in &c.gates {
            match g {
                Gate::Ry { theta, .. } | Gate::MultiControlledRy { theta, .. } => assert_eq!(*theta, 0.0),
                _ => unreachable!(),
            }
        }
        let s = run(&c).unwrap();
        assert_eq!(s.amps()[0].re, 1.0);
    }

    #[test]
    fn gate_order_and_controls() {
        let a = RealAmplitudeVector::new(vec![0.125f64.sqrt(); 8]).unwrap();
        let c = compile_real_state(&a).unwrap();
        assert_eq!(c.gates.len(), 7);
        let patterns: Vec<Vec<bool>> = c.gates[3..]
            .iter()
            .map(|g| match g {
                Gate::MultiControlledRy { controls, target: 2, .. } => controls.iter().map(|c| c.active_on).collect(),
                g => panic!("unexpected {g:?}"),
            })
            .collect();
        assert_eq!(
            patterns,
            vec![
                vec![false, false],
                vec![false, true],
                vec![true, false],
                vec![true, true]
            ]
        );
    }
}

//! Exact statevector simulation of [`Circuit`]s.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::numkit::{basis_offsets, normalize_subset, ComplexMatrix};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Wraps an amplitude vector; the length must be a power of two and the norm 1 within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "statevector length {} is not a power of two",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                requested: num_qubits,
                limit: MAX_QUBITS,
            });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq.sqrt() - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn density_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amps)
    }

    #[inline]
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    /// Applies `gate` to this state in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match gate {
            Gate::Ry { target, theta } => {
                let t = self.mask(*target);
                self.rotate_y(t, 0, 0, *theta);
            }
            Gate::MultiControlledRy { controls, target, theta } => {
                let t = self.mask(*target);
                let (mut cmask, mut cval) = (0, 0);
                for c in controls {
                    let m = self.mask(c.qubit);
                    cmask |= m;
                    if c.active_on {
                        cval |= m;
                    }
                }
                self.rotate_y(t, cmask, cval, *theta);
            }
            Gate::Cnot { control, target } => {
                let c = self.mask(*control);
                let t = self.mask(*target);
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            Gate::UnitaryBlock { qubits, matrix } => {
                let offsets = basis_offsets(qubits, self.num_qubits);
                let block_mask = offsets.iter().fold(0, |acc, &o| acc | o);
                let k = offsets.len();
                let mut gathered = vec![Complex64::new(0.0, 0.0); k];
                for base in 0..self.amps.len() {
                    if base & block_mask != 0 {
                        continue;
                    }
                    for (g, &o) in gathered.iter_mut().zip(&offsets) {
                        *g = self.amps[base | o];
                    }
                    for (r, &o) in offsets.iter().enumerate() {
                        let row = &matrix.as_slice()[r * k..(r + 1) * k];
                        self.amps[base | o] = row.iter().zip(&gathered).map(|(m, a)| m * a).sum();
                    }
                }
            }
        }
        Ok(())
    }

    fn rotate_y(&mut self, target_mask: usize, control_mask: usize, control_value: usize, theta: f64) {
        let (s, c) = (theta / 2.0).sin_cos();
        for i in 0..self.amps.len() {
            if i & target_mask != 0 || i & control_mask != control_value {
                continue;
            }
            let j = i | target_mask;
            let a0 = self.amps[i];
            let a1 = self.amps[j];
            self.amps[i] = a0 * c - a1 * s;
            self.amps[j] = a0 * s + a1 * c;
        }
    }
}

/// Pure-function form of [`StateVector::apply`].
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

/// Runs `circuit` from `|0...0>`.
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    let mut state = StateVector::zero(circuit.num_qubits)?;
    for gate in &circuit.gates {
        state.apply(gate)?;
    }
    Ok(state)
}

/// Reduced density matrix on `keep`, computed directly from amplitudes.
pub fn reduced_density(state: &StateVector, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = state.num_qubits();
    let keep = normalize_subset(keep, n)?;
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let kept_off = basis_offsets(&keep, n);
    let traced_off = basis_offsets(&traced, n);
    let dim = kept_off.len();
    let amps = state.amps();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v: Complex64 = traced_off
                .iter()
                .map(|&t| amps[kept_off[i] | t] * amps[kept_off[j] | t].conj())
                .sum();
            out[(i, j)] = v;
            out[(j, i)] = v.conj();
        }
    }
    Ok(out)
}

/// Measurement record of a sampled circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotResult {
    /// Outcome bitstrings, qubit 0 first.
    pub counts: BTreeMap<String, u64>,
    pub shots: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliEstimate {
    pub result: ShotResult,
    pub expectation: f64,
}

fn parse_labels(labels: &str, num_qubits: usize) -> Result<Vec<char>> {
    let chars: Vec<char> = labels.chars().collect();
    if chars.len() != num_qubits || chars.iter().any(|c| !matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
        return Err(Error::BadLabel(labels.to_string()));
    }
    Ok(chars)
}

fn basis_change(label: char) -> Option<ComplexMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let r = Complex64::new(h, 0.0);
    let i = Complex64::new(0.0, h);
    match label {
        'X' => Some(ComplexMatrix::new(2, 2, vec![r, r, r, -r]).expect("2x2")),
        // H S^dagger
        'Y' => Some(ComplexMatrix::new(2, 2, vec![r, -i, r, i]).expect("2x2")),
        _ => None,
    }
}

/// Exact `<psi|P|psi>` for a Pauli string over the whole register.
pub fn pauli_expectation(state: &StateVector, labels: &str) -> Result<f64> {
    let chars = parse_labels(labels, state.num_qubits())?;
    let mut rotated = state.clone();
    rotate_to_z(&mut rotated, &chars)?;
    let parity_mask = parity_mask(&rotated, &chars);
    Ok(rotated
        .amps()
        .iter()
        .enumerate()
        .map(|(i, a)| parity_sign(i, parity_mask) * a.norm_sqr())
        .sum())
}

fn rotate_to_z(state: &mut StateVector, chars: &[char]) -> Result<()> {
    for (q, &ch) in chars.iter().enumerate() {
        if let Some(m) = basis_change(ch) {
            state.apply(&Gate::UnitaryBlock {
                qubits: vec![q],
                matrix: m,
            })?;
        }
    }
    Ok(())
}

fn parity_mask(state: &StateVector, chars: &[char]) -> usize {
    chars
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 'I')
        .fold(0, |acc, (q, _)| acc | state.mask(q))
}

#[inline]
fn parity_sign(index: usize, mask: usize) -> f64 {
    if (index & mask).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Samples `shots` measurements of the Pauli string `labels` (one label per
/// qubit, qubit 0 first) and estimates its expectation.
pub fn sample_pauli(state: &StateVector, labels: &str, shots: u64, seed: u64) -> Result<PauliEstimate> {
    if shots == 0 {
        return Err(Error::OutOfRange("shots must be at least 1".into()));
    }
    let chars = parse_labels(labels, state.num_qubits())?;
    let mut rotated = state.clone();
    rotate_to_z(&mut rotated, &chars)?;

    let mut cdf = Vec::with_capacity(rotated.amps().len());
    let mut acc = 0.0;
    for a in rotated.amps() {
        acc += a.norm_sqr();
        cdf.push(acc);
    }
    let total = acc;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = vec![0u64; cdf.len()];
    for _ in 0..shots {
        let u = rng.random::<f64>() * total;
        let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
        hits[idx] += 1;
    }

    let n = rotated.num_qubits();
    let pmask = parity_mask(&rotated, &chars);
    let mut counts = BTreeMap::new();
    let mut signed = 0i64;
    for (idx, &h) in hits.iter().enumerate() {
        if h == 0 {
            continue;
        }
        counts.insert(format!("{idx:0n$b}"), h);
        if parity_sign(idx, pmask) > 0.0 {
            signed += h as i64;
        } else {
            signed -= h as i64;
        }
    }
    Ok(PauliEstimate {
        result: ShotResult { counts, shots, seed },
        expectation: signed as f64 / shots as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Control;
    use crate::numkit::partial_trace;
    use rand::Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn basis(n: usize, index: usize) -> StateVector {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector::from_amplitudes(amps).unwrap()
    }

    fn bell() -> StateVector {
        let mut c = Circuit::new(2, "bell");
        c.push(Gate::Ry { target: 0, theta: PI / 2.0 }).unwrap();
        c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
        run(&c).unwrap()
    }

    fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
        let mut amps: Vec<Complex64> = (0..1 << n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn cnot_flips_target() {
        let s = apply_gate(&basis(2, 0b10), &Gate::Cnot { control: 0, target: 1 }).unwrap();
        assert_eq!(s, basis(2, 0b11));
    }

    #[test]
    fn ry_half_pi() {
        let s = apply_gate(&basis(1, 0), &Gate::Ry { target: 0, theta: PI / 2.0 }).unwrap();
        assert!((s.amps()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amps()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn controlled_ry_on_zero_control() {
        let g = Gate::MultiControlledRy {
            controls: vec![Control::new(0, false)],
            target: 1,
            theta: PI,
        };
        let s = apply_gate(&basis(2, 0), &g).unwrap();
        assert!((s.amps()[1].re - 1.0).abs() < 1e-15);
        assert!(s.amps()[0].norm() < 1e-15);
        // inactive when control is 1
        let s = apply_gate(&basis(2, 0b10), &g).unwrap();
        assert_eq!(s, basis(2, 0b10));
    }

    #[test]
    fn unitary_block_respects_qubit_order() {
        // X (x) I on qubits [2, 0] of a 3-qubit register flips qubit 2.
        let x = crate::numkit::pauli('X').unwrap();
        let xi = crate::numkit::kron(&x, &ComplexMatrix::identity(2));
        let g = Gate::UnitaryBlock {
            qubits: vec![2, 0],
            matrix: xi,
        };
        let s = apply_gate(&basis(3, 0b000), &g).unwrap();
        assert_eq!(s, basis(3, 0b001));
    }

    #[test]
    fn run_examples() {
        let s = run(&Circuit::new(2, "empty")).unwrap();
        assert_eq!(s, basis(2, 0));
        let b = bell();
        assert!((b.amps()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((b.amps()[3].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(b.amps()[1].norm() + b.amps()[2].norm() < 1e-15);
    }

    #[test]
    fn errors() {
        let mut s = basis(2, 0);
        assert!(matches!(
            s.apply(&Gate::Ry { target: 5, theta: 0.1 }),
            Err(Error::IndexOutOfRange { .. })
        ));
        let bad = Gate::UnitaryBlock {
            qubits: vec![0],
            matrix: ComplexMatrix::from_real_diagonal(&[1.0, 2.0]),
        };
        assert!(matches!(s.apply(&bad), Err(Error::NotUnitary { .. })));
        assert!(matches!(StateVector::zero(25), Err(Error::TooManyQubits { .. })));
        assert!(matches!(sample_pauli(&s, "ZQ", 10, 0), Err(Error::BadLabel(_))));
        assert!(matches!(sample_pauli(&s, "Z", 10, 0), Err(Error::BadLabel(_))));
    }

    #[test]
    fn norm_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut s = random_state(4, &mut rng);
        let spec = crate::numkit::eig_hermitian(
            &ComplexMatrix::from_fn(4, 4, |_, _| Complex64::new(rng.random(), rng.random())).hermitian_part(),
            1e-10,
        )
        .unwrap();
        let gates = vec![
            Gate::Ry { target: 1, theta: 0.3 },
            Gate::Cnot { control: 3, target: 0 },
            Gate::MultiControlledRy {
                controls: vec![Control::new(0, true), Control::new(2, false)],
                target: 3,
                theta: 1.7,
            },
            Gate::UnitaryBlock {
                qubits: vec![3, 1],
                matrix: spec.eigenvectors,
            },
        ];
        for g in &gates {
            s.apply(g).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reduced_density_examples() {
        let r = reduced_density(&bell(), &[0]).unwrap();
        assert!((&r - &ComplexMatrix::identity(2).scale_real(0.5)).max_abs() < 1e-15);
        let r = reduced_density(&basis(2, 0b01), &[1]).unwrap();
        assert_eq!(r, ComplexMatrix::from_real_diagonal(&[0.0, 1.0]));
    }

    #[test]
    fn reduced_density_matches_partial_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=6 {
            let s = random_state(n, &mut rng);
            let full = s.density_matrix();
            for mask in 1u32..(1 << n) {
                let keep: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
                let a = reduced_density(&s, &keep).unwrap();
                let b = partial_trace(&full, &keep, n).unwrap();
                assert!((&a - &b).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampling_examples() {
        let z = sample_pauli(&basis(1, 0), "Z", 1000, 3).unwrap();
        assert_eq!(z.expectation, 1.0);
        assert_eq!(z.result.counts.values().sum::<u64>(), 1000);

        let xx = sample_pauli(&bell(), "XX", 100_000, 7).unwrap();
        assert!((xx.expectation - 1.0).abs() < 0.02);

        let plus = StateVector::from_amplitudes(vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2]).unwrap();
        let shots = 10_000;
        let e = sample_pauli(&plus, "Z", shots, 9).unwrap();
        assert!(e.expectation.abs() < 3.0 / (shots as f64).sqrt());
    }

    #[test]
    fn exact_expectations() {
        let b = bell();
        assert!((pauli_expectation(&b, "XX").unwrap() - 1.0).abs() < 1e-15);
        assert!((pauli_expectation(&b, "YY").unwrap() + 1.0).abs() < 1e-15);
        assert!((pauli_expectation(&b, "ZI").unwrap()).abs() < 1e-15);
    }

    #[test]
    fn sampling_is_unbiased() {
        let theta = 1.1f64;
        let s = apply_gate(&basis(1, 0), &Gate::Ry { target: 0, theta }).unwrap();
        let shots = 2_000u64;
        let seeds = 50;
        let mean = (0..seeds)
            .map(|seed| sample_pauli(&s, "Z", shots, seed).unwrap().expectation)
            .sum::<f64>()
            / seeds as f64;
        let exact = theta.cos();
        let std_err = ((1.0 - exact * exact) / (shots * seeds) as f64).sqrt();
        assert!((mean - exact).abs() < 5.0 * std_err);
    }

    #[test]
    fn sampling_is_reproducible() {
        let b = bell();
        assert_eq!(
            sample_pauli(&b, "ZZ", 500, 12).unwrap(),
            sample_pauli(&b, "ZZ", 500, 12).unwrap()
        );
    }
}

use mixstate::{Circuit, Complex64, ComplexMatrix, Control, Gate};
use mixstate_cli::files::{parse_circuit, parse_density};
use mixstate_cli::{CircuitFile, DensityMatrixFile};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -10.0..10.0f64,
        (-1e-15..1e-15f64),
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        Just(0.0),
        Just(-0.0),
    ]
}

/// A unitary with entries of widely varying magnitude: a random phase
/// diagonal composed with a permutation, plus a small rotation.
fn unitary(k: usize) -> impl Strategy<Value = ComplexMatrix> {
    let d = 1usize << k;
    (
        prop::collection::vec(-3.2..3.2f64, d),
        Just((0..d).collect::<Vec<_>>()).prop_shuffle(),
        -1e-15..1e-15f64,
    )
        .prop_map(move |(phases, perm, eps)| {
            let mut m = ComplexMatrix::from_fn(d, d, |i, j| {
                if perm[i] == j {
                    Complex64::from_polar(1.0, phases[i])
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            let (c, s) = (eps.cos(), eps.sin());
            let rot = ComplexMatrix::from_fn(d, d, |i, j| match (i, j) {
                (0, 0) | (1, 1) => Complex64::new(c, 0.0),
                (0, 1) => Complex64::new(-s, 0.0),
                (1, 0) => Complex64::new(s, 0.0),
                _ if i == j => Complex64::new(1.0, 0.0),
                _ => Complex64::new(0.0, 0.0),
            });
            m = rot.matmul(&m).unwrap();
            m
        })
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    let ry = (0..n, finite()).prop_map(|(target, theta)| Gate::Ry { target, theta });
    let cnot = Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|q| Gate::Cnot {
            control: q[0],
            target: q[1],
        });
    let mcry = (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        1..n,
        prop::collection::vec(any::<bool>(), n),
        finite(),
    )
        .prop_map(|(q, k, bits, theta)| Gate::MultiControlledRy {
            controls: q[..k].iter().zip(&bits).map(|(&c, &b)| Control::new(c, b)).collect(),
            target: q[k],
            theta,
        });
    let block = (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 1..=2usize.min(n))
        .prop_flat_map(|(q, k)| (Just(q[..k].to_vec()), unitary(k)))
        .prop_map(|(qubits, matrix)| Gate::UnitaryBlock { qubits, matrix });
    prop_oneof![ry, cnot, mcry, block]
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (2..6usize)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(gate(n), 0..12), "[a-z =,]{0,20}"))
        .prop_map(|(n, gates, label)| {
            let mut c = Circuit::new(n, label);
            for g in gates {
                c.push(g).unwrap();
            }
            c
        })
}

proptest! {
    #[test]
    fn circuit_file_round_trips(c in circuit(), seed in proptest::option::of(any::<u64>())) {
        let file = CircuitFile::from_circuit(&c, seed, Some(b"source"));
        let text = serde_json::to_string_pretty(&file).unwrap();
        let back = parse_circuit(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.to_circuit().unwrap(), c);
    }

    #[test]
    fn density_file_round_trips(d in 1..6usize, entries in prop::collection::vec((finite(), finite()), 36)) {
        let m = ComplexMatrix::from_fn(d, d, |i, j| {
            let (re, im) = entries[i * 6 + j];
            Complex64::new(re, im)
        });
        let text = serde_json::to_string(&DensityMatrixFile::from_matrix(&m)).unwrap();
        let back = parse_density(text.as_bytes()).unwrap();
        prop_assert_eq!(back.rows(), d);
        for (a, b) in back.as_slice().iter().zip(m.as_slice()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}

#[test]
fn gate_kinds_are_spelled_out() {
    let mut c = Circuit::new(2, "");
    c.push(Gate::Ry { target: 0, theta: 0.5 }).unwrap();
    c.push(Gate::Cnot { control: 0, target: 1 }).unwrap();
    c.push(Gate::MultiControlledRy {
        controls: vec![Control::new(0, false)],
        target: 1,
        theta: 1.0,
    })
    .unwrap();
    c.push(Gate::UnitaryBlock {
        qubits: vec![1],
        matrix: ComplexMatrix::identity(2),
    })
    .unwrap();
    let v = serde_json::to_value(CircuitFile::from_circuit(&c, None, None)).unwrap();
    let kinds: Vec<&str> = v["gates"].as_array().unwrap().iter().map(|g| g["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["ry", "cnot", "mcry", "unitary"]);
    assert_eq!(v["gates"][2]["bits"], serde_json::json!([0]));
    assert_eq!(v["gates"][2]["controls"], serde_json::json!([0]));
}

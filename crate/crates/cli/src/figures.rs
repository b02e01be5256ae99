//! Data behind the X-state curves (figure 2) and the random-state fidelity
//! sweep (figure 3).

use std::str::FromStr;

use mixstate::metrics::estimate_expectations;
use mixstate::{
    build_preparation_circuit, c1_state, concurrence, fidelity, ginibre_density, l1_coherence, local_l1_coherence,
    p00_family, run, tomography_reconstruct, ComplexMatrix, PreparedCircuitBundle, Subsystem,
};

use crate::error::CliError;

/// Number of points on the `p00` and `c1` grids.
pub const GRID_POINTS: usize = 21;
pub const FIDELITY_DIMS: [usize; 3] = [2, 4, 8];
pub const SAMPLES_PER_DIM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    Exact,
    Count(u64),
}

impl FromStr for Shots {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exact" {
            return Ok(Shots::Exact);
        }
        match s.parse::<u64>() {
            Ok(0) | Err(_) => Err(format!("expected 'exact' or a positive shot count, got '{s}'")),
            Ok(n) => Ok(Shots::Count(n)),
        }
    }
}

/// Seed of sample `sample` at dimension `d` in the fidelity sweep.
pub fn sample_seed(seed: u64, d: usize, sample: usize) -> u64 {
    seed.wrapping_mul(1000).wrapping_add((100 * d + sample) as u64)
}

/// State read out of a prepared circuit: the exact reduced density matrix,
/// or its tomographic estimate from `shots` per Pauli string.
pub fn readout(bundle: &PreparedCircuitBundle, shots: Shots, seed: u64) -> Result<ComplexMatrix, CliError> {
    match shots {
        Shots::Exact => Ok(bundle.prepared_state()?),
        Shots::Count(n) => {
            let state = run(&bundle.circuit)?;
            let expectations = estimate_expectations(&state, &bundle.system_qubits, n, seed)?;
            Ok(tomography_reconstruct(&expectations, bundle.num_system_qubits())?)
        }
    }
}

/// Wootters concurrence of an X-shaped two-qubit matrix from its entries.
pub fn x_state_concurrence(rho: &ComplexMatrix) -> f64 {
    let d = |i: usize| rho[(i, i)].re.max(0.0);
    let a = rho[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    let b = rho[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    2.0 * a.max(b).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateRow {
    pub p00: f64,
    pub ec_theory: f64,
    pub ec_pipeline: f64,
    pub cl1_theory: f64,
    pub cl1_pipeline: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C1Row {
    pub c1: f64,
    pub cl1_theory: f64,
    pub cl1_pipeline: f64,
    pub local_a_theory: f64,
    pub local_a_pipeline: f64,
    pub local_b_theory: f64,
    pub local_b_pipeline: f64,
}

pub fn p00_grid() -> Vec<f64> {
    (0..GRID_POINTS).map(|k| k as f64 / (GRID_POINTS - 1) as f64).collect()
}

/// Evenly spaced over the PSD range `[-1/3, 1/3]`.
pub fn c1_grid() -> Vec<f64> {
    (0..GRID_POINTS)
        .map(|k| (2.0 * k as f64 / (GRID_POINTS - 1) as f64 - 1.0) / 3.0)
        .collect()
}

pub fn x_state_rows(seed: u64, shots: Shots, tol: f64) -> Result<Vec<XStateRow>, CliError> {
    p00_grid()
        .into_iter()
        .enumerate()
        .map(|(k, p00)| {
            let rho = p00_family(p00)?;
            let bundle = build_preparation_circuit(&rho, tol)?;
            let out = readout(&bundle, shots, sample_seed(seed, 4, k))?;
            Ok(XStateRow {
                p00,
                ec_theory: x_state_concurrence(&rho),
                ec_pipeline: concurrence(&out)?,
                cl1_theory: 2.0 * (rho[(0, 3)].norm() + rho[(1, 2)].norm()),
                cl1_pipeline: l1_coherence(&out)?,
            })
        })
        .collect()
}

pub fn c1_rows(seed: u64, shots: Shots, tol: f64) -> Result<Vec<C1Row>, CliError> {
    c1_grid()
        .into_iter()
        .enumerate()
        .map(|(k, c1)| {
            let bundle = build_preparation_circuit(&c1_state(c1)?, tol)?;
            let out = readout(&bundle, shots, sample_seed(seed, 4, GRID_POINTS + k))?;
            Ok(C1Row {
                c1,
                cl1_theory: 3.0 * c1.abs(),
                cl1_pipeline: l1_coherence(&out)?,
                local_a_theory: c1.abs(),
                local_a_pipeline: local_l1_coherence(&out, Subsystem::A)?,
                local_b_theory: c1.abs(),
                local_b_pipeline: local_l1_coherence(&out, Subsystem::B)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityRow {
    pub d: usize,
    pub sample: usize,
    pub fidelity: f64,
}

pub fn fidelity_rows(seed: u64, shots: Shots, tol: f64) -> Result<Vec<FidelityRow>, CliError> {
    let mut rows = Vec::new();
    for d in FIDELITY_DIMS {
        for sample in 0..SAMPLES_PER_DIM {
            let s = sample_seed(seed, d, sample);
            let rho = ginibre_density(d, s)?;
            let bundle = build_preparation_circuit(&rho, tol)?;
            let out = readout(&bundle, shots, s)?;
            rows.push(FidelityRow {
                d,
                sample,
                fidelity: fidelity(&out, &rho)?,
            });
        }
    }
    Ok(rows)
}

fn csv_block<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn num(x: f64) -> String {
    // Display is locale independent and round-trips exactly.
    format!("{x}")
}

/// Two CSV blocks separated by an empty line: the X-state sweep, then the
/// `c1` coherence sweep.
pub fn figure2_csv(seed: u64, shots: Shots, tol: f64) -> Result<Vec<u8>, CliError> {
    let mut out = csv_block(
        &["p00", "EC_theory", "EC_pipeline", "Cl1_theory", "Cl1_pipeline"],
        x_state_rows(seed, shots, tol)?.into_iter().map(|r| {
            [r.p00, r.ec_theory, r.ec_pipeline, r.cl1_theory, r.cl1_pipeline].map(num)
        }),
    );
    out.push(b'\n');
    out.extend(csv_block(
        &[
            "c1",
            "Cl1_theory",
            "Cl1_pipeline",
            "Cl1_A_theory",
            "Cl1_A_pipeline",
            "Cl1_B_theory",
            "Cl1_B_pipeline",
        ],
        c1_rows(seed, shots, tol)?.into_iter().map(|r| {
            [
                r.c1,
                r.cl1_theory,
                r.cl1_pipeline,
                r.local_a_theory,
                r.local_a_pipeline,
                r.local_b_theory,
                r.local_b_pipeline,
            ]
            .map(num)
        }),
    ));
    Ok(out)
}

pub fn figure3_csv(seed: u64, shots: Shots, tol: f64) -> Result<Vec<u8>, CliError> {
    Ok(csv_block(
        &["d", "sample", "fidelity"],
        fidelity_rows(seed, shots, tol)?
            .into_iter()
            .map(|r| [r.d.to_string(), r.sample.to_string(), num(r.fidelity)]),
    ))
}

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixstate::{
    build_preparation_circuit, concurrence, fidelity, l1_coherence, local_l1_coherence, reduced_density, run,
    ComplexMatrix, Subsystem, DEFAULT_TOL,
};

use crate::error::CliError;
use crate::family::{build_family, parse_family};
use crate::figures::{figure2_csv, figure3_csv, Shots};
use crate::files::{parse_density, read_bytes, read_circuit, read_density, write_bytes, write_json, CircuitFile, DensityMatrixFile};

/// Tolerance for accepting a density matrix read from disk.
pub const INPUT_DENSITY_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "mixstate", version, about = "Prepare mixed quantum states through purification circuits")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Numerical tolerance for eigenvalues and circuit construction.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for random families and shot sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Suppress informational output.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a density matrix into a purification circuit.
    Prepare {
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        input: Option<PathBuf>,
        /// State family, e.g. `ginibre:d=4,seed=7`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        out: PathBuf,
        /// Skip the density-matrix check on --input.
        #[arg(long)]
        no_validate: bool,
    },
    /// Simulate a circuit file and write the resulting density matrix.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        /// Keep only the lower half of the register.
        #[arg(long)]
        trace_ancillas: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a metric on a density matrix file.
    Metrics {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, value_enum)]
        metric: Metric,
        #[arg(long, value_enum, default_value = "a")]
        subsystem: SubsystemArg,
    },
    /// Regenerate the data of a figure as CSV.
    Reproduce {
        #[arg(long)]
        figure: String,
        #[arg(long)]
        out: PathBuf,
        /// `exact` or a shot count per Pauli string.
        #[arg(long, default_value = "exact")]
        shots: Shots,
    },
    /// Write a family state to a density matrix file.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Fidelity,
    Coherence,
    LocalCoherence,
    Concurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubsystemArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<SubsystemArg> for Subsystem {
    fn from(s: SubsystemArg) -> Self {
        match s {
            SubsystemArg::A => Subsystem::A,
            SubsystemArg::B => Subsystem::B,
        }
    }
}

fn check_density(rho: &ComplexMatrix, what: &Path) -> Result<(), CliError> {
    match rho.density_violation(INPUT_DENSITY_TOL) {
        Some(msg) => Err(CliError::invalid(format!(
            "invalid density matrix in {}: {msg}",
            what.display()
        ))),
        None => Ok(()),
    }
}

fn read_state(path: &Path) -> Result<ComplexMatrix, CliError> {
    let rho = read_density(path)?;
    check_density(&rho, path)?;
    // Accepted files may be Hermitian only to INPUT_DENSITY_TOL.
    Ok(rho.hermitian_part())
}

/// Runs one command, writing informational output to `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    let mut say = |text: String| -> Result<(), CliError> {
        writeln!(stdout, "{text}").map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))
    };
    match &cli.command {
        Command::Prepare {
            input,
            family,
            out,
            no_validate,
        } => {
            let (rho, seed, source) = match (input, family) {
                (Some(path), None) => {
                    let bytes = read_bytes(path)?;
                    let rho = parse_density(&bytes)?;
                    if !no_validate {
                        check_density(&rho, path)?;
                    }
                    (rho, None, bytes)
                }
                (None, Some(text)) => {
                    let state = build_family(&parse_family(text)?, g.seed)?;
                    (state.rho, state.seed, text.as_bytes().to_vec())
                }
                _ => return Err(CliError::invalid("prepare needs exactly one of --input or --family")),
            };
            let bundle = build_preparation_circuit(&rho, g.tol)?;
            write_json(out, &CircuitFile::from_circuit(&bundle.circuit, seed, Some(&source)))?;
            if !g.quiet {
                let spectrum: Vec<String> = bundle.spectral.eigenvalues.iter().map(|x| format!("{x:.12}")).collect();
                say(format!("eigenvalues: {}", spectrum.join(" ")))?;
                say(format!("qubits: {}", bundle.circuit.num_qubits))?;
                say(format!("gates: {}", bundle.circuit.len()))?;
            }
        }
        Command::Simulate {
            circuit,
            trace_ancillas,
            out,
        } => {
            let c = read_circuit(circuit)?;
            let state = run(&c)?;
            let rho = if *trace_ancillas {
                if c.num_qubits % 2 != 0 {
                    return Err(CliError::invalid(format!(
                        "malformed circuit: --trace-ancillas needs an even register, got {} qubits",
                        c.num_qubits
                    )));
                }
                let system: Vec<usize> = (0..c.num_qubits / 2).collect();
                reduced_density(&state, &system)?
            } else {
                state.density_matrix()
            };
            write_json(out, &DensityMatrixFile::from_matrix(&rho))?;
            if !g.quiet {
                say(format!("dim: {}", rho.rows()))?;
                say(format!("purity: {:.12}", rho.purity()))?;
            }
        }
        Command::Metrics {
            state,
            target,
            metric,
            subsystem,
        } => {
            let rho = read_state(state)?;
            let value = match metric {
                Metric::Fidelity => {
                    let path = target
                        .as_ref()
                        .ok_or_else(|| CliError::invalid("fidelity requires --target"))?;
                    let sigma = read_state(path)?;
                    if sigma.rows() != rho.rows() {
                        return Err(CliError::invalid(format!(
                            "dimension mismatch: state is {0}x{0}, target is {1}x{1}",
                            rho.rows(),
                            sigma.rows()
                        )));
                    }
                    fidelity(&rho, &sigma)?
                }
                Metric::Coherence => l1_coherence(&rho)?,
                Metric::LocalCoherence => local_l1_coherence(&rho, (*subsystem).into())?,
                Metric::Concurrence => concurrence(&rho)?,
            };
            say(format!("{value:.12}"))?;
        }
        Command::Reproduce { figure, out, shots } => {
            let csv = match figure.as_str() {
                "2" => figure2_csv(g.seed, *shots, g.tol)?,
                "3" => figure3_csv(g.seed, *shots, g.tol)?,
                other => return Err(CliError::invalid(format!("unknown figure '{other}' (expected 2 or 3)"))),
            };
            write_bytes(out, &csv)?;
            if !g.quiet {
                say(format!("wrote {}", out.display()))?;
            }
        }
        Command::Gen { family, out } => {
            let state = build_family(&parse_family(family)?, g.seed)?;
            write_json(out, &DensityMatrixFile::from_matrix(&state.rho))?;
            if !g.quiet {
                say(format!("dim: {}", state.rho.rows()))?;
            }
        }
    }
    Ok(())
}

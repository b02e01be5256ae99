//! `name:key=value,...` descriptions of built-in state families.
//!
//! | family    | keys                                   |
//! |-----------|----------------------------------------|
//! | `ginibre` | `d`, `seed` (defaults to `--seed`)     |
//! | `xstate`  | `p00`, `theta`, `phi` (angles default to pi/8) |
//! | `c1`      | `c1`                                   |
//! | `mixed`   | `d`                                    |
//! | `werner`  | `p`                                    |
//! | `bell`    | none                                   |

use std::collections::BTreeMap;

use mixstate::statesgen::{p00_probs, P00_FAMILY_ANGLE};
use mixstate::{c1_state, ginibre_density, x_state, Complex64, ComplexMatrix, XStateParams};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

/// A generated state and the seed that produced it, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyState {
    pub rho: ComplexMatrix,
    pub seed: Option<u64>,
}

pub fn parse_family(text: &str) -> Result<FamilySpec, CliError> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let name = name.trim();
    if name.is_empty() {
        return Err(CliError::invalid(format!("family '{text}' has no name")));
    }
    let mut params = BTreeMap::new();
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::invalid(format!("family parameter '{item}' is not key=value")))?;
        if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::invalid(format!("family parameter '{}' given twice", k.trim())));
        }
    }
    Ok(FamilySpec {
        name: name.to_string(),
        params,
    })
}

struct Params<'a> {
    family: &'a str,
    map: &'a BTreeMap<String, String>,
}

impl Params<'_> {
    fn allow(&self, keys: &[&str]) -> Result<(), CliError> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(CliError::invalid(format!(
                "family '{}' has no parameter '{k}' (expected {})",
                self.family,
                if keys.is_empty() { "none".to_string() } else { keys.join(", ") }
            ))),
            None => Ok(()),
        }
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.map
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::invalid(format!("family '{}': cannot parse {key}={v}", self.family)))
            })
            .transpose()
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        self.get(key)?
            .ok_or_else(|| CliError::invalid(format!("family '{}' requires parameter '{key}'", self.family)))
    }
}

/// Builds the state described by `spec`; `default_seed` feeds random families
/// that do not set their own seed.
pub fn build_family(spec: &FamilySpec, default_seed: u64) -> Result<FamilyState, CliError> {
    let p = Params {
        family: &spec.name,
        map: &spec.params,
    };
    let fixed = |rho| Ok(FamilyState { rho, seed: None });
    match spec.name.as_str() {
        "ginibre" => {
            p.allow(&["d", "seed"])?;
            let seed = p.get("seed")?.unwrap_or(default_seed);
            Ok(FamilyState {
                rho: ginibre_density(p.require("d")?, seed)?,
                seed: Some(seed),
            })
        }
        "xstate" => {
            p.allow(&["p00", "theta", "phi"])?;
            let probs = p00_probs(p.require("p00")?)?;
            let sum: f64 = probs.iter().sum();
            let theta = p.get("theta")?.unwrap_or(P00_FAMILY_ANGLE);
            let phi = p.get("phi")?.unwrap_or(P00_FAMILY_ANGLE);
            fixed(x_state(&XStateParams::new(theta, phi, probs.map(|q| q / sum))?)?)
        }
        "c1" => {
            p.allow(&["c1"])?;
            fixed(c1_state(p.require("c1")?)?)
        }
        "mixed" => {
            p.allow(&["d"])?;
            let d: usize = p.require("d")?;
            if d < 2 {
                return Err(CliError::invalid(format!("family 'mixed': d = {d} < 2")));
            }
            fixed(ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
        }
        "werner" => {
            p.allow(&["p"])?;
            let w: f64 = p.require("p")?;
            if !(0.0..=1.0).contains(&w) {
                return Err(CliError::invalid(format!("family 'werner': p = {w} is outside [0, 1]")));
            }
            let bell = ComplexMatrix::outer(&bell_vector());
            fixed(&bell.scale_real(w) + &ComplexMatrix::identity(4).scale_real((1.0 - w) / 4.0))
        }
        "bell" => {
            p.allow(&[])?;
            fixed(ComplexMatrix::outer(&bell_vector()))
        }
        other => Err(CliError::invalid(format!(
            "unknown family '{other}' (expected ginibre, xstate, c1, mixed, werner or bell)"
        ))),
    }
}

fn bell_vector() -> Vec<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    vec![h, z, z, h]
}

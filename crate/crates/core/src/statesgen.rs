//! Generators for the benchmark state families.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::numkit::{eig_hermitian, ComplexMatrix, DEFAULT_TOL};

/// Real X-state parameters. `probs` are the weights of the eigenvectors
/// `|Psi00>, |Psi01>, |Psi11>, |Psi10>`, in that order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateParams {
    pub theta: f64,
    pub phi: f64,
    pub probs: [f64; 4],
}

impl XStateParams {
    pub fn new(theta: f64, phi: f64, probs: [f64; 4]) -> Result<Self> {
        if probs.iter().any(|p| p.is_nan() || *p < 0.0) {
            return Err(Error::BadProbabilities(format!("negative or NaN entry in {probs:?}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadProbabilities(format!("{probs:?} sums to {sum}")));
        }
        Ok(Self { theta, phi, probs })
    }

    /// The four eigenvectors in `probs` order, as amplitudes over `|00>, |01>, |10>, |11>`.
    pub fn eigenvectors(&self) -> [[f64; 4]; 4] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [
            [ct, 0.0, 0.0, st],
            [0.0, sp, cp, 0.0],
            [0.0, cp, -sp, 0.0],
            [-st, 0.0, 0.0, ct],
        ]
    }
}

/// `sum_k p_k |Psi_k><Psi_k|` over the X-state eigenbasis.
pub fn x_state(params: &XStateParams) -> Result<ComplexMatrix> {
    let checked = XStateParams::new(params.theta, params.phi, params.probs)?;
    let vecs = checked.eigenvectors();
    Ok(ComplexMatrix::from_fn(4, 4, |i, j| {
        let v: f64 = vecs.iter().zip(&checked.probs).map(|(v, p)| p * v[i] * v[j]).sum();
        Complex64::new(v, 0.0)
    }))
}

/// Angle used by the varying-`p00` X-state sweep.
pub const P00_FAMILY_ANGLE: f64 = std::f64::consts::PI / 8.0;

/// Spectrum `{p00/3, (1-p00)/3, 2 p00/3, 2(1-p00)/3}` in eigenvector order.
pub fn p00_probs(p00: f64) -> Result<[f64; 4]> {
    if !(0.0..=1.0).contains(&p00) {
        return Err(Error::OutOfRange(format!("p00 = {p00} is outside [0, 1]")));
    }
    Ok([p00 / 3.0, (1.0 - p00) / 3.0, 2.0 * p00 / 3.0, 2.0 * (1.0 - p00) / 3.0])
}

pub fn p00_family(p00: f64) -> Result<ComplexMatrix> {
    let probs = p00_probs(p00)?;
    // The four entries can miss 1 by an ulp; rescale before the strict check.
    let sum: f64 = probs.iter().sum();
    let probs = probs.map(|p| p / sum);
    x_state(&XStateParams::new(P00_FAMILY_ANGLE, P00_FAMILY_ANGLE, probs)?)
}

/// The two-qubit family with `c_k = a_1 = b_1` and all other local terms zero.
pub fn c1_state(c1: f64) -> Result<ComplexMatrix> {
    if !c1.is_finite() {
        return Err(Error::OutOfRange(format!("c1 = {c1}")));
    }
    let (p, m, z) = (1.0 + c1, 1.0 - c1, 0.0);
    let rows: [[f64; 4]; 4] = [
        [p, c1, c1, z],
        [c1, m, 2.0 * c1, c1],
        [c1, 2.0 * c1, m, c1],
        [z, c1, c1, p],
    ];
    let rho = ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new(rows[i][j] / 4.0, 0.0));
    let spec = eig_hermitian(&rho, DEFAULT_TOL)?;
    let min = *spec.eigenvalues.last().expect("4 eigenvalues");
    if min < -DEFAULT_TOL {
        return Err(Error::NotPsd {
            eigenvalue: min,
            tol: DEFAULT_TOL,
        });
    }
    Ok(rho)
}

/// `G G^dagger / Tr(G G^dagger)` with `G` drawn from the complex Ginibre ensemble.
pub fn ginibre_density(d: usize, seed: u64) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension {d} < 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = ComplexMatrix::from_fn(d, d, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re * scale, im * scale)
    });
    let w = g.matmul(&g.adjoint())?;
    let tr = w.trace().re;
    Ok(w.scale_real(1.0 / tr).hermitian_part())
}

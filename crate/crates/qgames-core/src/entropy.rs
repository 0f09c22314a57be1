//! 2-quNit pair states, Schmidt coefficients, and von Neumann entanglement
//! entropy, plus entropy-curve sampling over the entangler parameter β.
//!
//! Entropies are in nats (natural logarithm) throughout.

use crate::entangler::{self, CoefficientPair, EntanglerError, EntanglerMethod};
use crate::linalg::{singular_values, Complex64, ComplexMatrix};

/// Squared-amplitude values below this are treated as exact zeros in
/// x·log x terms.
const ZERO_CLAMP: f64 = 1e-15;

/// Tolerance on Σ|v|² for a state to count as normalized.
const NORM_TOL: f64 = 1e-10;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum EntropyError {
    #[error("state is not normalized: Σ|v|² = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },
    #[error("local dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Entangler(#[from] EntanglerError),
}

/// A normalized 2-quNit state with coefficient grid v_ij (player-1 row index,
/// player-2 column index).
#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl PairState {
    /// Build from a row-major N×N coefficient grid; must be normalized.
    pub fn new(n: usize, coeffs: Vec<Complex64>) -> Result<Self, EntropyError> {
        assert_eq!(coeffs.len(), n * n, "coefficient grid must be N×N");
        let norm_sqr: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(EntropyError::NotNormalized { norm_sqr });
        }
        Ok(Self { n, coeffs })
    }

    /// Diagonal-supported state Σ c_i |ii⟩ (Schmidt form up to phases).
    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self, EntropyError> {
        let n = diag.len();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &c) in diag.iter().enumerate() {
            coeffs[i * n + i] = c;
        }
        Self::new(n, coeffs)
    }

    /// Basis ket |ij⟩ with 0-based local indices.
    pub fn basis_ket(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n * n];
        coeffs[i * n + j] = Complex64::new(1.0, 0.0);
        Self { n, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        self.coeffs[i * self.n + j]
    }

    /// Flattened amplitudes in row-major |ij⟩ order (index i·N + j).
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// The coefficient grid as a matrix.
    pub fn grid(&self) -> ComplexMatrix {
        ComplexMatrix::new(self.n, self.n, self.coeffs.clone())
    }

    /// Apply local unitaries (u1 ⊗ u2) to the state.
    pub fn apply_local(
        &self,
        u1: &ComplexMatrix,
        u2: &ComplexMatrix,
    ) -> Result<Self, EntropyError> {
        for u in [u1, u2] {
            if u.rows() != self.n || u.cols() != self.n {
                return Err(EntropyError::DimensionMismatch {
                    expected: self.n,
                    got: u.rows(),
                });
            }
        }
        let new_grid = u1.matmul(&self.grid()).matmul(&u2.transpose());
        Self::new(self.n, new_grid.entries().to_vec())
    }
}

/// Schmidt coefficients: singular values of the coefficient grid, descending.
pub fn schmidt_coefficients(state: &PairState) -> Vec<f64> {
    singular_values(&state.grid()).expect("one-sided Jacobi converges at these dimensions")
}

/// −Σ λ² log λ² over the Schmidt coefficients λ, in nats; 0·log 0 = 0.
pub fn von_neumann_entropy(state: &PairState) -> f64 {
    let entropy: f64 = schmidt_coefficients(state)
        .iter()
        .map(|s| {
            let p = s * s;
            if p < ZERO_CLAMP {
                0.0
            } else {
                -p * p.ln()
            }
        })
        .sum();
    if entropy == 0.0 {
        0.0
    } else {
        entropy
    }
}

/// Closed-form entropy −[f₁ log f₁ + (N−1) f₂ log f₂] from the coefficient
/// moduli of the permutation-exponential entangler.
pub fn entropy_from_pair(pair: &CoefficientPair, n: usize) -> f64 {
    let xlnx = |p: f64| if p < ZERO_CLAMP { 0.0 } else { p * p.ln() };
    let entropy = -(xlnx(pair.f1) + (n as f64 - 1.0) * xlnx(pair.f2));
    if entropy == 0.0 {
        0.0
    } else {
        entropy
    }
}

/// One β-sweep of entanglement entropy.
#[derive(Debug, Clone)]
pub struct EntropyCurve {
    pub method: EntanglerMethod,
    pub n: usize,
    /// (β, entropy in nats) samples on a uniform grid, β strictly increasing.
    pub samples: Vec<(f64, f64)>,
}

impl EntropyCurve {
    pub fn max_entropy(&self) -> f64 {
        self.samples.iter().map(|&(_, s)| s).fold(f64::MIN, f64::max)
    }
}

/// Sample the entanglement entropy of `method`'s entangled state on a uniform
/// β grid with `steps` points including both endpoints.
pub fn entropy_curve(
    method: EntanglerMethod,
    n: usize,
    beta_min: f64,
    beta_max: f64,
    steps: usize,
) -> Result<EntropyCurve, EntropyError> {
    if n < 2 {
        return Err(EntropyError::InvalidGrid(format!("n must be ≥ 2, got {n}")));
    }
    if steps < 2 {
        return Err(EntropyError::InvalidGrid(format!(
            "steps must be ≥ 2, got {steps}"
        )));
    }
    if !(beta_min < beta_max) {
        return Err(EntropyError::InvalidGrid(format!(
            "need beta_min < beta_max, got [{beta_min}, {beta_max}]"
        )));
    }

    let frac_pow = match method {
        EntanglerMethod::PermExp => None,
        EntanglerMethod::FracPow => Some(entangler::build_fracpow(n, None)?),
    };
    let h = (beta_max - beta_min) / (steps - 1) as f64;
    let mut samples = Vec::with_capacity(steps);
    for k in 0..steps {
        let beta = if k + 1 == steps {
            beta_max
        } else {
            beta_min + k as f64 * h
        };
        let state = match &frac_pow {
            None => entangler::perm_entangled_state(&entangler::PermExpEntangler::new(n, beta)),
            Some(e) => entangler::fracpow_state(e, beta),
        };
        samples.push((beta, von_neumann_entropy(&state)));
    }
    Ok(EntropyCurve { method, n, samples })
}

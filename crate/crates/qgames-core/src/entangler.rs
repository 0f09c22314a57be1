//! Two constructions of the single-parameter entangler J(β) for 2-quNit
//! states.
//!
//! The permutation-exponential family J(β) = exp(iβ/2 Σ_{j≥2} S_{1j}⊗S_{1j})
//! has a closed-form action on |11⟩ and reaches maximal entanglement only for
//! N ≤ 4. The fractional-power family J(β) = V·Λ(β)·V† interpolates between
//! the identity at β = 0 and a Gram–Schmidt unitary R with uniform first
//! column at β = 1, so it reaches log N for every N.

use crate::entropy::PairState;
use crate::linalg::{
    gram_schmidt, kron, matexp, unitary_eigen, Complex64, ComplexMatrix, LinAlgError,
};
use crate::perm::plain_transposition;
use std::f64::consts::PI;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum EntanglerError {
    #[error("seed matrix must be {expected}x{expected}, got {rows}x{cols}")]
    BadSeedShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("seed matrix is singular (pivot {pivot:.3e} at column {col})")]
    SingularSeed { col: usize, pivot: f64 },
    #[error(
        "first column of the orthonormalized seed is not uniform 1/sqrt(N) (max deviation {max_dev:.3e}); the seed's first column must be the all-ones vector"
    )]
    NonUniformFirstColumn { max_dev: f64 },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Which entangler construction to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglerMethod {
    /// Permutation-exponential family (closed form, periodic in β).
    PermExp,
    /// Fractional power of a Gram–Schmidt unitary (complete for every N).
    FracPow,
}

impl EntanglerMethod {
    pub fn name(&self) -> &'static str {
        match self {
            EntanglerMethod::PermExp => "perm",
            EntanglerMethod::FracPow => "fracpow",
        }
    }
}

/// Permutation-exponential entangler J(β) = exp(iβ/2 Σ_{j=2}^N S_{1j}⊗S_{1j})
/// with unsigned transposition matrices S_{1j}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermExpEntangler {
    n: usize,
    beta: f64,
}

impl PermExpEntangler {
    pub fn new(n: usize, beta: f64) -> Self {
        assert!(n >= 2, "strategy count must be at least 2");
        Self { n, beta }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The β-period 4π/N of the induced entropy.
    pub fn period(&self) -> f64 {
        4.0 * PI / self.n as f64
    }
}

/// Squared coefficient moduli of the permutation-exponential state:
/// f₁ for |11⟩ and f₂ for each |jj⟩, j ≥ 2, with f₁ + (N−1)·f₂ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientPair {
    pub f1: f64,
    pub f2: f64,
}

/// N²×N² entangler matrix computed by brute-force matrix exponential of the
/// summed Kronecker exponent. Serves as the oracle for the closed form.
pub fn perm_entangler_matrix(e: &PermExpEntangler) -> ComplexMatrix {
    let n = e.n;
    let mut z = ComplexMatrix::zeros(n * n, n * n);
    for j in 2..=n {
        let s = plain_transposition(n, 1, j).expect("indices are valid by construction");
        z = z.add(&kron(&s, &s));
    }
    let exponent = z.scaled(Complex64::new(0.0, e.beta / 2.0));
    matexp(&exponent).expect("exponential series converges at these dimensions")
}

/// Closed-form action of the permutation-exponential entangler on |11⟩:
/// (e^{−iβ/2}/N)[(e^{iNβ/2}+N−1)|11⟩ + (e^{iNβ/2}−1)Σ_{j≥2}|jj⟩].
pub fn perm_entangled_state(e: &PermExpEntangler) -> PairState {
    let n = e.n as f64;
    let prefactor = Complex64::from_polar(1.0, -e.beta / 2.0) / n;
    let phase = Complex64::from_polar(1.0, n * e.beta / 2.0);
    let c1 = prefactor * (phase + (n - 1.0));
    let cj = prefactor * (phase - Complex64::new(1.0, 0.0));
    let mut diag = vec![cj; e.n];
    diag[0] = c1;
    PairState::from_diagonal(&diag).expect("closed-form coefficients are normalized")
}

/// Squared coefficient moduli f₁(β), f₂(β) of the closed form.
pub fn coefficient_pair(n: usize, beta: f64) -> CoefficientPair {
    assert!(n >= 2);
    let nf = n as f64;
    let cos = (nf * beta / 2.0).cos();
    let f1 = (nf * nf - 2.0 * nf + 2.0 + 2.0 * (nf - 1.0) * cos) / (nf * nf);
    let f2 = (2.0 - 2.0 * cos) / (nf * nf);
    CoefficientPair { f1, f2 }
}

/// Analytic maximal-entanglement parameters in one period [0, 4π/N):
/// the solutions of cos(Nβ₀/2) = −(N−2)/2. Empty for N > 4.
pub fn max_entanglement_betas(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let nf = n as f64;
    let target = -(nf - 2.0) / 2.0;
    if target < -1.0 || target > 1.0 {
        return Vec::new();
    }
    let x = target.acos();
    let first = 2.0 * x / nf;
    let second = 2.0 * (2.0 * PI - x) / nf;
    if (second - first).abs() <= 1e-12 {
        vec![first]
    } else {
        vec![first, second]
    }
}

/// Fractional-power entangler data: the seed A, its Gram–Schmidt unitary R,
/// and the eigendecomposition R = V·diag(e^{iη})·V†.
#[derive(Debug, Clone)]
pub struct FracPowEntangler {
    n: usize,
    seed: ComplexMatrix,
    r: ComplexMatrix,
    eigvecs: ComplexMatrix,
    eigenphases: Vec<f64>,
}

impl FracPowEntangler {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> &ComplexMatrix {
        &self.seed
    }

    pub fn r(&self) -> &ComplexMatrix {
        &self.r
    }

    pub fn eigvecs(&self) -> &ComplexMatrix {
        &self.eigvecs
    }

    pub fn eigenphases(&self) -> &[f64] {
        &self.eigenphases
    }
}

/// Default seed: ones on the first row, first column, and the trailing
/// diagonal. The 2×2 case drops the trailing diagonal one, which would make
/// the matrix singular.
pub fn default_seed(n: usize) -> ComplexMatrix {
    assert!(n >= 2);
    if n == 2 {
        return ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 0.0]);
    }
    let one = Complex64::new(1.0, 0.0);
    let mut a = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        a.set(0, j, one);
    }
    for i in 0..n {
        a.set(i, 0, one);
    }
    for i in 1..n {
        a.set(i, i, one);
    }
    a
}

/// Build the fractional-power entangler from a non-singular seed whose first
/// column is the all-ones vector (default: [`default_seed`]).
pub fn build_fracpow(
    n: usize,
    seed: Option<ComplexMatrix>,
) -> Result<FracPowEntangler, EntanglerError> {
    assert!(n >= 2);
    let seed = seed.unwrap_or_else(|| default_seed(n));
    if seed.rows() != n || seed.cols() != n {
        return Err(EntanglerError::BadSeedShape {
            expected: n,
            rows: seed.rows(),
            cols: seed.cols(),
        });
    }
    let r = gram_schmidt(&seed).map_err(|e| match e {
        LinAlgError::RankDeficient { col, pivot } => EntanglerError::SingularSeed { col, pivot },
        other => EntanglerError::LinAlg(other),
    })?;
    let uniform = 1.0 / (n as f64).sqrt();
    let max_dev = (0..n)
        .map(|i| (r.get(i, 0) - Complex64::new(uniform, 0.0)).norm())
        .fold(0.0, f64::max);
    if max_dev > 1e-12 {
        return Err(EntanglerError::NonUniformFirstColumn { max_dev });
    }
    let (eigvecs, eigenphases) = unitary_eigen(&r)?;
    Ok(FracPowEntangler {
        n,
        seed,
        r,
        eigvecs,
        eigenphases,
    })
}

/// The N×N fractional-power block V·diag(e^{iβη})·V†.
fn fracpow_block(e: &FracPowEntangler, beta: f64) -> ComplexMatrix {
    let lam: Vec<Complex64> = e
        .eigenphases
        .iter()
        .map(|&eta| Complex64::from_polar(1.0, beta * eta))
        .collect();
    e.eigvecs
        .matmul(&ComplexMatrix::from_diagonal(&lam))
        .matmul(&e.eigvecs.adjoint())
}

/// J(β)|11⟩ for the fractional-power entangler: the diagonal-supported state
/// with coefficients c_i = [V·diag(e^{iβη})·V†]_{i1}.
pub fn fracpow_state(e: &FracPowEntangler, beta: f64) -> PairState {
    let n = e.n;
    // c = V · (e^{iβη} ∘ V†e₁)
    let w: Vec<Complex64> = (0..n).map(|k| e.eigvecs.get(0, k).conj()).collect();
    let mut diag = vec![Complex64::new(0.0, 0.0); n];
    for (i, d) in diag.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            acc += e.eigvecs.get(i, k) * Complex64::from_polar(1.0, beta * e.eigenphases[k]) * w[k];
        }
        *d = acc;
    }
    PairState::from_diagonal(&diag).expect("column of a unitary is normalized")
}

/// The full N²×N² entangler: the fractional-power block on the diagonal kets
/// |ii⟩, identity on the rest of the product basis.
pub fn fracpow_matrix(e: &FracPowEntangler, beta: f64) -> ComplexMatrix {
    let n = e.n;
    let block = fracpow_block(e, beta);
    let mut m = ComplexMatrix::identity(n * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i * (n + 1), j * (n + 1), block.get(i, j));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{von_neumann_entropy, PairState};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn perm_matrix_at_zero_is_identity() {
        let e = PermExpEntangler::new(3, 0.0);
        let j = perm_entangler_matrix(&e);
        assert!(j.max_abs_diff(&ComplexMatrix::identity(9)) <= 1e-15);
    }

    #[test]
    fn perm_action_on_two_qubits() {
        // J(β)|00⟩ = cos(β/2)|00⟩ + i sin(β/2)|11⟩ with the unsigned X⊗X exponent.
        let beta = 0.7;
        let e = PermExpEntangler::new(2, beta);
        let j = perm_entangler_matrix(&e);
        let col = j.column(0);
        assert!((col[0] - c((beta / 2.0).cos(), 0.0)).norm() <= 1e-12);
        assert!(col[1].norm() <= 1e-12);
        assert!(col[2].norm() <= 1e-12);
        assert!((col[3] - c(0.0, (beta / 2.0).sin())).norm() <= 1e-12);
    }

    #[test]
    fn perm_matrix_matches_qutrit_closed_form() {
        // ⟨11|J(β)|11⟩ = (2e^{−iβ/2} + e^{iβ})/3.
        let beta = 0.9;
        let e = PermExpEntangler::new(3, beta);
        let j = perm_entangler_matrix(&e);
        let expected =
            (Complex64::from_polar(2.0, -beta / 2.0) + Complex64::from_polar(1.0, beta)) / 3.0;
        assert!((j.get(0, 0) - expected).norm() <= 1e-12);
    }

    #[test]
    fn perm_state_at_zero_is_basis_ket() {
        let state = perm_entangled_state(&PermExpEntangler::new(4, 0.0));
        assert_eq!(state, PairState::basis_ket(4, 0, 0));
    }

    #[test]
    fn perm_state_uniform_at_qutrit_root() {
        let state = perm_entangled_state(&PermExpEntangler::new(3, 4.0 * PI / 9.0));
        let target = 1.0 / 3f64.sqrt();
        for i in 0..3 {
            assert!((state.coeff(i, i).norm() - target).abs() <= 1e-12);
        }
    }

    #[test]
    fn perm_state_five_strategies_midpoint() {
        // At Nβ/2 = π: |c₁|² = (N−2)²/N², |c_j|² = 4/N².
        let state = perm_entangled_state(&PermExpEntangler::new(5, 2.0 * PI / 5.0));
        assert!((state.coeff(0, 0).norm_sqr() - 9.0 / 25.0).abs() <= 1e-12);
        for i in 1..5 {
            assert!((state.coeff(i, i).norm_sqr() - 4.0 / 25.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn closed_form_agrees_with_matrix_oracle() {
        for &(n, beta) in &[(2usize, 0.63), (3, 1.1), (4, 2.4), (5, 0.35)] {
            let e = PermExpEntangler::new(n, beta);
            let state = perm_entangled_state(&e);
            let j = perm_entangler_matrix(&e);
            let col = j.column(0);
            for (flat, &amp) in col.iter().enumerate() {
                let (i, jj) = (flat / n, flat % n);
                let expected = if i == jj {
                    state.coeff(i, i)
                } else {
                    c(0.0, 0.0)
                };
                assert!(
                    (amp - expected).norm() <= 1e-10,
                    "n={n} β={beta} entry {flat}"
                );
            }
        }
    }

    #[test]
    fn coefficient_pair_landmarks() {
        let p = coefficient_pair(7, 0.0);
        assert_eq!((p.f1, p.f2), (1.0, 0.0));

        let p = coefficient_pair(3, 4.0 * PI / 9.0);
        assert!((p.f1 - 1.0 / 3.0).abs() <= 1e-12);
        assert!((p.f2 - 1.0 / 3.0).abs() <= 1e-12);

        let p = coefficient_pair(4, PI / 2.0);
        assert!((p.f1 - 0.25).abs() <= 1e-12);
        assert!((p.f2 - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn maximal_entanglement_roots() {
        let roots = max_entanglement_betas(3);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 4.0 * PI / 9.0).abs() <= 1e-12);
        assert!((roots[1] - 8.0 * PI / 9.0).abs() <= 1e-12);

        let roots = max_entanglement_betas(4);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - PI / 2.0).abs() <= 1e-12);

        let roots = max_entanglement_betas(2);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - PI / 2.0).abs() <= 1e-12);
        assert!((roots[1] - 3.0 * PI / 2.0).abs() <= 1e-12);

        for n in 5..=9 {
            assert!(max_entanglement_betas(n).is_empty(), "n={n}");
        }
    }

    #[test]
    fn roots_give_uniform_pair() {
        for n in 2..=4 {
            for beta in max_entanglement_betas(n) {
                let p = coefficient_pair(n, beta);
                assert!((p.f1 - 1.0 / n as f64).abs() <= 1e-12);
                assert!((p.f2 - 1.0 / n as f64).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn default_seed_two_strategies() {
        let e = build_fracpow(2, None).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let expected = ComplexMatrix::from_real(2, 2, &[s, s, s, -s]);
        assert!(e.r().max_abs_diff(&expected) <= 1e-15);
    }

    #[test]
    fn default_seed_three_strategies() {
        let e = build_fracpow(3, None).unwrap();
        let s3 = 1.0 / 3f64.sqrt();
        let s6 = 1.0 / 6f64.sqrt();
        let s2 = 1.0 / 2f64.sqrt();
        let expected =
            ComplexMatrix::from_real(3, 3, &[s3, s6, s2, s3, s6, -s2, s3, -2.0 * s6, 0.0]);
        assert!(e.r().max_abs_diff(&expected) <= 1e-15);
    }

    #[test]
    fn five_strategy_seed_matches_worked_example() {
        let e = build_fracpow(5, None).unwrap();
        let s5 = 1.0 / 5f64.sqrt();
        let c2 = (3.0f64 / 10.0).sqrt();
        let c2n = -(2.0f64 / 15.0).sqrt();
        let c3 = (3.0f64 / 14.0).sqrt();
        let c3p = 2.0 * (2.0f64 / 21.0).sqrt();
        let c3n = -(2.0f64 / 21.0).sqrt();
        let c4 = 3.0 / (2.0 * 14f64.sqrt());
        let c4p = 5.0 / (2.0 * 14f64.sqrt());
        let c4n = -1.0 / 14f64.sqrt();
        let c5 = 1.0 / (2.0 * 2f64.sqrt());
        let c5p = 1.0 / 2f64.sqrt();
        #[rustfmt::skip]
        let expected = ComplexMatrix::from_real(5, 5, &[
            s5,  c2,   c3,  c4,   c5,
            s5,  c2,  -c3, -c4,  -c5,
            s5, c2n,  c3p, -c4,  -c5,
            s5, c2n,  c3n, c4p,  -c5,
            s5, c2n,  c3n, c4n,  c5p,
        ]);
        assert!(e.r().max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn fracpow_invariants_hold() {
        for n in 2..=8 {
            let e = build_fracpow(n, None).unwrap();
            let uniform = 1.0 / (n as f64).sqrt();
            for i in 0..n {
                assert!((e.r().get(i, 0) - c(uniform, 0.0)).norm() <= 1e-12);
            }
            let lam: Vec<Complex64> = e
                .eigenphases()
                .iter()
                .map(|&eta| Complex64::from_polar(1.0, eta))
                .collect();
            let recon = e
                .eigvecs()
                .matmul(&ComplexMatrix::from_diagonal(&lam))
                .matmul(&e.eigvecs().adjoint());
            assert!(recon.sub(e.r()).frobenius_norm() <= 1e-9, "n={n}");
            for &eta in e.eigenphases() {
                assert!(-PI < eta && eta <= PI);
            }
        }
    }

    #[test]
    fn fracpow_state_endpoints() {
        for n in 2..=8 {
            let e = build_fracpow(n, None).unwrap();
            let s0 = fracpow_state(&e, 0.0);
            assert!((s0.coeff(0, 0) - c(1.0, 0.0)).norm() <= 1e-12, "n={n}");
            let s1 = fracpow_state(&e, 1.0);
            let uniform = 1.0 / (n as f64).sqrt();
            for i in 0..n {
                assert!((s1.coeff(i, i).norm() - uniform).abs() <= 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn fracpow_state_interior_is_partially_entangled() {
        let e = build_fracpow(5, None).unwrap();
        let s = von_neumann_entropy(&fracpow_state(&e, 0.5));
        assert!(s > 1e-9);
        assert!(s < 5f64.ln() - 1e-9);
    }

    #[test]
    fn fracpow_matrix_properties() {
        let e = build_fracpow(3, None).unwrap();
        let j0 = fracpow_matrix(&e, 0.0);
        assert!(j0.max_abs_diff(&ComplexMatrix::identity(9)) <= 1e-12);

        let j1 = fracpow_matrix(&e, 1.0);
        for i in 0..3 {
            for j in 0..3 {
                assert!((j1.get(i * 4, j * 4) - e.r().get(i, j)).norm() <= 1e-10);
            }
        }

        let e5 = build_fracpow(5, None).unwrap();
        assert!(fracpow_matrix(&e5, 0.37).unitarity_residual() <= 1e-10);
    }

    #[test]
    fn singular_seed_rejected() {
        let seed = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            build_fracpow(2, Some(seed)),
            Err(EntanglerError::SingularSeed { .. })
        ));
    }

    #[test]
    fn non_uniform_first_column_rejected() {
        let seed = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 2.0, 1.0]);
        assert!(matches!(
            build_fracpow(2, Some(seed)),
            Err(EntanglerError::NonUniformFirstColumn { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn pair_normalization(n in 2usize..10, beta in -10.0f64..10.0) {
            let p = coefficient_pair(n, beta);
            prop_assert!((p.f1 + (n as f64 - 1.0) * p.f2 - 1.0).abs() <= 1e-12);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&p.f1));
            prop_assert!((0.0..=1.0 + 1e-12).contains(&p.f2));
        }

        #[test]
        fn pair_periodicity_and_symmetry(n in 2usize..8, beta in 0.0f64..6.0) {
            let period = 4.0 * PI / n as f64;
            let p = coefficient_pair(n, beta);
            let shifted = coefficient_pair(n, beta + period);
            prop_assert!((p.f1 - shifted.f1).abs() <= 1e-12);
            prop_assert!((p.f2 - shifted.f2).abs() <= 1e-12);
            let mirrored = coefficient_pair(n, period - beta);
            prop_assert!((p.f1 - mirrored.f1).abs() <= 1e-12);
            prop_assert!((p.f2 - mirrored.f2).abs() <= 1e-12);
        }
    }
}

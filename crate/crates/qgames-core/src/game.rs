//! The 2-player–N-strategy quantum game: SU(N) strategies, the referee
//! protocol |Ψ⟩ = J†(U₁⊗U₂)J|Ψ₀⟩, expected payoffs, ε-Nash-equilibrium
//! search, and the classical-commensurability residual.

use crate::entropy::{EntropyError, PairState};
use crate::gellmann::StrategyBasis;
use crate::linalg::{kron, matexp, unitary_eigen, Complex64, ComplexMatrix, LinAlgError};
use crate::optim::{maximize, NelderMeadOptions};
use crate::perm::{su3_classical, Su3Label};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum GameError {
    #[error("invalid game table: {0}")]
    BadTable(String),
    #[error("strategy parameter length must be {expected}, got {got}")]
    BadParamLength { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix determinant is not 1 (eigenphase-sum deviation {deviation:.3e})")]
    NonUnitDeterminant { deviation: f64 },
    #[error("classical strategy lift is only defined for n = 2 and n = 3, got {n}")]
    ClassicalLiftUndefined { n: usize },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    State(#[from] EntropyError),
}

/// Classical payoff table u_k(i, j): row = player-1 strategy, column =
/// player-2 strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameTable {
    pub n: usize,
    pub u1: Vec<Vec<f64>>,
    pub u2: Vec<Vec<f64>>,
}

impl GameTable {
    pub fn new(n: usize, u1: Vec<Vec<f64>>, u2: Vec<Vec<f64>>) -> Result<Self, GameError> {
        let table = Self { n, u1, u2 };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<(), GameError> {
        if self.n < 2 {
            return Err(GameError::BadTable(format!("n must be ≥ 2, got {}", self.n)));
        }
        for (name, grid) in [("u1", &self.u1), ("u2", &self.u2)] {
            if grid.len() != self.n {
                return Err(GameError::BadTable(format!(
                    "{name} must have {} rows, got {}",
                    self.n,
                    grid.len()
                )));
            }
            for (i, row) in grid.iter().enumerate() {
                if row.len() != self.n {
                    return Err(GameError::BadTable(format!(
                        "{name} row {i} must have {} entries, got {}",
                        self.n,
                        row.len()
                    )));
                }
                if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                    return Err(GameError::BadTable(format!(
                        "{name} row {i} contains non-finite value {bad}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The standard prisoner's dilemma (C, D) payoffs.
    pub fn prisoners_dilemma() -> Self {
        Self {
            n: 2,
            u1: vec![vec![3.0, 0.0], vec![5.0, 1.0]],
            u2: vec![vec![3.0, 5.0], vec![0.0, 1.0]],
        }
    }
}

/// Which player a best response is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    One,
    Two,
}

/// Real generator coefficients γ defining one player's SU(N) strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyParams {
    n: usize,
    gamma: Vec<f64>,
}

impl StrategyParams {
    pub fn new(n: usize, gamma: Vec<f64>) -> Result<Self, GameError> {
        let expected = n * n - 1;
        if gamma.len() != expected {
            return Err(GameError::BadParamLength {
                expected,
                got: gamma.len(),
            });
        }
        Ok(Self { n, gamma })
    }

    /// The identity strategy γ = 0.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            gamma: vec![0.0; n * n - 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }
}

/// U(γ) = exp(i Σ_m γ_m G_m) over the generator basis; special unitary by
/// construction since the generators are traceless Hermitian.
pub fn strategy_unitary(
    basis: &StrategyBasis,
    params: &StrategyParams,
) -> Result<ComplexMatrix, GameError> {
    if params.n != basis.n() || params.gamma.len() != basis.len() {
        return Err(GameError::BadParamLength {
            expected: basis.len(),
            got: params.gamma.len(),
        });
    }
    let h = basis.combine(&params.gamma);
    Ok(matexp(&h.scaled(Complex64::new(0.0, 1.0)))?)
}

/// Invert [`strategy_unitary`]: find γ with U(γ) = s for a special unitary s.
///
/// The eigenphase branch is re-balanced by whole multiples of 2π so the
/// logarithm is traceless and therefore lies in the generator span.
pub fn embed_classical(
    basis: &StrategyBasis,
    s: &ComplexMatrix,
) -> Result<StrategyParams, GameError> {
    let n = basis.n();
    if s.rows() != n || s.cols() != n {
        return Err(GameError::DimensionMismatch {
            expected: n,
            got: s.rows(),
        });
    }
    let (v, mut phases) = unitary_eigen(s)?;
    let sum: f64 = phases.iter().sum();
    let wraps = (sum / (2.0 * PI)).round();
    let deviation = (sum - 2.0 * PI * wraps).abs();
    if deviation > 1e-8 {
        return Err(GameError::NonUnitDeterminant { deviation });
    }
    // Shift the largest (or smallest) phases by full turns to zero the sum.
    let mut order: Vec<usize> = (0..phases.len()).collect();
    if wraps > 0.0 {
        order.sort_by(|&a, &b| phases[b].total_cmp(&phases[a]));
        for &idx in order.iter().take(wraps as usize) {
            phases[idx] -= 2.0 * PI;
        }
    } else if wraps < 0.0 {
        order.sort_by(|&a, &b| phases[a].total_cmp(&phases[b]));
        for &idx in order.iter().take((-wraps) as usize) {
            phases[idx] += 2.0 * PI;
        }
    }
    let diag: Vec<Complex64> = phases.iter().map(|&p| Complex64::new(p, 0.0)).collect();
    let h = v
        .matmul(&ComplexMatrix::from_diagonal(&diag))
        .matmul(&v.adjoint());
    StrategyParams::new(n, basis.project(&h))
}

/// The signed classical strategy lifts acting on |1⟩: identity plus the
/// swaps that move option 1 to each alternative. Defined for n = 2 (iσ_y)
/// and n = 3 (the signed S₃ representation).
pub fn classical_strategy_matrices(n: usize) -> Result<Vec<ComplexMatrix>, GameError> {
    match n {
        2 => {
            let i_sigma_y = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]);
            Ok(vec![ComplexMatrix::identity(2), i_sigma_y])
        }
        3 => Ok(vec![
            su3_classical(Su3Label::Id).matrix,
            su3_classical(Su3Label::S12).matrix,
            su3_classical(Su3Label::S13).matrix,
        ]),
        _ => Err(GameError::ClassicalLiftUndefined { n }),
    }
}

fn compose_protocol(
    j: &ComplexMatrix,
    j_dagger: &ComplexMatrix,
    u1: &ComplexMatrix,
    u2: &ComplexMatrix,
    initial: &PairState,
) -> Result<PairState, GameError> {
    let n = initial.n();
    let psi = j.mul_vec(initial.amplitudes());
    let grid = ComplexMatrix::new(n, n, psi);
    let rotated = u1.matmul(&grid).matmul(&u2.transpose());
    let out = j_dagger.mul_vec(rotated.entries());
    Ok(PairState::new(n, out)?)
}

/// |Ψ⟩ = J†(β) · U(γ₁)⊗U(γ₂) · J(β)|Ψ₀⟩.
pub fn final_state(
    j_beta: &ComplexMatrix,
    p1: &StrategyParams,
    p2: &StrategyParams,
    initial: &PairState,
) -> Result<PairState, GameError> {
    let n = initial.n();
    if p1.n() != n || p2.n() != n {
        return Err(GameError::DimensionMismatch {
            expected: n,
            got: p1.n().max(p2.n()),
        });
    }
    if j_beta.rows() != n * n || j_beta.cols() != n * n {
        return Err(GameError::DimensionMismatch {
            expected: n * n,
            got: j_beta.rows(),
        });
    }
    let basis = StrategyBasis::new(n);
    let u1 = strategy_unitary(&basis, p1)?;
    let u2 = strategy_unitary(&basis, p2)?;
    compose_protocol(j_beta, &j_beta.adjoint(), &u1, &u2, initial)
}

/// Expected payoffs Σ u_k(i,j)·|v_ij|².
pub fn payoffs(table: &GameTable, state: &PairState) -> Result<(f64, f64), GameError> {
    if table.n != state.n() {
        return Err(GameError::DimensionMismatch {
            expected: table.n,
            got: state.n(),
        });
    }
    let mut p1 = 0.0;
    let mut p2 = 0.0;
    for i in 0..table.n {
        for j in 0..table.n {
            let w = state.coeff(i, j).norm_sqr();
            p1 += table.u1[i][j] * w;
            p2 += table.u2[i][j] * w;
        }
    }
    Ok((p1, p2))
}

/// Settings for the iterated best-response equilibrium search.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Multistart count per best response (the identity start is always one).
    pub restarts: usize,
    /// Maximum best-response rounds before reporting non-convergence.
    pub max_rounds: usize,
    /// Both players' round improvement must fall below this to converge.
    pub tol: f64,
    /// Random deviations per player for the ε-certificate.
    pub probes: usize,
    pub nelder_mead: NelderMeadOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_rounds: 32,
            tol: 1e-6,
            probes: 2000,
            nelder_mead: NelderMeadOptions::default(),
        }
    }
}

/// An ε-certified equilibrium candidate: no tested unilateral deviation
/// gained more than `epsilon` over the reported payoffs.
#[derive(Debug, Clone)]
pub struct NEResult {
    pub gamma1: StrategyParams,
    pub gamma2: StrategyParams,
    pub payoffs: (f64, f64),
    pub epsilon: f64,
    /// Total deviation payoff evaluations behind the ε-certificate.
    pub probes: usize,
    pub rounds: usize,
    pub converged: bool,
}

/// Cached pieces of one payoff evaluation context.
struct PayoffEvaluator<'a> {
    table: &'a GameTable,
    j: &'a ComplexMatrix,
    j_dagger: ComplexMatrix,
    basis: StrategyBasis,
    initial: &'a PairState,
}

impl<'a> PayoffEvaluator<'a> {
    fn new(
        table: &'a GameTable,
        j: &'a ComplexMatrix,
        initial: &'a PairState,
    ) -> Result<Self, GameError> {
        if table.n != initial.n() {
            return Err(GameError::DimensionMismatch {
                expected: table.n,
                got: initial.n(),
            });
        }
        if j.rows() != table.n * table.n || j.cols() != table.n * table.n {
            return Err(GameError::DimensionMismatch {
                expected: table.n * table.n,
                got: j.rows(),
            });
        }
        Ok(Self {
            table,
            j,
            j_dagger: j.adjoint(),
            basis: StrategyBasis::new(table.n),
            initial,
        })
    }

    fn eval(&self, gamma1: &[f64], gamma2: &[f64]) -> (f64, f64) {
        let u1 = matexp(
            &self
                .basis
                .combine(gamma1)
                .scaled(Complex64::new(0.0, 1.0)),
        )
        .expect("strategy exponential converges");
        let u2 = matexp(
            &self
                .basis
                .combine(gamma2)
                .scaled(Complex64::new(0.0, 1.0)),
        )
        .expect("strategy exponential converges");
        let state = compose_protocol(self.j, &self.j_dagger, &u1, &u2, self.initial)
            .expect("protocol preserves normalization");
        payoffs(self.table, &state).expect("dimensions validated at construction")
    }

    fn eval_player(&self, player: Player, own: &[f64], opponent: &[f64]) -> f64 {
        match player {
            Player::One => self.eval(own, opponent).0,
            Player::Two => self.eval(opponent, own).1,
        }
    }
}

fn derive_seed(master: u64, salt: u64) -> u64 {
    master
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(salt.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

fn random_gamma(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-PI..PI)).collect()
}

fn lexicographically_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// One player's best response to a fixed opponent strategy: multistart
/// Nelder–Mead over γ, starting from the identity strategy plus seeded
/// random points. Ties on payoff resolve to the lexicographically smallest γ.
pub fn best_response(
    table: &GameTable,
    j_beta: &ComplexMatrix,
    opponent: &StrategyParams,
    which_player: Player,
    initial: &PairState,
    opts: &SearchOptions,
    seed: u64,
) -> Result<(StrategyParams, f64), GameError> {
    let evaluator = PayoffEvaluator::new(table, j_beta, initial)?;
    if opponent.n() != table.n {
        return Err(GameError::DimensionMismatch {
            expected: table.n,
            got: opponent.n(),
        });
    }
    let dim = table.n * table.n - 1;
    let mut starts = vec![vec![0.0; dim]];
    for restart in 1..opts.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, restart as u64));
        starts.push(random_gamma(&mut rng, dim));
    }

    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in starts {
        let result = maximize(
            |g| evaluator.eval_player(which_player, g, opponent.gamma()),
            &start,
            &opts.nelder_mead,
        );
        let better = match &best {
            None => true,
            Some((bx, bv)) => {
                result.value > *bv
                    || (result.value == *bv && lexicographically_less(&result.x, bx))
            }
        };
        if better {
            best = Some((result.x, result.value));
        }
    }
    let (x, value) = best.expect("at least one start");
    Ok((StrategyParams::new(table.n, x)?, value))
}

/// Re-probe a strategy pair: the largest unilateral payoff gain found over
/// a seeded random deviation set plus a local-search polish, and the number
/// of deviation evaluations tested.
pub fn certify_epsilon(
    table: &GameTable,
    j_beta: &ComplexMatrix,
    initial: &PairState,
    gamma1: &StrategyParams,
    gamma2: &StrategyParams,
    probes: usize,
    nm: &NelderMeadOptions,
    seed: u64,
) -> Result<(f64, usize), GameError> {
    let evaluator = PayoffEvaluator::new(table, j_beta, initial)?;
    let base = evaluator.eval(gamma1.gamma(), gamma2.gamma());
    let dim = table.n * table.n - 1;
    let mut epsilon = 0.0f64;
    let mut tested = 0usize;

    for (player, own, base_payoff, salt) in [
        (Player::One, gamma1, base.0, 101u64),
        (Player::Two, gamma2, base.1, 202u64),
    ] {
        let opponent = match player {
            Player::One => gamma2.gamma(),
            Player::Two => gamma1.gamma(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, salt));
        let mut best_probe = own.gamma().to_vec();
        let mut best_gain = 0.0f64;
        for _ in 0..probes {
            let candidate = random_gamma(&mut rng, dim);
            let gain = evaluator.eval_player(player, &candidate, opponent) - base_payoff;
            tested += 1;
            if gain > best_gain {
                best_gain = gain;
                best_probe = candidate;
            }
        }
        for start in [own.gamma().to_vec(), best_probe] {
            let polish = maximize(
                |g| evaluator.eval_player(player, g, opponent),
                &start,
                nm,
            );
            tested += polish.evals;
            best_gain = best_gain.max(polish.value - base_payoff);
        }
        epsilon = epsilon.max(best_gain.max(0.0));
    }
    Ok((epsilon, tested))
}

/// Iterated best response until neither player improves by more than
/// `opts.tol`, followed by an ε-certificate over seeded random deviations.
/// Non-convergence within the round budget is reported, never thrown.
pub fn find_ne(
    table: &GameTable,
    j_beta: &ComplexMatrix,
    initial: &PairState,
    opts: &SearchOptions,
    seed: u64,
) -> Result<NEResult, GameError> {
    table.validate()?;
    let evaluator = PayoffEvaluator::new(table, j_beta, initial)?;
    let mut gamma1 = StrategyParams::zeros(table.n);
    let mut gamma2 = StrategyParams::zeros(table.n);
    let mut current = evaluator.eval(gamma1.gamma(), gamma2.gamma());
    let mut converged = false;
    let mut rounds = 0usize;

    for round in 1..=opts.max_rounds {
        rounds = round;
        let (response1, payoff1) = best_response(
            table,
            j_beta,
            &gamma2,
            Player::One,
            initial,
            opts,
            derive_seed(seed, 2 * round as u64),
        )?;
        let improvement1 = (payoff1 - current.0).max(0.0);
        gamma1 = response1;
        current = evaluator.eval(gamma1.gamma(), gamma2.gamma());

        let (response2, payoff2) = best_response(
            table,
            j_beta,
            &gamma1,
            Player::Two,
            initial,
            opts,
            derive_seed(seed, 2 * round as u64 + 1),
        )?;
        let improvement2 = (payoff2 - current.1).max(0.0);
        gamma2 = response2;
        current = evaluator.eval(gamma1.gamma(), gamma2.gamma());

        if improvement1 < opts.tol && improvement2 < opts.tol {
            converged = true;
            break;
        }
    }

    let (epsilon, probes) = certify_epsilon(
        table,
        j_beta,
        initial,
        &gamma1,
        &gamma2,
        opts.probes,
        &opts.nelder_mead,
        derive_seed(seed, 999),
    )?;

    Ok(NEResult {
        gamma1,
        gamma2,
        payoffs: current,
        epsilon,
        probes,
        rounds,
        converged,
    })
}

/// Frobenius norm of the commutator [J, s₁⊗s₂]; zero iff the entangler
/// commutes with that pair of local strategies.
pub fn commensurability_residual(
    j_beta: &ComplexMatrix,
    s1: &ComplexMatrix,
    s2: &ComplexMatrix,
) -> Result<f64, GameError> {
    let dim = s1.rows() * s2.rows();
    if j_beta.rows() != dim || j_beta.cols() != dim {
        return Err(GameError::DimensionMismatch {
            expected: dim,
            got: j_beta.rows(),
        });
    }
    let pair = kron(s1, s2);
    Ok(j_beta.matmul(&pair).sub(&pair.matmul(j_beta)).frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entangler::{perm_entangler_matrix, PermExpEntangler};
    use crate::perm::det3;

    fn basis2() -> StrategyBasis {
        StrategyBasis::new(2)
    }

    fn basis3() -> StrategyBasis {
        StrategyBasis::new(3)
    }

    fn i_sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0])
    }

    #[test]
    fn identity_strategy() {
        let u = strategy_unitary(&basis3(), &StrategyParams::zeros(3)).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(3)) <= 1e-15);
    }

    #[test]
    fn pauli_y_quarter_turn_is_classical_flip() {
        let params = StrategyParams::new(2, vec![0.0, PI / 2.0, 0.0]).unwrap();
        let u = strategy_unitary(&basis2(), &params).unwrap();
        assert!(u.max_abs_diff(&i_sigma_y()) <= 1e-12);
    }

    #[test]
    fn strategies_are_special_unitary() {
        let basis = basis3();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let params = StrategyParams::new(3, random_gamma(&mut rng, 8)).unwrap();
            let u = strategy_unitary(&basis, &params).unwrap();
            assert!(u.unitarity_residual() <= 1e-10);
            assert!((det3(&u) - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        }
    }

    #[test]
    fn embed_identity_is_zero() {
        let params = embed_classical(&basis3(), &ComplexMatrix::identity(3)).unwrap();
        assert!(params.gamma().iter().all(|&g| g.abs() <= 1e-12));
    }

    #[test]
    fn embed_round_trips_signed_strategies() {
        let basis = basis3();
        for label in [Su3Label::S12, Su3Label::S13, Su3Label::S231] {
            let s = su3_classical(label).matrix;
            let params = embed_classical(&basis, &s).unwrap();
            let back = strategy_unitary(&basis, &params).unwrap();
            assert!(
                back.sub(&s).frobenius_norm() <= 1e-9,
                "{label:?}: residual {}",
                back.sub(&s).frobenius_norm()
            );
        }
    }

    #[test]
    fn embed_round_trips_qubit_flip() {
        let basis = basis2();
        let params = embed_classical(&basis, &i_sigma_y()).unwrap();
        let back = strategy_unitary(&basis, &params).unwrap();
        assert!(back.sub(&i_sigma_y()).frobenius_norm() <= 1e-9);
    }

    #[test]
    fn embed_rejects_non_unit_determinant() {
        // diag(i, 1) is unitary with determinant i.
        let m = ComplexMatrix::from_diagonal(&[Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]);
        assert!(matches!(
            embed_classical(&basis2(), &m),
            Err(GameError::NonUnitDeterminant { .. })
        ));
    }

    #[test]
    fn final_state_identity_protocol() {
        let j = ComplexMatrix::identity(9);
        let initial = PairState::basis_ket(3, 0, 0);
        let out = final_state(
            &j,
            &StrategyParams::zeros(3),
            &StrategyParams::zeros(3),
            &initial,
        )
        .unwrap();
        assert!(out
            .amplitudes()
            .iter()
            .zip(initial.amplitudes())
            .all(|(a, b)| (a - b).norm() <= 1e-12));
    }

    #[test]
    fn final_state_flips_reach_other_corner() {
        let j = ComplexMatrix::identity(4);
        let basis = basis2();
        let flip = embed_classical(&basis, &i_sigma_y()).unwrap();
        let out = final_state(&j, &flip, &flip, &PairState::basis_ket(2, 0, 0)).unwrap();
        assert!((out.coeff(1, 1).norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn entangler_cancels_for_identity_strategies() {
        let j = perm_entangler_matrix(&PermExpEntangler::new(3, 4.0 * PI / 9.0));
        let out = final_state(
            &j,
            &StrategyParams::zeros(3),
            &StrategyParams::zeros(3),
            &PairState::basis_ket(3, 0, 0),
        )
        .unwrap();
        assert!((out.coeff(0, 0).norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn payoffs_point_mass_and_uniform() {
        let table = GameTable::new(
            2,
            vec![vec![3.0, 0.0], vec![5.0, 1.0]],
            vec![vec![3.0, 5.0], vec![0.0, 1.0]],
        )
        .unwrap();
        let point = PairState::basis_ket(2, 0, 0);
        assert_eq!(payoffs(&table, &point).unwrap(), (3.0, 3.0));

        let uniform = PairState::new(2, vec![Complex64::new(0.5, 0.0); 4]).unwrap();
        let (p1, p2) = payoffs(&table, &uniform).unwrap();
        assert!((p1 - 9.0 / 4.0).abs() <= 1e-12);
        assert!((p2 - 9.0 / 4.0).abs() <= 1e-12);
    }

    #[test]
    fn classical_flips_reproduce_defection_payoffs() {
        let table = GameTable::prisoners_dilemma();
        let j = ComplexMatrix::identity(4);
        let basis = basis2();
        let flip = embed_classical(&basis, &i_sigma_y()).unwrap();
        let state = final_state(&j, &flip, &flip, &PairState::basis_ket(2, 0, 0)).unwrap();
        let (p1, p2) = payoffs(&table, &state).unwrap();
        assert!((p1 - 1.0).abs() <= 1e-9);
        assert!((p2 - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn zero_sum_payoffs_cancel() {
        let u1 = vec![
            vec![1.5, -2.0, 0.25],
            vec![0.0, 3.0, -1.0],
            vec![2.0, -0.5, 1.0],
        ];
        let u2: Vec<Vec<f64>> = u1
            .iter()
            .map(|row| row.iter().map(|v| -v).collect())
            .collect();
        let table = GameTable::new(3, u1, u2).unwrap();
        let j = perm_entangler_matrix(&PermExpEntangler::new(3, 0.8));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g1 = StrategyParams::new(3, random_gamma(&mut rng, 8)).unwrap();
            let g2 = StrategyParams::new(3, random_gamma(&mut rng, 8)).unwrap();
            let state = final_state(&j, &g1, &g2, &PairState::basis_ket(3, 0, 0)).unwrap();
            let (p1, p2) = payoffs(&table, &state).unwrap();
            assert!((p1 + p2).abs() <= 1e-10);
        }
    }

    #[test]
    fn best_response_on_constant_table() {
        let table = GameTable::new(
            2,
            vec![vec![2.0, 2.0], vec![2.0, 2.0]],
            vec![vec![2.0, 2.0], vec![2.0, 2.0]],
        )
        .unwrap();
        let j = ComplexMatrix::identity(4);
        let initial = PairState::basis_ket(2, 0, 0);
        let opts = SearchOptions {
            restarts: 4,
            ..Default::default()
        };
        let (_, payoff) = best_response(
            &table,
            &j,
            &StrategyParams::zeros(2),
            Player::One,
            &initial,
            &opts,
            7,
        )
        .unwrap();
        assert!((payoff - 2.0).abs() <= 1e-9);
    }

    #[test]
    fn find_ne_constant_table_converges_immediately() {
        let table = GameTable::new(
            2,
            vec![vec![4.0, 4.0], vec![4.0, 4.0]],
            vec![vec![4.0, 4.0], vec![4.0, 4.0]],
        )
        .unwrap();
        let j = ComplexMatrix::identity(4);
        let initial = PairState::basis_ket(2, 0, 0);
        let opts = SearchOptions {
            restarts: 4,
            probes: 200,
            ..Default::default()
        };
        let result = find_ne(&table, &j, &initial, &opts, 3).unwrap();
        assert!(result.converged);
        assert_eq!(result.rounds, 1);
        assert!(result.epsilon <= 1e-9);
        assert!((result.payoffs.0 - 4.0).abs() <= 1e-9);
    }

    #[test]
    fn find_ne_prisoners_dilemma_smoke() {
        let table = GameTable::prisoners_dilemma();
        let j = perm_entangler_matrix(&PermExpEntangler::new(2, 0.0));
        let initial = PairState::basis_ket(2, 0, 0);
        let opts = SearchOptions {
            restarts: 8,
            probes: 400,
            ..Default::default()
        };
        let result = find_ne(&table, &j, &initial, &opts, 42).unwrap();
        assert!(result.converged);
        assert!((result.payoffs.0 - 1.0).abs() <= 1e-3, "{:?}", result.payoffs);
        assert!((result.payoffs.1 - 1.0).abs() <= 1e-3);
        assert!(result.epsilon <= 1e-3);

        // payoff consistency under re-evaluation
        let state = final_state(&j, &result.gamma1, &result.gamma2, &initial).unwrap();
        let (p1, p2) = payoffs(&table, &state).unwrap();
        assert!((p1 - result.payoffs.0).abs() <= 1e-9);
        assert!((p2 - result.payoffs.1).abs() <= 1e-9);
    }

    #[test]
    fn find_ne_is_deterministic() {
        let table = GameTable::prisoners_dilemma();
        let j = ComplexMatrix::identity(4);
        let initial = PairState::basis_ket(2, 0, 0);
        let opts = SearchOptions {
            restarts: 4,
            probes: 100,
            ..Default::default()
        };
        let a = find_ne(&table, &j, &initial, &opts, 11).unwrap();
        let b = find_ne(&table, &j, &initial, &opts, 11).unwrap();
        assert_eq!(a.gamma1.gamma(), b.gamma1.gamma());
        assert_eq!(a.gamma2.gamma(), b.gamma2.gamma());
        assert_eq!(a.payoffs, b.payoffs);
        assert_eq!(a.epsilon, b.epsilon);
    }

    #[test]
    fn commensurability_zero_for_identity_pair() {
        let j = perm_entangler_matrix(&PermExpEntangler::new(3, 1.1));
        let id = ComplexMatrix::identity(3);
        let residual = commensurability_residual(&j, &id, &id).unwrap();
        assert!(residual <= 1e-12);
    }

    #[test]
    fn qubit_entangler_commutes_with_classical_pair() {
        for &beta in &[0.3, 1.2, 2.9] {
            let j = perm_entangler_matrix(&PermExpEntangler::new(2, beta));
            let residual = commensurability_residual(&j, &i_sigma_y(), &i_sigma_y()).unwrap();
            assert!(residual <= 1e-12, "β={beta}: {residual:.3e}");
        }
    }

    #[test]
    fn qutrit_entangler_fails_commensurability() {
        let j = perm_entangler_matrix(&PermExpEntangler::new(3, 4.0 * PI / 9.0));
        let s12 = su3_classical(Su3Label::S12).matrix;
        let s13 = su3_classical(Su3Label::S13).matrix;
        let residual = commensurability_residual(&j, &s12, &s13).unwrap();
        assert!(residual > 0.1, "residual {residual:.3e}");
    }

    #[test]
    fn table_validation_rejects_bad_shapes() {
        assert!(GameTable::new(2, vec![vec![1.0, 2.0]], vec![vec![1.0, 2.0]; 2]).is_err());
        assert!(GameTable::new(
            2,
            vec![vec![1.0, f64::NAN], vec![0.0, 0.0]],
            vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        )
        .is_err());
    }
}

//! Single-parameter entanglement operators for 2-player–N-strategy quantum
//! games: two J(β) constructions, von Neumann entanglement entropy, the full
//! game protocol with SU(N) strategies, and ε-Nash-equilibrium search.

pub mod entangler;
pub mod entropy;
pub mod game;
pub mod gellmann;
pub mod linalg;
pub mod optim;
pub mod perm;
pub mod verify;

pub use entangler::{
    build_fracpow, coefficient_pair, default_seed, fracpow_matrix, fracpow_state,
    max_entanglement_betas, perm_entangled_state, perm_entangler_matrix, CoefficientPair,
    EntanglerError, EntanglerMethod, FracPowEntangler, PermExpEntangler,
};
pub use entropy::{
    entropy_curve, entropy_from_pair, schmidt_coefficients, von_neumann_entropy, EntropyCurve,
    EntropyError, PairState,
};
pub use game::{
    best_response, certify_epsilon, classical_strategy_matrices, commensurability_residual,
    embed_classical, final_state, find_ne, payoffs, strategy_unitary, GameError, GameTable,
    NEResult, Player, SearchOptions, StrategyParams,
};
pub use gellmann::StrategyBasis;
pub use linalg::{
    gram_schmidt, hermitian_eigen, kron, matexp, matlog_unitary, singular_values, unitary_eigen,
    Complex64, ComplexMatrix, LinAlgError, StateVector,
};
pub use perm::{
    plain_transposition, su3_classical, verify_group_table, PermError, SU3Classical, Su3Label,
    Transposition,
};
pub use verify::{run_suites, CheckOutcome, VerifyConfig};

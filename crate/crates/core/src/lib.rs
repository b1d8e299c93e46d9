//! Exact numerics for a pair of fermionic modes under the particle-number
//! parity superselection rule.
//!
//! Everything lives in the four-dimensional Fock space of two modes. The
//! admissible mixed states are parity-block-diagonal and form a
//! six-parameter family ([`states::SSRState`]); for that family the crate
//! provides:
//!
//! - the graded operator algebra: mode operators with the correct
//!   anticommutation relations, the graded tensor product, fermion parity,
//!   and time reversal ([`algebra`]);
//! - entanglement of formation in closed form, a Wootters-concurrence
//!   cross-check, and a direct numerical minimization over ensemble
//!   decompositions that can probe the closed form ([`entanglement`]);
//! - the admissible Bogoliubov frame changes - the unitaries commuting with
//!   fermion parity - including a constructive separable frame for every
//!   state ([`frames`]);
//! - exact dynamics of the two-mode Thirring Hamiltonian, with its
//!   enhanced symmetry at `lambda = -m/2` ([`thirring`]).
//!
//! All linear algebra is dense 4x4 / 2x2 over `f64` complex numbers;
//! every random routine is seed-deterministic.

pub mod algebra;
pub mod entanglement;
pub mod error;
pub mod frames;
pub mod matrix;
mod optim;
pub mod states;
pub mod thirring;

pub use algebra::{
    check_car, fermion_parity, graded_tensor, single_mode_ops, time_reversal, two_mode_ops,
    AntiunitaryOperator, GradedOperator, Parity, TwoModeOps,
};
pub use entanglement::{
    binary_entropy, eof_closed_form, eof_oracle, spectral_ensemble, wootters_concurrence,
    Ensemble, EnsembleMember, EofAnalysis, OracleConfig, OracleResult,
};
pub use error::{Error, Result};
pub use frames::{
    build_unitary, expected_family_action, find_separable_frame, is_physically_distinguishable,
    random_group_element, transform_operator, transform_state, BogoliubovParams, SeparableFrame,
};
pub use matrix::{C64, CMat2, CMat4, CVec2, CVec4};
pub use states::{random_state, werner, SSRState, Sector, Subsystem, WernerParam};
pub use thirring::{
    entanglement_trajectory, evolve_state, hamiltonian, heisenberg_annihilator, ThirringParams,
};

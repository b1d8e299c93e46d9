//! Dynamics of the two-mode Thirring Hamiltonian.
//!
//! The Hamiltonian `H = (m + lambda)(N1 + N2) + 2 lambda N1 N2` is diagonal
//! in the Fock basis with energies `(0, m+lambda, m+lambda, 2m+4lambda)`,
//! so evolution is exact: elementwise phases, no numerical integration.
//! Conventions (hbar = 1): Schroedinger picture
//! `rho(t) = e^{-iHt} rho e^{+iHt}`, Heisenberg picture
//! `X(t) = e^{+iHt} X e^{-iHt}`; the expectation-value consistency of the
//! two is pinned by tests against a generic matrix exponential.
//!
//! Because H is diagonal, the coherence magnitudes |b1|, |b2| are conserved
//! and the entanglement of any admissible state is constant in time. At
//! `lambda = -m/2` the Hamiltonian commutes with every admissible frame
//! unitary, which [`check_symmetry`] quantifies as a residual.

use crate::entanglement::eof_closed_form;
use crate::error::{Error, Result};
use crate::frames::{build_unitary, BogoliubovParams};
use crate::matrix::{max_abs, CMat4, C64};
use crate::states::{SSRState, Subsystem};

/// Mass and coupling of the two-mode Thirring Hamiltonian (units of
/// inverse time, hbar = 1, either sign allowed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirringParams {
    m: f64,
    lambda: f64,
}

impl ThirringParams {
    pub fn new(m: f64, lambda: f64) -> Result<Self> {
        if !m.is_finite() || !lambda.is_finite() {
            return Err(Error::OutOfRange(format!(
                "Thirring parameters must be finite, got m = {m}, lambda = {lambda}"
            )));
        }
        Ok(ThirringParams { m, lambda })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Fock-basis energies (E_00, E_10, E_01, E_11).
    fn energies(&self) -> [f64; 4] {
        let single = self.m + self.lambda;
        [0.0, single, single, 2.0 * self.m + 4.0 * self.lambda]
    }
}

/// `H = (m + lambda)(N1 + N2) + 2 lambda N1 N2`, diagonal with entries
/// `(0, m+lambda, m+lambda, 2m+4lambda)`.
pub fn hamiltonian(p: ThirringParams) -> CMat4 {
    let e = p.energies();
    CMat4::from_diagonal(&nalgebra::Vector4::new(
        C64::new(e[0], 0.0),
        C64::new(e[1], 0.0),
        C64::new(e[2], 0.0),
        C64::new(e[3], 0.0),
    ))
}

/// Schroedinger evolution `rho(t) = e^{-iHt} rho e^{+iHt}`.
///
/// The weights are untouched; the even coherence picks up the phase
/// `e^{+i(2m+4lambda)t}` (the energy gap between |1,1> and the vacuum) and
/// the odd coherence is constant because the single-excitation levels are
/// degenerate.
pub fn evolve_state(state: &SSRState, p: ThirringParams, t: f64) -> SSRState {
    let gap = 2.0 * p.m + 4.0 * p.lambda;
    let b1 = state.b1() * C64::from_polar(1.0, gap * t);
    SSRState::new(
        state.w1(),
        state.w2(),
        state.v1(),
        state.v2(),
        b1,
        state.b2(),
    )
    .expect("phase-only evolution preserves admissibility")
}

/// Heisenberg conjugation `e^{+iHt} X e^{-iHt}` by elementwise phases.
fn heisenberg_conjugate(x: &CMat4, p: ThirringParams, t: f64) -> CMat4 {
    let e = p.energies();
    let mut out = *x;
    for r in 0..4 {
        for c in 0..4 {
            out[(r, c)] *= C64::from_polar(1.0, (e[r] - e[c]) * t);
        }
    }
    out
}

/// Heisenberg-picture annihilator `a_i(t) = e^{+iHt} a_i e^{-iHt}`.
///
/// Equals the closed-form solution of the equations of motion,
/// `a_i * e^{-it(m + lambda + 2 lambda N_j)}` with `j != i`.
pub fn heisenberg_annihilator(mode: Subsystem, p: ThirringParams, t: f64) -> CMat4 {
    let a = match mode {
        Subsystem::Mode1 => crate::algebra::two_mode_ops().a1,
        Subsystem::Mode2 => crate::algebra::two_mode_ops().a2,
    };
    heisenberg_conjugate(&a, p, t)
}

/// Maximum entry of `|U H U^dag - H|` for the frame unitary of `params`.
///
/// Zero (to 1e-12) for every frame exactly when `lambda = -m/2`, where the
/// whole admissible group is a symmetry of H.
pub fn check_symmetry(p: ThirringParams, params: &BogoliubovParams) -> f64 {
    let h = hamiltonian(p);
    let u = build_unitary(params);
    max_abs(&(&u * h * u.adjoint() - h))
}

/// Entanglement of formation along a time grid, as `(t, E)` pairs.
///
/// Constant in `t` for every admissible state: the diagonal Hamiltonian
/// conserves the coherence magnitudes.
pub fn entanglement_trajectory(
    state: &SSRState,
    p: ThirringParams,
    times: &[f64],
) -> Vec<(f64, f64)> {
    times
        .iter()
        .map(|&t| (t, eof_closed_form(&evolve_state(state, p, t)).total))
        .collect()
}

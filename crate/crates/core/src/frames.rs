//! Bogoliubov transformations compatible with the superselection rule.
//!
//! Admissible frame changes are the unitaries commuting with the total
//! fermion parity. Each is the literal left-to-right product of three
//! factors over the parameters `(alpha, beta, zeta, omega, chi)` with
//! `|alpha|^2 + |beta|^2 = |zeta|^2 + |omega|^2 = 1`:
//!
//! 1. an odd-sector rotation mixing the two modes
//!    (`a1 -> alpha a1 + beta a2`),
//! 2. an even-sector rotation mixing creation and annihilation operators
//!    (`a1 -> zeta a1 + omega a2^dag`),
//! 3. a nonlinear phase (`a_i -> a_i e^{i chi N_j}`, `j != i`), whose
//!    `chi = pi` point is the Klein-Wigner transformation.
//!
//! Conjugating an operator by the product applies the three operator-level
//! family formulas in that same order; [`expected_family_action`] implements
//! the formulas and the test suite pins the equivalence entrywise.
//!
//! Frame changes move entanglement: every admissible state becomes diagonal
//! — hence separable — in the frame found by [`find_separable_frame`], while
//! only the superseparable family is diagonal in every frame.

use crate::algebra::two_mode_ops;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen_2x2, max_abs, CMat4, C64, DEFAULT_TOL};
use crate::states::{validate, SSRState, Sector, VALIDATION_TOL};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Parameters of one admissible frame change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovParams {
    alpha: C64,
    beta: C64,
    zeta: C64,
    omega: C64,
    chi: f64,
}

impl BogoliubovParams {
    /// Checks both unit-norm constraints to 1e-12 and wraps `chi` into
    /// [0, 2pi).
    pub fn new(alpha: C64, beta: C64, zeta: C64, omega: C64, chi: f64) -> Result<Self> {
        let n1 = alpha.norm_sqr() + beta.norm_sqr();
        if (n1 - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidParams(format!(
                "|alpha|^2 + |beta|^2 = {n1}, expected 1"
            )));
        }
        let n2 = zeta.norm_sqr() + omega.norm_sqr();
        if (n2 - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidParams(format!(
                "|zeta|^2 + |omega|^2 = {n2}, expected 1"
            )));
        }
        if !chi.is_finite() {
            return Err(Error::InvalidParams(format!("chi = {chi} is not finite")));
        }
        Ok(BogoliubovParams {
            alpha,
            beta,
            zeta,
            omega,
            chi: chi.rem_euclid(TAU),
        })
    }

    pub fn identity() -> Self {
        BogoliubovParams {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
            zeta: C64::new(1.0, 0.0),
            omega: C64::new(0.0, 0.0),
            chi: 0.0,
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }
    pub fn beta(&self) -> C64 {
        self.beta
    }
    pub fn zeta(&self) -> C64 {
        self.zeta
    }
    pub fn omega(&self) -> C64 {
        self.omega
    }
    pub fn chi(&self) -> f64 {
        self.chi
    }
}

fn factor_mode_mixing(p: &BogoliubovParams) -> CMat4 {
    let mut f = CMat4::identity();
    f[(1, 1)] = p.alpha.conj();
    f[(1, 2)] = -p.beta;
    f[(2, 1)] = p.beta.conj();
    f[(2, 2)] = p.alpha;
    f
}

fn factor_particle_hole(p: &BogoliubovParams) -> CMat4 {
    let mut f = CMat4::identity();
    f[(0, 0)] = p.zeta;
    f[(0, 3)] = -p.omega.conj();
    f[(3, 0)] = p.omega;
    f[(3, 3)] = p.zeta.conj();
    f
}

fn factor_nonlinear_phase(p: &BogoliubovParams) -> CMat4 {
    let mut f = CMat4::identity();
    f[(3, 3)] = C64::from_polar(1.0, -p.chi);
    f
}

/// The frame unitary: the literal left-to-right product of the mode-mixing,
/// particle-hole, and nonlinear-phase factors. Commutes with the fermion
/// parity by block structure.
pub fn build_unitary(p: &BogoliubovParams) -> CMat4 {
    factor_mode_mixing(p) * factor_particle_hole(p) * factor_nonlinear_phase(p)
}

/// Conjugation `U X U^dag` after checking `U` is unitary.
pub fn transform_operator(u: &CMat4, x: &CMat4) -> Result<CMat4> {
    let residual = crate::matrix::unitarity_residual(u);
    if residual > DEFAULT_TOL {
        return Err(Error::NotUnitary(residual));
    }
    Ok(u * x * u.adjoint())
}

/// Transformed mode annihilators predicted by the three operator-level
/// family formulas.
#[derive(Debug, Clone)]
pub struct FamilyAction {
    pub a1: CMat4,
    pub a2: CMat4,
}

/// Composes the family formulas in factor order: mode mixing
/// (`a1' = alpha a1 + beta a2`, `a2' = -conj(beta) a1 + conj(alpha) a2`),
/// then particle-hole mixing (`a1'' = zeta a1' + omega a2'^dag`,
/// `a2'' = zeta a2' - omega a1'^dag`), then the nonlinear phase
/// (`a_i''' = a_i'' [1 + (e^{i chi} - 1) N_j'']`). Equals conjugation of
/// `a_i` by [`build_unitary`] entrywise.
pub fn expected_family_action(p: &BogoliubovParams) -> FamilyAction {
    let ops = two_mode_ops();
    let a1p = ops.a1 * p.alpha + ops.a2 * p.beta;
    let a2p = ops.a1 * (-p.beta.conj()) + ops.a2 * p.alpha.conj();

    let a1pp = a1p * p.zeta + a2p.adjoint() * p.omega;
    let a2pp = a2p * p.zeta - a1p.adjoint() * p.omega;

    let n1pp = a1pp.adjoint() * a1pp;
    let n2pp = a2pp.adjoint() * a2pp;
    let phase = C64::from_polar(1.0, p.chi) - C64::new(1.0, 0.0);
    let a1ppp = a1pp * (CMat4::identity() + n2pp * phase);
    let a2ppp = a2pp * (CMat4::identity() + n1pp * phase);
    FamilyAction {
        a1: a1ppp,
        a2: a2ppp,
    }
}

/// Frame change of a state, `rho' = U rho U^dag`.
///
/// The result is always in the admissible family (the unitary commutes with
/// parity); failure of that internal invariant is a bug, surfaced as a
/// panic rather than an error.
pub fn transform_state(p: &BogoliubovParams, state: &SSRState) -> SSRState {
    let u = build_unitary(p);
    let rho = u * state.to_matrix() * u.adjoint();
    validate(&rho, VALIDATION_TOL)
        .expect("frame change left the admissible family: internal invariant violated")
}

/// A frame in which a given state is diagonal, together with the diagonal
/// state seen in that frame.
#[derive(Debug, Clone)]
pub struct SeparableFrame {
    pub params: BogoliubovParams,
    pub diagonal: SSRState,
}

/// Finds a frame whose change of basis diagonalizes the state, by
/// eigendecomposing each sector block (descending eigenvalues, first
/// eigenvector component real nonnegative). A sector block that is already
/// diagonal (|b| <= 1e-12) keeps the identity rotation, so diagonal states
/// map to the identity frame.
pub fn find_separable_frame(state: &SSRState) -> SeparableFrame {
    // Odd sector: the mode-mixing block of the unitary must be V^dag for
    // the eigenvector matrix V, which requires det V = 1; the second column
    // absorbs the determinant phase.
    let odd = hermitian_eigen_2x2(&state.sector_block(Sector::Odd), 1e-12);
    let (alpha, beta) = if odd.rotated {
        let det = odd.vectors[0][0] * odd.vectors[1][1] - odd.vectors[1][0] * odd.vectors[0][1];
        let v1 = odd.vectors[1] * det.conj();
        let v = [odd.vectors[0], v1];
        (v[0][0], -v[0][1].conj())
    } else {
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    };

    // Even sector: the particle-hole block together with the nonlinear
    // phase must equal W^dag; chi absorbs the determinant phase of W.
    let even = hermitian_eigen_2x2(&state.sector_block(Sector::Even), 1e-12);
    let (zeta, omega, chi) = if even.rotated {
        let det = even.vectors[0][0] * even.vectors[1][1] - even.vectors[1][0] * even.vectors[0][1];
        (
            even.vectors[0][0].conj(),
            even.vectors[1][0].conj(),
            det.arg().rem_euclid(TAU),
        )
    } else {
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0), 0.0)
    };

    let params = BogoliubovParams::new(alpha, beta, zeta, omega, chi)
        .expect("eigenvector columns are unit vectors");
    let diagonal = transform_state(&params, state);
    SeparableFrame { params, diagonal }
}

/// A frame change is physically distinguishable from the identity exactly
/// when it moves the local number operators: both mode-mixing coefficients
/// nonzero, or both particle-hole coefficients nonzero (to 1e-12).
pub fn is_physically_distinguishable(p: &BogoliubovParams) -> bool {
    let mixing = p.alpha.norm() > DEFAULT_TOL && p.beta.norm() > DEFAULT_TOL;
    let particle_hole = p.zeta.norm() > DEFAULT_TOL && p.omega.norm() > DEFAULT_TOL;
    mixing || particle_hole
}

/// Product of two frame unitaries.
pub fn compose(p: &BogoliubovParams, q: &BogoliubovParams) -> CMat4 {
    build_unitary(p) * build_unitary(q)
}

/// Inverse frame unitary (conjugate transpose).
pub fn inverse(p: &BogoliubovParams) -> CMat4 {
    build_unitary(p).adjoint()
}

/// Entrywise equality after removing a global phase (frames are only
/// determined up to one).
pub fn equal_up_to_phase(u: &CMat4, v: &CMat4, tol: f64) -> bool {
    // Align phases at the largest entry of v; for unitaries it has modulus
    // at least 1/2, so the quotient is well conditioned.
    let mut pivot = (0, 0);
    let mut best = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let m = v[(i, j)].norm();
            if m > best {
                best = m;
                pivot = (i, j);
            }
        }
    }
    if best == 0.0 {
        return max_abs(u) <= tol;
    }
    let phase = u[pivot] / v[pivot];
    if (phase.norm() - 1.0).abs() > tol {
        return false;
    }
    crate::matrix::max_abs_diff(u, &(v * phase)) <= tol
}

/// Deterministic random frame parameters for a given seed.
pub fn random_group_element(seed: u64) -> BogoliubovParams {
    random_group_element_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random frame parameters from a caller-supplied generator.
///
/// Each coefficient pair is uniform on the unit 3-sphere (uniform squared
/// modulus and independent uniform phases), except that with probability
/// 0.05 each the pair collapses to `(phase, 0)` or `(0, phase)` — without
/// those atoms, non-distinguishable elements would almost surely never be
/// drawn. `chi` is uniform on [0, 2pi).
pub fn random_group_element_with<R: Rng + ?Sized>(rng: &mut R) -> BogoliubovParams {
    let unit_pair = |rng: &mut R| -> (C64, C64) {
        let branch = rng.gen::<f64>();
        let u = rng.gen::<f64>();
        let phi1 = rng.gen::<f64>() * TAU;
        let phi2 = rng.gen::<f64>() * TAU;
        if branch < 0.05 {
            (C64::from_polar(1.0, phi1), C64::new(0.0, 0.0))
        } else if branch < 0.10 {
            (C64::new(0.0, 0.0), C64::from_polar(1.0, phi2))
        } else {
            (
                C64::from_polar(u.sqrt(), phi1),
                C64::from_polar((1.0 - u).sqrt(), phi2),
            )
        }
    };
    let (alpha, beta) = unit_pair(rng);
    let (zeta, omega) = unit_pair(rng);
    let chi = rng.gen::<f64>() * TAU;
    BogoliubovParams::new(alpha, beta, zeta, omega, chi).expect("construction is normalized")
}

/// JSON document form of frame parameters:
/// `{ "alpha": [re, im], "beta": [re, im], "zeta": [re, im],
///    "omega": [re, im], "chi": real }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDoc {
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub zeta: [f64; 2],
    pub omega: [f64; 2],
    pub chi: f64,
}

impl From<&BogoliubovParams> for ParamsDoc {
    fn from(p: &BogoliubovParams) -> Self {
        ParamsDoc {
            alpha: [p.alpha.re, p.alpha.im],
            beta: [p.beta.re, p.beta.im],
            zeta: [p.zeta.re, p.zeta.im],
            omega: [p.omega.re, p.omega.im],
            chi: p.chi,
        }
    }
}

impl TryFrom<ParamsDoc> for BogoliubovParams {
    type Error = Error;

    fn try_from(doc: ParamsDoc) -> Result<BogoliubovParams> {
        BogoliubovParams::new(
            C64::new(doc.alpha[0], doc.alpha[1]),
            C64::new(doc.beta[0], doc.beta[1]),
            C64::new(doc.zeta[0], doc.zeta[1]),
            C64::new(doc.omega[0], doc.omega[1]),
            doc.chi,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{car_violation, fermion_parity};
    use crate::entanglement::eof_closed_form;
    use crate::matrix::{approx_eq, commutator, is_unitary, max_abs_diff};
    use crate::states::{random_state, superseparable, werner, WernerParam};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn params(alpha: (f64, f64), beta: (f64, f64), zeta: (f64, f64), omega: (f64, f64), chi: f64) -> BogoliubovParams {
        BogoliubovParams::new(
            c(alpha.0, alpha.1),
            c(beta.0, beta.1),
            c(zeta.0, zeta.1),
            c(omega.0, omega.1),
            chi,
        )
        .unwrap()
    }

    #[test]
    fn params_validation_and_phase_wrap() {
        assert!(BogoliubovParams::new(
            c(0.9, 0.0),
            c(0.9, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            0.0
        )
        .is_err());
        assert!(BogoliubovParams::new(
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.5, 0.0),
            c(0.5, 0.0),
            0.0
        )
        .is_err());
        let wrapped = params((1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0), -1.0);
        assert!((wrapped.chi() - (TAU - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn identity_params_build_the_identity() {
        let u = build_unitary(&BogoliubovParams::identity());
        assert!(approx_eq(&u, &CMat4::identity(), 0.0));
    }

    #[test]
    fn mode_swap_factor_matches_the_displayed_block() {
        let p = params((0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0), 0.0);
        let u = build_unitary(&p);
        assert_eq!(u[(1, 1)], c(0.0, 0.0));
        assert_eq!(u[(1, 2)], c(-1.0, 0.0));
        assert_eq!(u[(2, 1)], c(1.0, 0.0));
        assert_eq!(u[(2, 2)], c(0.0, 0.0));
        // This frame sends a1 to a2.
        let ops = two_mode_ops();
        let moved = transform_operator(&u, &ops.a1).unwrap();
        assert!(approx_eq(&moved, &ops.a2, 1e-15));
    }

    #[test]
    fn random_frames_are_unitary_and_parity_compatible() {
        let parity = fermion_parity();
        for seed in 0..50 {
            let p = random_group_element(seed);
            let u = build_unitary(&p);
            assert!(is_unitary(&u, DEFAULT_TOL));
            assert!(max_abs(&commutator(&u, &parity)) <= 1e-15);
        }
    }

    #[test]
    fn transform_operator_checks_unitarity() {
        let ops = two_mode_ops();
        let id = CMat4::identity();
        assert!(approx_eq(
            &transform_operator(&id, &ops.a1).unwrap(),
            &ops.a1,
            0.0
        ));
        let not_unitary = CMat4::identity() * c(2.0, 0.0);
        assert!(matches!(
            transform_operator(&not_unitary, &ops.a1),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn family_action_matches_conjugation() {
        let ops = two_mode_ops();
        for seed in 0..40 {
            let p = random_group_element(seed);
            let u = build_unitary(&p);
            let expected = expected_family_action(&p);
            let got1 = transform_operator(&u, &ops.a1).unwrap();
            let got2 = transform_operator(&u, &ops.a2).unwrap();
            assert!(
                max_abs_diff(&got1, &expected.a1) <= 1e-12,
                "seed {seed} mode 1"
            );
            assert!(
                max_abs_diff(&got2, &expected.a2) <= 1e-12,
                "seed {seed} mode 2"
            );
            // Transformed operators still satisfy the anticommutation
            // relations.
            assert!(car_violation(&got1, &got2) <= 1e-12);
        }
    }

    #[test]
    fn klein_wigner_point() {
        let p = params((1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0), std::f64::consts::PI);
        let ops = two_mode_ops();
        // a1 (1 - 2 N2) = |0,0><1,0| + |0,1><1,1|
        let mut expected = CMat4::zeros();
        expected[(0, 1)] = c(1.0, 0.0);
        expected[(2, 3)] = c(1.0, 0.0);
        let action = expected_family_action(&p);
        assert!(max_abs_diff(&action.a1, &expected) <= 1e-15);
        let u = build_unitary(&p);
        let got = transform_operator(&u, &ops.a1).unwrap();
        assert!(max_abs_diff(&got, &expected) <= 1e-15);
    }

    #[test]
    fn superseparable_states_are_fixed_points() {
        let s = superseparable(0.3).unwrap();
        for seed in 0..20 {
            let p = random_group_element(seed);
            let moved = transform_state(&p, &s);
            assert!(approx_eq(&moved.to_matrix(), &s.to_matrix(), 1e-12));
        }
        let id = BogoliubovParams::identity();
        let s2 = random_state(3);
        assert!(approx_eq(
            &transform_state(&id, &s2).to_matrix(),
            &s2.to_matrix(),
            0.0
        ));
    }

    #[test]
    fn frame_change_creates_coherence_from_a_pure_fock_state() {
        let vacuum_like = SSRState::new(1.0, 0.0, 0.0, 0.0, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let r = 1.0 / 2.0_f64.sqrt();
        let p = params((1.0, 0.0), (0.0, 0.0), (r, 0.0), (r, 0.0), 0.0);
        let moved = transform_state(&p, &vacuum_like);
        assert!((moved.b1().norm() - 0.5).abs() < 1e-12);
        assert!(eof_closed_form(&moved).total > 0.9);
    }

    #[test]
    fn separable_frame_for_the_pure_werner_state() {
        let s = werner(WernerParam::new(1.0).unwrap());
        assert!((eof_closed_form(&s).total - 1.0).abs() < 1e-12);
        let frame = find_separable_frame(&s);
        // Single unit diagonal entry in the new frame.
        assert!((frame.diagonal.w1() - 1.0).abs() < 1e-12);
        assert!(frame.diagonal.b1().norm() <= 1e-12);
        assert_eq!(eof_closed_form(&frame.diagonal).total, 0.0);
        // chi absorbs the eigenvector determinant: here -1, so chi = pi.
        assert!((frame.params.chi() - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn already_diagonal_states_get_the_identity_frame() {
        let s = SSRState::new(0.1, 0.2, 0.3, 0.4, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let frame = find_separable_frame(&s);
        assert_eq!(frame.params, BogoliubovParams::identity());
        assert!(approx_eq(&frame.diagonal.to_matrix(), &s.to_matrix(), 0.0));
    }

    #[test]
    fn separable_frames_for_random_states() {
        for seed in 0..60 {
            let s = random_state(seed);
            let frame = find_separable_frame(&s);
            assert!(
                frame.diagonal.b1().norm() <= 1e-10 && frame.diagonal.b2().norm() <= 1e-10,
                "seed {seed} not diagonal"
            );
            assert_eq!(eof_closed_form(&frame.diagonal).total, 0.0);
        }
    }

    #[test]
    fn distinguishability_criterion() {
        let r = 1.0 / 2.0_f64.sqrt();
        let chi_only = params((1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0), 1.3);
        assert!(!is_physically_distinguishable(&chi_only));
        // Witness: the chi-only frame leaves N1 untouched.
        let ops = two_mode_ops();
        let u = build_unitary(&chi_only);
        let n1_moved = transform_operator(&u, &ops.n1).unwrap();
        assert!(approx_eq(&n1_moved, &ops.n1, 1e-15));

        assert!(is_physically_distinguishable(&params(
            (r, 0.0),
            (r, 0.0),
            (1.0, 0.0),
            (0.0, 0.0),
            0.0
        )));
        assert!(is_physically_distinguishable(&params(
            (1.0, 0.0),
            (0.0, 0.0),
            (r, 0.0),
            (0.0, r),
            2.0
        )));
    }

    #[test]
    fn composition_and_inverse() {
        let parity = fermion_parity();
        for seed in 0..20 {
            let p = random_group_element(seed);
            let q = random_group_element(seed + 1000);
            let pq = compose(&p, &q);
            assert!(is_unitary(&pq, 1e-12));
            assert!(max_abs(&commutator(&pq, &parity)) <= 1e-12);
            let round = build_unitary(&p) * inverse(&p);
            assert!(equal_up_to_phase(&round, &CMat4::identity(), 1e-12));
        }
    }

    #[test]
    fn random_elements_are_seed_stable_and_cover_both_kinds() {
        assert_eq!(random_group_element(5), random_group_element(5));
        let mut distinguishable = 0usize;
        let mut not = 0usize;
        for seed in 0..2000 {
            let p = random_group_element(seed);
            if is_physically_distinguishable(&p) {
                distinguishable += 1;
            } else {
                not += 1;
            }
        }
        assert!(distinguishable > 1500, "only {distinguishable} distinguishable");
        assert!(not > 0, "no non-distinguishable elements drawn");
    }

    #[test]
    fn non_distinguishable_frames_preserve_coherence_magnitudes() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for seed in 0..30 {
            let s = random_state(seed);
            let phi1 = rng.gen::<f64>() * TAU;
            let phi2 = rng.gen::<f64>() * TAU;
            let chi = rng.gen::<f64>() * TAU;
            let p = BogoliubovParams::new(
                C64::from_polar(1.0, phi1),
                c(0.0, 0.0),
                C64::from_polar(1.0, phi2),
                c(0.0, 0.0),
                chi,
            )
            .unwrap();
            assert!(!is_physically_distinguishable(&p));
            let moved = transform_state(&p, &s);
            assert!((moved.b1().norm() - s.b1().norm()).abs() < 1e-12);
            assert!((moved.b2().norm() - s.b2().norm()).abs() < 1e-12);
            assert!(
                (eof_closed_form(&moved).total - eof_closed_form(&s).total).abs() < 1e-12
            );
        }
    }

    #[test]
    fn params_json_round_trip() {
        let p = random_group_element(17);
        let doc = ParamsDoc::from(&p);
        let text = serde_json::to_string(&doc).unwrap();
        let back: ParamsDoc = serde_json::from_str(&text).unwrap();
        let q = BogoliubovParams::try_from(back).unwrap();
        assert_eq!(p, q);
        let bad: std::result::Result<ParamsDoc, _> =
            serde_json::from_str("{\"alpha\": [1.0, 0.0]}");
        assert!(bad.is_err());
    }
}

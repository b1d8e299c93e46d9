//! Density matrices admitted by the parity superselection rule.
//!
//! A state must commute with the total fermion parity diag(1,-1,-1,1), which
//! kills every entry coupling the even sector {|0,0>, |1,1>} to the odd
//! sector {|1,0>, |0,1>}. What survives is a six-parameter family
//!
//! ```text
//!         | w1  0        0        b1 |
//!   rho = | 0   w2       b2       0  |
//!         | 0   conj(b2) v2       0  |
//!         | conj(b1) 0   0        v1 |
//! ```
//!
//! with real weights summing to one and sector coherences bounded by
//! `|b_i|^2 <= w_i v_i`. Both reduced single-mode states are automatically
//! diagonal, so the rule propagates to the subsystems.

use crate::error::{Error, Result};
use crate::matrix::{CMat2, CMat4, C64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Tolerance for validating user-supplied states; looser than the algebraic
/// tolerance because inputs may come from finite-precision files.
pub const VALIDATION_TOL: f64 = 1e-9;

/// The two parity sectors of the Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// Span of |0,0> and |1,1> (total occupation 0 or 2).
    Even,
    /// Span of |1,0> and |0,1> (total occupation 1).
    Odd,
}

/// One fermionic mode, selected for a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Mode1,
    Mode2,
}

/// A superselection-rule-admissible two-mode density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SSRState {
    w1: f64,
    w2: f64,
    v1: f64,
    v2: f64,
    b1: C64,
    b2: C64,
}

impl SSRState {
    /// Builds a state from its six parameters, enforcing the family
    /// invariants at [`VALIDATION_TOL`].
    pub fn new(w1: f64, w2: f64, v1: f64, v2: f64, b1: C64, b2: C64) -> Result<Self> {
        Self::with_tolerance(w1, w2, v1, v2, b1, b2, VALIDATION_TOL)
    }

    /// [`SSRState::new`] with an explicit tolerance. Weights within `tol`
    /// below zero are clamped to zero.
    pub fn with_tolerance(
        w1: f64,
        w2: f64,
        v1: f64,
        v2: f64,
        b1: C64,
        b2: C64,
        tol: f64,
    ) -> Result<Self> {
        for (name, x) in [("w1", w1), ("w2", w2), ("v1", v1), ("v2", v2)] {
            if !x.is_finite() || x < -tol {
                return Err(Error::OutOfRange(format!("weight {name} = {x} is negative")));
            }
        }
        let clamp = |x: f64| x.max(0.0);
        let (w1, w2, v1, v2) = (clamp(w1), clamp(w2), clamp(v1), clamp(v2));
        let total = w1 + w2 + v1 + v2;
        if (total - 1.0).abs() > tol {
            return Err(Error::NotNormalized(total));
        }
        for (sector, w, v, b) in [("even", w1, v1, b1), ("odd", w2, v2, b2)] {
            let excess = b.norm_sqr() - w * v;
            if excess > tol {
                return Err(Error::NotPositive(format!(
                    "{sector} sector: |b|^2 - w*v = {excess:.3e}"
                )));
            }
        }
        Ok(SSRState {
            w1,
            w2,
            v1,
            v2,
            b1,
            b2,
        })
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }
    pub fn w2(&self) -> f64 {
        self.w2
    }
    pub fn v1(&self) -> f64 {
        self.v1
    }
    pub fn v2(&self) -> f64 {
        self.v2
    }
    pub fn b1(&self) -> C64 {
        self.b1
    }
    pub fn b2(&self) -> C64 {
        self.b2
    }

    /// `(w, v, b)` of one sector block.
    pub fn sector_params(&self, sector: Sector) -> (f64, f64, C64) {
        match sector {
            Sector::Even => (self.w1, self.v1, self.b1),
            Sector::Odd => (self.w2, self.v2, self.b2),
        }
    }

    /// 2x2 block `[[w, b], [conj(b), v]]` of one sector.
    pub fn sector_block(&self, sector: Sector) -> CMat2 {
        let (w, v, b) = self.sector_params(sector);
        CMat2::new(C64::new(w, 0.0), b, b.conj(), C64::new(v, 0.0))
    }

    /// Probability carried by one sector: `w + v`.
    pub fn sector_weight(&self, sector: Sector) -> f64 {
        let (w, v, _) = self.sector_params(sector);
        w + v
    }

    /// The full 4x4 density matrix in Fock ordering.
    pub fn to_matrix(&self) -> CMat4 {
        let mut m = CMat4::zeros();
        m[(0, 0)] = C64::new(self.w1, 0.0);
        m[(3, 3)] = C64::new(self.v1, 0.0);
        m[(0, 3)] = self.b1;
        m[(3, 0)] = self.b1.conj();
        m[(1, 1)] = C64::new(self.w2, 0.0);
        m[(2, 2)] = C64::new(self.v2, 0.0);
        m[(1, 2)] = self.b2;
        m[(2, 1)] = self.b2.conj();
        m
    }

    /// Reduced state of one mode; diagonal for every admissible state.
    pub fn partial_trace(&self, subsystem: Subsystem) -> SubsystemState {
        let (p0, p1) = match subsystem {
            Subsystem::Mode1 => (self.w1 + self.v2, self.w2 + self.v1),
            Subsystem::Mode2 => (self.w1 + self.w2, self.v1 + self.v2),
        };
        SubsystemState { p0, p1 }
    }

    /// A state is separable exactly when it is diagonal in the Fock basis.
    pub fn is_separable(&self, tol: f64) -> bool {
        self.b1.norm() <= tol && self.b2.norm() <= tol
    }

    /// Separable in every Bogoliubov frame: both sector blocks proportional
    /// to the identity, i.e. the one-parameter family (1/2)diag(s, 1-s, 1-s, s).
    pub fn is_superseparable(&self, tol: f64) -> bool {
        self.is_separable(tol)
            && (self.w1 - self.v1).abs() <= tol
            && (self.w2 - self.v2).abs() <= tol
    }

    /// The maximally mixed state I/4.
    pub fn maximally_mixed() -> Self {
        SSRState {
            w1: 0.25,
            w2: 0.25,
            v1: 0.25,
            v2: 0.25,
            b1: C64::new(0.0, 0.0),
            b2: C64::new(0.0, 0.0),
        }
    }
}

/// Reads the six state parameters off a candidate 4x4 matrix.
///
/// Checks, in order: Hermiticity, unit trace, vanishing of every entry
/// coupling the two parity sectors, and positivity of the sector blocks —
/// each to `tol`.
pub fn validate(candidate: &CMat4, tol: f64) -> Result<SSRState> {
    let herm = crate::matrix::hermiticity_residual(candidate);
    if herm > tol {
        return Err(Error::NotHermitian(herm));
    }
    let trace = candidate.trace();
    if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
        return Err(Error::NotNormalized(trace.re));
    }
    // Allowed support: the even corners and the odd center.
    let allowed = [(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)];
    let mut off_sector = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            if !allowed.contains(&(i, j)) {
                off_sector = off_sector.max(candidate[(i, j)].norm());
            }
        }
    }
    if off_sector > tol {
        return Err(Error::SsrViolated(off_sector));
    }
    SSRState::with_tolerance(
        candidate[(0, 0)].re,
        candidate[(1, 1)].re,
        candidate[(3, 3)].re,
        candidate[(2, 2)].re,
        candidate[(0, 3)],
        candidate[(1, 2)],
        tol,
    )
}

/// Diagonal single-mode state with occupation probabilities `(p0, p1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubsystemState {
    pub p0: f64,
    pub p1: f64,
}

/// Werner-state parameter, restricted to the positivity range [-1/3, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(gamma: f64) -> Result<Self> {
        // Tiny slack so decimal renderings of -1/3 parse as in-range.
        if !gamma.is_finite() || gamma < -1.0 / 3.0 - 1e-12 || gamma > 1.0 + 1e-12 {
            return Err(Error::OutOfRange(format!(
                "werner parameter {gamma} outside [-1/3, 1]"
            )));
        }
        Ok(WernerParam(gamma.clamp(-1.0 / 3.0, 1.0)))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Werner state: `w1 = v1 = (1+gamma)/4`, `b1 = gamma/2`,
/// `w2 = v2 = (1-gamma)/4`, `b2 = 0`.
pub fn werner(gamma: WernerParam) -> SSRState {
    let g = gamma.value();
    SSRState {
        w1: (1.0 + g) / 4.0,
        v1: (1.0 + g) / 4.0,
        b1: C64::new(g / 2.0, 0.0),
        w2: (1.0 - g) / 4.0,
        v2: (1.0 - g) / 4.0,
        b2: C64::new(0.0, 0.0),
    }
}

/// The superseparable family `(1/2) diag(s, 1-s, 1-s, s)` for `s` in [0, 1].
pub fn superseparable(s: f64) -> Result<SSRState> {
    if !s.is_finite() || !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange(format!(
            "superseparable parameter {s} outside [0, 1]"
        )));
    }
    Ok(SSRState {
        w1: s / 2.0,
        v1: s / 2.0,
        w2: (1.0 - s) / 2.0,
        v2: (1.0 - s) / 2.0,
        b1: C64::new(0.0, 0.0),
        b2: C64::new(0.0, 0.0),
    })
}

/// Deterministic random admissible state for a given seed.
pub fn random_state(seed: u64) -> SSRState {
    random_state_with(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random admissible state from a caller-supplied generator.
///
/// Weights are flat on the probability simplex (normalized unit
/// exponentials). Each coherence has uniform phase and modulus
/// `r * sqrt(w v)` where `r` is uniform on [0, 1.1] clamped to 1, so the
/// positivity boundary `|b|^2 = w v` is hit with probability ~0.09 per
/// sector and interior radii stay uniformly covered.
pub fn random_state_with<R: Rng + ?Sized>(rng: &mut R) -> SSRState {
    let mut e = [0.0_f64; 4];
    for x in e.iter_mut() {
        *x = -(1.0 - rng.gen::<f64>()).ln();
    }
    let total: f64 = e.iter().sum();
    let (w1, w2, v1, v2) = (e[0] / total, e[1] / total, e[2] / total, e[3] / total);
    let mut coherence = |w: f64, v: f64| -> C64 {
        let r = (rng.gen::<f64>() * 1.1).min(1.0);
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        C64::from_polar(r * (w * v).sqrt(), theta)
    };
    let b1 = coherence(w1, v1);
    let b2 = coherence(w2, v2);
    SSRState {
        w1,
        w2,
        v1,
        v2,
        b1,
        b2,
    }
}

/// JSON document form of a state:
/// `{ "w": [w1, w2], "v": [v1, v2], "b": [[re, im], [re, im]] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub w: [f64; 2],
    pub v: [f64; 2],
    pub b: [[f64; 2]; 2],
}

impl From<&SSRState> for StateDoc {
    fn from(s: &SSRState) -> Self {
        StateDoc {
            w: [s.w1, s.w2],
            v: [s.v1, s.v2],
            b: [[s.b1.re, s.b1.im], [s.b2.re, s.b2.im]],
        }
    }
}

impl TryFrom<StateDoc> for SSRState {
    type Error = Error;

    fn try_from(doc: StateDoc) -> Result<SSRState> {
        SSRState::new(
            doc.w[0],
            doc.w[1],
            doc.v[0],
            doc.v[1],
            C64::new(doc.b[0][0], doc.b[0][1]),
            C64::new(doc.b[1][0], doc.b[1][1]),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::approx_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn validate_reads_werner_half() {
        let half = werner(WernerParam::new(0.5).unwrap());
        let s = validate(&half.to_matrix(), VALIDATION_TOL).unwrap();
        assert_eq!(s.w1(), 0.375);
        assert_eq!(s.v1(), 0.375);
        assert_eq!(s.b1(), c(0.25, 0.0));
        assert_eq!(s.w2(), 0.125);
        assert_eq!(s.v2(), 0.125);
        assert_eq!(s.b2(), c(0.0, 0.0));
    }

    #[test]
    fn validate_reads_maximally_mixed() {
        let m = CMat4::identity() * c(0.25, 0.0);
        let s = validate(&m, VALIDATION_TOL).unwrap();
        assert_eq!(
            (s.w1(), s.w2(), s.v1(), s.v2()),
            (0.25, 0.25, 0.25, 0.25)
        );
        assert_eq!(s.b1().norm(), 0.0);
        assert_eq!(s.b2().norm(), 0.0);
    }

    #[test]
    fn validate_rejects_off_sector_entries() {
        let mut m = CMat4::identity() * c(0.25, 0.0);
        m[(0, 1)] = c(0.1, 0.0);
        m[(1, 0)] = c(0.1, 0.0);
        assert!(matches!(
            validate(&m, VALIDATION_TOL),
            Err(Error::SsrViolated(_))
        ));
    }

    #[test]
    fn validate_rejects_bad_matrices() {
        let mut m = CMat4::identity() * c(0.25, 0.0);
        m[(0, 3)] = c(0.1, 0.0);
        m[(3, 0)] = c(0.2, 0.0); // breaks Hermiticity
        assert!(matches!(
            validate(&m, VALIDATION_TOL),
            Err(Error::NotHermitian(_))
        ));

        let m = CMat4::identity() * c(0.3, 0.0);
        assert!(matches!(
            validate(&m, VALIDATION_TOL),
            Err(Error::NotNormalized(_))
        ));

        // Coherence exceeding the positivity bound.
        let mut m = CMat4::zeros();
        m[(0, 0)] = c(0.25, 0.0);
        m[(1, 1)] = c(0.25, 0.0);
        m[(2, 2)] = c(0.25, 0.0);
        m[(3, 3)] = c(0.25, 0.0);
        m[(0, 3)] = c(0.3, 0.0);
        m[(3, 0)] = c(0.3, 0.0);
        assert!(matches!(
            validate(&m, VALIDATION_TOL),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn partial_traces_match_the_closed_forms() {
        for gamma in [-1.0 / 3.0, 0.0, 0.4, 1.0] {
            let s = werner(WernerParam::new(gamma).unwrap());
            let r1 = s.partial_trace(Subsystem::Mode1);
            assert!((r1.p0 - 0.5).abs() < 1e-15 && (r1.p1 - 0.5).abs() < 1e-15);
        }

        let pure11 = SSRState::new(0.0, 0.0, 1.0, 0.0, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let r1 = pure11.partial_trace(Subsystem::Mode1);
        assert_eq!((r1.p0, r1.p1), (0.0, 1.0));

        let s = SSRState::new(0.4, 0.3, 0.1, 0.2, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let r2 = s.partial_trace(Subsystem::Mode2);
        assert!((r2.p0 - 0.7).abs() < 1e-15 && (r2.p1 - 0.3).abs() < 1e-15);
    }

    #[test]
    fn separability_is_diagonality() {
        let diag = SSRState::new(0.4, 0.3, 0.1, 0.2, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(diag.is_separable(1e-12));
        assert!(!werner(WernerParam::new(0.1).unwrap()).is_separable(1e-12));
        assert!(werner(WernerParam::new(0.0).unwrap()).is_separable(1e-12));
    }

    #[test]
    fn superseparability_examples() {
        assert!(superseparable(0.3).unwrap().is_superseparable(1e-12));
        assert!(SSRState::maximally_mixed().is_superseparable(1e-12));
        // diag(0.4, 0.3, 0.2, 0.1) in Fock ordering: w1=0.4, w2=0.3, v2=0.2, v1=0.1.
        let d = SSRState::new(0.4, 0.3, 0.1, 0.2, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(!d.is_superseparable(1e-12));
        assert!(superseparable(1.5).is_err());
    }

    #[test]
    fn werner_values_and_range() {
        let g1 = werner(WernerParam::new(1.0).unwrap());
        assert_eq!((g1.w1(), g1.v1()), (0.5, 0.5));
        assert_eq!(g1.b1(), c(0.5, 0.0));
        assert_eq!((g1.w2(), g1.v2()), (0.0, 0.0));

        let g0 = werner(WernerParam::new(0.0).unwrap());
        assert_eq!(g0, SSRState::maximally_mixed());

        let gm = werner(WernerParam::new(-1.0 / 3.0).unwrap());
        assert!((gm.w1() - 1.0 / 6.0).abs() < 1e-15);
        assert!((gm.b1().re + 1.0 / 6.0).abs() < 1e-15);
        assert!((gm.w2() - 1.0 / 3.0).abs() < 1e-15);

        assert!(WernerParam::new(1.001).is_err());
        assert!(WernerParam::new(-0.34).is_err());
        // Decimal rendering of -1/3 is accepted.
        assert!(WernerParam::new(-0.3333333333333333).is_ok());
    }

    #[test]
    fn werner_passes_validation_across_the_range() {
        for k in 0..=100 {
            let gamma = -1.0 / 3.0 + (4.0 / 3.0) * (k as f64) / 100.0;
            let s = werner(WernerParam::new(gamma).unwrap());
            assert!(validate(&s.to_matrix(), VALIDATION_TOL).is_ok(), "gamma={gamma}");
        }
    }

    #[test]
    fn random_states_are_deterministic_and_admissible() {
        let a = random_state(0);
        let b = random_state(0);
        assert_eq!(a, b);
        assert_ne!(random_state(1), a);

        let mut both_nonzero = 0usize;
        let mut on_boundary = 0usize;
        for seed in 0..500 {
            let s = random_state(seed);
            let back = validate(&s.to_matrix(), VALIDATION_TOL).unwrap();
            assert!(approx_eq(&back.to_matrix(), &s.to_matrix(), 1e-12));
            if s.b1().norm() > 0.0 && s.b2().norm() > 0.0 {
                both_nonzero += 1;
            }
            let (w, v, b) = s.sector_params(Sector::Even);
            if (b.norm_sqr() - w * v).abs() < 1e-15 {
                on_boundary += 1;
            }
        }
        assert!(both_nonzero > 450);
        assert!(on_boundary > 10, "boundary hit only {on_boundary} times");
    }

    #[test]
    fn json_document_round_trips() {
        let s = random_state(42);
        let doc = StateDoc::from(&s);
        let text = serde_json::to_string(&doc).unwrap();
        let back: StateDoc = serde_json::from_str(&text).unwrap();
        let s2 = SSRState::try_from(back).unwrap();
        assert_eq!(s, s2);

        let bad: std::result::Result<StateDoc, _> =
            serde_json::from_str("{\"w\": [0.5, 0.5], \"v\": [0.0, 0.0]}");
        assert!(bad.is_err());
    }
}

//! Graded tensor algebra for two fermionic modes.
//!
//! A single mode lives in C^2 with annihilator `a`. Naively embedding two
//! modes as `a (x) id` and `id (x) a` fails: ordinary tensor factors commute,
//! while fermionic operators must anticommute. The fix is a graded tensor
//! product whose multiplication rule carries a sign,
//!
//! `(A (x) b)(a (x) B) = (-1)^{F(a) F(b)} (A a (x) b B)`,
//!
//! where `F` counts creation minus annihilation operators mod 2 (the parity).
//! Concretely, with `P = diag(1, -1)` the grading operator, the matrix of
//! `x (x) y` for homogeneous `x`, `y` is `kron(P^{F(x)} y, x)` in the flat
//! ordering of [`crate::matrix`]. Everything in this module follows from that
//! one formula.

use crate::error::{Error, Result};
use crate::matrix::{CMat2, CMat4, CVec4, C64};

/// Fermion parity (grade mod 2) of a homogeneous operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of a product of two homogeneous operators.
    pub fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^F` as a real sign.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Single-mode grading operator `P = diag(1, -1)`.
fn grading_2x2() -> CMat2 {
    CMat2::new(
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(-1.0, 0.0),
    )
}

/// A 2x2 operator with a definite fermion parity.
///
/// Even operators are supported on the diagonal in the `{|0>, |1>}` basis,
/// odd ones strictly off it; the constructor enforces this, so mixed-parity
/// operators (such as `a + N`) must be split into homogeneous parts by the
/// caller before they can enter a graded tensor product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradedOperator {
    pub matrix: CMat2,
    pub parity: Parity,
}

impl GradedOperator {
    /// Wraps `matrix` after checking it is supported where the declared
    /// parity allows (within `crate::matrix::DEFAULT_TOL`).
    pub fn new(matrix: CMat2, parity: Parity) -> Result<Self> {
        let diag = matrix[(0, 0)].norm().max(matrix[(1, 1)].norm());
        let offdiag = matrix[(0, 1)].norm().max(matrix[(1, 0)].norm());
        let violation = match parity {
            Parity::Even => offdiag,
            Parity::Odd => diag,
        };
        if violation > crate::matrix::DEFAULT_TOL {
            return Err(Error::MixedParity(format!(
                "operator declared {parity:?} has off-support entry of magnitude {violation:.3e}"
            )));
        }
        Ok(GradedOperator { matrix, parity })
    }

    /// Hermitian conjugate; parity is preserved.
    pub fn adjoint(&self) -> Self {
        GradedOperator {
            matrix: self.matrix.adjoint(),
            parity: self.parity,
        }
    }

    /// Operator product; parities add mod 2.
    pub fn product(&self, other: &Self) -> Self {
        GradedOperator {
            matrix: self.matrix * other.matrix,
            parity: self.parity.compose(other.parity),
        }
    }
}

/// The single-mode operator set.
#[derive(Debug, Clone)]
pub struct SingleModeOps {
    pub identity: GradedOperator,
    pub a: GradedOperator,
    pub a_dag: GradedOperator,
    pub number: GradedOperator,
}

/// Single-mode annihilator `a|1> = |0>`, its adjoint, and `N = a^dag a`,
/// each tagged with its parity.
pub fn single_mode_ops() -> SingleModeOps {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let a = CMat2::new(zero, one, zero, zero);
    SingleModeOps {
        identity: GradedOperator {
            matrix: CMat2::identity(),
            parity: Parity::Even,
        },
        a: GradedOperator {
            matrix: a,
            parity: Parity::Odd,
        },
        a_dag: GradedOperator {
            matrix: a.adjoint(),
            parity: Parity::Odd,
        },
        number: GradedOperator {
            matrix: a.adjoint() * a,
            parity: Parity::Even,
        },
    }
}

/// Graded tensor product `x (x) y` (x acts on mode 1, y on mode 2) as a 4x4
/// matrix: `kron(P^{F(x)} y, x)` with mode 1 the fast index.
pub fn graded_tensor(x: &GradedOperator, y: &GradedOperator) -> CMat4 {
    let outer = match x.parity {
        Parity::Even => y.matrix,
        Parity::Odd => grading_2x2() * y.matrix,
    };
    outer.kronecker(&x.matrix)
}

/// Two-mode annihilators, creators, and number operators built through the
/// graded tensor product.
#[derive(Debug, Clone)]
pub struct TwoModeOps {
    pub a1: CMat4,
    pub a1_dag: CMat4,
    pub a2: CMat4,
    pub a2_dag: CMat4,
    pub n1: CMat4,
    pub n2: CMat4,
}

pub fn two_mode_ops() -> TwoModeOps {
    let single = single_mode_ops();
    let a1 = graded_tensor(&single.a, &single.identity);
    let a2 = graded_tensor(&single.identity, &single.a);
    TwoModeOps {
        a1,
        a1_dag: a1.adjoint(),
        a2,
        a2_dag: a2.adjoint(),
        n1: graded_tensor(&single.number, &single.identity),
        n2: graded_tensor(&single.identity, &single.number),
    }
}

/// Worst violation of the canonical anticommutation relations by a candidate
/// pair of mode annihilators: all `{a_i, a_j} = 0`, `{a_i^dag, a_j^dag} = 0`,
/// and `{a_i, a_j^dag} = delta_ij`.
pub fn car_violation(a1: &CMat4, a2: &CMat4) -> f64 {
    use crate::matrix::{anticommutator, max_abs, max_abs_diff};
    let id = CMat4::identity();
    let zero = CMat4::zeros();
    let modes = [*a1, *a2];
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            if i <= j {
                worst = worst.max(max_abs(&anticommutator(&modes[i], &modes[j])));
                worst = worst.max(max_abs(&anticommutator(
                    &modes[i].adjoint(),
                    &modes[j].adjoint(),
                )));
            }
            let target = if i == j { &id } else { &zero };
            worst = worst.max(max_abs_diff(
                &anticommutator(&modes[i], &modes[j].adjoint()),
                target,
            ));
        }
    }
    worst
}

/// Result of a CAR audit.
#[derive(Debug, Clone, Copy)]
pub struct CarReport {
    pub max_violation: f64,
}

impl CarReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_violation <= tol
    }
}

pub fn check_car(ops: &TwoModeOps) -> CarReport {
    CarReport {
        max_violation: car_violation(&ops.a1, &ops.a2),
    }
}

/// Total fermion parity `(-1)^(N1+N2) = diag(1, -1, -1, 1)`.
pub fn fermion_parity() -> CMat4 {
    CMat4::from_diagonal(&CVec4::new(
        C64::new(1.0, 0.0),
        C64::new(-1.0, 0.0),
        C64::new(-1.0, 0.0),
        C64::new(1.0, 0.0),
    ))
}

/// An antiunitary operator `V . K`: the fixed unitary `V` composed with
/// complex conjugation `K` in the Fock basis.
#[derive(Debug, Clone)]
pub struct AntiunitaryOperator {
    unitary: CMat4,
}

impl AntiunitaryOperator {
    /// The unitary factor `V`.
    pub fn unitary_part(&self) -> &CMat4 {
        &self.unitary
    }

    /// Action on a state vector: `V conj(psi)`. Antilinear in `psi`.
    pub fn apply(&self, psi: &CVec4) -> CVec4 {
        self.unitary * psi.conjugate()
    }

    /// Conjugation of a linear operator: `T X T^{-1} = V conj(X) V^dag`.
    pub fn conjugate_operator(&self, x: &CMat4) -> CMat4 {
        self.unitary * x.conjugate() * self.unitary.adjoint()
    }

    /// The square `T^2 = V conj(V)`, a plain unitary.
    pub fn squared(&self) -> CMat4 {
        self.unitary * self.unitary.conjugate()
    }
}

/// Time reversal for the two-mode system: the antiunitary `T` fixed by
/// `T a_1 T^{-1} = a_2`, `T a_2 T^{-1} = -a_1`, and `T|0,0> = |0,0>`.
/// Its square is the total fermion parity.
pub fn time_reversal() -> AntiunitaryOperator {
    let mut v = CMat4::zeros();
    let one = C64::new(1.0, 0.0);
    v[(0, 0)] = one;
    v[(2, 1)] = one; // |1,0> -> |0,1>
    v[(1, 2)] = -one; // |0,1> -> -|1,0>
    v[(3, 3)] = one;
    AntiunitaryOperator { unitary: v }
}

/// All single-mode monomials in `a`, `a^dag` (up to scalars):
/// `{id, a, a^dag, a a^dag, a^dag a}`.
pub fn monomials() -> Vec<GradedOperator> {
    let s = single_mode_ops();
    vec![
        s.identity,
        s.a,
        s.a_dag,
        s.a.product(&s.a_dag),
        s.a_dag.product(&s.a),
    ]
}

//! Dense complex matrices, tolerance-based comparisons, and the Fock-basis
//! indexing used everywhere else in the crate.
//!
//! The two-mode Fock space is C^4 with basis kets |m,n> (m = mode-1
//! occupation, n = mode-2 occupation) stored at flat index `m + 2n`:
//!
//! index 0 = |0,0>, index 1 = |1,0>, index 2 = |0,1>, index 3 = |1,1>.
//!
//! Mode 1 is the fast index, so a 4x4 operator built as a Kronecker product
//! has its mode-2 factor on the outside: `kron(B, A)` acts as A on mode 1 and
//! B on mode 2.

use nalgebra::SMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat2 = nalgebra::Matrix2<C64>;
pub type CMat4 = nalgebra::Matrix4<C64>;
pub type CVec2 = nalgebra::Vector2<C64>;
pub type CVec4 = nalgebra::Vector4<C64>;

/// Absolute tolerance used for exact algebraic identities (anticommutators,
/// unitarity residuals, operator equalities).
pub const DEFAULT_TOL: f64 = 1e-12;

/// Dimension of the two-mode Fock space.
pub const DIM: usize = 4;

/// Flat index of the basis ket |m,n>. Occupations must be 0 or 1.
#[inline]
pub fn flat_index(m: usize, n: usize) -> usize {
    debug_assert!(m < 2 && n < 2);
    m + 2 * n
}

/// Occupation pair (m, n) of the basis ket at `index`.
#[inline]
pub fn occupation(index: usize) -> (usize, usize) {
    debug_assert!(index < DIM);
    (index % 2, index / 2)
}

/// Basis ket |m,n> as a unit column vector.
pub fn basis_ket(m: usize, n: usize) -> CVec4 {
    let mut v = CVec4::zeros();
    v[flat_index(m, n)] = C64::new(1.0, 0.0);
    v
}

/// Largest entry modulus of a matrix.
pub fn max_abs<const R: usize, const C: usize>(m: &SMatrix<C64, R, C>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest entry modulus of the difference `a - b`.
pub fn max_abs_diff<const R: usize, const C: usize>(
    a: &SMatrix<C64, R, C>,
    b: &SMatrix<C64, R, C>,
) -> f64 {
    max_abs(&(a - b))
}

/// Entrywise equality up to an absolute tolerance.
pub fn approx_eq<const R: usize, const C: usize>(
    a: &SMatrix<C64, R, C>,
    b: &SMatrix<C64, R, C>,
    tol: f64,
) -> bool {
    max_abs_diff(a, b) <= tol
}

/// Max entry modulus of `M - M^dag`; zero iff Hermitian.
pub fn hermiticity_residual<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    max_abs_diff(&m.adjoint(), m)
}

pub fn is_hermitian<const N: usize>(m: &SMatrix<C64, N, N>, tol: f64) -> bool {
    hermiticity_residual(m) <= tol
}

/// Max entry modulus of `U U^dag - I`; zero iff unitary.
pub fn unitarity_residual<const N: usize>(u: &SMatrix<C64, N, N>) -> f64 {
    max_abs_diff(&(u * u.adjoint()), &SMatrix::<C64, N, N>::identity())
}

pub fn is_unitary<const N: usize>(u: &SMatrix<C64, N, N>, tol: f64) -> bool {
    unitarity_residual(u) <= tol
}

/// Commutator [a, b] = ab - ba.
pub fn commutator<const N: usize>(
    a: &SMatrix<C64, N, N>,
    b: &SMatrix<C64, N, N>,
) -> SMatrix<C64, N, N> {
    a * b - b * a
}

/// Anticommutator {a, b} = ab + ba.
pub fn anticommutator<const N: usize>(
    a: &SMatrix<C64, N, N>,
    b: &SMatrix<C64, N, N>,
) -> SMatrix<C64, N, N> {
    a * b + b * a
}

/// Eigendecomposition of a Hermitian 2x2 block, with conventions shared by
/// the entanglement and frame-search code.
#[derive(Debug, Clone)]
pub struct HermitianEigen2 {
    /// Eigenvalues in descending order.
    pub values: [f64; 2],
    /// Orthonormal eigenvectors matching `values`; the first nonzero
    /// component of each is real and nonnegative.
    pub vectors: [CVec2; 2],
    /// True when the off-diagonal entry exceeded `offdiag_tol` and a genuine
    /// rotation was performed.
    pub rotated: bool,
}

/// Closed-form eigendecomposition of `[[w, b], [conj(b), v]]`.
///
/// When `|b| <= offdiag_tol` the block is treated as diagonal: eigenvectors
/// are the standard basis axes (ties broken toward that basis), reordered
/// only if `v > w`. Otherwise the exact two-level formulas apply; the
/// eigenvalue gap is `2 sqrt(((w-v)/2)^2 + |b|^2) > 0`, so the pair is
/// never ambiguous.
pub fn hermitian_eigen_2x2(block: &CMat2, offdiag_tol: f64) -> HermitianEigen2 {
    let w = block[(0, 0)].re;
    let v = block[(1, 1)].re;
    let b = block[(0, 1)];
    let e0 = CVec2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let e1 = CVec2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    if b.norm() <= offdiag_tol {
        let (values, vectors) = if w >= v {
            ([w, v], [e0, e1])
        } else {
            ([v, w], [e1, e0])
        };
        return HermitianEigen2 {
            values,
            vectors,
            rotated: false,
        };
    }
    let c = 0.5 * (w + v);
    let d = 0.5 * (w - v);
    let r = (d * d + b.norm_sqr()).sqrt();
    let hi = c + r;
    let lo = c - r;
    // Eigenvector for eigenvalue l is (b, l - w); its first component b is
    // nonzero on this branch, so the phase convention is well defined.
    let vector_for = |l: f64| -> CVec2 {
        let raw = CVec2::new(b, C64::new(l - w, 0.0));
        let normed = raw.scale(1.0 / raw.norm());
        let phase = normed[0].conj() / normed[0].norm();
        normed.map(|z| z * phase)
    };
    HermitianEigen2 {
        values: [hi, lo],
        vectors: [vector_for(hi), vector_for(lo)],
        rotated: true,
    }
}

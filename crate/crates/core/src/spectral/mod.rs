//! Characteristic polynomials and the exact membership tests for 𝔖′ₙ and 𝔖ₙ.
//!
//! 𝔖′ₙ holds the symmetric matrices all of whose Galois conjugates have
//! spectrum in [−2, 2]; 𝔖ₙ is the subset with characteristic polynomial in
//! Z[x], i.e. the cyclotomic matrices.

mod charpoly;
mod field;
mod interlace;
mod matrix;

pub use charpoly::{char_poly, CharPoly};
pub use interlace::interlaces;
pub use matrix::SymMatrix;

use thiserror::Error;

use crate::ring::{Automorphism, RingElement, RingError, RingId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("entry ({i}, {j}) is not in {ring}")]
    EntryNotInRing { i: usize, j: usize, ring: RingId },
    #[error("vertex {v} out of range for a {n}-vertex matrix")]
    IndexOutOfRange { v: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree mismatch: parent {parent}, child {child}")]
    DegreeMismatch { parent: usize, child: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub fn is_integral(p: &CharPoly) -> bool {
    p.coeffs().iter().all(RingElement::is_rational_integer)
}

/// Weak sign alternation: the coefficient of `x^k` is zero or has sign `(−1)^(n−k)`.
/// For a monic real-rooted polynomial this holds iff every root is ≥ 0.
fn alternates(coeffs: &[RingElement], sigma: Automorphism) -> bool {
    let n = coeffs.len() - 1;
    coeffs.iter().enumerate().all(|(k, c)| {
        let s = c.conjugate(sigma).sign();
        s == 0 || (s > 0) == ((n - k) % 2 == 0)
    })
}

/// Shifted polynomials whose roots are `r + 2` and `2 − r` for each root `r`.
fn shifted_pair(p: &CharPoly) -> (Vec<RingElement>, Vec<RingElement>) {
    (p.shift(-2), p.reflect().shift(-2))
}

/// All roots of a real-rooted monic polynomial lie in [−2, 2].
pub fn roots_in_pm2(p: &CharPoly) -> bool {
    let (lo, hi) = shifted_pair(p);
    alternates(&lo, Automorphism::IDENTITY) && alternates(&hi, Automorphism::IDENTITY)
}

/// Result of a full membership evaluation.
#[derive(Debug, Clone)]
pub struct Membership {
    pub char_poly: CharPoly,
    pub in_sprime: bool,
    pub integral: bool,
}

impl Membership {
    pub fn in_s(&self) -> bool {
        self.in_sprime && self.integral
    }
}

/// Evaluates both membership predicates with a single characteristic polynomial.
pub fn membership(a: &SymMatrix) -> Membership {
    let p = char_poly(a);
    let in_sprime = spectrum_conjugates_in_pm2(&p, a.ring());
    let integral = is_integral(&p);
    Membership {
        char_poly: p,
        in_sprime,
        integral,
    }
}

/// Uses `χ_{σ(A)} = σ(χ_A)`: one polynomial, one conjugate sign check per automorphism.
fn spectrum_conjugates_in_pm2(p: &CharPoly, ring: RingId) -> bool {
    let (lo, hi) = shifted_pair(p);
    ring.automorphisms()
        .into_iter()
        .all(|s| alternates(&lo, s) && alternates(&hi, s))
}

pub fn in_sprime(a: &SymMatrix) -> bool {
    spectrum_conjugates_in_pm2(&char_poly(a), a.ring())
}

pub fn in_s(a: &SymMatrix) -> bool {
    membership(a).in_s()
}

/// `Σ_u w(u, v)²`, charge included.
pub fn vertex_degree(a: &SymMatrix, v: usize) -> Result<RingElement, SpectralError> {
    if v >= a.n() {
        return Err(SpectralError::IndexOutOfRange { v, n: a.n() });
    }
    Ok((0..a.n()).map(|u| a.get(u, v).square()).sum())
}

/// Every vertex of every Galois conjugate has degree at most 4.
pub fn degree_bound_ok(a: &SymMatrix) -> bool {
    let four = RingElement::from_int(4);
    let autos = a.ring().automorphisms();
    (0..a.n()).all(|v| {
        let d = vertex_degree(a, v).expect("in range");
        autos
            .iter()
            .all(|&s| (four - d.conjugate(s)).sign() >= 0)
    })
}

/// `A·x = λ·x` exactly.
pub fn eigen_check(
    a: &SymMatrix,
    x: &[RingElement],
    lambda: RingElement,
) -> Result<bool, SpectralError> {
    if x.len() != a.n() {
        return Err(SpectralError::DimensionMismatch {
            expected: a.n(),
            got: x.len(),
        });
    }
    let ax = a.mul_vec(x);
    Ok(ax.iter().zip(x).all(|(l, &r)| *l == lambda * r))
}

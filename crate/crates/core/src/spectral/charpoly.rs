use std::fmt;

use crate::ring::{Automorphism, RingElement};

use super::SymMatrix;

/// Monic characteristic polynomial `det(xI − A)`, coefficients stored in
/// ascending degree (`coeffs[k]` multiplies `x^k`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<RingElement>,
}

impl CharPoly {
    /// Wraps ascending coefficients; the leading one must be 1.
    pub fn from_ascending(coeffs: Vec<RingElement>) -> Self {
        assert!(
            coeffs.last().is_some_and(|c| *c == RingElement::one()),
            "characteristic polynomials are monic"
        );
        CharPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> RingElement {
        self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn conjugate(&self, sigma: Automorphism) -> CharPoly {
        CharPoly {
            coeffs: self.coeffs.iter().map(|c| c.conjugate(sigma)).collect(),
        }
    }

    /// `p(x + t)` for an integer `t`, by repeated synthetic division.
    pub fn shift(&self, t: i64) -> Vec<RingElement> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        let t = RingElement::from_int(t);
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let carry = c[j + 1] * t;
                c[j] += carry;
            }
        }
        c
    }

    /// `(−1)^n p(−x)`, again monic.
    pub fn reflect(&self) -> CharPoly {
        let n = self.degree();
        CharPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if (n - k) % 2 == 1 { -c } else { c })
                .collect(),
        }
    }

    /// Evaluates the polynomial at a square matrix (Horner), returning row-major entries.
    pub fn eval_matrix(&self, a: &SymMatrix) -> Vec<RingElement> {
        let n = a.n();
        let mut acc = vec![RingElement::zero(); n * n];
        for &c in self.coeffs.iter().rev() {
            let acc_mat = SymMatrix::from_parts_unchecked(a.ring(), n, acc);
            acc = acc_mat.mul(a);
            for i in 0..n {
                acc[i * n + i] += c;
            }
        }
        acc
    }

    pub fn eval(&self, x: RingElement) -> RingElement {
        self.coeffs
            .iter()
            .rev()
            .fold(RingElement::zero(), |acc, &c| acc * x + c)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let term = if k > 0 && c == RingElement::one() {
                mono
            } else if k > 0 && c == -RingElement::one() {
                format!("-{mono}")
            } else if k > 0 {
                format!("({c}){mono}")
            } else {
                format!("({c})")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({self})")
    }
}

/// Berkowitz's division-free algorithm: the characteristic polynomial of the
/// leading `r×r` block is obtained from that of the `(r−1)×(r−1)` block by a
/// lower-triangular Toeplitz product whose first column is
/// `1, −a_rr, −R·C, −R·A·C, …, −R·A^{r−2}·C`.
pub fn char_poly(a: &SymMatrix) -> CharPoly {
    let n = a.n();
    // Descending coefficients of the current block's polynomial.
    let mut poly = vec![RingElement::one()];
    let mut col = Vec::with_capacity(n);
    let mut next = Vec::with_capacity(n);
    for r in 0..n {
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(RingElement::one());
        toeplitz.push(-a.get(r, r));
        col.clear();
        col.extend((0..r).map(|i| a.get(i, r)));
        for _ in 0..r {
            let dot: RingElement = (0..r)
                .filter(|&j| !col[j].is_zero())
                .map(|j| a.get(r, j) * col[j])
                .sum();
            toeplitz.push(-dot);
            next.clear();
            next.extend((0..r).map(|i| {
                (0..r)
                    .filter(|&j| !col[j].is_zero())
                    .map(|j| a.get(i, j) * col[j])
                    .sum::<RingElement>()
            }));
            std::mem::swap(&mut col, &mut next);
        }
        let mut out = vec![RingElement::zero(); r + 2];
        for (i, slot) in out.iter_mut().enumerate() {
            for (j, &p) in poly.iter().enumerate() {
                if j > i {
                    break;
                }
                let t = toeplitz[i - j];
                if !t.is_zero() && !p.is_zero() {
                    *slot += t * p;
                }
            }
        }
        poly = out;
    }
    poly.reverse();
    let ring = a.ring();
    CharPoly::from_ascending(
        poly.into_iter()
            .map(|c| c.in_ring(ring).expect("coefficients stay in the entry ring"))
            .collect(),
    )
}

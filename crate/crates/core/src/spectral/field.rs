//! Exact arithmetic in the field Q(√2, √3, √5) with rational coordinates, and
//! univariate polynomials over it. Only the interlacing test needs division,
//! so this lives beside the integral ring code instead of replacing it.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::{big_sign, RingElement, FACTOR};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FieldElement {
    c: [BigRational; 8],
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            c: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn one() -> Self {
        let mut x = Self::zero();
        x.c[0] = BigRational::one();
        x
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    fn conjugate(&self, sigma: u8) -> Self {
        let mut out = self.clone();
        for (m, c) in out.c.iter_mut().enumerate() {
            if (m as u8 & sigma).count_ones() % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Exact sign of the real value.
    pub fn sign(&self) -> i8 {
        let lcm = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer_lcm(&acc, c.denom()));
        let ints: [BigInt; 8] =
            std::array::from_fn(|m| (&self.c[m] * BigRational::from_integer(lcm.clone())).to_integer());
        big_sign(&ints)
    }

    /// Inverse via the product of the seven nontrivial conjugates, whose
    /// product with `self` is the rational norm.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(√2,√3,√5)");
        let others = (1..8u8).fold(Self::one(), |acc, s| &acc * &self.conjugate(s));
        let norm = (self * &others).c[0].clone();
        let mut out = others;
        for c in out.c.iter_mut() {
            *c = &*c / &norm;
        }
        out
    }
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

impl From<&RingElement> for FieldElement {
    fn from(x: &RingElement) -> Self {
        let two = BigInt::from(2);
        FieldElement {
            c: std::array::from_fn(|m| {
                BigRational::new(BigInt::from(x.doubled()[m]), two.clone())
            }),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|m| &self.c[m] + &o.c[m]),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|m| &self.c[m] - &o.c[m]),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            c: std::array::from_fn(|m| -&self.c[m]),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        let mut out = FieldElement::zero();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out.c[i ^ j] += x * y * BigRational::from_integer(FACTOR[i][j].into());
            }
        }
        out
    }
}

/// Polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly(pub Vec<FieldElement>);

impl Poly {
    pub fn from_ring(coeffs: &[RingElement]) -> Self {
        let mut p = Poly(coeffs.iter().map(FieldElement::from).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(FieldElement::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial is reported as degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &FieldElement {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Poly {
        let inv = self.leading().inv();
        Poly(self.0.iter().map(|c| c * &inv).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    /// Euclidean division `self = q·d + r`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.clone();
        if r.0.len() < d.0.len() {
            return (Poly(Vec::new()), r);
        }
        let inv = d.leading().inv();
        let mut q = vec![FieldElement::zero(); r.0.len() - d.0.len() + 1];
        while !r.is_zero() && r.0.len() >= d.0.len() {
            let shift = r.0.len() - d.0.len();
            let t = r.leading() * &inv;
            for (k, dc) in d.0.iter().enumerate() {
                let delta = &t * dc;
                r.0[shift + k] = &r.0[shift + k] - &delta;
            }
            q[shift] = t;
            r.0.pop();
            r.trim();
        }
        let mut q = Poly(q);
        q.trim();
        (q, r)
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let x = FieldElement::from(&(RingElement::phi() + RingElement::sqrt2() + RingElement::sqrt3()));
        let y = &x * &x.inv();
        assert_eq!(y, FieldElement::one());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let one = RingElement::one();
        let phi = RingElement::phi();
        // (x − φ)(x − 1) and (x − φ)(x + 1)
        let p = Poly::from_ring(&[phi, -(phi + one), one]);
        let q = Poly::from_ring(&[-phi, one - phi, one]);
        let g = p.gcd(&q);
        assert_eq!(g, Poly::from_ring(&[-phi, one]));
    }

    #[test]
    fn signs_match_real_values() {
        let x = FieldElement::from(&(RingElement::sqrt2() - RingElement::from_int(1)));
        assert_eq!(x.sign(), 1);
        assert_eq!((-&x).sign(), -1);
        assert_eq!(x.inv().sign(), 1);
    }
}

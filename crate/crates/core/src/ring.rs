//! Exact arithmetic in the real quadratic integer rings Z, Z[√2], Z[√3], Z[φ]
//! and the order Z[√2, √3, φ] they generate inside Q(√2, √3, √5).
//!
//! Every element is stored as eight *doubled* integer numerators over the
//! radical basis, indexed by a 3-bit mask: bit 0 is √2, bit 1 is √3, bit 2 is
//! √5, so mask 3 is √6, mask 7 is √30 and so on. The value of an element is
//! `Σ num[m]·√rad(m) / 2`. Membership in the order is the parity condition
//! `num[m] ≡ num[m | 4] (mod 2)` for every mask `m` without the √5 bit.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Basis order used by the external JSON encoding: 1, √2, √3, √5, √6, √10, √15, √30.
pub(crate) const EXTERNAL_ORDER: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

const PRIMES: [i64; 3] = [2, 3, 5];

const SQRT: [f64; 8] = [
    1.0,
    std::f64::consts::SQRT_2,
    1.732_050_807_568_877_2,
    2.449_489_742_783_178,
    2.236_067_977_499_79,
    3.162_277_660_168_379_5,
    3.872_983_346_207_417,
    5.477_225_575_051_661,
];

/// Product table: `√a·√b = factor·√(a⊕b)` where the factor collects the shared primes.
const fn mul_factor(a: usize, b: usize) -> i64 {
    let shared = a & b;
    let mut f = 1;
    let mut bit = 0;
    while bit < 3 {
        if shared & (1 << bit) != 0 {
            f *= PRIMES[bit];
        }
        bit += 1;
    }
    f
}

pub(crate) const FACTOR: [[i64; 8]; 8] = {
    let mut t = [[0i64; 8]; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = 0;
        while b < 8 {
            t[a][b] = mul_factor(a, b);
            b += 1;
        }
        a += 1;
    }
    t
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("automorphism {sigma} is not defined on {ring}")]
    InvalidAutomorphism { sigma: Automorphism, ring: RingId },
    #[error("coordinates {0:?} violate the half-integer condition of the order")]
    BadDenominator([i64; 8]),
    #[error("denominator must be 1 or 2, got {0}")]
    BadDenominatorValue(i64),
    #[error("element {element} does not lie in {ring}")]
    NotInRing { element: RingElement, ring: RingId },
    #[error("unknown ring tag `{0}`")]
    UnknownRing(String),
    #[error("cannot parse ring element `{0}`")]
    Parse(String),
}

/// The rings handled by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingId {
    Z,
    Zsqrt2,
    Zsqrt3,
    Zphi,
    Compositum,
}

impl RingId {
    pub const ALL: [RingId; 5] = [
        RingId::Z,
        RingId::Zsqrt2,
        RingId::Zsqrt3,
        RingId::Zphi,
        RingId::Compositum,
    ];

    /// Bitmask of the radicals √2, √3, √5 adjoined by this ring.
    pub fn radical_mask(self) -> u8 {
        match self {
            RingId::Z => 0,
            RingId::Zsqrt2 => 1,
            RingId::Zsqrt3 => 2,
            RingId::Zphi => 4,
            RingId::Compositum => 7,
        }
    }

    pub fn from_radical_mask(mask: u8) -> RingId {
        match mask {
            0 => RingId::Z,
            1 => RingId::Zsqrt2,
            2 => RingId::Zsqrt3,
            4 => RingId::Zphi,
            _ => RingId::Compositum,
        }
    }

    /// Smallest ring of the family containing both.
    pub fn join(self, other: RingId) -> RingId {
        RingId::from_radical_mask(self.radical_mask() | other.radical_mask())
    }

    /// The Galois group of the ring's fraction field over Q.
    pub fn automorphisms(self) -> Vec<Automorphism> {
        subsets(self.radical_mask()).map(Automorphism).collect()
    }

    pub fn contains(self, x: &RingElement) -> bool {
        x.radicals() & !self.radical_mask() == 0
    }

    pub fn tag(self) -> &'static str {
        match self {
            RingId::Z => "z",
            RingId::Zsqrt2 => "zsqrt2",
            RingId::Zsqrt3 => "zsqrt3",
            RingId::Zphi => "zphi",
            RingId::Compositum => "compositum",
        }
    }

    /// Nonzero members of R′ = {±1, ±√2, ±φ, ±φ̄, ±√3, ±2} lying in this ring.
    pub fn admissible_entries(self) -> Vec<RingElement> {
        let mut base = vec![RingElement::one(), RingElement::from_int(2)];
        if self.radical_mask() & 1 != 0 {
            base.push(RingElement::sqrt2());
        }
        if self.radical_mask() & 2 != 0 {
            base.push(RingElement::sqrt3());
        }
        if self.radical_mask() & 4 != 0 {
            base.push(RingElement::phi());
            base.push(RingElement::phi_bar());
        }
        base.iter().flat_map(|&x| [x, -x]).collect()
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RingId {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(RingId::Z),
            "zsqrt2" => Ok(RingId::Zsqrt2),
            "zsqrt3" => Ok(RingId::Zsqrt3),
            "zphi" => Ok(RingId::Zphi),
            "compositum" | "r" => Ok(RingId::Compositum),
            _ => Err(RingError::UnknownRing(s.to_string())),
        }
    }
}

fn subsets(mask: u8) -> impl Iterator<Item = u8> {
    (0..8u8).filter(move |s| s & !mask == 0)
}

/// A Galois automorphism of Q(√2, √3, √5): bit `i` set means the `i`-th
/// radical (√2, √3, √5) changes sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Automorphism(pub u8);

impl Automorphism {
    pub const IDENTITY: Automorphism = Automorphism(0);

    pub fn flips(self) -> u8 {
        self.0
    }

    pub fn compose(self, other: Automorphism) -> Automorphism {
        Automorphism(self.0 ^ other.0)
    }

    /// Conjugation of the ring's nontrivial automorphism for a quadratic ring.
    pub fn conjugation(ring: RingId) -> Automorphism {
        Automorphism(ring.radical_mask())
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("id");
        }
        let names = ["√2", "√3", "√5"];
        let parts: Vec<String> = (0..3)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| format!("{}↦-{}", names[b], names[b]))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Exact element of one of the rings in [`RingId`].
///
/// Equality and hashing are by value; the ring tag only records the smallest
/// ring the element was produced in and joins under arithmetic.
#[derive(Clone, Copy)]
pub struct RingElement {
    num: [i64; 8],
    ring: RingId,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num
    }
}

impl Eq for RingElement {}

impl std::hash::Hash for RingElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
    }
}

impl Default for RingElement {
    fn default() -> Self {
        RingElement::zero()
    }
}

impl RingElement {
    pub const fn zero() -> Self {
        RingElement {
            num: [0; 8],
            ring: RingId::Z,
        }
    }

    pub const fn one() -> Self {
        Self::from_int(1)
    }

    pub const fn from_int(v: i64) -> Self {
        let mut num = [0; 8];
        num[0] = 2 * v;
        RingElement { num, ring: RingId::Z }
    }

    pub const fn sqrt2() -> Self {
        let mut num = [0; 8];
        num[1] = 2;
        RingElement {
            num,
            ring: RingId::Zsqrt2,
        }
    }

    pub const fn sqrt3() -> Self {
        let mut num = [0; 8];
        num[2] = 2;
        RingElement {
            num,
            ring: RingId::Zsqrt3,
        }
    }

    /// φ = (1 + √5)/2.
    pub const fn phi() -> Self {
        let mut num = [0; 8];
        num[0] = 1;
        num[4] = 1;
        RingElement { num, ring: RingId::Zphi }
    }

    /// φ̄ = (1 − √5)/2 = 1 − φ.
    pub const fn phi_bar() -> Self {
        let mut num = [0; 8];
        num[0] = 1;
        num[4] = -1;
        RingElement { num, ring: RingId::Zphi }
    }

    /// Builds an element from doubled numerators in mask order.
    pub fn from_doubled(ring: RingId, num: [i64; 8]) -> Result<Self, RingError> {
        if (0..4).any(|m| (num[m] - num[m | 4]).rem_euclid(2) != 0) {
            return Err(RingError::BadDenominator(num));
        }
        let x = RingElement { num, ring };
        if !ring.contains(&x) {
            return Err(RingError::NotInRing { element: x, ring });
        }
        Ok(x)
    }

    /// Builds an element from numerators in the external basis order
    /// (1, √2, √3, √5, √6, √10, √15, √30) over a denominator of 1 or 2.
    /// The ring is inferred as the smallest one containing the value.
    pub fn from_external(coords: [i64; 8], den: i64) -> Result<Self, RingError> {
        let scale = match den {
            1 => 2,
            2 => 1,
            d => return Err(RingError::BadDenominatorValue(d)),
        };
        let mut num = [0; 8];
        for (k, &m) in EXTERNAL_ORDER.iter().enumerate() {
            num[m] = coords[k] * scale;
        }
        let ring = RingId::from_radical_mask(radicals_of(&num));
        RingElement::from_doubled(ring, num)
    }

    /// Reduced external encoding: numerators in the external order and a
    /// denominator of 1 whenever the value allows it.
    pub fn to_external(&self) -> ([i64; 8], i64) {
        let halve = self.num.iter().all(|c| c % 2 == 0);
        let mut out = [0; 8];
        for (k, &m) in EXTERNAL_ORDER.iter().enumerate() {
            out[k] = if halve { self.num[m] / 2 } else { self.num[m] };
        }
        (out, if halve { 1 } else { 2 })
    }

    pub fn doubled(&self) -> &[i64; 8] {
        &self.num
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// Same value, retagged into a larger ring.
    pub fn in_ring(mut self, ring: RingId) -> Result<Self, RingError> {
        if !ring.contains(&self) {
            return Err(RingError::NotInRing { element: self, ring });
        }
        self.ring = ring;
        Ok(self)
    }

    /// Bitmask of primes whose square roots occur in a nonzero coordinate.
    pub fn radicals(&self) -> u8 {
        radicals_of(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_rational_integer(&self) -> bool {
        self.num[1..].iter().all(|&c| c == 0) && self.num[0] % 2 == 0
    }

    /// The value as an integer, if it is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        self.is_rational_integer().then(|| self.num[0] / 2)
    }

    /// Applies an automorphism, which must belong to the element's ring.
    pub fn galois(&self, sigma: Automorphism) -> Result<Self, RingError> {
        if sigma.0 & !self.ring.radical_mask() != 0 {
            return Err(RingError::InvalidAutomorphism {
                sigma,
                ring: self.ring,
            });
        }
        Ok(self.conjugate(sigma))
    }

    /// Applies an automorphism of Q(√2, √3, √5) without checking the ring tag.
    /// Flips of radicals the element does not involve act trivially.
    #[inline]
    pub fn conjugate(&self, sigma: Automorphism) -> Self {
        let mut num = self.num;
        for (m, c) in num.iter_mut().enumerate() {
            if (m as u8 & sigma.0).count_ones() % 2 == 1 {
                *c = -*c;
            }
        }
        RingElement { num, ring: self.ring }
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    /// Approximate real value.
    pub fn to_f64(&self) -> f64 {
        self.num
            .iter()
            .zip(SQRT.iter())
            .map(|(&c, &s)| c as f64 * s)
            .sum::<f64>()
            / 2.0
    }

    /// Exact sign of the real value: -1, 0 or 1.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(s) = fast_sign(&self.num) {
            return s;
        }
        let big: Vec<BigInt> = self.num.iter().map(|&c| BigInt::from(c)).collect();
        tower_sign(&big, 3)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Compares real values exactly.
    pub fn cmp_real(&self, other: &Self) -> std::cmp::Ordering {
        (*self - *other).sign().cmp(&0)
    }

    /// Multiplication by a rational integer.
    pub fn scale(&self, k: i64) -> Self {
        let mut num = self.num;
        for c in num.iter_mut() {
            *c *= k;
        }
        RingElement { num, ring: self.ring }
    }

    /// Canonical representative of {x, −x}: the one whose first nonzero
    /// coordinate is positive.
    pub fn sign_normalized(&self) -> (Self, bool) {
        match self.num.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => (-*self, true),
            _ => (*self, false),
        }
    }
}

fn radicals_of(num: &[i64; 8]) -> u8 {
    num.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .fold(0u8, |acc, (m, _)| acc | m as u8)
}

/// f64 evaluation with a rigorous bound on the rounding error; `None` when
/// the bound does not separate the value from zero.
fn fast_sign(num: &[i64; 8]) -> Option<i8> {
    const EXACT: i64 = 1 << 52;
    let mut sum = 0.0f64;
    let mut mag = 0.0f64;
    for (m, &c) in num.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c.abs() >= EXACT {
            return None;
        }
        let term = c as f64 * SQRT[m];
        sum += term;
        mag += term.abs();
    }
    // Each of ≤ 8 products and ≤ 8 additions contributes at most one ulp of `mag`.
    let bound = mag * 32.0 * f64::EPSILON;
    if sum > bound {
        Some(1)
    } else if sum < -bound {
        Some(-1)
    } else {
        None
    }
}

/// Exact sign in the tower Q ⊂ Q(√2) ⊂ Q(√2,√3) ⊂ Q(√2,√3,√5).
/// `v` holds `2^level` integer coordinates in mask order.
pub(crate) fn tower_sign(v: &[BigInt], level: usize) -> i8 {
    if level == 0 {
        return match v[0].sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
    }
    let half = 1 << (level - 1);
    let (a, b) = v.split_at(half);
    let sa = tower_sign(a, level - 1);
    let sb = tower_sign(b, level - 1);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // a + b√p with opposite signs: compare a² with p·b².
    let p = BigInt::from(PRIMES[level - 1]);
    let a2 = tower_mul(a, a);
    let b2 = tower_mul(b, b);
    let diff: Vec<BigInt> = a2.iter().zip(b2.iter()).map(|(x, y)| x - &p * y).collect();
    sa * tower_sign(&diff, level - 1)
}

pub(crate) fn tower_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i ^ j] += x * y * FACTOR[i][j];
        }
    }
    out
}

impl Add for RingElement {
    type Output = RingElement;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        let mut num = self.num;
        for (c, r) in num.iter_mut().zip(rhs.num.iter()) {
            *c += r;
        }
        RingElement {
            num,
            ring: self.ring.join(rhs.ring),
        }
    }
}

impl AddAssign for RingElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for RingElement {
    type Output = RingElement;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl SubAssign for RingElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    #[inline]
    fn neg(self) -> Self {
        let mut num = self.num;
        for c in num.iter_mut() {
            *c = -*c;
        }
        RingElement { num, ring: self.ring }
    }
}

impl Mul for RingElement {
    type Output = RingElement;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let mut acc = [0i64; 8];
        for (i, &x) in self.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.num.iter().enumerate() {
                if y != 0 {
                    acc[i ^ j] += x * y * FACTOR[i][j];
                }
            }
        }
        for c in acc.iter_mut() {
            debug_assert!(*c % 2 == 0, "product left the order");
            *c /= 2;
        }
        RingElement {
            num: acc,
            ring: self.ring.join(rhs.ring),
        }
    }
}

impl std::iter::Sum for RingElement {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(RingElement::zero(), |a, b| a + b)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // φ-style elements print in terms of φ when that is shorter.
        for (name, base) in [("φ", RingElement::phi()), ("φ̄", RingElement::phi_bar())] {
            if *self == base {
                return f.write_str(name);
            }
            if *self == -base {
                return write!(f, "-{name}");
            }
        }
        let names = ["", "√2", "√3", "√6", "√5", "√10", "√15", "√30"];
        let halves = self.num.iter().any(|c| c % 2 != 0);
        let mut first = true;
        let mut out = String::new();
        for &m in EXTERNAL_ORDER.iter() {
            let c = self.num[m];
            if c == 0 {
                continue;
            }
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            first = false;
            let coeff = if halves {
                format!("{mag}/2")
            } else {
                format!("{}", mag / 2)
            };
            match (m, coeff.as_str()) {
                (0, c) => out.push_str(c),
                (_, "1") => out.push_str(names[m]),
                (_, c) => {
                    out.push_str(c);
                    out.push_str(names[m]);
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RingElement {
    type Err = RingError;

    /// Parses the short tokens used in catalog data: integers, `r2`, `r3`,
    /// `phi`, `phib` (φ̄), each optionally prefixed with `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let x = match body {
            "r2" => RingElement::sqrt2(),
            "r3" => RingElement::sqrt3(),
            "phi" => RingElement::phi(),
            "phib" => RingElement::phi_bar(),
            _ => body
                .parse::<i64>()
                .map(RingElement::from_int)
                .map_err(|_| RingError::Parse(s.to_string()))?,
        };
        Ok(if neg { -x } else { x })
    }
}

/// JSON encoding `{"c": [8 numerators], "den": 1|2}` over the basis
/// 1, √2, √3, √5, √6, √10, √15, √30.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub c: [i64; 8],
    pub den: i64,
}

impl From<&RingElement> for ElementJson {
    fn from(x: &RingElement) -> Self {
        let (c, den) = x.to_external();
        ElementJson { c, den }
    }
}

impl TryFrom<&ElementJson> for RingElement {
    type Error = RingError;

    fn try_from(j: &ElementJson) -> Result<Self, Self::Error> {
        RingElement::from_external(j.c, j.den)
    }
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ElementJson::deserialize(d)?;
        RingElement::try_from(&j).map_err(serde::de::Error::custom)
    }
}

/// Exact-sign helper for big-integer coordinates (used by the field code).
pub(crate) fn big_sign(v: &[BigInt; 8]) -> i8 {
    if v.iter().all(|c| c.is_zero()) {
        return 0;
    }
    let approx: Option<Vec<i64>> = v
        .iter()
        .map(|c| {
            if c.abs() < BigInt::from(1i64 << 52) {
                i64::try_from(c).ok()
            } else {
                None
            }
        })
        .collect();
    if let Some(a) = approx {
        let arr: [i64; 8] = a.try_into().expect("eight coordinates");
        if let Some(s) = fast_sign(&arr) {
            return s;
        }
    }
    tower_sign(v, 3)
}

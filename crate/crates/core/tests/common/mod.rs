//! Oracles, generators and property bodies shared by the integration tests
//! and the acceptance runner. Oracles here deliberately avoid the crate's own
//! arithmetic: field elements are rational coefficient maps over squarefree
//! radicands, signs come from scaled integer square roots, spectra from a
//! floating-point eigensolver, and orbits from exhaustive enumeration.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclotomic::catalog::{build_family, maximal_specs, FamilySpec};
use cyclotomic::graph::{canonical, RGraph};
use cyclotomic::ring::{Automorphism, RingElement, RingId};
use cyclotomic::spectral::{char_poly, in_sprime, interlaces, roots_in_pm2, SymMatrix};

// ---------------------------------------------------------------------------
// Exact rational oracle for Q(√2, √3, √5)

/// Radicands in the external coordinate order of the JSON encoding.
pub const RADICANDS: [u64; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

/// `Σ q_d √d` keyed by squarefree radicand `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd(pub BTreeMap<u64, BigRational>);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Surd {
    pub fn of(x: &RingElement) -> Surd {
        let (c, den) = x.to_external();
        let mut map = BTreeMap::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                map.insert(
                    RADICANDS[i],
                    BigRational::new(BigInt::from(ci), BigInt::from(den)),
                );
            }
        }
        Surd(map)
    }

    pub fn add(&self, o: &Surd) -> Surd {
        let mut m = self.0.clone();
        for (d, q) in &o.0 {
            let e = m.entry(*d).or_insert_with(BigRational::zero);
            *e += q;
        }
        m.retain(|_, q| !q.is_zero());
        Surd(m)
    }

    pub fn neg(&self) -> Surd {
        Surd(self.0.iter().map(|(d, q)| (*d, -q.clone())).collect())
    }

    /// `√a·√b = g·√(ab/g²)` with `g = gcd(a, b)` for squarefree `a`, `b`.
    pub fn mul(&self, o: &Surd) -> Surd {
        let mut m: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (a, p) in &self.0 {
            for (b, q) in &o.0 {
                let g = gcd(*a, *b);
                let d = a * b / (g * g);
                let e = m.entry(d).or_insert_with(BigRational::zero);
                *e += p * q * BigRational::from_integer(BigInt::from(g));
            }
        }
        m.retain(|_, q| !q.is_zero());
        Surd(m)
    }

    /// Flips `√p` for each prime `p` selected by the mask (bit 0: 2, bit 1: 3, bit 2: 5).
    pub fn conjugate(&self, mask: u8) -> Surd {
        let primes = [2u64, 3, 5];
        Surd(
            self.0
                .iter()
                .map(|(d, q)| {
                    let flips = (0..3)
                        .filter(|&i| mask & (1 << i) != 0 && d % primes[i] == 0)
                        .count();
                    (*d, if flips % 2 == 1 { -q.clone() } else { q.clone() })
                })
                .collect(),
        )
    }

    /// Sign from scaled integer square roots, refining precision until decided.
    pub fn sign(&self) -> i8 {
        if self.0.is_empty() {
            return 0;
        }
        let den: BigInt = self
            .0
            .values()
            .fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let ints: Vec<(u64, BigInt)> = self
            .0
            .iter()
            .map(|(d, q)| (*d, (q * BigRational::from_integer(den.clone())).to_integer()))
            .collect();
        let mut digits = 40u32;
        loop {
            let scale = BigInt::from(10u32).pow(2 * digits);
            let mut total = BigInt::zero();
            let mut slack = BigInt::zero();
            for (d, c) in &ints {
                let root = (BigInt::from(*d) * &scale).sqrt();
                total += c * root;
                slack += c.abs();
            }
            if total.abs() > slack {
                return if total.is_positive() { 1 } else { -1 };
            }
            digits *= 2;
        }
    }
}

// ---------------------------------------------------------------------------
// Floating-point spectra

/// Eigenvalues of the `σ`-embedding, in ascending order.
pub fn eigenvalues(m: &SymMatrix, sigma: Automorphism) -> Vec<f64> {
    let n = m.n();
    if n == 0 {
        return Vec::new();
    }
    let a = DMatrix::from_row_slice(n, n, &m.to_f64(sigma));
    let mut values: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn spectral_radius(m: &SymMatrix, sigma: Automorphism) -> f64 {
    eigenvalues(m, sigma)
        .into_iter()
        .fold(0.0, |acc: f64, x| acc.max(x.abs()))
}

// ---------------------------------------------------------------------------
// Generators

pub const RINGS: [RingId; 5] = [
    RingId::Z,
    RingId::Zsqrt2,
    RingId::Zsqrt3,
    RingId::Zphi,
    RingId::Compositum,
];

pub fn entry_pool(ring: RingId) -> Vec<RingElement> {
    let mut v = vec![RingElement::zero()];
    v.extend(ring.admissible_entries());
    v
}

/// Symmetric matrix over `ring` with entries from `R′ ∪ {0}`; zeros are
/// repeated in the pool so that sparse matrices are common.
pub fn random_matrix(rng: &mut impl Rng, ring: RingId, n: usize, zero_bias: usize) -> SymMatrix {
    let pool = entry_pool(ring);
    let mut m = SymMatrix::zeros(ring, n);
    for i in 0..n {
        for j in i..n {
            let pick = rng.gen_range(0..pool.len() + zero_bias);
            let x = if pick < pool.len() { pool[pick] } else { RingElement::zero() };
            m.set(i, j, x);
        }
    }
    m
}

/// A connected graph obtained as a random spanning tree plus random extra edges.
pub fn random_connected(rng: &mut impl Rng, ring: RingId, n: usize) -> RGraph {
    let pool: Vec<RingElement> = ring.admissible_entries();
    let mut m = random_matrix(rng, ring, n, 2 * pool.len());
    for v in 1..n {
        let u = rng.gen_range(0..v);
        m.set(u, v, pool[rng.gen_range(0..pool.len())]);
    }
    RGraph::new(m)
}

/// Element of the equivalence group: signed permutation, automorphism, global sign.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub perm: Vec<usize>,
    pub signs: Vec<bool>,
    pub sigma: Automorphism,
    pub negate: bool,
}

impl GroupElement {
    pub fn random(rng: &mut impl Rng, n: usize, ring: RingId) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let autos = ring.automorphisms();
        GroupElement {
            perm,
            signs: (0..n).map(|_| rng.gen()).collect(),
            sigma: autos[rng.gen_range(0..autos.len())],
            negate: rng.gen(),
        }
    }

    pub fn apply(&self, m: &SymMatrix) -> SymMatrix {
        let mut out = m.permute(&self.perm).switch_signs(&self.signs);
        out = out.galois(self.sigma).expect("automorphism of the ring");
        if self.negate {
            out = out.negate();
        }
        out
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Exhaustive orbit oracle (small n)

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least row-major coordinate listing over the full orbit.
pub fn brute_orbit_min(m: &SymMatrix) -> Vec<[i64; 8]> {
    let n = m.n();
    let mut best: Option<Vec<[i64; 8]>> = None;
    for perm in permutations(n) {
        for mask in 0..(1u32 << n) {
            let signs: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
            let base = m.permute(&perm).switch_signs(&signs);
            for s in 0..8u8 {
                for neg in [false, true] {
                    let v: Vec<[i64; 8]> = base
                        .entries()
                        .iter()
                        .map(|x| {
                            let y = x.conjugate(Automorphism(s));
                            *(if neg { -y } else { y }).doubled()
                        })
                        .collect();
                    if best.as_ref().is_none_or(|b| v < *b) {
                        best = Some(v);
                    }
                }
            }
        }
    }
    best.unwrap_or_default()
}

// ---------------------------------------------------------------------------
// Property bodies

pub fn prop_cayley_hamilton(m: &SymMatrix) -> Result<(), TestCaseError> {
    let residual = char_poly(m).eval_matrix(m);
    prop_assert!(residual.iter().all(RingElement::is_zero), "χ_A(A) ≠ 0 for {m:?}");
    Ok(())
}

/// Outcome of comparing the exact containment test against the eigensolver.
#[derive(Debug, Default, Clone, Copy)]
pub struct RootsTally {
    pub agree: usize,
    pub boundary: usize,
}

/// Exact `[−2, 2]` containment against the eigensolver, per embedding. Within
/// `1e-9` of the boundary the numeric answer is not trusted: the case counts
/// as agreement only if `±2` is an exact root of the conjugated polynomial.
pub fn prop_roots_vs_numeric(m: &SymMatrix, tally: &mut RootsTally) -> Result<(), TestCaseError> {
    let p = char_poly(m);
    let two = RingElement::from_int(2);
    for sigma in m.ring().automorphisms() {
        let q = p.conjugate(sigma);
        let exact = roots_in_pm2(&q);
        let rho = spectral_radius(m, sigma);
        if (rho - 2.0).abs() < 1e-9 {
            let at_boundary = q.eval(two).is_zero() || q.eval(-two).is_zero();
            prop_assert!(at_boundary, "near-boundary radius {rho} without an exact ±2 root");
            prop_assert!(exact, "exact test rejects a spectrum touching ±2");
            tally.boundary += 1;
        } else {
            prop_assert_eq!(exact, rho < 2.0, "σ = {}, ρ = {}", sigma, rho);
            tally.agree += 1;
        }
    }
    let all = m.ring().automorphisms().iter().all(|&s| spectral_radius(m, s) < 2.0 + 1e-9);
    prop_assert_eq!(in_sprime(m), all);
    Ok(())
}

pub fn prop_orbit_invariance(g: &RGraph, rng: &mut impl Rng, trials: usize) -> Result<(), TestCaseError> {
    let key = canonical(g);
    for _ in 0..trials {
        let e = GroupElement::random(rng, g.n(), g.ring());
        let h = RGraph::new(e.apply(g.matrix()));
        prop_assert_eq!(&canonical(&h), &key, "group element {:?}", e);
    }
    Ok(())
}

pub fn prop_separation(a: &SymMatrix, b: &SymMatrix) -> Result<(), TestCaseError> {
    let same_orbit = a.n() == b.n() && brute_orbit_min(a) == brute_orbit_min(b);
    let same_key = canonical(&RGraph::new(a.clone())) == canonical(&RGraph::new(b.clone()));
    prop_assert_eq!(same_orbit, same_key, "{:?} vs {:?}", a, b);
    Ok(())
}

/// `χ(g·A)` equals `σ(χ_A)`, with `x ↦ −x` (up to sign) when `g` negates.
pub fn prop_char_poly_covariance(m: &SymMatrix, e: &GroupElement) -> Result<(), TestCaseError> {
    let n = m.n();
    let expected: Vec<RingElement> = char_poly(m)
        .conjugate(e.sigma)
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| if e.negate && (n - k) % 2 == 1 { -c } else { c })
        .collect();
    let actual = char_poly(&e.apply(m));
    prop_assert_eq!(actual.coeffs(), &expected[..]);
    Ok(())
}

// ---------------------------------------------------------------------------
// Catalog helpers

/// Every maximal catalog graph with at most `n_max` vertices, over all rings.
pub fn catalog_maximals(n_max: usize) -> Vec<(FamilySpec, RGraph)> {
    maximal_specs(RingId::Compositum, n_max)
        .into_iter()
        .map(|s| {
            let g = build_family(&s).expect("catalog instance");
            (s, g)
        })
        .collect()
}

/// Interlacing of every vertex-deleted subgraph; for `n ≤ exhaustive_up_to`,
/// every principal submatrix against each one-vertex-larger principal submatrix.
pub fn interlacing_failures(g: &RGraph, exhaustive_up_to: usize) -> Vec<String> {
    let n = g.n();
    let m = g.matrix();
    let mut bad = Vec::new();
    let subsets: Vec<u32> = if n <= exhaustive_up_to {
        (1..(1u32 << n)).collect()
    } else {
        vec![(1u32 << n) - 1]
    };
    for mask in subsets {
        let keep: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if keep.len() < 2 {
            continue;
        }
        let parent = char_poly(&m.principal_submatrix(&keep));
        for &v in &keep {
            let sub: Vec<usize> = keep.iter().copied().filter(|&u| u != v).collect();
            let child = char_poly(&m.principal_submatrix(&sub));
            if !interlaces(&parent, &child).unwrap_or(false) {
                bad.push(format!("{keep:?} minus {v}"));
            }
        }
    }
    bad
}

/// Canonical keys of all connected induced subgraphs (including the whole graph).
pub fn induced_subgraph_keys(g: &RGraph) -> BTreeSet<cyclotomic::graph::CanonicalKey> {
    let n = g.n();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 1..(1u32 << n) {
        let keep: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let h = g.induced(&keep);
        if h.is_connected() {
            out.insert(canonical(&h));
        }
    }
    out
}

/// Case count without on-disk regression files (seeds are logged on failure).
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

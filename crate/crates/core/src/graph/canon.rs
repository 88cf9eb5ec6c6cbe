//! Canonical forms under the group generated by switching, vertex
//! permutation, entrywise Galois conjugation and global negation.
//!
//! For one fixed Galois/sign variant the search ranges over vertex orderings
//! in which every vertex after the first in its component is adjacent to an
//! earlier one. Such an ordering fixes the switching up to automorphisms of
//! the matrix: each new vertex takes the sign that makes its entry to its
//! earliest-placed neighbour sign-normalized. The key is the lexicographically
//! least row sequence among those orderings; at every step only the
//! candidates producing the least next row are expanded, and whole branches
//! are cut once their prefix exceeds the best key found so far.

use std::cmp::Ordering;
use std::fmt;

use crate::ring::{Automorphism, RingElement, RingId};
use crate::spectral::SymMatrix;

/// Orbit-minimal encoding of a graph. Two graphs receive equal keys exactly
/// when they lie in the same orbit of the group the key was computed for.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u64>);

impl CanonicalKey {
    pub fn words(&self) -> &[u64] {
        &self.0
    }

    /// Vertex count recorded in the key.
    pub fn n(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    /// Compact hexadecimal form: each word as an unsigned LEB128 varint.
    pub fn to_hex(&self) -> String {
        let mut out = String::with_capacity(self.0.len() * 2);
        for &w in &self.0 {
            let mut v = w;
            loop {
                let mut byte = (v & 0x7f) as u8;
                v >>= 7;
                if v != 0 {
                    byte |= 0x80;
                }
                out.push_str(&format!("{byte:02x}"));
                if v == 0 {
                    break;
                }
            }
        }
        out
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() % 2 != 0 {
            return None;
        }
        let bytes: Option<Vec<u8>> = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect();
        let mut words = Vec::new();
        let (mut acc, mut shift) = (0u64, 0u32);
        for b in bytes? {
            if shift >= 64 {
                return None;
            }
            acc |= u64::from(b & 0x7f) << shift;
            if b & 0x80 != 0 {
                shift += 7;
            } else {
                words.push(acc);
                acc = 0;
                shift = 0;
            }
        }
        (shift == 0).then_some(CanonicalKey(words))
    }

    /// The orbit-minimal matrix the key encodes, or `None` for a malformed key.
    pub fn representative(&self) -> Option<SymMatrix> {
        let n = self.n();
        let pairs = n * n.saturating_sub(1) / 2;
        let width = [1usize, 8]
            .into_iter()
            .find(|w| 1 + n * (1 + w) + w * pairs == self.0.len())?;
        let codec = Codec { wide: width == 8 };
        let mut words = self.0[1..].iter().copied();
        let mut entries = vec![RingElement::zero(); n * n];
        for k in 0..n {
            words.next()?; // refinement label
            let charge = codec.pull(&mut words)?;
            entries[k * n + k] = charge;
            for u in 0..k {
                let x = codec.pull(&mut words)?;
                entries[k * n + u] = x;
                entries[u * n + k] = x;
            }
        }
        let m = SymMatrix::from_vec(RingId::Compositum, n, entries).ok()?;
        m.with_ring(m.infer_ring()).ok()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Which generators of the group act.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Group {
    pub galois: bool,
    pub negation: bool,
}

fn zigzag(c: i64) -> u64 {
    ((c << 1) ^ (c >> 63)) as u64
}

fn unzigzag(z: u64) -> i64 {
    ((z >> 1) as i64) ^ -((z & 1) as i64)
}

/// Entry encoder: one word per entry when every coordinate fits in a byte,
/// eight words otherwise. The width is an orbit invariant.
#[derive(Clone, Copy)]
struct Codec {
    wide: bool,
}

impl Codec {
    fn for_matrix(m: &SymMatrix) -> Self {
        let wide = m
            .entries()
            .iter()
            .any(|x| x.doubled().iter().any(|c| c.unsigned_abs() > 127));
        Codec { wide }
    }

    fn width(self) -> usize {
        if self.wide {
            8
        } else {
            1
        }
    }

    fn push(self, x: &RingElement, out: &mut Vec<u64>) {
        let num = x.doubled();
        if self.wide {
            out.extend(num.iter().map(|&c| zigzag(c)));
        } else {
            let packed = num
                .iter()
                .enumerate()
                .fold(0u64, |acc, (m, &c)| acc | (zigzag(c) << (8 * m)));
            out.push(packed);
        }
    }

    fn pull(self, words: &mut impl Iterator<Item = u64>) -> Option<RingElement> {
        let mut num = [0i64; 8];
        if self.wide {
            for c in num.iter_mut() {
                *c = unzigzag(words.next()?);
            }
        } else {
            let packed = words.next()?;
            for (m, c) in num.iter_mut().enumerate() {
                *c = unzigzag((packed >> (8 * m)) & 0xff);
            }
        }
        RingElement::from_doubled(RingId::Compositum, num).ok()
    }
}

/// Switching- and permutation-invariant vertex colours, by iterated refinement
/// of (charge, multiset of squared incident weights) with neighbour colours.
fn refine_labels(m: &SymMatrix) -> Vec<u64> {
    let n = m.n();
    let sq: Vec<Vec<(usize, [i64; 8])>> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && !m.get(u, v).is_zero())
                .map(|u| (u, *m.get(u, v).square().doubled()))
                .collect()
        })
        .collect();
    let initial: Vec<(Vec<i64>, Vec<[i64; 8]>)> = (0..n)
        .map(|v| {
            let mut ws: Vec<[i64; 8]> = sq[v].iter().map(|&(_, w)| w).collect();
            ws.sort_unstable();
            (m.charge(v).doubled().to_vec(), ws)
        })
        .collect();
    let mut labels = rank(&initial);
    let mut classes = count_classes(&labels);
    loop {
        let colours: Vec<(u64, Vec<([i64; 8], u64)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<([i64; 8], u64)> =
                    sq[v].iter().map(|&(u, w)| (w, labels[u])).collect();
                nb.sort_unstable();
                (labels[v], nb)
            })
            .collect();
        let next = rank(&colours);
        let next_classes = count_classes(&next);
        if next_classes == classes {
            return labels;
        }
        labels = next;
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(colours: &[T]) -> Vec<u64> {
    let mut distinct: Vec<T> = colours.to_vec();
    distinct.sort();
    distinct.dedup();
    colours
        .iter()
        .map(|c| distinct.binary_search(c).expect("present") as u64)
        .collect()
}

fn count_classes(labels: &[u64]) -> usize {
    labels.iter().max().map_or(0, |&m| m as usize + 1)
}

struct Search<'a> {
    m: &'a SymMatrix,
    n: usize,
    codec: Codec,
    labels: Vec<u64>,
    /// `flip[u*n+v]`: the entry's first nonzero coordinate is negative.
    flip: Vec<bool>,
    order: Vec<usize>,
    pos: Vec<usize>,
    neg: Vec<bool>,
    key: Vec<u64>,
}

const UNPLACED: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(m: &'a SymMatrix, codec: Codec) -> Self {
        let n = m.n();
        let flip = m
            .entries()
            .iter()
            .map(|x| x.sign_normalized().1)
            .collect();
        Search {
            m,
            n,
            codec,
            labels: refine_labels(m),
            flip,
            order: Vec::with_capacity(n),
            pos: vec![UNPLACED; n],
            neg: vec![false; n],
            key: Vec::new(),
        }
    }

    fn row_offset(&self, k: usize) -> usize {
        let w = self.codec.width();
        1 + k * (1 + w) + w * k * k.saturating_sub(1) / 2
    }

    /// Switching sign and encoded row of candidate `v` at the current depth.
    fn row(&self, v: usize, out: &mut Vec<u64>) -> bool {
        let n = self.n;
        let anchor = self
            .order
            .iter()
            .find(|&&u| !self.m.get(u, v).is_zero())
            .copied();
        let neg_v = anchor.map_or(false, |u| self.neg[u] ^ self.flip[u * n + v]);
        out.clear();
        out.push(self.labels[v]);
        self.codec.push(&self.m.charge(v), out);
        for &u in &self.order {
            let x = self.m.get(u, v);
            let x = if self.neg[u] ^ neg_v { -x } else { x };
            self.codec.push(&x, out);
        }
        neg_v
    }

    /// Depth-first search. `equal` says whether the current prefix coincides
    /// with the prefix of `best`. Returns true when `best` was replaced.
    fn run(&mut self, best: &mut Option<Vec<u64>>, mut equal: bool) -> bool {
        let k = self.order.len();
        if k == self.n {
            if !equal {
                *best = Some(self.key.clone());
                return true;
            }
            return false;
        }
        let adjacent: Vec<usize> = (0..self.n)
            .filter(|&v| {
                self.pos[v] == UNPLACED
                    && self.order.iter().any(|&u| !self.m.get(u, v).is_zero())
            })
            .collect();
        let pool: Vec<usize> = if adjacent.is_empty() {
            (0..self.n).filter(|&v| self.pos[v] == UNPLACED).collect()
        } else {
            adjacent
        };

        let mut least: Option<Vec<u64>> = None;
        let mut ties: Vec<(usize, bool)> = Vec::new();
        let mut buf = Vec::new();
        for &v in &pool {
            let s = self.row(v, &mut buf);
            match least.as_ref().map(|l| buf.cmp(l)) {
                None | Some(Ordering::Less) => {
                    least = Some(buf.clone());
                    ties.clear();
                    ties.push((v, s));
                }
                Some(Ordering::Equal) => ties.push((v, s)),
                Some(Ordering::Greater) => {}
            }
        }
        let row = least.expect("nonempty pool");

        if equal {
            let off = self.row_offset(k);
            let b = best.as_ref().expect("equal implies a best key");
            match row.as_slice().cmp(&b[off..off + row.len()]) {
                Ordering::Greater => return false,
                Ordering::Less => equal = false,
                Ordering::Equal => {}
            }
        }

        let base = self.key.len();
        self.key.extend_from_slice(&row);
        let mut replaced = false;
        for (v, s) in ties {
            self.order.push(v);
            self.pos[v] = k;
            self.neg[v] = s;
            if self.run(best, equal) {
                replaced = true;
                equal = true;
            }
            self.order.pop();
            self.pos[v] = UNPLACED;
            self.neg[v] = false;
        }
        self.key.truncate(base);
        replaced
    }
}

/// Minimal encoding over the selected group.
pub(crate) fn orbit_key(m: &SymMatrix, group: Group) -> CanonicalKey {
    let codec = Codec::for_matrix(m);
    let radicals = m.entries().iter().fold(0u8, |acc, x| acc | x.radicals());
    let sigmas: Vec<Automorphism> = if group.galois {
        (0..8u8)
            .filter(|s| s & !radicals == 0)
            .map(Automorphism)
            .collect()
    } else {
        vec![Automorphism::IDENTITY]
    };
    let signs: &[bool] = if group.negation {
        &[false, true]
    } else {
        &[false]
    };
    let mut best: Option<Vec<u64>> = None;
    for &sigma in &sigmas {
        let conj = m.conjugate(sigma);
        for &negate in signs {
            let variant = if negate { conj.negate() } else { conj.clone() };
            let mut search = Search::new(&variant, codec);
            search.key.push(m.n() as u64);
            let equal = match &best {
                None => false,
                Some(b) => {
                    // Header word is shared by every variant.
                    debug_assert_eq!(b[0], m.n() as u64);
                    true
                }
            };
            search.run(&mut best, equal);
        }
    }
    CanonicalKey(best.unwrap_or_else(|| vec![0]))
}

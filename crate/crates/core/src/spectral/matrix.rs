use std::fmt;

use crate::ring::{Automorphism, RingElement, RingId};

use super::SpectralError;

/// Square symmetric matrix over one of the rings; the diagonal holds charges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<RingElement>,
    ring: RingId,
}

impl SymMatrix {
    /// Checked constructor: rows must form a square symmetric array over `ring`.
    pub fn new(ring: RingId, rows: Vec<Vec<RingElement>>) -> Result<Self, SpectralError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(SpectralError::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            entries.extend(row);
        }
        Self::from_vec(ring, n, entries)
    }

    pub fn from_vec(
        ring: RingId,
        n: usize,
        entries: Vec<RingElement>,
    ) -> Result<Self, SpectralError> {
        assert_eq!(entries.len(), n * n, "entry count must be n*n");
        for i in 0..n {
            for j in 0..n {
                let x = entries[i * n + j];
                if !ring.contains(&x) {
                    return Err(SpectralError::EntryNotInRing { i, j, ring });
                }
                if j > i && x != entries[j * n + i] {
                    return Err(SpectralError::NotSymmetric { i, j });
                }
            }
        }
        let entries = entries
            .into_iter()
            .map(|x| x.in_ring(ring).expect("membership checked"))
            .collect();
        Ok(SymMatrix { n, entries, ring })
    }

    /// Builds a symmetric matrix from a lower-triangle closure `f(i, j)` with `j ≤ i`.
    pub fn from_fn(
        ring: RingId,
        n: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Result<Self, SpectralError> {
        let mut entries = vec![RingElement::zero(); n * n];
        for i in 0..n {
            for j in 0..=i {
                let x = f(i, j);
                entries[i * n + j] = x;
                entries[j * n + i] = x;
            }
        }
        Self::from_vec(ring, n, entries)
    }

    /// Smallest ring containing every entry.
    pub fn infer_ring(&self) -> RingId {
        self.entries
            .iter()
            .fold(RingId::Z, |r, x| r.join(ring_of(x)))
    }

    pub(crate) fn from_parts_unchecked(ring: RingId, n: usize, entries: Vec<RingElement>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        SymMatrix { n, entries, ring }
    }

    pub fn zeros(ring: RingId, n: usize) -> Self {
        SymMatrix {
            n,
            entries: vec![RingElement::zero(); n * n],
            ring,
        }
    }

    pub fn identity(ring: RingId, n: usize) -> Self {
        let mut m = Self::zeros(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = RingElement::one();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> RingElement {
        self.entries[i * self.n + j]
    }

    pub fn charge(&self, i: usize) -> RingElement {
        self.get(i, i)
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<RingElement>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    /// Sets a symmetric pair of entries. Panics if `x` is outside the ring.
    pub fn set(&mut self, i: usize, j: usize, x: RingElement) {
        assert!(self.ring.contains(&x), "{x} is not in {}", self.ring);
        let x = x.in_ring(self.ring).expect("checked");
        self.entries[i * self.n + j] = x;
        self.entries[j * self.n + i] = x;
    }

    /// Same matrix regarded over a larger ring.
    pub fn with_ring(&self, ring: RingId) -> Result<Self, SpectralError> {
        Self::from_vec(ring, self.n, self.entries.clone())
    }

    /// Entrywise Galois conjugate. The automorphism must belong to the matrix ring.
    pub fn galois(&self, sigma: Automorphism) -> Result<Self, SpectralError> {
        if sigma.flips() & !self.ring.radical_mask() != 0 {
            return Err(SpectralError::Ring(
                crate::ring::RingError::InvalidAutomorphism {
                    sigma,
                    ring: self.ring,
                },
            ));
        }
        Ok(self.conjugate(sigma))
    }

    pub(crate) fn conjugate(&self, sigma: Automorphism) -> Self {
        SymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x.conjugate(sigma)).collect(),
            ring: self.ring,
        }
    }

    pub fn negate(&self) -> Self {
        SymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&x| -x).collect(),
            ring: self.ring,
        }
    }

    /// `P·A·Pᵀ` where row `i` of the result is row `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for &pi in perm {
            for &pj in perm {
                entries.push(self.get(pi, pj));
            }
        }
        SymMatrix {
            n,
            entries,
            ring: self.ring,
        }
    }

    /// Conjugation by `diag(signs)`.
    pub fn switch_signs(&self, signs: &[bool]) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                if signs[i] != signs[j] {
                    out.entries[i * n + j] = -self.entries[i * n + j];
                }
            }
        }
        out
    }

    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(keep.len() * keep.len());
        for &i in keep {
            for &j in keep {
                entries.push(self.get(i, j));
            }
        }
        SymMatrix {
            n: keep.len(),
            entries,
            ring: self.ring,
        }
    }

    /// Principal submatrix with vertex `v` deleted.
    pub fn delete(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        self.principal_submatrix(&keep)
    }

    /// One-vertex extension: `column` holds the new off-diagonal entries.
    pub fn extend(&self, charge: RingElement, column: &[RingElement]) -> Self {
        assert_eq!(column.len(), self.n);
        let n = self.n + 1;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..self.n {
            entries.extend_from_slice(&self.entries[i * self.n..(i + 1) * self.n]);
            entries.push(column[i]);
        }
        entries.extend_from_slice(column);
        entries.push(charge);
        let ring = column
            .iter()
            .fold(self.ring.join(charge.ring()), |r, x| r.join(x.ring()));
        let entries = entries
            .into_iter()
            .map(|x| x.in_ring(ring).expect("joined ring"))
            .collect();
        SymMatrix { n, entries, ring }
    }

    pub fn mul(&self, other: &SymMatrix) -> Vec<RingElement> {
        let n = self.n;
        let mut out = vec![RingElement::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[RingElement]) -> Vec<RingElement> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| self.get(i, j) * x[j])
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> RingElement {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// True when every entry lies in R′ ∪ {0}.
    pub fn is_admissible(&self) -> bool {
        let allowed = RingId::Compositum.admissible_entries();
        self.entries
            .iter()
            .all(|x| x.is_zero() || allowed.contains(x))
    }

    /// Approximate real matrix under the embedding after applying `sigma`.
    pub fn to_f64(&self, sigma: Automorphism) -> Vec<f64> {
        self.entries
            .iter()
            .map(|x| x.conjugate(sigma).to_f64())
            .collect()
    }
}

fn ring_of(x: &RingElement) -> RingId {
    match x.radicals() {
        0 => RingId::Z,
        1 => RingId::Zsqrt2,
        2 => RingId::Zsqrt3,
        4 => RingId::Zphi,
        _ => RingId::Compositum,
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix<{}>[{}]", self.ring, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

//! Weighted-graph view of symmetric matrices: the group action, canonical
//! keys, equivalence tests and structural predicates.

mod canon;

pub use canon::CanonicalKey;

use canon::{orbit_key, Group};
use thiserror::Error;

use crate::ring::{Automorphism, RingElement, RingId};
use crate::spectral::{SpectralError, SymMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for a {n}-vertex graph")]
    IndexOutOfRange { v: usize, n: usize },
    #[error("operation needs a graph over {expected}, found entries over {found}")]
    WrongRing { expected: RingId, found: RingId },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// An R-graph: vertex `v` carries charge `A[v][v]`, and `u ~ v` whenever
/// `A[u][v] ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RGraph {
    matrix: SymMatrix,
    adjacency: Vec<Vec<usize>>,
    connected: bool,
}

impl RGraph {
    pub fn new(matrix: SymMatrix) -> Self {
        let n = matrix.n();
        let adjacency: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v && !matrix.get(u, v).is_zero())
                    .collect()
            })
            .collect();
        let connected = components_of(&adjacency).len() <= 1;
        RGraph {
            matrix,
            adjacency,
            connected,
        }
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SymMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn ring(&self) -> RingId {
        self.matrix.ring()
    }

    pub fn weight(&self, u: usize, v: usize) -> RingElement {
        self.matrix.get(u, v)
    }

    pub fn charge(&self, v: usize) -> RingElement {
        self.matrix.charge(v)
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Edges `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, RingElement)> {
        let mut out = Vec::new();
        for (u, nb) in self.adjacency.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v, self.weight(u, v)));
                }
            }
        }
        out
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(&self.adjacency)
    }

    pub fn induced(&self, keep: &[usize]) -> RGraph {
        RGraph::new(self.matrix.principal_submatrix(keep))
    }

    pub fn delete(&self, v: usize) -> RGraph {
        RGraph::new(self.matrix.delete(v))
    }

    pub fn galois(&self, sigma: Automorphism) -> Result<RGraph, GraphError> {
        Ok(RGraph::new(self.matrix.galois(sigma)?))
    }

    pub fn negate(&self) -> RGraph {
        RGraph::new(self.matrix.negate())
    }

    pub fn permute(&self, perm: &[usize]) -> RGraph {
        RGraph::new(self.matrix.permute(perm))
    }

    /// Vertices whose removal leaves the graph connected.
    pub fn non_cut_vertices(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&v| {
                let rest: Vec<usize> = (0..self.n()).filter(|&u| u != v).collect();
                rest.is_empty() || self.induced(&rest).is_connected()
            })
            .collect()
    }

    /// Radical mask actually used by the entries.
    pub fn radicals(&self) -> u8 {
        self.matrix
            .entries()
            .iter()
            .fold(0, |acc, x| acc | x.radicals())
    }
}

impl std::fmt::Debug for RGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RGraph {:?}", self.matrix)
    }
}

impl From<SymMatrix> for RGraph {
    fn from(m: SymMatrix) -> Self {
        RGraph::new(m)
    }
}

fn components_of(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &u in &adjacency[comp[i]] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Negates every edge at `v`; the charge is untouched.
pub fn switch(g: &RGraph, v: usize) -> Result<RGraph, GraphError> {
    let n = g.n();
    if v >= n {
        return Err(GraphError::IndexOutOfRange { v, n });
    }
    let mut signs = vec![false; n];
    signs[v] = true;
    Ok(RGraph::new(g.matrix.switch_signs(&signs)))
}

pub fn is_connected(g: &RGraph) -> bool {
    g.is_connected()
}

/// Key of the equivalence class: signed permutations, Galois conjugation and ±1.
pub fn canonical(g: &RGraph) -> CanonicalKey {
    orbit_key(
        &g.matrix,
        Group {
            galois: true,
            negation: true,
        },
    )
}

/// Key of the class under signed permutations alone.
pub fn signed_permutation_key(g: &RGraph) -> CanonicalKey {
    orbit_key(
        &g.matrix,
        Group {
            galois: false,
            negation: false,
        },
    )
}

pub fn equivalent(g: &RGraph, h: &RGraph) -> bool {
    g.n() == h.n() && canonical(g) == canonical(h)
}

/// `H = Q·G·Qᵀ` for a signed permutation matrix `Q`.
pub fn is_strongly_equivalent(g: &RGraph, h: &RGraph) -> bool {
    g.n() == h.n() && signed_permutation_key(g) == signed_permutation_key(h)
}

/// Every Galois conjugate of `g` is a signed-permutation conjugate of `g`.
pub fn is_galois_invariant(g: &RGraph) -> bool {
    let radicals = g.radicals();
    let own = signed_permutation_key(g);
    (1..8u8)
        .filter(|s| s & !radicals == 0)
        .all(|s| signed_permutation_key(&RGraph::new(g.matrix.conjugate(Automorphism(s)))) == own)
}

/// Every cycle carries an even number of `±√2` edges. Parity of `±√2` edges
/// is a homomorphism on the cycle space, so fundamental cycles suffice: give
/// each vertex a GF(2) potential along a spanning forest and test the
/// remaining edges against it.
pub fn sqrt2_cycle_parity_ok(g: &RGraph) -> Result<bool, GraphError> {
    let radicals = g.radicals();
    if radicals & !1 != 0 {
        return Err(GraphError::WrongRing {
            expected: RingId::Zsqrt2,
            found: RingId::from_radical_mask(radicals),
        });
    }
    let is_root2 = |x: RingElement| x == RingElement::sqrt2() || x == -RingElement::sqrt2();
    let n = g.n();
    let mut potential: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if potential[s].is_some() {
            continue;
        }
        potential[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let pu = potential[u].expect("visited");
            for &v in g.neighbours(u) {
                let expect = pu ^ is_root2(g.weight(u, v));
                match potential[v] {
                    None => {
                        potential[v] = Some(expect);
                        stack.push(v);
                    }
                    Some(pv) if pv != expect => return Ok(false),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(true)
}

/// A witness that `G ≥ H`: `map[i]` is the vertex of `G` playing vertex `i` of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domination {
    pub map: Vec<usize>,
    pub strict: bool,
}

/// Searches for a principal submatrix `S` of `G` with `S − H ≥ 0` entrywise,
/// preferring a strict witness (`S ≠ H`) when both kinds exist.
pub fn domination(g: &RGraph, h: &RGraph) -> Option<Domination> {
    if h.n() > g.n() {
        return None;
    }
    let mut map = Vec::with_capacity(h.n());
    let mut used = vec![false; g.n()];
    let mut found: Option<Domination> = None;
    dominate_rec(g, h, &mut map, &mut used, &mut found);
    found
}

fn dominate_rec(
    g: &RGraph,
    h: &RGraph,
    map: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Option<Domination>,
) -> bool {
    let i = map.len();
    if i == h.n() {
        let strict = (0..i).any(|a| (0..i).any(|b| g.weight(map[a], map[b]) != h.weight(a, b)));
        if found.as_ref().map_or(true, |f| !f.strict) {
            *found = Some(Domination {
                map: map.clone(),
                strict,
            });
        }
        return strict;
    }
    for v in 0..g.n() {
        if used[v] {
            continue;
        }
        let fits = (g.weight(v, v) - h.weight(i, i)).sign() >= 0
            && (0..i).all(|a| (g.weight(map[a], v) - h.weight(a, i)).sign() >= 0);
        if !fits {
            continue;
        }
        used[v] = true;
        map.push(v);
        let done = dominate_rec(g, h, map, used, found);
        map.pop();
        used[v] = false;
        if done {
            return true;
        }
    }
    false
}

pub fn dominates(g: &RGraph, h: &RGraph) -> bool {
    domination(g, h).is_some()
}

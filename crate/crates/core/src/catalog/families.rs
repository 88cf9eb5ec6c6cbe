//! Parametric families of cyclotomic graphs.
//!
//! The infinite maximal families are built from "columns": pairs of vertices
//! `(x1, x2)`, where consecutive columns `(x1, x2)` and `(y1, y2)` are joined
//! by `x1y1 = x1y2 = +1` and `x2y1 = x2y2 = −1`. What distinguishes the
//! families is how the ends of the chain of columns are closed off.

use std::fmt;

use crate::graph::RGraph;
use crate::ring::{RingElement, RingId};
use crate::spectral::SymMatrix;

use super::CatalogError;

/// A named catalog graph: one instance of a parametric family or a sporadic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    /// Toroidal tessellation on `2k` vertices, `k ≥ 3`.
    T2k { k: usize },
    /// `2k` vertices over Z[√2] closed by two `√2`-joined end vertices, `k ≥ 2`.
    C2k { k: usize },
    /// `2k` vertices closed by charged columns of equal sign, `k ≥ 2`.
    C2kPP { k: usize },
    /// `2k` vertices closed by charged columns of opposite sign, `k ≥ 2`.
    C2kPM { k: usize },
    /// `2k + 1` vertices: one `√2`-joined end vertex, one charged column, `k ≥ 1`.
    C2k1 { k: usize },
    /// Path with `√2` end edges, `n ≥ 3`.
    P1 { n: usize },
    /// Path with a charged start and a `√2` end edge, `n ≥ 2`.
    P2 { n: usize },
    /// Path with both ends charged `+1`, `n ≥ 2`.
    P3 { n: usize },
    /// Uncharged unit cycle, `n ≥ 3`.
    Q { n: usize },
    /// A sporadic graph by catalog identifier, e.g. `S8dagger`.
    Sporadic(String),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::T2k { k } => write!(f, "T{}", 2 * k),
            FamilySpec::C2k { k } => write!(f, "C{}", 2 * k),
            FamilySpec::C2kPP { k } => write!(f, "C{}++", 2 * k),
            FamilySpec::C2kPM { k } => write!(f, "C{}+-", 2 * k),
            FamilySpec::C2k1 { k } => write!(f, "C{}", 2 * k + 1),
            FamilySpec::P1 { n } => write!(f, "P1_{n}"),
            FamilySpec::P2 { n } => write!(f, "P2_{n}"),
            FamilySpec::P3 { n } => write!(f, "P3_{n}"),
            FamilySpec::Q { n } => write!(f, "Q{n}"),
            FamilySpec::Sporadic(id) => f.write_str(id),
        }
    }
}

impl FamilySpec {
    /// Vertex count of the instance, or `None` for sporadics (known only after lookup).
    pub fn size(&self) -> Option<usize> {
        match *self {
            FamilySpec::T2k { k }
            | FamilySpec::C2k { k }
            | FamilySpec::C2kPP { k }
            | FamilySpec::C2kPM { k } => Some(2 * k),
            FamilySpec::C2k1 { k } => Some(2 * k + 1),
            FamilySpec::P1 { n }
            | FamilySpec::P2 { n }
            | FamilySpec::P3 { n }
            | FamilySpec::Q { n } => Some(n),
            FamilySpec::Sporadic(_) => None,
        }
    }

    /// Smallest admissible parameter value.
    fn minimum(&self) -> usize {
        match self {
            FamilySpec::T2k { .. } => 3,
            FamilySpec::C2k { .. } | FamilySpec::C2kPP { .. } | FamilySpec::C2kPM { .. } => 2,
            FamilySpec::C2k1 { .. } => 1,
            FamilySpec::P1 { .. } | FamilySpec::Q { .. } => 3,
            FamilySpec::P2 { .. } | FamilySpec::P3 { .. } => 2,
            FamilySpec::Sporadic(_) => 0,
        }
    }

    fn parameter(&self) -> usize {
        match *self {
            FamilySpec::T2k { k }
            | FamilySpec::C2k { k }
            | FamilySpec::C2kPP { k }
            | FamilySpec::C2kPM { k }
            | FamilySpec::C2k1 { k } => k,
            FamilySpec::P1 { n }
            | FamilySpec::P2 { n }
            | FamilySpec::P3 { n }
            | FamilySpec::Q { n } => n,
            FamilySpec::Sporadic(_) => 0,
        }
    }

    /// Positive eigenvector for eigenvalue 2, for the path and cycle families.
    pub fn eigenvector(&self) -> Option<Vec<RingElement>> {
        let two = RingElement::from_int(2);
        let r2 = RingElement::sqrt2();
        match *self {
            FamilySpec::P1 { n } if n >= 3 => {
                let mut x = vec![two; n];
                x[0] = r2;
                x[n - 1] = r2;
                Some(x)
            }
            FamilySpec::P2 { n } if n >= 2 => {
                let mut x = vec![two; n];
                x[n - 1] = r2;
                Some(x)
            }
            FamilySpec::P3 { n } if n >= 2 => Some(vec![RingElement::one(); n]),
            FamilySpec::Q { n } if n >= 3 => Some(vec![RingElement::one(); n]),
            _ => None,
        }
    }
}

struct Builder {
    m: SymMatrix,
}

impl Builder {
    fn new(ring: RingId, n: usize) -> Self {
        Builder {
            m: SymMatrix::zeros(ring, n),
        }
    }

    fn set(&mut self, i: usize, j: usize, x: RingElement) {
        self.m.set(i, j, x);
    }

    fn join_columns(&mut self, x: (usize, usize), y: (usize, usize)) {
        let one = RingElement::one();
        self.set(x.0, y.0, one);
        self.set(x.0, y.1, one);
        self.set(x.1, y.0, -one);
        self.set(x.1, y.1, -one);
    }

    fn chain(&mut self, cols: &[(usize, usize)]) {
        for w in cols.windows(2) {
            self.join_columns(w[0], w[1]);
        }
    }

    /// Both vertices of a column get `charge`, and are joined by `edge`.
    fn charge_column(&mut self, c: (usize, usize), charge: i64, edge: i64) {
        self.set(c.0, c.0, RingElement::from_int(charge));
        self.set(c.1, c.1, RingElement::from_int(charge));
        self.set(c.0, c.1, RingElement::from_int(edge));
    }

    fn finish(self) -> RGraph {
        RGraph::new(self.m)
    }
}

fn columns(start: usize, count: usize) -> Vec<(usize, usize)> {
    (0..count).map(|i| (start + 2 * i, start + 2 * i + 1)).collect()
}

fn path(ring: RingId, weights: &[RingElement], charges: &[RingElement]) -> RGraph {
    let mut b = Builder::new(ring, charges.len());
    for (v, &c) in charges.iter().enumerate() {
        b.set(v, v, c);
    }
    for (v, &w) in weights.iter().enumerate() {
        b.set(v, v + 1, w);
    }
    b.finish()
}

/// Constructs a parametric family instance. Sporadics are looked up by the caller.
pub(super) fn build(spec: &FamilySpec) -> Result<RGraph, CatalogError> {
    if !matches!(spec, FamilySpec::Sporadic(_)) && spec.parameter() < spec.minimum() {
        return Err(CatalogError::ParameterOutOfRange {
            family: format!("{spec:?}"),
            minimum: spec.minimum(),
        });
    }
    let one = RingElement::one();
    let r2 = RingElement::sqrt2();
    let g = match *spec {
        FamilySpec::T2k { k } => {
            let cols = columns(0, k);
            let mut b = Builder::new(RingId::Z, 2 * k);
            b.chain(&cols);
            b.join_columns(cols[k - 1], cols[0]);
            b.finish()
        }
        FamilySpec::C2k { k } => {
            let n = 2 * k;
            let cols = columns(1, k - 1);
            let mut b = Builder::new(RingId::Zsqrt2, n);
            b.chain(&cols);
            let (first, last) = (cols[0], cols[k - 2]);
            b.set(0, first.0, r2);
            b.set(0, first.1, r2);
            b.set(n - 1, last.0, r2);
            b.set(n - 1, last.1, -r2);
            b.finish()
        }
        FamilySpec::C2kPP { k } | FamilySpec::C2kPM { k } => {
            let cols = columns(0, k);
            let mut b = Builder::new(RingId::Z, 2 * k);
            b.chain(&cols);
            b.charge_column(cols[0], 1, 1);
            if matches!(spec, FamilySpec::C2kPP { .. }) {
                b.charge_column(cols[k - 1], 1, -1);
            } else {
                b.charge_column(cols[k - 1], -1, 1);
            }
            b.finish()
        }
        FamilySpec::C2k1 { k } => {
            let cols = columns(1, k);
            let mut b = Builder::new(RingId::Zsqrt2, 2 * k + 1);
            b.chain(&cols);
            b.set(0, cols[0].0, r2);
            b.set(0, cols[0].1, r2);
            b.charge_column(cols[k - 1], 1, -1);
            b.finish()
        }
        FamilySpec::P1 { n } => {
            let mut w = vec![one; n - 1];
            w[0] = r2;
            w[n - 2] = r2;
            path(RingId::Zsqrt2, &w, &vec![RingElement::zero(); n])
        }
        FamilySpec::P2 { n } => {
            let mut w = vec![one; n - 1];
            w[n - 2] = r2;
            let mut c = vec![RingElement::zero(); n];
            c[0] = one;
            path(RingId::Zsqrt2, &w, &c)
        }
        FamilySpec::P3 { n } => {
            let mut c = vec![RingElement::zero(); n];
            c[0] = one;
            c[n - 1] = one;
            path(RingId::Z, &vec![one; n - 1], &c)
        }
        FamilySpec::Q { n } => {
            let mut b = Builder::new(RingId::Z, n);
            for v in 0..n {
                b.set(v, (v + 1) % n, one);
            }
            b.finish()
        }
        FamilySpec::Sporadic(_) => unreachable!("sporadics are not parametric"),
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{eigen_check, in_s};

    #[test]
    fn sizes_follow_parameters() {
        for k in 3..=6 {
            assert_eq!(build(&FamilySpec::T2k { k }).unwrap().n(), 2 * k);
        }
        for k in 1..=6 {
            assert_eq!(build(&FamilySpec::C2k1 { k }).unwrap().n(), 2 * k + 1);
        }
    }

    #[test]
    fn out_of_range_parameters_are_rejected() {
        assert!(build(&FamilySpec::T2k { k: 2 }).is_err());
        assert!(build(&FamilySpec::C2k { k: 1 }).is_err());
        assert!(build(&FamilySpec::C2k1 { k: 0 }).is_err());
        assert!(build(&FamilySpec::Q { n: 2 }).is_err());
        assert!(build(&FamilySpec::P2 { n: 1 }).is_err());
    }

    #[test]
    fn every_vertex_of_the_maximal_families_has_degree_four() {
        let specs = [
            FamilySpec::T2k { k: 4 },
            FamilySpec::C2k { k: 3 },
            FamilySpec::C2kPP { k: 3 },
            FamilySpec::C2kPM { k: 3 },
            FamilySpec::C2k1 { k: 3 },
        ];
        for s in specs {
            let g = build(&s).unwrap();
            for v in 0..g.n() {
                let d = crate::spectral::vertex_degree(g.matrix(), v).unwrap();
                assert_eq!(d, RingElement::from_int(4), "{s} vertex {v}");
            }
            assert!(in_s(g.matrix()), "{s}");
        }
    }

    #[test]
    fn small_instances() {
        let q3 = build(&FamilySpec::Q { n: 3 }).unwrap();
        assert_eq!(q3.edges().len(), 3);
        assert!(q3.edges().iter().all(|(_, _, w)| *w == RingElement::one()));
        let c4 = build(&FamilySpec::C2k { k: 2 }).unwrap();
        let root_two = c4
            .edges()
            .iter()
            .filter(|(_, _, w)| w.square() == RingElement::from_int(2))
            .count();
        assert_eq!((c4.n(), c4.edges().len(), root_two), (4, 4, 4));
    }

    #[test]
    fn eigenvectors_hold_for_small_paths() {
        for spec in [
            FamilySpec::P1 { n: 3 },
            FamilySpec::P2 { n: 2 },
            FamilySpec::P3 { n: 2 },
            FamilySpec::Q { n: 3 },
        ] {
            let g = build(&spec).unwrap();
            let x = spec.eigenvector().unwrap();
            assert!(eigen_check(g.matrix(), &x, RingElement::from_int(2)).unwrap());
        }
        assert!(FamilySpec::T2k { k: 3 }.eigenvector().is_none());
    }
}

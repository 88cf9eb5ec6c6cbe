//! Named cyclotomic graphs: the parametric families, the sporadic graphs read
//! from `data/sporadics.txt`, the per-ring lists of maximal graphs, catalog
//! verification, and JSON/DOT serialization.

mod document;
mod families;
mod sporadic;

pub use document::{parse, serialize, to_dot, GraphDocument};
pub use families::FamilySpec;
pub use sporadic::{parse_sporadics, sporadic, sporadics, subscript, Sporadic};

use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::cyclotomic_supergraph;
use crate::graph::{canonical, is_galois_invariant, CanonicalKey, RGraph};
use crate::ring::{RingElement, RingError, RingId};
use crate::spectral::{eigen_check, in_s, SpectralError};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{family}: parameter below its minimum {minimum}")]
    ParameterOutOfRange { family: String, minimum: usize },
    #[error("no sporadic graph named `{0}`")]
    UnknownSporadic(String),
    #[error("sporadic data, line {line}: {message}")]
    Data { line: usize, message: String },
    #[error("malformed graph document: {0}")]
    Schema(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub fn build_family(spec: &FamilySpec) -> Result<RGraph, CatalogError> {
    match spec {
        FamilySpec::Sporadic(id) => sporadic(id)
            .map(|s| s.graph.clone())
            .ok_or_else(|| CatalogError::UnknownSporadic(id.clone())),
        _ => families::build(spec),
    }
}

fn sporadic_ids(ring: RingId) -> &'static [&'static str] {
    match ring {
        RingId::Z => &["S1", "S2", "S7", "S8", "S8'", "S14", "S16"],
        RingId::Zsqrt2 => &["S2ddagger", "S4(1,r2)", "S4(2,r2)", "S4(3,r2)", "S8dagger"],
        RingId::Zphi => &[
            "S3",
            "S4(1,phi)",
            "S4(2,phi)",
            "S4(3,phi)",
            "S6",
            "S8daggerdagger",
            "S8ddagger",
        ],
        RingId::Zsqrt3 => &["S2'", "S2dagger", "S4(r3)"],
        RingId::Compositum => &[],
    }
}

/// Maximal connected cyclotomic graphs whose irrational entries generate
/// exactly `ring`, restricted to at most `n_max` vertices. For the compositum
/// this is the union over all four rings.
pub fn maximal_specs(ring: RingId, n_max: usize) -> Vec<FamilySpec> {
    if ring == RingId::Compositum {
        return [RingId::Z, RingId::Zsqrt2, RingId::Zsqrt3, RingId::Zphi]
            .into_iter()
            .flat_map(|r| maximal_specs(r, n_max))
            .collect();
    }
    let mut out: Vec<FamilySpec> = Vec::new();
    let half = n_max / 2;
    match ring {
        RingId::Z => {
            out.extend((3..=half).map(|k| FamilySpec::T2k { k }));
            out.extend((2..=half).map(|k| FamilySpec::C2kPP { k }));
            out.extend((2..=half).map(|k| FamilySpec::C2kPM { k }));
        }
        RingId::Zsqrt2 => {
            out.extend((2..=half).map(|k| FamilySpec::C2k { k }));
            out.extend((1..=(n_max.saturating_sub(1)) / 2).map(|k| FamilySpec::C2k1 { k }));
        }
        _ => {}
    }
    out.extend(
        sporadic_ids(ring)
            .iter()
            .filter(|id| subscript(id).is_some_and(|n| n <= n_max))
            .map(|id| FamilySpec::Sporadic(id.to_string())),
    );
    out
}

/// Every family instance with `n` vertices, maximal families first.
fn specs_of_size(n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    if n % 2 == 0 {
        let k = n / 2;
        out.extend([
            FamilySpec::T2k { k },
            FamilySpec::C2k { k },
            FamilySpec::C2kPP { k },
            FamilySpec::C2kPM { k },
        ]);
    } else {
        out.push(FamilySpec::C2k1 { k: n / 2 });
    }
    out.extend(
        sporadics()
            .iter()
            .filter(|s| s.graph.n() == n)
            .map(|s| FamilySpec::Sporadic(s.id.clone())),
    );
    out.extend([
        FamilySpec::P1 { n },
        FamilySpec::P2 { n },
        FamilySpec::P3 { n },
        FamilySpec::Q { n },
    ]);
    out
}

/// The catalog entry equivalent to `g`, if any.
pub fn match_family(g: &RGraph) -> Option<FamilySpec> {
    let key = canonical(g);
    match_key(&key, g.n())
}

/// Like [`match_family`] for a precomputed key of an `n`-vertex graph.
pub fn match_key(key: &CanonicalKey, n: usize) -> Option<FamilySpec> {
    specs_of_size(n).into_iter().find(|spec| {
        build_family(spec).is_ok_and(|h| h.n() == n && canonical(&h) == *key)
    })
}

/// A checked property of a catalog graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Size,
    Cyclotomic,
    Maximal,
    GaloisInvariance,
    Eigenvector,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Size => "size",
            Check::Cyclotomic => "in-S",
            Check::Maximal => "maximal",
            Check::GaloisInvariance => "galois-invariance",
            Check::Eigenvector => "eigenvector",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub graph: String,
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct CatalogReport {
    pub records: Vec<CheckRecord>,
}

impl CatalogReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn is_ok(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// No connected cyclotomic graph over the compositum properly contains `g`.
pub fn is_maximal(g: &RGraph) -> bool {
    in_s(g.matrix()) && matches!(cyclotomic_supergraph(g, RingId::Compositum), Ok(None))
}

/// The only maximal graph that is not Galois invariant.
pub const NON_GALOIS_INVARIANT: &str = "S4(2,phi)";

fn record(graph: &str, check: Check, passed: bool, detail: impl Into<String>) -> CheckRecord {
    CheckRecord {
        graph: graph.to_string(),
        check,
        passed,
        detail: detail.into(),
    }
}

fn verify_maximal(spec: &FamilySpec) -> Vec<CheckRecord> {
    let name = spec.to_string();
    let g = match build_family(spec) {
        Ok(g) => g,
        Err(e) => return vec![record(&name, Check::Size, false, e.to_string())],
    };
    let expected_n = match spec {
        FamilySpec::Sporadic(id) => subscript(id),
        _ => spec.size(),
    };
    let invariant = is_galois_invariant(&g);
    let expect_invariant = !matches!(spec, FamilySpec::Sporadic(id) if id == NON_GALOIS_INVARIANT);
    vec![
        record(
            &name,
            Check::Size,
            Some(g.n()) == expected_n,
            format!("{} vertices", g.n()),
        ),
        record(&name, Check::Cyclotomic, in_s(g.matrix()), ""),
        record(&name, Check::Maximal, is_maximal(&g), ""),
        record(
            &name,
            Check::GaloisInvariance,
            invariant == expect_invariant,
            format!("invariant: {invariant}"),
        ),
    ]
}

fn verify_eigen(spec: &FamilySpec) -> Vec<CheckRecord> {
    let name = spec.to_string();
    let (g, x) = match (build_family(spec), spec.eigenvector()) {
        (Ok(g), Some(x)) => (g, x),
        _ => return vec![record(&name, Check::Eigenvector, false, "not constructible")],
    };
    let ok = eigen_check(g.matrix(), &x, RingElement::from_int(2)).unwrap_or(false);
    vec![
        record(&name, Check::Cyclotomic, in_s(g.matrix()), ""),
        record(&name, Check::Eigenvector, ok, "eigenvalue 2"),
    ]
}

/// Maximal family instances with parameter `k ≤ 6`, in catalog order.
pub fn family_instances() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    out.extend((3..=6).map(|k| FamilySpec::T2k { k }));
    out.extend((2..=6).map(|k| FamilySpec::C2k { k }));
    out.extend((2..=6).map(|k| FamilySpec::C2kPP { k }));
    out.extend((2..=6).map(|k| FamilySpec::C2kPM { k }));
    out.extend((1..=6).map(|k| FamilySpec::C2k1 { k }));
    out
}

/// Path and cycle instances with a positive eigenvector for eigenvalue 2, up to 8 vertices.
pub fn eigen_instances() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    out.extend((3..=8).map(|n| FamilySpec::P1 { n }));
    out.extend((2..=8).map(|n| FamilySpec::P2 { n }));
    out.extend((2..=8).map(|n| FamilySpec::P3 { n }));
    out.extend((3..=8).map(|n| FamilySpec::Q { n }));
    out
}

pub fn verify_catalog() -> CatalogReport {
    let mut maximal: Vec<FamilySpec> = sporadics()
        .iter()
        .map(|s| FamilySpec::Sporadic(s.id.clone()))
        .collect();
    maximal.extend(family_instances());
    let mut records: Vec<CheckRecord> = maximal.par_iter().flat_map(|s| verify_maximal(s)).collect();
    records.extend(eigen_instances().par_iter().flat_map(|s| verify_eigen(s)).collect::<Vec<_>>());
    CatalogReport { records }
}

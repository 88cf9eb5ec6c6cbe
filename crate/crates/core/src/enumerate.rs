//! Seed-growing enumeration of 𝔖′ₙ up to equivalence, the closure of the
//! mixed-entry seeds, Table-style counts of 𝔖′ₙ∖𝔖ₙ and maximality.
//!
//! Level k+1 is obtained from level k by attaching one vertex in every
//! admissible way. Every connected member of 𝔖′_{k+1} has a vertex whose
//! deletion keeps it connected, and interlacing (applied to every Galois
//! conjugate) puts the remaining graph in 𝔖′_k, so the search is complete.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{canonical, CanonicalKey, RGraph};
use crate::ring::{RingElement, RingId};
use crate::spectral::{membership, SymMatrix};

/// Which connected members a level keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Every connected member.
    All,
    /// Members with at least one entry outside Z. Such a member with three or
    /// more vertices always has a non-cut vertex whose deletion keeps an
    /// irrational entry (a spanning-tree leaf away from that entry), so
    /// growing proper parents loses nothing from level 3 on; level 2 is grown
    /// from every single vertex.
    Proper,
}

impl Scope {
    /// Z has no irrational entries, so it is always enumerated in full.
    pub fn default_for(ring: RingId) -> Scope {
        if ring == RingId::Z {
            Scope::All
        } else {
            Scope::Proper
        }
    }

    fn admits(self, g: &RGraph) -> bool {
        self == Scope::All || g.radicals() != 0
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    pub key: CanonicalKey,
    pub graph: RGraph,
    pub in_s: bool,
    /// Keys of the (n−1)-vertex graphs this member was grown from.
    pub parents: Vec<CanonicalKey>,
}

#[derive(Clone, Debug)]
pub struct EnumerationLevel {
    pub n: usize,
    pub ring: RingId,
    pub scope: Scope,
    /// Sorted by key.
    pub members: Vec<Member>,
}

impl EnumerationLevel {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&Member> {
        self.members
            .binary_search_by(|m| m.key.cmp(key))
            .ok()
            .map(|i| &self.members[i])
    }

    pub fn keys(&self) -> Vec<CanonicalKey> {
        self.members.iter().map(|m| m.key.clone()).collect()
    }
}

/// Squares of admissible entries are `(a + b√5)/2`; stored as `(a, b)`.
type Square = (i64, i64);

fn square_of(x: RingElement) -> Square {
    let d = *x.square().doubled();
    debug_assert!(d[1] == 0 && d[2] == 0 && d[3] == 0 && d[5] == 0 && d[6] == 0 && d[7] == 0);
    (d[0], d[4])
}

/// Both conjugates of `(a ± b√5)/2` are at most 4.
fn within_four((a, b): Square) -> bool {
    let r = 8 - a;
    r >= 0 && 5 * b * b <= r * r
}

fn add_sq(x: Square, y: Square) -> Square {
    (x.0 + y.0, x.1 + y.1)
}

/// Admissible single vertices over `ring`, including the uncharged one.
pub fn single_vertices(ring: RingId) -> Vec<RGraph> {
    std::iter::once(RingElement::zero())
        .chain(ring.admissible_entries())
        .filter_map(|c| {
            let m = SymMatrix::new(ring_of(&c), vec![vec![c]]).expect("1×1");
            membership(&m).in_sprime.then(|| RGraph::new(m))
        })
        .collect()
}

fn ring_of(x: &RingElement) -> RingId {
    RingId::from_radical_mask(x.radicals())
}

/// One-vertex extensions passing the degree bound with at least one new edge
/// and with the new vertex switched so that its first edge is sign-normalized.
/// Each candidate is handed to `visit`; returning `false` stops the walk.
fn for_each_candidate(
    g: &RGraph,
    entries: &[RingElement],
    visit: &mut dyn FnMut(RingElement, &[RingElement]) -> bool,
) {
    let n = g.n();
    let degree: Vec<Square> = (0..n)
        .map(|v| {
            (0..n)
                .map(|u| square_of(g.weight(u, v)))
                .fold((0, 0), add_sq)
        })
        .collect();
    let squares: Vec<Square> = entries.iter().map(|&e| square_of(e)).collect();
    let normalized: Vec<bool> = entries.iter().map(|e| !e.sign_normalized().1).collect();
    let mut column = vec![RingElement::zero(); n];

    struct Walk<'a> {
        entries: &'a [RingElement],
        squares: &'a [Square],
        normalized: &'a [bool],
        degree: &'a [Square],
    }

    fn rec(
        w: &Walk,
        j: usize,
        own: Square,
        any: bool,
        charge: RingElement,
        column: &mut Vec<RingElement>,
        visit: &mut dyn FnMut(RingElement, &[RingElement]) -> bool,
    ) -> bool {
        if j == column.len() {
            return !any || visit(charge, column);
        }
        column[j] = RingElement::zero();
        if !rec(w, j + 1, own, any, charge, column, visit) {
            return false;
        }
        for (i, &e) in w.entries.iter().enumerate() {
            if !any && !w.normalized[i] {
                continue;
            }
            let sq = w.squares[i];
            let next = add_sq(own, sq);
            if !within_four(next) || !within_four(add_sq(w.degree[j], sq)) {
                continue;
            }
            column[j] = e;
            if !rec(w, j + 1, next, true, charge, column, visit) {
                column[j] = RingElement::zero();
                return false;
            }
        }
        column[j] = RingElement::zero();
        true
    }

    let walk = Walk {
        entries,
        squares: &squares,
        normalized: &normalized,
        degree: &degree,
    };
    for charge in std::iter::once(RingElement::zero()).chain(entries.iter().copied()) {
        let own = square_of(charge);
        if !within_four(own) {
            continue;
        }
        if !rec(&walk, 0, own, false, charge, &mut column, visit) {
            return;
        }
    }
}

/// Evaluated one-vertex extension.
struct Grown {
    key: CanonicalKey,
    graph: RGraph,
    in_s: bool,
}

fn grow(g: &RGraph, ring: RingId, scope: Scope) -> BTreeMap<CanonicalKey, Grown> {
    let entries = ring.admissible_entries();
    let mut out = BTreeMap::new();
    for_each_candidate(g, &entries, &mut |charge, column| {
        let m = g.matrix().extend(charge, column);
        let child = RGraph::new(m);
        if !scope.admits(&child) {
            return true;
        }
        let mem = membership(child.matrix());
        if mem.in_sprime {
            let key = canonical(&child);
            out.entry(key.clone()).or_insert(Grown {
                key,
                graph: child,
                in_s: mem.integral,
            });
        }
        true
    });
    out
}

/// All connected one-vertex supergraphs of `g` in 𝔖′ with entries from
/// `ring`, one per equivalence class, sorted by key.
pub fn extensions(g: &RGraph, ring: RingId) -> Vec<RGraph> {
    grow(g, ring, Scope::All)
        .into_values()
        .map(|c| c.graph)
        .collect()
}

/// Looks for a one-vertex extension of `g` over `ring` satisfying `pred`,
/// without deduplication.
pub fn find_extension(
    g: &RGraph,
    ring: RingId,
    mut pred: impl FnMut(&RGraph, bool) -> bool,
) -> Option<RGraph> {
    let entries = ring.admissible_entries();
    let mut found = None;
    for_each_candidate(g, &entries, &mut |charge, column| {
        let child = RGraph::new(g.matrix().extend(charge, column));
        let mem = membership(child.matrix());
        if mem.in_sprime && pred(&child, mem.integral) {
            found = Some(child);
            return false;
        }
        true
    });
    found
}

fn level_from(
    n: usize,
    ring: RingId,
    scope: Scope,
    grown: Vec<(CanonicalKey, BTreeMap<CanonicalKey, Grown>)>,
) -> EnumerationLevel {
    let mut merged: BTreeMap<CanonicalKey, Member> = BTreeMap::new();
    for (parent, children) in grown {
        for (key, c) in children {
            merged
                .entry(key)
                .or_insert_with(|| Member {
                    key: c.key,
                    graph: c.graph,
                    in_s: c.in_s,
                    parents: Vec::new(),
                })
                .parents
                .push(parent.clone());
        }
    }
    let members = merged
        .into_values()
        .map(|mut m| {
            m.parents.sort();
            m.parents.dedup();
            m
        })
        .collect();
    EnumerationLevel {
        n,
        ring,
        scope,
        members,
    }
}

/// Levels 1..=n_max of 𝔖′ over `ring` in the ring's default scope.
pub fn enumerate_sprime(ring: RingId, n_max: usize) -> Vec<EnumerationLevel> {
    enumerate_with(ring, n_max, Scope::default_for(ring))
}

pub fn enumerate_with(ring: RingId, n_max: usize, scope: Scope) -> Vec<EnumerationLevel> {
    assert!(n_max >= 1, "n_max must be at least 1");
    let singles: Vec<Member> = single_vertices(ring)
        .into_iter()
        .map(|g| Member {
            key: canonical(&g),
            in_s: membership(g.matrix()).integral,
            graph: g,
            parents: Vec::new(),
        })
        .collect();
    let mut first: BTreeMap<CanonicalKey, Member> = BTreeMap::new();
    for m in &singles {
        if scope.admits(&m.graph) {
            first.entry(m.key.clone()).or_insert_with(|| m.clone());
        }
    }
    let mut levels = vec![EnumerationLevel {
        n: 1,
        ring,
        scope,
        members: first.into_values().collect(),
    }];
    info!("{ring} level 1: {} members", levels[0].len());
    for n in 2..=n_max {
        let parents: Vec<&Member> = if n == 2 {
            let mut seen = BTreeSet::new();
            singles.iter().filter(|m| seen.insert(m.key.clone())).collect()
        } else {
            levels[n - 2].members.iter().collect()
        };
        let grown: Vec<(CanonicalKey, BTreeMap<CanonicalKey, Grown>)> = parents
            .par_iter()
            .map(|p| (p.key.clone(), grow(&p.graph, ring, scope)))
            .collect();
        let level = level_from(n, ring, scope, grown);
        info!(
            "{ring} level {n}: {} members ({} outside 𝔖)",
            level.len(),
            level.members.iter().filter(|m| !m.in_s).count()
        );
        levels.push(level);
    }
    levels
}

/// Partition of a level into members of 𝔖ₙ and of 𝔖′ₙ∖𝔖ₙ.
pub fn split_level(level: &EnumerationLevel) -> (Vec<&Member>, Vec<&Member>) {
    level.members.iter().partition(|m| m.in_s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub total: usize,
    pub zphi: usize,
    pub zsqrt2: usize,
    pub zsqrt3: usize,
    /// Count from a single enumeration over the compositum, for cross-checking.
    pub compositum: usize,
}

impl Table1Row {
    /// `total | Z[φ] | Z[√2] | Z[√3]`.
    pub fn display_row(&self) -> String {
        format!(
            "{} | {} | {} | {}",
            self.total, self.zphi, self.zsqrt2, self.zsqrt3
        )
    }
}

/// Counts of 𝔖′ₙ∖𝔖ₙ up to equivalence for n = 1..=6, by ring.
pub fn table1() -> Vec<Table1Row> {
    table1_to(6)
}

pub fn table1_to(n_max: usize) -> Vec<Table1Row> {
    let count = |ring: RingId| -> Vec<usize> {
        enumerate_with(ring, n_max, Scope::Proper)
            .iter()
            .map(|l| split_level(l).1.len())
            .collect()
    };
    let zphi = count(RingId::Zphi);
    let zsqrt2 = count(RingId::Zsqrt2);
    let zsqrt3 = count(RingId::Zsqrt3);
    let comp = count(RingId::Compositum);
    (0..n_max)
        .map(|i| Table1Row {
            n: i + 1,
            total: zphi[i] + zsqrt2[i] + zsqrt3[i],
            zphi: zphi[i],
            zsqrt2: zsqrt2[i],
            zsqrt3: zsqrt3[i],
            compositum: comp[i],
        })
        .collect()
}

fn pair(c1: RingElement, c2: RingElement, w: RingElement) -> RGraph {
    let ring = ring_of(&c1).join(ring_of(&c2)).join(ring_of(&w));
    RGraph::new(SymMatrix::new(ring, vec![vec![c1, w], vec![w, c2]]).expect("2×2"))
}

/// The five two-vertex seeds whose supergraphs are checked separately
/// before mixed irrational entries are ruled out.
pub fn mixed_seeds() -> Vec<(&'static str, RGraph)> {
    let one = RingElement::one();
    vec![
        (
            "X1",
            pair(RingElement::phi(), RingElement::zero(), RingElement::phi_bar()),
        ),
        ("X2", pair(one, -one, RingElement::sqrt2())),
        ("X3", pair(one, -one, RingElement::sqrt3())),
        ("X4", pair(one, -one, RingElement::phi())),
        ("X5", pair(one, -one, one)),
    ]
}

/// Every connected supergraph in 𝔖′ of any mixed seed, with entries from
/// the full compositum entry set, one per equivalence class. Grows level by
/// level until a level is empty.
pub fn mixed_seed_closure() -> Vec<Member> {
    let mut frontier: BTreeMap<CanonicalKey, Member> = BTreeMap::new();
    for (_, g) in mixed_seeds() {
        let key = canonical(&g);
        frontier.entry(key.clone()).or_insert_with(|| Member {
            key,
            in_s: membership(g.matrix()).integral,
            graph: g,
            parents: Vec::new(),
        });
    }
    let mut all: Vec<Member> = Vec::new();
    let mut n = 2;
    while !frontier.is_empty() {
        info!("mixed-seed closure level {n}: {}", frontier.len());
        let parents: Vec<Member> = frontier.into_values().collect();
        let grown: Vec<(CanonicalKey, BTreeMap<CanonicalKey, Grown>)> = parents
            .par_iter()
            .map(|p| (p.key.clone(), grow(&p.graph, RingId::Compositum, Scope::All)))
            .collect();
        let level = level_from(n + 1, RingId::Compositum, Scope::All, grown);
        all.extend(parents);
        frontier = level.members.into_iter().map(|m| (m.key.clone(), m)).collect();
        n += 1;
    }
    all
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalityStatus {
    /// Cyclotomic and not contained in any larger connected cyclotomic graph.
    Maximal,
    /// Contained in the witness, a larger connected cyclotomic graph.
    Extendable { witness: RGraph },
    /// The search budget ran out before a decision.
    UndecidedAtHorizon,
    /// In 𝔖′∖𝔖 with no connected cyclotomic supergraph.
    NoCyclotomicSuperset,
}

impl MaximalityStatus {
    pub fn label(&self) -> &'static str {
        match self {
            MaximalityStatus::Maximal => "maximal",
            MaximalityStatus::Extendable { .. } => "extendable",
            MaximalityStatus::UndecidedAtHorizon => "undecided-at-horizon",
            MaximalityStatus::NoCyclotomicSuperset => "no-cyclotomic-superset",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MaximalityEntry {
    pub n: usize,
    pub key: CanonicalKey,
    pub graph: RGraph,
    pub in_s: bool,
    pub status: MaximalityStatus,
}

#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub ring: RingId,
    pub entries: Vec<MaximalityEntry>,
}

impl MaximalityReport {
    pub fn maximal(&self) -> impl Iterator<Item = &MaximalityEntry> {
        self.entries
            .iter()
            .filter(|e| e.status == MaximalityStatus::Maximal)
    }

    pub fn undecided(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == MaximalityStatus::UndecidedAtHorizon)
            .count()
    }
}

/// Node budget for chasing extensions that stay in 𝔖′∖𝔖.
const CHASE_BUDGET: usize = 100_000;

/// A cyclotomic connected proper supergraph of `g` over `ring`, if one exists.
/// `Err(())` when the budget is exhausted.
pub fn cyclotomic_supergraph(g: &RGraph, ring: RingId) -> Result<Option<RGraph>, ()> {
    if let Some(w) = find_extension(g, ring, |_, in_s| in_s) {
        return Ok(Some(w));
    }
    // Every extension lies in 𝔖′∖𝔖 (or there are none): chase them.
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    let mut stack = extensions(g, ring);
    while let Some(h) = stack.pop() {
        if !seen.insert(canonical(&h)) {
            continue;
        }
        if seen.len() > CHASE_BUDGET {
            return Err(());
        }
        if let Some(w) = find_extension(&h, ring, |_, in_s| in_s) {
            return Ok(Some(w));
        }
        stack.extend(extensions(&h, ring));
    }
    Ok(None)
}

/// Status of every member of every level. Members below the top level use the
/// next level's parent links; top-level members are decided by computing
/// their extensions directly.
pub fn maximality_report(levels: &[EnumerationLevel]) -> MaximalityReport {
    let ring = levels.first().map_or(RingId::Z, |l| l.ring);
    let top = levels.len();
    // Whether some cyclotomic graph contains the member properly, with a witness.
    let mut witness: Vec<BTreeMap<CanonicalKey, Option<RGraph>>> = vec![BTreeMap::new(); top];
    let mut undecided: BTreeSet<CanonicalKey> = BTreeSet::new();

    if let Some(last) = levels.last() {
        let results: Vec<(CanonicalKey, Result<Option<RGraph>, ()>)> = last
            .members
            .par_iter()
            .map(|m| (m.key.clone(), cyclotomic_supergraph(&m.graph, ring)))
            .collect();
        for (k, r) in results {
            match r {
                Ok(w) => {
                    witness[top - 1].insert(k, w);
                }
                Err(()) => {
                    undecided.insert(k.clone());
                    witness[top - 1].insert(k, None);
                }
            }
        }
    }
    for i in (0..top.saturating_sub(1)).rev() {
        let mut map: BTreeMap<CanonicalKey, Option<RGraph>> = levels[i]
            .members
            .iter()
            .map(|m| (m.key.clone(), None))
            .collect();
        for child in &levels[i + 1].members {
            let reach = if child.in_s {
                Some(child.graph.clone())
            } else {
                witness[i + 1].get(&child.key).cloned().flatten()
            };
            if let Some(w) = reach {
                for p in &child.parents {
                    if let Some(slot) = map.get_mut(p) {
                        if slot.is_none() {
                            *slot = Some(w.clone());
                        }
                    }
                }
            }
        }
        debug!("maximality: level {} resolved", i + 1);
        witness[i] = map;
    }

    let mut entries = Vec::new();
    for (i, level) in levels.iter().enumerate() {
        for m in &level.members {
            let w = witness[i].get(&m.key).cloned().flatten();
            let status = match (w, m.in_s) {
                (Some(witness), _) => MaximalityStatus::Extendable { witness },
                (None, _) if undecided.contains(&m.key) => MaximalityStatus::UndecidedAtHorizon,
                (None, true) => MaximalityStatus::Maximal,
                (None, false) => MaximalityStatus::NoCyclotomicSuperset,
            };
            entries.push(MaximalityEntry {
                n: level.n,
                key: m.key.clone(),
                graph: m.graph.clone(),
                in_s: m.in_s,
                status,
            });
        }
    }
    MaximalityReport { ring, entries }
}

//! Internal/external classification of visibility edges from zero-parity data.
//!
//! The classifier never looks at coordinates. Its inputs are the ZP table, the
//! convex/reflex and hull flags, and the polygon and hull edge lists. Every
//! visible non-edge pair starts with both candidate classes; each rule removes
//! a candidate only when the pair provably cannot have it, and the triangle
//! rule is iterated to a fixed point. Pairs left with both candidates are
//! reported as ambiguous.
//!
//! Rules, each a necessary condition on the true class:
//!
//! * hull edges that are not polygon edges close a pocket, so they are external;
//! * if every vertex strictly inside chain `[x, y]` is reflex, the chain and the
//!   segment `xy` bound a pocket, so `xy` is external;
//! * if every vertex strictly inside `[x, y]` is convex and some hull vertex lies
//!   strictly inside `[y, x]`, the chain and `xy` bound a piece of the polygon,
//!   so `xy` is internal;
//! * an internal `xy` splits the polygon in two, and the vertex of each piece
//!   farthest from the line `xy` is convex with even Head counts from every vertex
//!   of its chain; an external `xy` closes a pocket whose farthest vertex is
//!   reflex with odd Head counts from every vertex of its chain;
//! * the parity of Head(x, y) says whether the line is inside the polygon just
//!   beyond `y`; if `y`'s neighbours lie on one side of the line the segment has
//!   that same status, which is inside exactly when `y` is reflex, so a convex
//!   `y` with odd Head or a reflex `y` with even Head settles the pair (and
//!   likewise for `x` with Tail);
//! * an internal diagonal is shared by two triangles of a triangulation, one
//!   apex on each chain, whose other sides are internal or polygon edges; an
//!   external non-hull pair is likewise shared by two triangles of a pocket
//!   triangulation.
//!
//! Pairs still ambiguous after that go to an order-type consistency check
//! (see [`crate::ordertype`]): one instance for the whole polygon up to
//! [`ORDER_TYPE_MAX_N`] vertices, one per pair over a window of nearby
//! vertices beyond that.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordertype::{OrderTypeSat, Query};
use crate::polygon::{chain_vertices, Chain, Polygon, VertexFlags};
use crate::stabbing::{ZpClass, ZpTable};
use crate::visibility::{is_triangular_chain, TriangularWitness, VisibilityMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    Internal,
    External,
    Boundary,
    Ambiguous,
}

/// The rule that fixed a pair's class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "Lemma2-convex")]
    Lemma2Convex,
    #[serde(rename = "Lemma2-reflex")]
    Lemma2Reflex,
    #[serde(rename = "Lemma3-noOddWitness")]
    Lemma3NoOddWitness,
    #[serde(rename = "Lemma3-noEvenWitness")]
    Lemma3NoEvenWitness,
    #[serde(rename = "Lemma4-propagation")]
    Lemma4Propagation,
    EndpointParity,
    HullPocketLid,
    PocketSide,
    TriangleHull,
    OrderType,
    PolygonEdge,
    Unresolved,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Lemma2Convex => "Lemma2-convex",
            Provenance::Lemma2Reflex => "Lemma2-reflex",
            Provenance::Lemma3NoOddWitness => "Lemma3-noOddWitness",
            Provenance::Lemma3NoEvenWitness => "Lemma3-noEvenWitness",
            Provenance::Lemma4Propagation => "Lemma4-propagation",
            Provenance::EndpointParity => "EndpointParity",
            Provenance::HullPocketLid => "HullPocketLid",
            Provenance::PocketSide => "PocketSide",
            Provenance::TriangleHull => "TriangleHull",
            Provenance::OrderType => "OrderType",
            Provenance::PolygonEdge => "PolygonEdge",
            Provenance::Unresolved => "Unresolved",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeClassification {
    pub pair: (usize, usize),
    pub class: EdgeClass,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    EvenWitness,
    OddWitness,
}

/// A vertex `z` strictly inside `chain` whose Head classes from every other
/// vertex of the chain are all even (or all odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParityWitness {
    pub z: usize,
    pub kind: WitnessKind,
    pub chain: Chain,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ClassifyError {
    #[error("inconsistent input: every class of pair ({}, {}) was ruled out (last by {})", .pair.0, .pair.1, .rule.label())]
    InconsistentInput { pair: (usize, usize), rule: Provenance },
    #[error("input sizes disagree: ZP table has {table} vertices, flags have {flags}")]
    SizeMismatch { table: usize, flags: usize },
    #[error("ambiguous pair ({}, {}) spans no triangular chain", .pair.0, .pair.1)]
    NoWitnessFound { pair: (usize, usize) },
}

/// Head(w, z) is even (zero included) for every `w` in `[x, y]` other than `z`.
pub fn even_property(zp: &ZpTable, x: usize, y: usize, z: usize) -> bool {
    let n = zp.n();
    Chain::new(x, y).vertices(n).filter(|&w| w != z).all(|w| zp.get(w, z).head.is_even())
}

/// Head(w, z) is odd for every `w` in `[x, y]` other than `z`.
pub fn odd_property(zp: &ZpTable, x: usize, y: usize, z: usize) -> bool {
    let n = zp.n();
    Chain::new(x, y).vertices(n).filter(|&w| w != z).all(|w| zp.get(w, z).head == ZpClass::Odd)
}

/// Convex even witnesses and reflex odd witnesses strictly inside either chain
/// of the pair, each tested against the chain that contains it.
pub fn parity_witnesses(zp: &ZpTable, flags: &VertexFlags, x: usize, y: usize) -> Vec<ParityWitness> {
    let n = zp.n();
    let mut out = Vec::new();
    for chain in [Chain::new(x, y), Chain::new(y, x)] {
        for z in chain.interior(n) {
            if flags.convex[z] && even_property(zp, chain.from, chain.to, z) {
                out.push(ParityWitness { z, kind: WitnessKind::EvenWitness, chain });
            }
            if !flags.convex[z] && odd_property(zp, chain.from, chain.to, z) {
                out.push(ParityWitness { z, kind: WitnessKind::OddWitness, chain });
            }
        }
    }
    out
}

/// The chain of the pair with no hull vertex strictly inside it. An external
/// pair lies in a single pocket, so it has one; the pocket is on that side.
pub fn pocket_chain(flags: &VertexFlags, x: usize, y: usize) -> Option<Chain> {
    let n = flags.n();
    [Chain::new(x, y), Chain::new(y, x)]
        .into_iter()
        .find(|c| !c.interior(n).any(|v| flags.on_hull[v]))
}

/// Vertices strictly inside `[y, x]` that can close an external triangle on
/// `xy` when the pocket lies along `[x, y]`: those reachable from `y` or `x`
/// without passing a hull vertex.
fn pocket_apexes(flags: &VertexFlags, pocket: Chain) -> Vec<usize> {
    let n = flags.n();
    let other: Vec<usize> = pocket.reversed().interior(n).collect();
    let mut out = Vec::new();
    for &v in &other {
        out.push(v);
        if flags.on_hull[v] {
            break;
        }
    }
    for &v in other.iter().rev() {
        if out.contains(&v) {
            break;
        }
        out.push(v);
        if flags.on_hull[v] {
            break;
        }
    }
    out
}

/// Whether the piece cut off by `xy` along `chain` can be interior (`want_int`)
/// or exterior, judged by the hull of the chain's vertices.
///
/// The hull corners other than `x` and `y` must be convex with the even
/// property for an interior piece, or reflex with the odd property for an
/// exterior one. When only one vertex `h` qualifies the hull is the triangle
/// `x h y` and every other chain vertex lies strictly inside it. A vertex `c`
/// inside a triangle whose two neighbours are corners sees the ray from the
/// third corner leave through the opposite side, between its neighbours, so
/// the polygon is inside just beyond `c` exactly when `c` is convex.
fn chain_hull_allows(zp: &ZpTable, flags: &VertexFlags, chain: Chain, want_int: bool) -> bool {
    let n = zp.n();
    let (x, y) = (chain.from, chain.to);
    let mut corners = chain.interior(n).filter(|&z| {
        if want_int {
            flags.convex[z] && even_property(zp, x, y, z)
        } else {
            !flags.convex[z] && odd_property(zp, x, y, z)
        }
    });
    let Some(h) = corners.next() else { return false };
    if corners.next().is_some() {
        return true;
    }
    let tri = [x, h, y];
    chain.interior(n).filter(|&c| c != h).all(|c| {
        let (p, q) = ((c + n - 1) % n, (c + 1) % n);
        if !(tri.contains(&p) && tri.contains(&q)) {
            return true;
        }
        let r = *tri.iter().find(|&&t| t != p && t != q).expect("triangle has three corners");
        (zp.get(r, c).head == ZpClass::Odd) == flags.convex[c]
    })
}

const INT: u8 = 1;
const EXT: u8 = 2;
const BOTH: u8 = INT | EXT;

/// The single-pair rules, applied in the order given before the triangle fixpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairRule {
    HullPocketLid,
    PocketSide,
    TriangleHull,
    ConvexChain,
    ReflexChain,
    ParityWitness,
    EndpointParity,
}

pub const DEFAULT_RULE_ORDER: [PairRule; 7] = [
    PairRule::HullPocketLid,
    PairRule::ConvexChain,
    PairRule::ReflexChain,
    PairRule::ParityWitness,
    PairRule::EndpointParity,
    PairRule::PocketSide,
    PairRule::TriangleHull,
];

#[derive(Clone)]
struct State {
    n: usize,
    /// Candidate classes per ordered pair (kept symmetric); 0 for non-visible pairs.
    dom: Vec<u8>,
    boundary: Vec<bool>,
    hull_edge: Vec<bool>,
    decided_by: Vec<Option<Provenance>>,
}

impl State {
    fn idx(&self, x: usize, y: usize) -> usize {
        x * self.n + y
    }

    fn dom(&self, x: usize, y: usize) -> u8 {
        self.dom[self.idx(x, y)]
    }

    /// Whether the pair can serve as a triangle side of class `want`.
    fn allows(&self, x: usize, y: usize, want: u8) -> bool {
        let i = self.idx(x, y);
        self.boundary[i] || self.dom[i] & want != 0
    }

    /// Keeps only `keep` among the candidates of `(x, y)`. Returns whether
    /// anything changed.
    fn restrict(&mut self, x: usize, y: usize, keep: u8, rule: Provenance) -> Result<bool, ClassifyError> {
        let (i, j) = (self.idx(x, y), self.idx(y, x));
        let old = self.dom[i];
        let new = old & keep;
        if new == old {
            return Ok(false);
        }
        if new == 0 {
            return Err(ClassifyError::InconsistentInput { pair: (x.min(y), x.max(y)), rule });
        }
        self.dom[i] = new;
        self.dom[j] = new;
        if new != BOTH && self.decided_by[i].is_none() {
            self.decided_by[i] = Some(rule);
            self.decided_by[j] = Some(rule);
        }
        Ok(true)
    }

    fn open_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.dom(x, y) != 0)
            .collect()
    }
}

fn apply_pair_rule(
    st: &mut State,
    rule: PairRule,
    zp: &ZpTable,
    flags: &VertexFlags,
) -> Result<(), ClassifyError> {
    let n = st.n;
    for (x, y) in st.open_pairs() {
        let forward = Chain::new(x, y);
        let backward = Chain::new(y, x);
        match rule {
            PairRule::HullPocketLid => {
                if st.hull_edge[st.idx(x, y)] {
                    st.restrict(x, y, EXT, Provenance::HullPocketLid)?;
                }
            }
            PairRule::PocketSide => {
                if pocket_chain(flags, x, y).is_none() {
                    st.restrict(x, y, INT, Provenance::PocketSide)?;
                }
            }
            PairRule::TriangleHull => {
                if !(chain_hull_allows(zp, flags, forward, true) && chain_hull_allows(zp, flags, backward, true)) {
                    st.restrict(x, y, EXT, Provenance::TriangleHull)?;
                }
                if !pocket_chain(flags, x, y).is_some_and(|c| chain_hull_allows(zp, flags, c, false)) {
                    st.restrict(x, y, INT, Provenance::TriangleHull)?;
                }
            }
            PairRule::ConvexChain => {
                for (c, other) in [(forward, backward), (backward, forward)] {
                    if c.interior(n).all(|v| flags.convex[v]) && other.interior(n).any(|v| flags.on_hull[v]) {
                        st.restrict(x, y, INT, Provenance::Lemma2Convex)?;
                    }
                }
            }
            PairRule::ReflexChain => {
                for c in [forward, backward] {
                    if c.interior(n).all(|v| !flags.convex[v]) {
                        st.restrict(x, y, EXT, Provenance::Lemma2Reflex)?;
                    }
                }
            }
            PairRule::ParityWitness => {
                let even_in = |c: Chain| c.interior(n).any(|z| flags.convex[z] && even_property(zp, c.from, c.to, z));
                let odd_in = |c: Chain| c.interior(n).any(|z| !flags.convex[z] && odd_property(zp, c.from, c.to, z));
                if !(even_in(forward) && even_in(backward)) {
                    st.restrict(x, y, EXT, Provenance::Lemma3NoEvenWitness)?;
                }
                if !pocket_chain(flags, x, y).is_some_and(odd_in) {
                    st.restrict(x, y, INT, Provenance::Lemma3NoOddWitness)?;
                }
            }
            PairRule::EndpointParity => {
                let t = zp.get(x, y);
                for (v, far) in [(y, t.head), (x, t.tail)] {
                    match (flags.convex[v], far == ZpClass::Odd) {
                        (true, true) => st.restrict(x, y, EXT, Provenance::EndpointParity)?,
                        (false, false) => st.restrict(x, y, INT, Provenance::EndpointParity)?,
                        _ => false,
                    };
                }
            }
        }
    }
    Ok(())
}

/// Removes a candidate class from a pair when no pair of triangles, one apex
/// on each chain, can have all four remaining sides compatible with it.
fn triangle_fixpoint(st: &mut State, flags: &VertexFlags) -> Result<(), ClassifyError> {
    let n = st.n;
    loop {
        let mut changed = false;
        for (x, y) in st.open_pairs() {
            if st.hull_edge[st.idx(x, y)] {
                continue;
            }
            let d = st.dom(x, y);
            let mut keep = 0;
            for want in [INT, EXT] {
                if d & want == 0 {
                    continue;
                }
                let apex = |mut zs: Box<dyn Iterator<Item = usize> + '_>| {
                    zs.any(|z| st.allows(x, z, want) && st.allows(z, y, want))
                };
                let ok = if want == INT {
                    apex(Box::new(Chain::new(x, y).interior(n))) && apex(Box::new(Chain::new(y, x).interior(n)))
                } else {
                    match pocket_chain(flags, x, y) {
                        Some(c) => apex(Box::new(c.interior(n))) && apex(Box::new(pocket_apexes(flags, c).into_iter())),
                        None => false,
                    }
                };
                if ok {
                    keep |= want;
                }
            }
            changed |= st.restrict(x, y, keep, Provenance::Lemma4Propagation)?;
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Tries each remaining candidate of each ambiguous pair in turn; when the
/// triangle fixpoint rules it out, the other candidate is kept.
fn probe(st: &mut State, flags: &VertexFlags) -> Result<(), ClassifyError> {
    loop {
        let mut changed = false;
        for (x, y) in st.open_pairs() {
            if st.dom(x, y) != BOTH {
                continue;
            }
            for (guess, other) in [(INT, EXT), (EXT, INT)] {
                let mut trial = st.clone();
                trial.restrict(x, y, guess, Provenance::Lemma4Propagation)?;
                if triangle_fixpoint(&mut trial, flags).is_err() {
                    st.restrict(x, y, other, Provenance::Lemma4Propagation)?;
                    triangle_fixpoint(st, flags)?;
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Largest polygon the order-type stage encodes whole; larger ones get one
/// instance per ambiguous pair, over a window of nearby vertices.
pub const ORDER_TYPE_MAX_N: usize = 30;
/// Vertices in a per-pair window.
pub const ORDER_TYPE_WINDOW: usize = 20;
/// Conflict budget of a windowed query.
const WINDOW_CONFLICTS: i32 = 1000;

fn ambiguous_pairs(st: &State) -> Vec<(usize, usize)> {
    st.open_pairs().into_iter().filter(|&(x, y)| st.dom(x, y) == BOTH).collect()
}

/// Tells the solver about every pair of `candidates` the rules have decided.
fn sync(st: &State, sat: &mut OrderTypeSat, candidates: &BTreeSet<(usize, usize)>, fixed: &mut [bool]) {
    for &(x, y) in candidates {
        let d = st.dom(x, y);
        if d != BOTH && !fixed[x * st.n + y] {
            sat.fix(x, y, d == INT);
            fixed[x * st.n + y] = true;
        }
    }
}

/// Removes a class of each ambiguous pair when the order-type instance shows
/// no chirotope can carry it.
fn order_type(st: &mut State, zp: &ZpTable, flags: &VertexFlags) -> Result<(), ClassifyError> {
    if ambiguous_pairs(st).is_empty() {
        return Ok(());
    }
    if st.n <= ORDER_TYPE_MAX_N {
        order_type_whole(st, zp, flags)
    } else {
        order_type_windows(st, zp, flags)
    }
}

/// One instance for the whole polygon. Classes seen in an earlier model are
/// not queried again until something changes.
fn order_type_whole(st: &mut State, zp: &ZpTable, flags: &VertexFlags) -> Result<(), ClassifyError> {
    let n = st.n;
    let candidates: BTreeSet<_> = st.open_pairs().into_iter().collect();
    let mut sat = OrderTypeSat::new(zp, flags, &candidates);
    let mut fixed = vec![false; n * n];
    sync(st, &mut sat, &candidates, &mut fixed);
    let mut seen = vec![0u8; n * n];
    loop {
        let mut changed = false;
        for (x, y) in ambiguous_pairs(st) {
            if st.dom(x, y) != BOTH {
                continue;
            }
            for (guess, other) in [(INT, EXT), (EXT, INT)] {
                if seen[x * n + y] & guess != 0 {
                    continue;
                }
                match sat.query(x, y, guess == INT) {
                    Query::Feasible(model) => {
                        for (i, c) in model.into_iter().enumerate() {
                            match c {
                                Some(true) => seen[i] |= INT,
                                Some(false) => seen[i] |= EXT,
                                None => {}
                            }
                        }
                    }
                    Query::Infeasible => {
                        st.restrict(x, y, other, Provenance::OrderType)?;
                        triangle_fixpoint(st, flags)?;
                        sync(st, &mut sat, &candidates, &mut fixed);
                        seen.iter_mut().for_each(|s| *s = 0);
                        changed = true;
                        break;
                    }
                    Query::Unknown => {}
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// The shorter chain between `x` and `y`, grown alternately at both ends.
fn window(x: usize, y: usize, n: usize) -> Vec<usize> {
    let (a, b) = if (y + n - x) % n <= (x + n - y) % n { (x, y) } else { (y, x) };
    let mut w = chain_vertices(a, b, n);
    let (mut lo, mut hi) = (a, b);
    let size = ORDER_TYPE_WINDOW.min(n);
    while w.len() < size {
        lo = (lo + n - 1) % n;
        w.push(lo);
        if w.len() < size {
            hi = (hi + 1) % n;
            w.push(hi);
        }
    }
    w
}

/// One small instance per ambiguous pair.
fn order_type_windows(st: &mut State, zp: &ZpTable, flags: &VertexFlags) -> Result<(), ClassifyError> {
    let n = st.n;
    loop {
        let mut changed = false;
        for (x, y) in ambiguous_pairs(st) {
            if st.dom(x, y) != BOTH {
                continue;
            }
            let w = window(x, y, n);
            let mut inside = vec![false; n];
            w.iter().for_each(|&v| inside[v] = true);
            let candidates: BTreeSet<_> = st.open_pairs().into_iter().filter(|&(u, v)| inside[u] && inside[v]).collect();
            let mut sat = OrderTypeSat::with_window(zp, flags, &candidates, &w);
            sync(st, &mut sat, &candidates, &mut vec![false; n * n]);
            for (guess, other) in [(INT, EXT), (EXT, INT)] {
                if sat.query_with_limit(x, y, guess == INT, WINDOW_CONFLICTS) == Query::Infeasible {
                    st.restrict(x, y, other, Provenance::OrderType)?;
                    triangle_fixpoint(st, flags)?;
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Classifies every visible pair using only the ZP table, the vertex flags,
/// and the polygon and hull edge lists. Output is sorted by pair.
pub fn classify_edges(
    zp: &ZpTable,
    flags: &VertexFlags,
    polygon_edges: &BTreeSet<(usize, usize)>,
    hull_edges: &BTreeSet<(usize, usize)>,
) -> Result<Vec<EdgeClassification>, ClassifyError> {
    classify_edges_with_order(zp, flags, polygon_edges, hull_edges, &DEFAULT_RULE_ORDER)
}

pub fn classify_edges_with_order(
    zp: &ZpTable,
    flags: &VertexFlags,
    polygon_edges: &BTreeSet<(usize, usize)>,
    hull_edges: &BTreeSet<(usize, usize)>,
    order: &[PairRule],
) -> Result<Vec<EdgeClassification>, ClassifyError> {
    let n = zp.n();
    if flags.n() != n {
        return Err(ClassifyError::SizeMismatch { table: n, flags: flags.n() });
    }
    let norm = |&(a, b): &(usize, usize)| (a.min(b), a.max(b));
    let polygon_edges: BTreeSet<_> = polygon_edges.iter().map(norm).collect();
    let hull_edges: BTreeSet<_> = hull_edges.iter().map(norm).collect();

    let mut st = State {
        n,
        dom: vec![0; n * n],
        boundary: vec![false; n * n],
        hull_edge: vec![false; n * n],
        decided_by: vec![None; n * n],
    };
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let key = (x.min(y), x.max(y));
            let i = x * n + y;
            if polygon_edges.contains(&key) {
                st.boundary[i] = true;
            } else if zp.get(x, y).body == ZpClass::Zero {
                st.dom[i] = BOTH;
            }
            st.hull_edge[i] = hull_edges.contains(&key);
        }
    }

    for &rule in order {
        apply_pair_rule(&mut st, rule, zp, flags)?;
    }
    triangle_fixpoint(&mut st, flags)?;
    probe(&mut st, flags)?;
    order_type(&mut st, zp, flags)?;

    let mut out = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let i = x * n + y;
            let (class, provenance) = if st.boundary[i] {
                (EdgeClass::Boundary, Provenance::PolygonEdge)
            } else {
                match st.dom[i] {
                    0 => continue,
                    INT => (EdgeClass::Internal, st.decided_by[i].expect("decided pair has a rule")),
                    EXT => (EdgeClass::External, st.decided_by[i].expect("decided pair has a rule")),
                    _ => (EdgeClass::Ambiguous, Provenance::Unresolved),
                }
            };
            out.push(EdgeClassification { pair: (x, y), class, provenance });
        }
    }
    Ok(out)
}

/// Convenience wrapper deriving the edge lists from the polygon and flags.
pub fn classify_polygon(
    poly: &Polygon,
    zp: &ZpTable,
    flags: &VertexFlags,
) -> Result<Vec<EdgeClassification>, ClassifyError> {
    let polygon_edges: BTreeSet<_> = poly.edge_pairs().into_iter().collect();
    let hull_edges: BTreeSet<_> = flags.hull_edges().into_iter().collect();
    classify_edges(zp, flags, &polygon_edges, &hull_edges)
}

/// Finds, for each ambiguous pair, the longer triangular chain between its
/// endpoints. Uses coordinates; a pair without one is reported as an error.
pub fn explain_ambiguous(
    poly: &Polygon,
    vis: &VisibilityMap,
    ambiguous: &[(usize, usize)],
) -> Result<Vec<TriangularWitness>, ClassifyError> {
    ambiguous
        .iter()
        .map(|&(x, y)| {
            [is_triangular_chain(poly, vis, x, y), is_triangular_chain(poly, vis, y, x)]
                .into_iter()
                .flatten()
                .max_by_key(|w| w.len)
                .ok_or(ClassifyError::NoWitnessFound { pair: (x, y) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::oracle::counterexample::reconstruct_counterexample;
    use crate::oracle::generate::{generate_random_polygon, Style};
    use crate::polygon::vertex_flags;
    use crate::stabbing::{stab_table, zp_table};

    fn inputs(p: &Polygon) -> (ZpTable, VertexFlags, BTreeSet<(usize, usize)>, BTreeSet<(usize, usize)>) {
        let flags = vertex_flags(p);
        let hull = flags.hull_edges().into_iter().collect();
        (zp_table(&stab_table(p)), flags, p.edge_pairs().into_iter().collect(), hull)
    }

    #[test]
    fn rule_order_changes_labels_not_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..40 {
            let p = generate_random_polygon(6 + seed as usize % 14, seed, Style::Generic).unwrap();
            let (zp, flags, edges, hull) = inputs(&p);
            let base = classify_edges(&zp, &flags, &edges, &hull).unwrap();
            let mut order = DEFAULT_RULE_ORDER;
            for _ in 0..4 {
                order.shuffle(&mut rng);
                let other = classify_edges_with_order(&zp, &flags, &edges, &hull, &order).unwrap();
                let classes = |v: &[EdgeClassification]| v.iter().map(|c| (c.pair, c.class)).collect::<Vec<_>>();
                assert_eq!(classes(&base), classes(&other), "seed {seed} order {order:?}");
            }
        }
    }

    #[test]
    fn deterministic() {
        for seed in 0..10 {
            let p = generate_random_polygon(18, seed, Style::Generic).unwrap();
            let (zp, flags, edges, hull) = inputs(&p);
            assert_eq!(classify_edges(&zp, &flags, &edges, &hull).unwrap(), classify_edges(&zp, &flags, &edges, &hull).unwrap());
        }
    }

    #[test]
    fn counterexample_pair_stays_ambiguous() {
        let pair = reconstruct_counterexample();
        for p in [&pair.a, &pair.b] {
            let (zp, flags, edges, hull) = inputs(p);
            let out = classify_edges(&zp, &flags, &edges, &hull).unwrap();
            let amb: Vec<_> = out.iter().filter(|c| c.class == EdgeClass::Ambiguous).collect();
            assert_eq!(amb.len(), 1);
            assert_eq!(amb[0].pair, (0, 8));
            assert_eq!(amb[0].provenance, Provenance::Unresolved);
            assert!(out.iter().filter(|c| c.class != EdgeClass::Ambiguous).all(|c| c.provenance != Provenance::Unresolved));
        }
    }

    #[test]
    fn decided_classes_carry_a_rule() {
        let p = generate_random_polygon(12, 3, Style::Generic).unwrap();
        let (zp, flags, edges, hull) = inputs(&p);
        for c in classify_edges(&zp, &flags, &edges, &hull).unwrap() {
            assert_eq!(c.class == EdgeClass::Ambiguous, c.provenance == Provenance::Unresolved);
            assert_eq!(c.class == EdgeClass::Boundary, c.provenance == Provenance::PolygonEdge);
        }
    }

    #[test]
    fn mismatched_flags_are_rejected() {
        let a = generate_random_polygon(8, 1, Style::Generic).unwrap();
        let b = generate_random_polygon(9, 1, Style::Generic).unwrap();
        let (zp, _, edges, hull) = inputs(&a);
        let err = classify_edges(&zp, &vertex_flags(&b), &edges, &hull).unwrap_err();
        assert!(matches!(err, ClassifyError::SizeMismatch { table: 8, flags: 9 }));
    }
}

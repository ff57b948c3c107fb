//! One-shot analysis of a polygon: tables, flags, classifications and the
//! chains behind ambiguous pairs. Shared by the CLI, the HTTP service and the
//! Python bindings so all three produce the same bytes for the same input.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::classifier::{classify_polygon, explain_ambiguous, ClassifyError, EdgeClass, Provenance};
use crate::geom::Point;
use crate::polygon::{vertex_flags, Polygon, VertexFlags};
use crate::stabbing::{stab_table, StabTriple, ZpClass};
use crate::visibility::{visibility_oracle, TriangularWitness, VisClass};

/// One ordered pair of the stabbing table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub x: usize,
    pub y: usize,
    pub raw: StabTriple,
    /// Tail, Body, Head as `z`/`o`/`e`.
    pub zp: String,
    /// Tail, Body, Head as `e`/`o`.
    pub pp: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub pair: (usize, usize),
    pub class: EdgeClass,
    pub provenance: Provenance,
    /// Coordinate ground truth for the same pair.
    pub oracle: VisClass,
}

impl EdgeReport {
    /// False only for a definite class the oracle contradicts.
    pub fn agrees(&self) -> bool {
        match self.class {
            EdgeClass::Ambiguous => true,
            EdgeClass::Internal => self.oracle == VisClass::Internal,
            EdgeClass::External => self.oracle == VisClass::External,
            EdgeClass::Boundary => self.oracle == VisClass::Boundary,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub internal: usize,
    pub external: usize,
    pub boundary: usize,
    pub ambiguous: usize,
    pub disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbiguityWitness {
    pub pair: (usize, usize),
    /// `None` when neither chain between the endpoints is triangular.
    pub chain: Option<TriangularWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisResult {
    pub n: usize,
    pub vertices: Vec<Point>,
    /// Input coordinates were multiplied by `10^decimals`.
    pub decimals: u32,
    pub flags: VertexFlags,
    /// All `n (n - 1)` ordered pairs, `(x, y)` lexicographic.
    pub table: Vec<TableRow>,
    /// Visible pairs `x < y`, sorted.
    pub edges: Vec<EdgeReport>,
    pub counts: ClassCounts,
    pub ambiguity: Vec<AmbiguityWitness>,
    /// Only filled when requested; everything else is deterministic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

fn letters(t: StabTriple) -> (String, String) {
    let z = t.zp();
    let zp = [z.tail, z.body, z.head].iter().map(|c| c.letter()).collect();
    let pp = [z.tail, z.body, z.head].iter().map(|c| if c.is_even() { 'e' } else { 'o' }).collect();
    (zp, pp)
}

pub fn analyze(poly: &Polygon, decimals: u32, with_timing: bool) -> Result<AnalysisResult, ClassifyError> {
    let start = Instant::now();
    let n = poly.n();
    let flags = vertex_flags(poly);
    let st = stab_table(poly);
    let zp = st.map(StabTriple::zp);
    let vis = visibility_oracle(poly);
    let table = st
        .iter()
        .map(|((x, y), raw)| {
            let (zp, pp) = letters(raw);
            TableRow { x, y, raw, zp, pp }
        })
        .collect();
    let classes = classify_polygon(poly, &zp, &flags)?;
    let mut counts = ClassCounts::default();
    let edges: Vec<EdgeReport> = classes
        .iter()
        .map(|c| {
            let e = EdgeReport { pair: c.pair, class: c.class, provenance: c.provenance, oracle: vis.get(c.pair.0, c.pair.1) };
            match e.class {
                EdgeClass::Internal => counts.internal += 1,
                EdgeClass::External => counts.external += 1,
                EdgeClass::Boundary => counts.boundary += 1,
                EdgeClass::Ambiguous => counts.ambiguous += 1,
            }
            counts.disagreements += usize::from(!e.agrees());
            e
        })
        .collect();
    let ambiguity = edges
        .iter()
        .filter(|e| e.class == EdgeClass::Ambiguous)
        .map(|e| {
            let chain = explain_ambiguous(poly, &vis, &[e.pair]).ok().and_then(|mut w| w.pop());
            AmbiguityWitness { pair: e.pair, chain }
        })
        .collect();
    let timing = with_timing.then(|| Timing { total_ms: start.elapsed().as_secs_f64() * 1e3 });
    Ok(AnalysisResult {
        n,
        vertices: poly.vertices().to_vec(),
        decimals,
        flags,
        table,
        edges,
        counts,
        ambiguity,
        timing,
    })
}

impl AnalysisResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("analysis serializes") + "\n"
    }

    /// Vertices, flags and the full table, one ordered pair per line.
    pub fn table_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.n);
        if self.decimals > 0 {
            let _ = writeln!(s, "coordinates scaled by 10^{}", self.decimals);
        }
        let _ = writeln!(s, "hull: {:?}", self.flags.hull);
        for (i, p) in self.vertices.iter().enumerate() {
            let kind = if self.flags.convex[i] { "convex" } else { "reflex" };
            let hull = if self.flags.on_hull[i] { " hull" } else { "" };
            let _ = writeln!(s, "v{i:<3} {:>12} {:>12}  {kind}{hull}", p.x, p.y);
        }
        let _ = writeln!(s, "{:>4} {:>4} {:>5} {:>5} {:>5}  zp  pp", "x", "y", "tail", "body", "head");
        for r in &self.table {
            let _ = writeln!(
                s,
                "{:>4} {:>4} {:>5} {:>5} {:>5}  {} {}",
                r.x, r.y, r.raw.tail, r.raw.body, r.raw.head, r.zp, r.pp
            );
        }
        s
    }

    /// Visible pairs with class and rule; chains behind ambiguous pairs.
    pub fn classification_text(&self) -> String {
        let mut s = String::new();
        let c = &self.counts;
        let _ = writeln!(
            s,
            "n = {}  internal {}  external {}  boundary {}  ambiguous {}  disagreements {}",
            self.n, c.internal, c.external, c.boundary, c.ambiguous, c.disagreements
        );
        for e in &self.edges {
            let mark = if e.agrees() { "" } else { "  MISMATCH" };
            let _ = writeln!(
                s,
                "{:>4} {:>4}  {:<9} {:<21} oracle {:?}{mark}",
                e.pair.0,
                e.pair.1,
                format!("{:?}", e.class),
                e.provenance.label(),
                e.oracle
            );
        }
        for a in &self.ambiguity {
            match &a.chain {
                Some(w) => {
                    let _ = writeln!(
                        s,
                        "ambiguous ({}, {}): chain [{}, {}] of {} vertices, hull {:?}, z_I {}, z_E {}",
                        a.pair.0, a.pair.1, w.from, w.to, w.len, w.corners, w.z_internal, w.z_external
                    );
                }
                None => {
                    let _ = writeln!(s, "ambiguous ({}, {}): no triangular chain", a.pair.0, a.pair.1);
                }
            }
        }
        s
    }

    pub fn zp_at(&self, x: usize, y: usize) -> Option<[ZpClass; 3]> {
        self.table.iter().find(|r| r.x == x && r.y == y).map(|r| {
            let z = r.raw.zp();
            [z.tail, z.body, z.head]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dented_square() {
        let p = Polygon::from_coords(&[(0, 0), (10, 0), (10, 10), (5, 4), (0, 10)]).unwrap();
        let r = analyze(&p, 0, false).unwrap();
        assert_eq!(r.table.len(), 20);
        assert_eq!(r.counts.disagreements, 0);
        assert!(r.edges.iter().all(|e| r.table.iter().any(|t| (t.x, t.y) == e.pair)));
        assert_eq!(r.to_json(), analyze(&p, 0, false).unwrap().to_json());
        assert!(r.table_text().contains("reflex"));
        assert!(r.classification_text().contains("HullPocketLid"));
    }
}

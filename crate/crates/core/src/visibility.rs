//! Coordinate-based ground truth: which vertex pairs see each other, whether the
//! connecting segment runs inside or outside, and triangular-chain detection.

use serde::{Deserialize, Serialize};

use crate::geom::{midpoint_in_ring, segments_properly_cross, Location};
use crate::polygon::{convex_hull, Chain, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VisClass {
    Internal,
    External,
    Boundary,
    NotVisible,
}

impl VisClass {
    pub fn is_visible(self) -> bool {
        self != VisClass::NotVisible
    }
}

/// Symmetric `n x n` matrix of [`VisClass`]; the diagonal is `NotVisible`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VisibilityMap {
    n: usize,
    classes: Vec<VisClass>,
}

impl VisibilityMap {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> VisClass {
        self.classes[x * self.n + y]
    }

    /// Unordered pairs `(x, y)`, `x < y`, with their class.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), VisClass)> + '_ {
        (0..self.n).flat_map(move |x| ((x + 1)..self.n).map(move |y| ((x, y), self.get(x, y))))
    }
}

/// Classifies the segment between vertices `x` and `y` from coordinates alone.
pub fn classify_pair(poly: &Polygon, x: usize, y: usize) -> VisClass {
    if x == y {
        return VisClass::NotVisible;
    }
    if poly.is_edge(x, y) {
        return VisClass::Boundary;
    }
    let (a, b) = (poly.vertex(x), poly.vertex(y));
    for i in 0..poly.n() {
        let j = poly.next(i);
        if i == x || i == y || j == x || j == y {
            continue;
        }
        let (c, d) = poly.edge(i);
        if segments_properly_cross(a, b, c, d) {
            return VisClass::NotVisible;
        }
    }
    // A visible open segment avoids the boundary entirely, so its midpoint decides.
    match midpoint_in_ring(a, b, poly.vertices()) {
        Location::Inside => VisClass::Internal,
        Location::Outside => VisClass::External,
        Location::OnBoundary => unreachable!("visible diagonal touches the boundary; general position violated"),
    }
}

pub fn visibility_oracle(poly: &Polygon) -> VisibilityMap {
    let n = poly.n();
    let mut classes = vec![VisClass::NotVisible; n * n];
    for x in 0..n {
        for y in (x + 1)..n {
            let c = classify_pair(poly, x, y);
            classes[x * n + y] = c;
            classes[y * n + x] = c;
        }
    }
    VisibilityMap { n, classes }
}

/// Evidence that chain `[from, to]` is triangular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularWitness {
    pub from: usize,
    pub to: usize,
    /// Vertex count of the chain.
    pub len: usize,
    /// Corners of the chain's convex hull.
    pub corners: [usize; 3],
    pub z_internal: usize,
    pub z_external: usize,
}

fn sees_both(vis: &VisibilityMap, z: usize, x: usize, y: usize, want: VisClass) -> bool {
    let (a, b) = (vis.get(z, x), vis.get(z, y));
    let ok = |c: VisClass| c == want || c == VisClass::Boundary;
    ok(a) && ok(b) && (a == want || b == want)
}

/// Checks whether chain `[x, y]` has a triangular convex hull and is seen from
/// both endpoints by one vertex through internal edges and by another through
/// external ones. A polygon edge may stand in for one of the two sight lines.
pub fn is_triangular_chain(
    poly: &Polygon,
    vis: &VisibilityMap,
    x: usize,
    y: usize,
) -> Option<TriangularWitness> {
    let n = poly.n();
    if x == y {
        return None;
    }
    let chain = Chain::new(x, y);
    let idx: Vec<usize> = chain.vertices(n).collect();
    let hull = convex_hull(poly.vertices(), &idx);
    if hull.len() != 3 {
        return None;
    }
    // Vertices across the pair first, then the chain itself.
    let other = Chain::new(y, x);
    let candidates: Vec<usize> = other.interior(n).chain(chain.interior(n)).collect();
    let z_internal = candidates.iter().copied().find(|&z| sees_both(vis, z, x, y, VisClass::Internal))?;
    let z_external = candidates.iter().copied().find(|&z| sees_both(vis, z, x, y, VisClass::External))?;
    Some(TriangularWitness {
        from: x,
        to: y,
        len: idx.len(),
        corners: [hull[0], hull[1], hull[2]],
        z_internal,
        z_external,
    })
}

/// All triangular chains with at least `min_len` vertices.
pub fn triangular_chains(poly: &Polygon, vis: &VisibilityMap, min_len: usize) -> Vec<TriangularWitness> {
    let n = poly.n();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && Chain::new(x, y).len(n) >= min_len {
                if let Some(w) = is_triangular_chain(poly, vis, x, y) {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// True iff no chain with `k` or more vertices is triangular.
pub fn is_nontriangular(poly: &Polygon, vis: &VisibilityMap, k: usize) -> bool {
    assert!(k >= 3, "triangular chains have at least 3 vertices");
    let n = poly.n();
    (0..n).all(|x| {
        (k..=n).all(|len| is_triangular_chain(poly, vis, x, (x + len - 1) % n).is_none())
    })
}

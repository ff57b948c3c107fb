//! Simple polygons in general position, boundary chains, and vertex flags.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{cross, point_in_ring, segments_properly_cross, Location, Orientation, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {count}")]
    TooFewVertices { count: usize },
    #[error("vertex {index} has a coordinate beyond +/-2^60")]
    CoordinateOutOfRange { index: usize },
    #[error("vertices {i}, {j}, {k} are collinear (general position violated)")]
    CollinearTriple { i: usize, j: usize, k: usize },
    #[error("edges ({a}, {b}) and ({c}, {d}) cross (polygon is not simple)")]
    NotSimple { a: usize, b: usize, c: usize, d: usize },
}

impl PolygonError {
    /// Short machine-readable name of the violated invariant.
    pub fn kind(&self) -> &'static str {
        match self {
            PolygonError::TooFewVertices { .. } => "TooFewVertices",
            PolygonError::CoordinateOutOfRange { .. } => "CoordinateOutOfRange",
            PolygonError::CollinearTriple { .. } => "CollinearTriple",
            PolygonError::NotSimple { .. } => "NotSimple",
        }
    }
}

/// A validated simple polygon with vertices in counterclockwise order and no
/// three vertices collinear. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates `raw` and normalizes it to counterclockwise order.
    ///
    /// A clockwise input is re-read backwards starting from the same vertex,
    /// so vertex 0 keeps its label.
    pub fn new(raw: Vec<Point>) -> Result<Self, PolygonError> {
        let n = raw.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices { count: n });
        }
        if let Some(index) = raw.iter().position(|p| !p.in_range()) {
            return Err(PolygonError::CoordinateOutOfRange { index });
        }
        if let Some((i, j, k)) = find_collinear_triple(&raw) {
            return Err(PolygonError::CollinearTriple { i, j, k });
        }
        for a in 0..n {
            let b = (a + 1) % n;
            for c in (a + 2)..n {
                let d = (c + 1) % n;
                if d == a {
                    continue;
                }
                if segments_properly_cross(raw[a], raw[b], raw[c], raw[d]) {
                    return Err(PolygonError::NotSimple { a, b, c, d });
                }
            }
        }
        let mut vertices = raw;
        if signed_area2(&vertices) < 0 {
            vertices[1..].reverse();
        }
        Ok(Polygon { vertices })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self, PolygonError> {
        Polygon::new(coords.iter().map(|&c| Point::from(c)).collect())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    #[inline]
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    #[inline]
    pub fn prev(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    /// Edge `i` joins vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertices[i], self.vertices[self.next(i)])
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a != b && (self.next(a) == b || self.next(b) == a)
    }

    /// All polygon edges as `(min, max)` index pairs.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = (0..self.n())
            .map(|i| {
                let j = self.next(i);
                (i.min(j), i.max(j))
            })
            .collect();
        v.sort_unstable();
        v
    }

    /// Twice the signed area; strictly positive for every built polygon.
    pub fn signed_area2(&self) -> i128 {
        signed_area2(&self.vertices)
    }

    pub fn turn(&self, v: usize) -> Orientation {
        crate::geom::orient(self.vertices[self.prev(v)], self.vertices[v], self.vertices[self.next(v)])
    }
}

fn signed_area2(v: &[Point]) -> i128 {
    let o = v[0];
    (1..v.len() - 1).map(|i| cross(o, v[i], v[i + 1])).sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Finds three collinear points (or a repeated point) in `O(n^2)` expected time
/// by hashing reduced directions out of each point.
fn find_collinear_triple(pts: &[Point]) -> Option<(usize, usize, usize)> {
    let n = pts.len();
    let mut seen: HashMap<(i128, i128), usize> = HashMap::with_capacity(n);
    for i in 0..n {
        seen.clear();
        for j in 0..n {
            if j == i {
                continue;
            }
            let dx = pts[j].x as i128 - pts[i].x as i128;
            let dy = pts[j].y as i128 - pts[i].y as i128;
            if dx == 0 && dy == 0 {
                let k = (0..n).find(|&k| k != i && k != j).unwrap_or(j);
                let mut t = [i, j, k];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
            let g = gcd(dx, dy);
            let (mut dx, mut dy) = (dx / g, dy / g);
            if dx < 0 || (dx == 0 && dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            if let Some(&k) = seen.get(&(dx, dy)) {
                let mut t = [i, j, k];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
            seen.insert((dx, dy), j);
        }
    }
    None
}

/// The counterclockwise run of boundary vertices from `from` to `to`, inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain {
    pub from: usize,
    pub to: usize,
}

impl Chain {
    pub fn new(from: usize, to: usize) -> Self {
        Chain { from, to }
    }

    /// Number of vertices on the chain, endpoints included.
    pub fn len(&self, n: usize) -> usize {
        (self.to + n - self.from) % n + 1
    }

    pub fn vertices(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let from = self.from;
        (0..self.len(n)).map(move |k| (from + k) % n)
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let from = self.from;
        let len = self.len(n);
        (1..len.saturating_sub(1)).map(move |k| (from + k) % n)
    }

    pub fn contains(&self, v: usize, n: usize) -> bool {
        (v + n - self.from) % n < self.len(n)
    }

    /// Whether `v` lies strictly between the endpoints.
    pub fn contains_interior(&self, v: usize, n: usize) -> bool {
        let k = (v + n - self.from) % n;
        k > 0 && k + 1 < self.len(n)
    }

    pub fn reversed(&self) -> Chain {
        Chain::new(self.to, self.from)
    }
}

pub fn chain_vertices(x: usize, y: usize, n: usize) -> Vec<usize> {
    Chain::new(x, y).vertices(n).collect()
}

/// Convex/reflex and convex-hull membership per vertex, plus the hull in
/// counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexFlags {
    pub convex: Vec<bool>,
    pub on_hull: Vec<bool>,
    pub hull: Vec<usize>,
}

impl VertexFlags {
    pub fn n(&self) -> usize {
        self.convex.len()
    }

    /// Consecutive hull vertices as `(min, max)` pairs, sorted.
    pub fn hull_edges(&self) -> Vec<(usize, usize)> {
        let h = &self.hull;
        let mut v: Vec<_> = (0..h.len())
            .map(|i| {
                let (a, b) = (h[i], h[(i + 1) % h.len()]);
                (a.min(b), a.max(b))
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Ray-crossing classification of `p` against the polygon.
pub fn point_in_polygon(p: Point, poly: &Polygon) -> Location {
    point_in_ring(p, poly.vertices())
}

pub fn vertex_flags(poly: &Polygon) -> VertexFlags {
    let n = poly.n();
    let convex = (0..n).map(|v| poly.turn(v) == Orientation::Left).collect();
    let hull = convex_hull(poly.vertices(), &(0..n).collect::<Vec<_>>());
    let mut on_hull = vec![false; n];
    for &h in &hull {
        on_hull[h] = true;
    }
    VertexFlags { convex, on_hull, hull }
}

/// Monotone-chain convex hull of the indexed points, counterclockwise,
/// starting from the lowest-leftmost point. Assumes no three points collinear.
pub fn convex_hull(pts: &[Point], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by_key(|&i| (pts[i].x, pts[i].y));
    order.dedup();
    if order.len() < 3 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    let sweep = |hull: &mut Vec<usize>, i: usize, floor: usize| {
        while hull.len() >= floor + 2
            && cross(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    };
    for &i in &order {
        sweep(&mut hull, i, 0);
    }
    let lower = hull.len() - 1;
    for &i in order.iter().rev().skip(1) {
        sweep(&mut hull, i, lower);
    }
    hull.pop();
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<(i64, i64)> {
        vec![(0, 0), (4, 0), (4, 4), (0, 4)]
    }

    #[test]
    fn clockwise_input_is_normalized() {
        let cw = Polygon::from_coords(&[(0, 0), (0, 4), (4, 4), (4, 0)]).unwrap();
        assert!(cw.signed_area2() > 0);
        assert_eq!(cw.vertex(0), Point::new(0, 0));
        assert_eq!(cw, Polygon::from_coords(&square()).unwrap());
    }

    #[test]
    fn rejects_collinear_triple() {
        let err = Polygon::from_coords(&[(0, 0), (1, 0), (2, 0), (1, 1)]).unwrap_err();
        assert_eq!(err, PolygonError::CollinearTriple { i: 0, j: 1, k: 2 });
        // Non-adjacent collinear vertices are rejected too.
        let err = Polygon::from_coords(&[(0, 0), (5, 1), (2, 2), (4, 4), (0, 3)]).unwrap_err();
        assert_eq!(err, PolygonError::CollinearTriple { i: 0, j: 2, k: 3 });
        let err = Polygon::from_coords(&[(0, 0), (3, 0), (0, 0), (1, 5)]).unwrap_err();
        assert_eq!(err.kind(), "CollinearTriple");
    }

    #[test]
    fn rejects_bowtie_and_short_input() {
        let err = Polygon::from_coords(&[(0, 0), (2, 2), (2, 0), (0, 2)]).unwrap_err();
        assert_eq!(err.kind(), "NotSimple");
        assert_eq!(
            Polygon::from_coords(&[(0, 0), (1, 0)]).unwrap_err(),
            PolygonError::TooFewVertices { count: 2 }
        );
        let big = crate::geom::COORD_LIMIT + 1;
        assert_eq!(
            Polygon::from_coords(&[(0, 0), (big, 0), (0, 1)]).unwrap_err(),
            PolygonError::CoordinateOutOfRange { index: 1 }
        );
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain_vertices(0, 3, 6), vec![0, 1, 2, 3]);
        assert_eq!(chain_vertices(3, 0, 6), vec![3, 4, 5, 0]);
        assert_eq!(chain_vertices(0, 8, 12).len(), 9);
        let c = Chain::new(10, 2);
        assert_eq!(c.interior(12).collect::<Vec<_>>(), vec![11, 0, 1]);
        assert!(c.contains(0, 12) && c.contains(2, 12) && !c.contains(3, 12));
        assert!(c.contains_interior(11, 12) && !c.contains_interior(10, 12));
        for n in 3..9 {
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        assert_eq!(Chain::new(x, y).len(n) + Chain::new(y, x).len(n), n + 2);
                    }
                }
            }
        }
    }

    #[test]
    fn convex_pentagon_flags() {
        let p = Polygon::from_coords(&[(0, 0), (4, -1), (6, 3), (2, 6), (-2, 3)]).unwrap();
        let f = vertex_flags(&p);
        assert!(f.convex.iter().all(|&c| c));
        assert!(f.on_hull.iter().all(|&c| c));
        assert_eq!(f.hull.len(), 5);
    }

    #[test]
    fn dented_square_flags() {
        // Square with its top edge pushed in by one vertex.
        let p = Polygon::from_coords(&[(0, 0), (4, 0), (4, 4), (2, 3), (0, 4)]).unwrap();
        let f = vertex_flags(&p);
        assert_eq!(f.convex, vec![true, true, true, false, true]);
        assert_eq!(f.on_hull, vec![true, true, true, false, true]);
        assert_eq!(f.hull_edges(), vec![(0, 1), (0, 4), (1, 2), (2, 4)]);
    }
}

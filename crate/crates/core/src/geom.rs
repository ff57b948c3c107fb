//! Exact predicates on integer points.
//!
//! Coordinates are `i64` bounded by [`COORD_LIMIT`] in absolute value, so every
//! determinant below fits in an `i128` without overflow. No floating point
//! participates in any decision made here.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible absolute coordinate (2^60).
pub const COORD_LIMIT: i64 = 1 << 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(&self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    fn from_sign(s: i128) -> Self {
        match s.cmp(&0) {
            Ordering::Greater => Orientation::Left,
            Ordering::Less => Orientation::Right,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Cross product of `b - a` and `c - a`, i.e. twice the signed area of `abc`.
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i128 {
    let (bx, by) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
    let (cx, cy) = ((c.x - a.x) as i128, (c.y - a.y) as i128);
    bx * cy - by * cx
}

#[inline]
fn vcross(u: Point, v: Point) -> i128 {
    u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128
}

#[inline]
pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    Orientation::from_sign(cross(a, b, c))
}

/// True iff the open segments `p1p2` and `q1q2` meet in exactly one point
/// that is interior to both.
pub fn segments_properly_cross(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = cross(p1, p2, q1).signum();
    let d2 = cross(p1, p2, q2).signum();
    let d3 = cross(q1, q2, p1).signum();
    let d4 = cross(q1, q2, p2).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

/// The three open pieces of the line through `x` and `y` once `x` and `y` are
/// removed, parameterized as `x + t (y - x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    /// `t < 0`, beyond `x`.
    Tail,
    /// `0 < t < 1`, the open segment.
    Body,
    /// `t > 1`, beyond `y`.
    Head,
}

impl Component {
    pub fn swapped(self) -> Self {
        match self {
            Component::Tail => Component::Head,
            Component::Body => Component::Body,
            Component::Head => Component::Tail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(Point, Point),
    #[error("collinear triple {0}, {1}, {2} violates general position")]
    Degenerate(Point, Point, Point),
}

/// Which open component of line(x, y) the segment `e1e2` properly crosses, if any.
///
/// Decided by sign comparisons only: with `d = y - x` and `e = e2 - e1` the
/// crossing parameter is `t = cross(e1 - x, e) / cross(d, e)`, and `t - 1` has
/// numerator `cross(e1 - y, e)`.
pub fn ray_line_component(
    x: Point,
    y: Point,
    e1: Point,
    e2: Point,
) -> Result<Option<Component>, GeomError> {
    if x == y {
        return Err(GeomError::CoincidentPoints(x, y));
    }
    let s1 = cross(x, y, e1).signum();
    let s2 = cross(x, y, e2).signum();
    if s1 == 0 {
        return Err(GeomError::Degenerate(x, y, e1));
    }
    if s2 == 0 {
        return Err(GeomError::Degenerate(x, y, e2));
    }
    if s1 == s2 {
        return Ok(None);
    }
    // Both e1 and e2 are off the line, so e1 != e2 and the denominator is nonzero.
    let den = vcross(y - x, e2 - e1).signum();
    let num_x = cross(e1, e2, x).signum();
    let num_y = cross(e1, e2, y).signum();
    if num_x == 0 {
        return Err(GeomError::Degenerate(e1, e2, x));
    }
    if num_y == 0 {
        return Err(GeomError::Degenerate(e1, e2, y));
    }
    // cross(e1, e2, p) = cross(e, p - e1) = -cross(p - e1, e), so the parameter
    // numerator cross(e1 - p, e) has the sign of cross(e1, e2, p).
    let t_sign = num_x * den;
    let t_minus_one_sign = num_y * den;
    Ok(Some(if t_sign < 0 {
        Component::Tail
    } else if t_minus_one_sign > 0 {
        Component::Head
    } else {
        Component::Body
    }))
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    Inside,
    Outside,
    OnBoundary,
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    cross(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Ray-crossing test against a closed vertex ring, with a horizontal ray to +x.
///
/// Edges are treated as half-open in y so a ray through a vertex is counted
/// once or not at all; boundary points are reported before parity is taken.
pub fn point_in_ring(p: Point, ring: &[Point]) -> Location {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if on_segment(a, b, p) {
            return Location::OnBoundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // Crossing lies right of p iff p is on the left of the upward-directed edge.
            let side = cross(a, b, p);
            if (b.y > a.y && side > 0) || (b.y < a.y && side < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Location of the midpoint of `ab` relative to the ring, computed on the
/// doubled lattice so the midpoint stays integral.
pub fn midpoint_in_ring(a: Point, b: Point, ring: &[Point]) -> Location {
    let doubled: Vec<Point> = ring.iter().map(|v| Point::new(2 * v.x, 2 * v.y)).collect();
    point_in_ring(a + b, &doubled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(p(0, 0), p(1, 0), p(0, 1)), Orientation::Left);
        assert_eq!(orient(p(0, 0), p(1, 1), p(2, 2)), Orientation::Collinear);
        assert_eq!(orient(p(0, 0), p(0, 1), p(1, 0)), Orientation::Right);
    }

    #[test]
    fn orient_at_coordinate_limit() {
        let l = COORD_LIMIT;
        assert_eq!(orient(p(-l, -l), p(l, -l), p(-l, l)), Orientation::Left);
        assert_eq!(orient(p(-l, -l), p(l, l), p(l - 1, l - 1)), Orientation::Collinear);
        assert_eq!(orient(p(-l, -l), p(l, l), p(l - 1, l)), Orientation::Left);
    }

    #[test]
    fn proper_crossing_examples() {
        assert!(segments_properly_cross(p(0, 0), p(2, 2), p(0, 2), p(2, 0)));
        assert!(!segments_properly_cross(p(0, 0), p(1, 0), p(1, 0), p(2, 1)));
        assert!(!segments_properly_cross(p(0, 0), p(1, 0), p(0, 1), p(1, 1)));
        // T-junction: endpoint touches interior of the other segment.
        assert!(!segments_properly_cross(p(0, 0), p(2, 0), p(1, 0), p(1, 5)));
    }

    #[test]
    fn component_examples() {
        let (x, y) = (p(0, 0), p(2, 0));
        assert_eq!(ray_line_component(x, y, p(1, -1), p(1, 1)), Ok(Some(Component::Body)));
        assert_eq!(ray_line_component(x, y, p(3, -1), p(3, 1)), Ok(Some(Component::Head)));
        assert_eq!(ray_line_component(x, y, p(3, 1), p(4, 2)), Ok(None));
        assert_eq!(ray_line_component(x, y, p(-1, 1), p(-3, -2)), Ok(Some(Component::Tail)));
    }

    #[test]
    fn component_rejects_degenerate_input() {
        let (x, y) = (p(0, 0), p(2, 0));
        // Edge passes through x.
        assert!(ray_line_component(x, y, p(0, -1), p(0, 1)).is_err());
        // Edge passes through y.
        assert!(ray_line_component(x, y, p(1, -1), p(3, 1)).is_err());
        // Edge endpoint on the line.
        assert!(ray_line_component(x, y, p(5, 0), p(5, 1)).is_err());
        assert!(ray_line_component(x, x, p(5, 0), p(5, 1)).is_err());
    }

    #[test]
    fn point_in_square() {
        let sq = [p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert_eq!(point_in_ring(p(1, 1), &sq), Location::Inside);
        assert_eq!(point_in_ring(p(5, 5), &sq), Location::Outside);
        assert_eq!(point_in_ring(p(1, 0), &sq), Location::OnBoundary);
        assert_eq!(point_in_ring(p(0, 0), &sq), Location::OnBoundary);
        // Ray passes exactly through vertices (2,2) and (0,2) on the line y = 2 from outside.
        assert_eq!(point_in_ring(p(-1, 2), &sq), Location::Outside);
        assert_eq!(midpoint_in_ring(p(0, 0), p(1, 1), &sq), Location::Inside);
        assert_eq!(midpoint_in_ring(p(0, 0), p(2, 0), &sq), Location::OnBoundary);
    }
}

//! Tail/Body/Head crossing counts for every ordered vertex pair, and their
//! zero-parity and pure-parity reductions.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::{cross, ray_line_component, Component};
use crate::polygon::Polygon;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabTriple {
    pub tail: u32,
    pub body: u32,
    pub head: u32,
}

impl StabTriple {
    pub fn new(tail: u32, body: u32, head: u32) -> Self {
        StabTriple { tail, body, head }
    }

    /// The triple seen from the other endpoint.
    pub fn reversed(self) -> Self {
        StabTriple::new(self.head, self.body, self.tail)
    }

    pub fn get(self, c: Component) -> u32 {
        match c {
            Component::Tail => self.tail,
            Component::Body => self.body,
            Component::Head => self.head,
        }
    }

    pub fn zp(self) -> ZpTriple {
        ZpTriple {
            tail: ZpClass::of(self.tail),
            body: ZpClass::of(self.body),
            head: ZpClass::of(self.head),
        }
    }

    pub fn pp(self) -> PpTriple {
        PpTriple {
            tail: PpClass::of(self.tail),
            body: PpClass::of(self.body),
            head: PpClass::of(self.head),
        }
    }
}

/// Zero, odd, or even and positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZpClass {
    Zero,
    Odd,
    EvenPos,
}

impl ZpClass {
    pub fn of(count: u32) -> Self {
        if count == 0 {
            ZpClass::Zero
        } else if count % 2 == 1 {
            ZpClass::Odd
        } else {
            ZpClass::EvenPos
        }
    }

    pub fn is_even(self) -> bool {
        self != ZpClass::Odd
    }

    pub fn to_pp(self) -> PpClass {
        match self {
            ZpClass::Odd => PpClass::Odd,
            ZpClass::Zero | ZpClass::EvenPos => PpClass::Even,
        }
    }

    pub fn letter(self) -> char {
        match self {
            ZpClass::Zero => 'z',
            ZpClass::Odd => 'o',
            ZpClass::EvenPos => 'e',
        }
    }
}

impl fmt::Display for ZpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PpClass {
    Even,
    Odd,
}

impl PpClass {
    pub fn of(count: u32) -> Self {
        if count % 2 == 0 {
            PpClass::Even
        } else {
            PpClass::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZpTriple {
    pub tail: ZpClass,
    pub body: ZpClass,
    pub head: ZpClass,
}

impl ZpTriple {
    pub fn get(self, c: Component) -> ZpClass {
        match c {
            Component::Tail => self.tail,
            Component::Body => self.body,
            Component::Head => self.head,
        }
    }

    pub fn pp(self) -> PpTriple {
        PpTriple { tail: self.tail.to_pp(), body: self.body.to_pp(), head: self.head.to_pp() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PpTriple {
    pub tail: PpClass,
    pub body: PpClass,
    pub head: PpClass,
}

/// Dense ordered-pair table; the diagonal holds `T::default()`-like filler and
/// is never read through the public accessors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PairTable<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Copy> PairTable<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry for the ordered pair `(x, y)`; panics when `x == y`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        assert_ne!(x, y, "self-pair has no stabbing entry");
        self.entries[x * self.n + y]
    }

    /// Ordered pairs in `(x, y)` lexicographic order with their entries.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), T)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| ((x, y), self.entries[x * n + y])))
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> PairTable<U> {
        PairTable { n: self.n, entries: self.entries.iter().map(|&t| f(t)).collect() }
    }
}

pub type StabTable = PairTable<StabTriple>;
pub type ZpTable = PairTable<ZpTriple>;
pub type PpTable = PairTable<PpTriple>;

/// Counts polygon edges properly crossing each open component of line(x, y).
/// Edges incident to `x` or `y` meet the line only at a removed point (or lie
/// along it) and are skipped.
pub fn stab_triple(poly: &Polygon, x: usize, y: usize) -> StabTriple {
    assert_ne!(x, y, "stab_triple needs two distinct vertices");
    let (a, b) = (poly.vertex(x), poly.vertex(y));
    let mut t = StabTriple::default();
    for i in 0..poly.n() {
        let j = poly.next(i);
        if i == x || i == y || j == x || j == y {
            continue;
        }
        let (c, d) = poly.edge(i);
        let comp = ray_line_component(a, b, c, d)
            .unwrap_or_else(|e| panic!("polygon lost general position: {e}"));
        match comp {
            Some(Component::Tail) => t.tail += 1,
            Some(Component::Body) => t.body += 1,
            Some(Component::Head) => t.head += 1,
            None => {}
        }
    }
    t
}

pub fn stab_table(poly: &Polygon) -> StabTable {
    let n = poly.n();
    let entries: Vec<StabTriple> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k / n, k % n);
            if x == y {
                StabTriple::default()
            } else {
                stab_triple(poly, x, y)
            }
        })
        .collect();
    let table = PairTable { n, entries };
    debug_assert!(table.iter().all(|((x, y), t)| table.get(y, x) == t.reversed()));
    table
}

pub fn zp_table(st: &StabTable) -> ZpTable {
    st.map(StabTriple::zp)
}

pub fn pp_table(st: &StabTable) -> PpTable {
    st.map(StabTriple::pp)
}

/// Unordered pairs `(x, y)`, `x < y`, whose Body class is Zero.
pub fn visible_pairs(zp: &ZpTable) -> Vec<(usize, usize)> {
    let n = zp.n();
    (0..n)
        .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
        .filter(|&(x, y)| zp.get(x, y).body == ZpClass::Zero)
        .collect()
}

/// 1 iff the boundary neighbours of `v` lie strictly on opposite sides of line(x, y).
pub fn straddle(poly: &Polygon, x: usize, y: usize, v: usize) -> u32 {
    let (a, b) = (poly.vertex(x), poly.vertex(y));
    let s1 = cross(a, b, poly.vertex(poly.prev(v))).signum();
    let s2 = cross(a, b, poly.vertex(poly.next(v))).signum();
    u32::from(s1 * s2 < 0)
}

/// `tail + body + head` has the parity of the number of places where the
/// boundary passes from one side of line(x, y) to the other at `x` or `y`.
/// For a polygon edge `xy` the boundary runs along the line from `x` to `y`,
/// so that run is judged as a single passage.
pub fn parity_balance_holds(poly: &Polygon, table: &StabTable) -> bool {
    table.iter().all(|((x, y), t)| {
        let passages = if poly.next(x) == y || poly.next(y) == x {
            let (first, last) = if poly.next(x) == y { (x, y) } else { (y, x) };
            let (a, b) = (poly.vertex(x), poly.vertex(y));
            let s1 = cross(a, b, poly.vertex(poly.prev(first))).signum();
            let s2 = cross(a, b, poly.vertex(poly.next(last))).signum();
            u32::from(s1 * s2 < 0)
        } else {
            straddle(poly, x, y, x) + straddle(poly, x, y, y)
        };
        (t.tail + t.body + t.head) % 2 == passages % 2
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn convex_pentagon() -> Polygon {
        Polygon::from_coords(&[(0, 0), (4, -1), (6, 3), (2, 6), (-2, 3)]).unwrap()
    }

    #[test]
    fn zp_and_pp_reductions() {
        let t = StabTriple::new(3, 0, 4);
        assert_eq!(
            t.zp(),
            ZpTriple { tail: ZpClass::Odd, body: ZpClass::Zero, head: ZpClass::EvenPos }
        );
        assert_eq!(StabTriple::default().zp().head, ZpClass::Zero);
        assert_eq!(
            t.pp(),
            PpTriple { tail: PpClass::Odd, body: PpClass::Even, head: PpClass::Even }
        );
        for c in 0..20 {
            assert_eq!(ZpClass::of(c).to_pp(), PpClass::of(c));
        }
    }

    #[test]
    fn convex_polygon_table_is_all_zero() {
        let p = convex_pentagon();
        let st = stab_table(&p);
        assert!(st.iter().all(|(_, t)| t == StabTriple::default()));
        assert_eq!(visible_pairs(&zp_table(&st)).len(), 10);
        assert!(parity_balance_holds(&p, &st));
    }

    #[test]
    fn dented_square_counts() {
        let p = Polygon::from_coords(&[(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)]).unwrap();
        // Line through (0,0) and (4,4): edge (2,1)-(0,4) crosses it in the body.
        assert_eq!(stab_triple(&p, 0, 2), StabTriple::new(0, 1, 0));
        // Line through (4,0) and (2,1) continues to x = -2 at y = 3: it crosses
        // edge (0,4)-(0,0) beyond (2,1).
        assert_eq!(stab_triple(&p, 1, 3), StabTriple::new(0, 0, 1));
        assert_eq!(stab_triple(&p, 3, 1), StabTriple::new(1, 0, 0));
        let st = stab_table(&p);
        assert!(parity_balance_holds(&p, &st));
        assert!(!visible_pairs(&zp_table(&st)).contains(&(0, 2)));
    }
}

//! Consistency of zero-parity data with an abstract order type.
//!
//! Every quantity the classifier reasons about is a function of the
//! orientations of vertex triples: whether an edge crosses the Tail, Body or
//! Head of a line, and whether a visible pair runs inside the polygon. This
//! module encodes those functions as a SAT instance over one variable per
//! triple, fixes the crossing counts to the given ZP classes, and asks whether
//! a pair can take a given class. Orientation signs are additionally required
//! to form a uniform rank-3 chirotope (the three-term Grassmann-Plücker
//! relations), encoded once per five-point subset; there are about n^5 / 3
//! clauses, so callers keep n small.
//!
//! An unsatisfiable query means no point set, realisable or not, matches the
//! data with that class, so removing the class is sound. A satisfiable one
//! proves nothing about realisability and leaves the pair alone.

use std::collections::BTreeSet;

use crate::geom::Orientation;
use crate::polygon::VertexFlags;
use crate::stabbing::{ZpClass, ZpTable};

/// Conflict budget per query.
pub const CONFLICT_LIMIT: i32 = 200_000;

/// Triples of a sorted five-point set, in lexicographic order.
const LOCAL_TRIPLES: [[usize; 3]; 10] =
    [[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 2, 3], [0, 2, 4], [0, 3, 4], [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];

/// A smallest CNF for "the signs of the ten triples of five points satisfy the
/// three-term relations at all five pivots": literal `(t, 1)` says local
/// triple `t` turns left, `(t, -1)` that it turns right. Half the size of the
/// direct 16 clauses per pivot.
const FIVE_POINT_CLAUSES: [[(usize, i8); 6]; 40] = [
    [(0, 1), (1, 1), (2, 1), (3, 1), (4, -1), (5, 1)],
    [(0, 1), (1, 1), (2, 1), (3, -1), (4, 1), (5, -1)],
    [(0, 1), (1, 1), (2, -1), (6, 1), (7, 1), (8, -1)],
    [(0, 1), (1, 1), (2, -1), (6, -1), (7, -1), (8, 1)],
    [(0, 1), (1, -1), (2, 1), (6, 1), (7, 1), (8, 1)],
    [(0, 1), (1, -1), (2, 1), (6, -1), (7, -1), (8, -1)],
    [(0, 1), (1, -1), (2, -1), (3, 1), (4, -1), (5, -1)],
    [(0, 1), (1, -1), (2, -1), (3, -1), (4, 1), (5, 1)],
    [(0, 1), (3, 1), (4, 1), (6, 1), (7, -1), (9, 1)],
    [(0, 1), (3, 1), (4, 1), (6, -1), (7, 1), (9, -1)],
    [(0, 1), (3, -1), (4, -1), (6, 1), (7, -1), (9, -1)],
    [(0, 1), (3, -1), (4, -1), (6, -1), (7, 1), (9, 1)],
    [(0, -1), (1, 1), (2, 1), (6, 1), (7, -1), (8, -1)],
    [(0, -1), (1, 1), (2, 1), (6, -1), (7, 1), (8, 1)],
    [(0, -1), (1, 1), (2, -1), (3, 1), (4, 1), (5, 1)],
    [(0, -1), (1, 1), (2, -1), (3, -1), (4, -1), (5, -1)],
    [(0, -1), (1, -1), (2, 1), (3, 1), (4, 1), (5, -1)],
    [(0, -1), (1, -1), (2, 1), (3, -1), (4, -1), (5, 1)],
    [(0, -1), (1, -1), (2, -1), (6, 1), (7, -1), (8, 1)],
    [(0, -1), (1, -1), (2, -1), (6, -1), (7, 1), (8, -1)],
    [(0, -1), (3, 1), (4, -1), (6, 1), (7, 1), (9, 1)],
    [(0, -1), (3, 1), (4, -1), (6, -1), (7, -1), (9, -1)],
    [(0, -1), (3, -1), (4, 1), (6, 1), (7, 1), (9, -1)],
    [(0, -1), (3, -1), (4, 1), (6, -1), (7, -1), (9, 1)],
    [(1, 1), (3, 1), (5, -1), (6, 1), (8, 1), (9, -1)],
    [(1, 1), (3, 1), (5, -1), (6, -1), (8, -1), (9, 1)],
    [(1, 1), (3, -1), (5, 1), (6, 1), (8, 1), (9, 1)],
    [(1, 1), (3, -1), (5, 1), (6, -1), (8, -1), (9, -1)],
    [(1, -1), (3, 1), (5, 1), (6, 1), (8, -1), (9, -1)],
    [(1, -1), (3, 1), (5, 1), (6, -1), (8, 1), (9, 1)],
    [(1, -1), (3, -1), (5, -1), (6, 1), (8, -1), (9, 1)],
    [(1, -1), (3, -1), (5, -1), (6, -1), (8, 1), (9, -1)],
    [(2, 1), (4, 1), (5, 1), (7, 1), (8, -1), (9, 1)],
    [(2, 1), (4, 1), (5, 1), (7, -1), (8, 1), (9, -1)],
    [(2, 1), (4, -1), (5, -1), (7, 1), (8, -1), (9, -1)],
    [(2, 1), (4, -1), (5, -1), (7, -1), (8, 1), (9, 1)],
    [(2, -1), (4, 1), (5, -1), (7, 1), (8, 1), (9, 1)],
    [(2, -1), (4, 1), (5, -1), (7, -1), (8, -1), (9, -1)],
    [(2, -1), (4, -1), (5, 1), (7, 1), (8, 1), (9, -1)],
    [(2, -1), (4, -1), (5, 1), (7, -1), (8, -1), (9, 1)],
];

pub struct OrderTypeSat {
    n: usize,
    solver: cadical::Solver,
    next: i32,
    /// Literal that is true iff pair `x < y` is internal; 0 for non-candidates.
    internal: Vec<i32>,
}

/// Outcome of one query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    /// No chirotope satisfies the data together with the assumption.
    Infeasible,
    /// A chirotope does; the class of every candidate pair in it, `x < y`
    /// row-major, `true` for internal.
    Feasible(Vec<Option<bool>>),
    /// Budget exhausted.
    Unknown,
}

fn triple_rank(i: usize, j: usize, k: usize) -> usize {
    // Colex rank of the sorted triple i < j < k.
    let c2 = |m: usize| m * m.saturating_sub(1) / 2;
    let c3 = |m: usize| if m < 3 { 0 } else { m * (m - 1) * (m - 2) / 6 };
    c3(k) + c2(j) + i
}

impl OrderTypeSat {
    fn fresh(&mut self) -> i32 {
        self.next += 1;
        self.next
    }

    fn clause(&mut self, lits: &[i32]) {
        self.solver.add_clause(lits.iter().copied());
    }

    /// Literal true iff `(a, b, c)` turns left.
    pub fn chi(&self, a: usize, b: usize, c: usize) -> i32 {
        let mut t = [a, b, c];
        let mut swaps = 0;
        for i in 0..3 {
            for j in 0..2 - i {
                if t[j] > t[j + 1] {
                    t.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        let v = 1 + triple_rank(t[0], t[1], t[2]) as i32;
        if swaps % 2 == 0 {
            v
        } else {
            -v
        }
    }

    fn xor(&mut self, a: i32, b: i32) -> i32 {
        let z = self.fresh();
        self.clause(&[-z, a, b]);
        self.clause(&[-z, -a, -b]);
        self.clause(&[z, -a, b]);
        self.clause(&[z, a, -b]);
        z
    }

    fn and(&mut self, lits: &[i32]) -> i32 {
        let z = self.fresh();
        for &l in lits {
            self.clause(&[-z, l]);
        }
        let mut big: Vec<i32> = lits.iter().map(|&l| -l).collect();
        big.push(z);
        self.clause(&big);
        z
    }

    /// `p` strictly inside triangle `abc`.
    fn in_triangle(&mut self, p: usize, a: usize, b: usize, c: usize) -> i32 {
        let (s1, s2, s3) = (self.chi(a, b, p), self.chi(b, c, p), self.chi(c, a, p));
        let e1 = self.xor(s1, s2);
        let e2 = self.xor(s2, s3);
        self.and(&[-e1, -e2])
    }

    /// Constrains the crossing indicators to the given class.
    fn count_class(&mut self, lits: &[i32], class: ZpClass) {
        if class == ZpClass::Zero {
            for &l in lits {
                self.clause(&[-l]);
            }
            return;
        }
        if lits.is_empty() {
            let f = self.fresh();
            self.clause(&[f]);
            self.clause(&[-f]);
            return;
        }
        let mut acc = lits[0];
        for &l in &lits[1..] {
            acc = self.xor(acc, l);
        }
        if class == ZpClass::Odd {
            self.clause(&[acc]);
        } else {
            self.clause(&[-acc]);
            self.clause(lits);
        }
    }

    /// Builds the instance. `candidates` are the visible non-edge pairs `x < y`
    /// whose class may be queried.
    pub fn new(zp: &ZpTable, flags: &VertexFlags, candidates: &BTreeSet<(usize, usize)>) -> Self {
        let all: Vec<usize> = (0..zp.n()).collect();
        Self::with_window(zp, flags, candidates, &all)
    }

    /// Like [`OrderTypeSat::new`], keeping only the crossing counts of pairs
    /// inside `window` and the chirotope clauses of five-point subsets of it.
    /// Fewer clauses only weaken the instance, so an infeasible query is still
    /// conclusive. Only pairs inside the window can be queried.
    pub fn with_window(zp: &ZpTable, flags: &VertexFlags, candidates: &BTreeSet<(usize, usize)>, window: &[usize]) -> Self {
        let n = zp.n();
        let triples = if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 };
        let mut s = OrderTypeSat { n, solver: cadical::Solver::new(), next: triples as i32, internal: vec![0; n * n] };
        let prev = |v: usize| (v + n - 1) % n;
        let next = |v: usize| (v + 1) % n;

        for v in 0..n {
            let l = s.chi(prev(v), v, next(v));
            s.clause(&[if flags.convex[v] { l } else { -l }]);
        }
        let h = &flags.hull;
        for i in 0..h.len() {
            let (a, b) = (h[i], h[(i + 1) % h.len()]);
            for p in 0..n {
                if p != a && p != b {
                    let l = s.chi(a, b, p);
                    s.clause(&[l]);
                }
            }
        }

        let mut inside = vec![false; n];
        for &v in window {
            inside[v] = true;
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if !(inside[x] && inside[y]) {
                    continue;
                }
                let (mut tail, mut body, mut head) = (Vec::new(), Vec::new(), Vec::new());
                for u in 0..n {
                    let v = next(u);
                    if [u, v].iter().any(|&w| w == x || w == y) {
                        continue;
                    }
                    let sep_line = {
                        let (a, b) = (s.chi(x, y, u), s.chi(x, y, v));
                        s.xor(a, b)
                    };
                    let sep_edge = {
                        let (a, b) = (s.chi(u, v, x), s.chi(u, v, y));
                        s.xor(a, b)
                    };
                    let t = zp.get(x, y);
                    // Skip building indicators a Zero class already forbids outright.
                    let b = s.and(&[sep_line, sep_edge]);
                    body.push(b);
                    if t.tail == ZpClass::Zero {
                        let tl = s.in_triangle(x, y, u, v);
                        s.clause(&[-tl]);
                    } else {
                        tail.push(s.in_triangle(x, y, u, v));
                    }
                    if t.head == ZpClass::Zero {
                        let hl = s.in_triangle(y, x, u, v);
                        s.clause(&[-hl]);
                    } else {
                        head.push(s.in_triangle(y, x, u, v));
                    }
                }
                let t = zp.get(x, y);
                s.count_class(&body, t.body);
                s.count_class(&tail, t.tail);
                s.count_class(&head, t.head);

                if candidates.contains(&(x, y)) {
                    // Just past x the line is inside iff Tail is odd; crossing x
                    // flips that iff x's neighbours straddle the line. Same at y.
                    let sx = {
                        let (a, b) = (s.chi(x, y, prev(x)), s.chi(x, y, next(x)));
                        s.xor(a, b)
                    };
                    let sy = {
                        let (a, b) = (s.chi(x, y, prev(y)), s.chi(x, y, next(y)));
                        s.xor(a, b)
                    };
                    let from_x = if t.tail == ZpClass::Odd { -sx } else { sx };
                    let from_y = if t.head == ZpClass::Odd { -sy } else { sy };
                    s.clause(&[-from_x, from_y]);
                    s.clause(&[from_x, -from_y]);
                    s.internal[x * n + y] = from_x;
                }
            }
        }
        let mut window = window.to_vec();
        window.sort_unstable();
        window.dedup();
        s.add_five_point_clauses(&window);
        s
    }

    fn value(&self, lit: i32) -> bool {
        self.solver.value(lit).unwrap_or(false)
    }

    /// Chirotope clauses on every five-point subset of the sorted `pts`.
    fn add_five_point_clauses(&mut self, pts: &[usize]) {
        let n = pts.len();
        let mut local = [0i32; 10];
        for p4 in 4..n {
            for p3 in 3..p4 {
                for p2 in 2..p3 {
                    for p1 in 1..p2 {
                        for p0 in 0..p1 {
                            let p = [pts[p0], pts[p1], pts[p2], pts[p3], pts[p4]];
                            for (t, l) in LOCAL_TRIPLES.iter().zip(local.iter_mut()) {
                                *l = self.chi(p[t[0]], p[t[1]], p[t[2]]);
                            }
                            for clause in &FIVE_POINT_CLAUSES {
                                self.solver.add_clause(clause.iter().map(|&(t, sign)| sign as i32 * local[t]));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Permanently fixes the class of a candidate pair.
    pub fn fix(&mut self, x: usize, y: usize, internal: bool) {
        let l = self.internal[x.min(y) * self.n + x.max(y)];
        assert!(l != 0, "pair ({x}, {y}) is not a candidate");
        self.clause(&[if internal { l } else { -l }]);
    }

    /// Can pair `(x, y)` be internal (`true`) or external (`false`)?
    pub fn query(&mut self, x: usize, y: usize, internal: bool) -> Query {
        self.query_with_limit(x, y, internal, CONFLICT_LIMIT)
    }

    /// [`OrderTypeSat::query`] with an explicit conflict budget.
    pub fn query_with_limit(&mut self, x: usize, y: usize, internal: bool, conflicts: i32) -> Query {
        let l = self.internal[x.min(y) * self.n + x.max(y)];
        assert!(l != 0, "pair ({x}, {y}) is not a candidate");
        let assume = if internal { l } else { -l };
        let _ = self.solver.set_limit("conflicts", conflicts);
        match self.solver.solve_with([assume]) {
            Some(false) => Query::Infeasible,
            None => Query::Unknown,
            Some(true) => Query::Feasible(self.internal.iter().map(|&l| (l != 0).then(|| self.value(l))).collect()),
        }
    }

    /// Solves with the given orientation of every triple fixed; used to check
    /// that a real polygon satisfies the encoding.
    pub fn accepts(&mut self, orient: impl Fn(usize, usize, usize) -> Orientation) -> bool {
        let n = self.n;
        let mut assumptions = Vec::new();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let l = self.chi(i, j, k);
                    assumptions.push(if orient(i, j, k) == Orientation::Left { l } else { -l });
                }
            }
        }
        self.solver.solve_with(assumptions) == Some(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::orient;
    use crate::oracle::generate::{generate_random_polygon, Style};
    use crate::polygon::vertex_flags;
    use crate::stabbing::{stab_table, zp_table, visible_pairs};
    use crate::visibility::{visibility_oracle, VisClass};

    #[test]
    fn ranks_are_a_bijection() {
        let n = 9;
        let mut seen = BTreeSet::new();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    assert!(seen.insert(triple_rank(i, j, k)));
                }
            }
        }
        assert_eq!(seen.len(), 84);
        assert_eq!(*seen.iter().max().unwrap(), 83);
    }

    #[test]
    fn five_point_clauses_match_the_relations() {
        // Sign of any permutation of local points via the sorted triple.
        let sign = |bits: u32, t: [usize; 3]| -> i8 {
            let mut s = t;
            let mut swaps = 0;
            for i in 0..3 {
                for j in 0..2 - i {
                    if s[j] > s[j + 1] {
                        s.swap(j, j + 1);
                        swaps += 1;
                    }
                }
            }
            let k = LOCAL_TRIPLES.iter().position(|&u| u == s).unwrap();
            let v = if bits >> k & 1 == 1 { 1 } else { -1 };
            if swaps % 2 == 0 {
                v
            } else {
                -v
            }
        };
        let mut valid = 0;
        for bits in 0u32..1024 {
            let relations = (0..5).all(|a| {
                let o: Vec<usize> = (0..5).filter(|&v| v != a).collect();
                let (b, c, d, e) = (o[0], o[1], o[2], o[3]);
                let p1 = sign(bits, [a, b, c]) * sign(bits, [a, d, e]);
                let p2 = -sign(bits, [a, b, d]) * sign(bits, [a, c, e]);
                let p3 = sign(bits, [a, b, e]) * sign(bits, [a, c, d]);
                !(p1 == p2 && p2 == p3)
            });
            let clauses = FIVE_POINT_CLAUSES
                .iter()
                .all(|cl| cl.iter().any(|&(t, s)| (bits >> t & 1 == 1) == (s > 0)));
            assert_eq!(relations, clauses, "signs {bits:010b}");
            valid += relations as usize;
        }
        assert_eq!(valid, 384);
    }

    #[test]
    fn real_polygons_satisfy_the_encoding() {
        for seed in 0..12 {
            let p = generate_random_polygon(7 + seed as usize % 6, seed, Style::Generic).unwrap();
            let zp = zp_table(&stab_table(&p));
            let flags = vertex_flags(&p);
            let vis = visibility_oracle(&p);
            let cand: BTreeSet<_> = visible_pairs(&zp).into_iter().filter(|&(x, y)| !p.is_edge(x, y)).collect();
            let mut sat = OrderTypeSat::new(&zp, &flags, &cand);
            let pts = p.vertices().to_vec();
            assert!(sat.accepts(|i, j, k| orient(pts[i], pts[j], pts[k])), "seed {seed}");
            // The true class is always feasible.
            for &(x, y) in &cand {
                let internal = vis.get(x, y) == VisClass::Internal;
                assert_ne!(sat.query(x, y, internal), Query::Infeasible, "seed {seed} pair ({x}, {y})");
            }
        }
    }
}

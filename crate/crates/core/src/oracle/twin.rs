//! Simulated annealing for "ZP twins": polygons with the same vertex count,
//! ZP table and vertex flags as a reference polygon but a different
//! visibility class for one chosen pair.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{cross, ray_line_component, segments_properly_cross, Component, Point};
use crate::polygon::{convex_hull, vertex_flags, Polygon, VertexFlags};
use crate::stabbing::{stab_triple, StabTriple, ZpTriple};
use crate::visibility::{classify_pair, VisClass};

/// ZP entries for `x < y` only; the table is symmetric under reversal.
fn zp_upper(poly: &Polygon) -> Vec<ZpTriple> {
    let n = poly.n();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for x in 0..n {
        for y in (x + 1)..n {
            out.push(stab_triple(poly, x, y).zp());
        }
    }
    out
}

fn flag_mismatch(a: &VertexFlags, b: &VertexFlags) -> usize {
    (0..a.n()).filter(|&i| a.convex[i] != b.convex[i] || a.on_hull[i] != b.on_hull[i]).count()
}

/// Reference data a candidate is scored against.
pub struct TwinTarget {
    zp: Vec<ZpTriple>,
    flags: VertexFlags,
    pair: (usize, usize),
    class: VisClass,
}

impl TwinTarget {
    pub fn new(reference: &Polygon, pair: (usize, usize), class: VisClass) -> Self {
        TwinTarget { zp: zp_upper(reference), flags: vertex_flags(reference), pair, class }
    }

    /// Mismatched ZP entries plus mismatched vertex flags, or `None` when the
    /// candidate breaks the hard constraint on the chosen pair.
    pub fn cost(&self, cand: &Polygon) -> Option<usize> {
        if classify_pair(cand, self.pair.0, self.pair.1) != self.class {
            return None;
        }
        let zp = zp_upper(cand);
        let table = zp.iter().zip(&self.zp).filter(|(a, b)| a != b).count();
        Some(table + 4 * flag_mismatch(&vertex_flags(cand), &self.flags))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AnnealParams {
    pub iterations: u64,
    pub start_temp: f64,
    /// Largest single-coordinate move.
    pub max_step: i64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        AnnealParams { iterations: 200_000, start_temp: 2.0, max_step: 256 }
    }
}

fn area2(pts: &[Point]) -> i128 {
    (0..pts.len())
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
        })
        .sum()
}

/// Keeps vertex labels: a move that would flip orientation is rejected.
fn rebuild(pts: &[Point]) -> Option<Polygon> {
    if area2(pts) <= 0 {
        return None;
    }
    Polygon::new(pts.to_vec()).ok()
}

/// Whether moving vertex `v` of a valid polygon to `p` keeps it simple, in
/// general position and counterclockwise. O(n^2).
fn move_is_valid(pts: &[Point], v: usize, p: Point) -> bool {
    let n = pts.len();
    if !p.in_range() {
        return false;
    }
    for a in 0..n {
        if a == v {
            continue;
        }
        if pts[a] == p {
            return false;
        }
        for b in (a + 1)..n {
            if b != v && cross(pts[a], pts[b], p) == 0 {
                return false;
            }
        }
    }
    let (prev, next) = ((v + n - 1) % n, (v + 1) % n);
    for (a, b) in [(prev, v), (v, next)] {
        let (pa, pb) = (if a == v { p } else { pts[a] }, if b == v { p } else { pts[b] });
        for i in 0..n {
            let j = (i + 1) % n;
            if i == a || i == b || j == a || j == b {
                continue;
            }
            if segments_properly_cross(pa, pb, pts[i], pts[j]) {
                return false;
            }
        }
    }
    let mut moved = pts.to_vec();
    moved[v] = p;
    area2(&moved) > 0
}

/// Component of line(a, b) hit by edge `(i, i+1)`, `None` when incident or missing.
fn hit(pts: &[Point], a: usize, b: usize, i: usize) -> Option<Component> {
    let n = pts.len();
    let j = (i + 1) % n;
    if i == a || i == b || j == a || j == b {
        return None;
    }
    ray_line_component(pts[a], pts[b], pts[i], pts[j]).expect("general position is maintained")
}

fn bump(t: &mut StabTriple, c: Option<Component>, up: bool) {
    let slot = match c {
        Some(Component::Tail) => &mut t.tail,
        Some(Component::Body) => &mut t.body,
        Some(Component::Head) => &mut t.head,
        None => return,
    };
    if up {
        *slot += 1;
    } else {
        *slot -= 1;
    }
}

/// Full stab counts for `x < y`, updated one vertex move at a time.
struct Counts {
    n: usize,
    t: Vec<StabTriple>,
}

impl Counts {
    fn new(pts: &[Point]) -> Self {
        let n = pts.len();
        let mut t = vec![StabTriple::default(); n * n];
        for x in 0..n {
            for y in (x + 1)..n {
                let e = &mut t[x * n + y];
                for i in 0..n {
                    bump(e, hit(pts, x, y, i), true);
                }
            }
        }
        Counts { n, t }
    }

    /// `old` and `new` differ only at vertex `v`.
    fn update(&mut self, old: &[Point], new: &[Point], v: usize) {
        let n = self.n;
        let prev = (v + n - 1) % n;
        for x in 0..n {
            for y in (x + 1)..n {
                let e = &mut self.t[x * n + y];
                if x == v || y == v {
                    *e = StabTriple::default();
                    for i in 0..n {
                        bump(e, hit(new, x, y, i), true);
                    }
                } else {
                    for i in [prev, v] {
                        bump(e, hit(old, x, y, i), false);
                        bump(e, hit(new, x, y, i), true);
                    }
                }
            }
        }
    }
}

fn flags_of(pts: &[Point]) -> (Vec<bool>, Vec<bool>) {
    let n = pts.len();
    let convex = (0..n).map(|v| cross(pts[(v + n - 1) % n], pts[v], pts[(v + 1) % n]) > 0).collect();
    let mut on_hull = vec![false; n];
    for h in convex_hull(pts, &(0..n).collect::<Vec<_>>()) {
        on_hull[h] = true;
    }
    (convex, on_hull)
}

impl TwinTarget {
    fn cost_of(&self, pts: &[Point], counts: &Counts) -> usize {
        let n = counts.n;
        let mut k = 0;
        let mut idx = 0;
        for x in 0..n {
            for y in (x + 1)..n {
                if counts.t[x * n + y].zp() != self.zp[idx] {
                    k += 1;
                }
                idx += 1;
            }
        }
        let (convex, on_hull) = flags_of(pts);
        k + 4 * (0..n).filter(|&i| convex[i] != self.flags.convex[i] || on_hull[i] != self.flags.on_hull[i]).count()
    }
}

/// Anneals vertex positions starting from `start`, which must satisfy the
/// hard constraint. Returns the best polygon found and its cost; cost 0 means
/// a twin was found.
pub fn anneal(start: &Polygon, target: &TwinTarget, params: AnnealParams, seed: u64) -> Option<(Polygon, usize)> {
    target.cost(start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = start.n();
    let mut pts = start.vertices().to_vec();
    let mut counts = Counts::new(&pts);
    let mut cur_cost = target.cost_of(&pts, &counts);
    let mut best = (pts.clone(), cur_cost);
    let max_log = params.max_step.max(1).ilog2();
    for it in 0..params.iterations {
        if best.1 == 0 {
            break;
        }
        let temp = params.start_temp * (1.0 - it as f64 / params.iterations as f64) + 1e-3;
        let v = rng.gen_range(0..n);
        let step = 1i64 << rng.gen_range(0..=max_log);
        let p = pts[v] + Point::new(rng.gen_range(-step..=step), rng.gen_range(-step..=step));
        if !move_is_valid(&pts, v, p) {
            continue;
        }
        let mut cand = pts.clone();
        cand[v] = p;
        let (a, b) = target.pair;
        let poly = Polygon::new(cand.clone()).expect("validated move");
        if classify_pair(&poly, a, b) != target.class {
            continue;
        }
        let mut cand_counts = Counts { n, t: counts.t.clone() };
        cand_counts.update(&pts, &cand, v);
        let c = target.cost_of(&cand, &cand_counts);
        let accept = c <= cur_cost || rng.gen::<f64>() < (-((c - cur_cost) as f64) / temp).exp();
        if accept {
            pts = cand;
            counts = cand_counts;
            cur_cost = c;
            if c < best.1 {
                best = (pts.clone(), c);
            }
        }
    }
    Some((Polygon::new(best.0).expect("annealing keeps the polygon valid"), best.1))
}

/// Scales every coordinate, leaving room for small moves.
pub fn scaled(poly: &Polygon, factor: i64) -> Polygon {
    Polygon::new(poly.vertices().iter().map(|p| Point::new(p.x * factor, p.y * factor)).collect())
        .expect("scaling preserves simplicity and general position")
}

/// Replaces the interior of `chain` by points spread along the segment
/// between its endpoints, pushed `offset` lattice units to one side (the sign
/// picks the side), with jitter. A visible pair keeps a thin free
/// neighbourhood, so this usually yields a simple polygon.
pub fn flattened_chain(poly: &Polygon, chain: crate::polygon::Chain, offset: f64, seed: u64) -> Option<Polygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = poly.n();
    let (a, b) = (poly.vertex(chain.from), poly.vertex(chain.to));
    let (dx, dy) = ((b.x - a.x) as f64, (b.y - a.y) as f64);
    let len = (dx * dx + dy * dy).sqrt();
    let (nx, ny) = (-dy / len, dx / len);
    let inner: Vec<usize> = chain.interior(n).collect();
    let k = inner.len() as f64;
    let mut pts = poly.vertices().to_vec();
    for (i, &v) in inner.iter().enumerate() {
        let t = (i as f64 + 1.0) / (k + 1.0);
        let off = offset * rng.gen_range(0.5..1.5);
        let px = a.x as f64 + t * dx + off * nx + rng.gen_range(-1.0..1.0);
        let py = a.y as f64 + t * dy + off * ny + rng.gen_range(-1.0..1.0);
        pts[v] = Point::new(px.round() as i64, py.round() as i64);
    }
    rebuild(&pts)
}

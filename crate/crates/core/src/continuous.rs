//! Zero-parity functions on densely sampled smooth closed curves.
//!
//! A curve is a closed polyline of `M` samples at parameters `i / M`. For a
//! basepoint sample `x`, `B_x(y)`, `T_x(y)` and `H_x(y)` are the ZP classes of
//! the number of polyline crossings of the open segment `xy`, of the ray
//! beyond `x` and of the ray beyond `y`. Floating point is used here, with a
//! guard band: a polyline vertex within the tolerance of the line raises
//! [`ContinuousError::DegenerateTangency`] instead of being guessed.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stabbing::ZpClass;

/// Largest turning angle allowed between consecutive sample edges.
pub const DEFAULT_MAX_TURN: f64 = 0.25;
/// Relative distance from a line below which a vertex counts as touching it.
pub const TANGENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error, Serialize, Deserialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum ContinuousError {
    #[error("curve needs at least 8 samples, got {count}")]
    TooFewSamples { count: usize },
    #[error("sample {index} is not finite")]
    NonFinite { index: usize },
    #[error("curve is not closed")]
    NotClosed,
    #[error("polyline edges {a} and {b} intersect")]
    SelfIntersecting { a: usize, b: usize },
    #[error("turning angle {angle:.3} at sample {index} exceeds {bound:.3}; sample more densely")]
    TooCoarse { index: usize, angle: f64, bound: f64 },
    #[error("chord is tangent to the curve near t = {t} at sample resolution")]
    DegenerateTangency { t: f64 },
    #[error("samples {x} and {y} do not see each other")]
    NotVisible { x: usize, y: usize },
    #[error("samples {x} and {y} are adjacent; their segment is part of the curve")]
    Adjacent { x: usize, y: usize },
    #[error("sample index {index} out of range for {m} samples")]
    BadIndex { index: usize, m: usize },
}

/// A closed curve sampled counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    points: Vec<[f64; 2]>,
    /// Smallest radius of the circle through three consecutive samples.
    min_radius: f64,
}

/// Curve file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub samples: Vec<[f64; 2]>,
    pub closed: bool,
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross2(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    cross2(sub(b, a), sub(c, a))
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn proper_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let d1 = orient(p1, p2, q1);
    let d2 = orient(p1, p2, q2);
    let d3 = orient(q1, q2, p1);
    let d4 = orient(q1, q2, p2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

impl CurveSample {
    /// Validates the samples: finite, simple at sample resolution, and no
    /// turn sharper than `max_turn`. Clockwise input is reversed.
    pub fn new(mut points: Vec<[f64; 2]>, max_turn: f64) -> Result<Self, ContinuousError> {
        let m = points.len();
        if m < 8 {
            return Err(ContinuousError::TooFewSamples { count: m });
        }
        if let Some(index) = points.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(ContinuousError::NonFinite { index });
        }
        let area: f64 = (0..m).map(|i| cross2(points[i], points[(i + 1) % m])).sum();
        if area < 0.0 {
            points[1..].reverse();
        }
        let mut min_radius = f64::INFINITY;
        for i in 0..m {
            let (a, b, c) = (points[(i + m - 1) % m], points[i], points[(i + 1) % m]);
            let (u, v) = (sub(b, a), sub(c, b));
            let angle = cross2(u, v).atan2(u[0] * v[0] + u[1] * v[1]).abs();
            if angle > max_turn {
                return Err(ContinuousError::TooCoarse { index: i, angle, bound: max_turn });
            }
            let twice_area = orient(a, b, c).abs();
            if twice_area > 0.0 {
                min_radius = min_radius.min(dist(a, b) * dist(b, c) * dist(a, c) / (2.0 * twice_area));
            }
        }
        let curve = CurveSample { points, min_radius };
        curve.check_simple()?;
        Ok(curve)
    }

    pub fn from_file(f: &CurveFile) -> Result<Self, ContinuousError> {
        if !f.closed {
            return Err(ContinuousError::NotClosed);
        }
        Self::new(f.samples.clone(), DEFAULT_MAX_TURN)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile { samples: self.points.clone(), closed: true }
    }

    /// Grid bucketing keeps this near linear for dense samples.
    fn check_simple(&self) -> Result<(), ContinuousError> {
        let m = self.m();
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &self.points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let cells = (m as f64).sqrt().ceil().max(1.0) as usize;
        let cell = |v: f64, k: usize| (((v - lo[k]) / (hi[k] - lo[k] + 1e-300)) * cells as f64).min(cells as f64 - 1.0) as usize;
        let mut grid: Vec<Vec<usize>> = vec![Vec::new(); cells * cells];
        for i in 0..m {
            let (a, b) = (self.points[i], self.points[(i + 1) % m]);
            let (x0, x1) = (cell(a[0].min(b[0]), 0), cell(a[0].max(b[0]), 0));
            let (y0, y1) = (cell(a[1].min(b[1]), 1), cell(a[1].max(b[1]), 1));
            for gx in x0..=x1 {
                for gy in y0..=y1 {
                    grid[gx * cells + gy].push(i);
                }
            }
        }
        for bucket in &grid {
            for (k, &i) in bucket.iter().enumerate() {
                for &j in &bucket[k + 1..] {
                    if (i + 1) % m == j || (j + 1) % m == i {
                        continue;
                    }
                    let (a, b) = (self.points[i], self.points[(i + 1) % m]);
                    let (c, d) = (self.points[j], self.points[(j + 1) % m]);
                    if proper_cross(a, b, c, d) {
                        return Err(ContinuousError::SelfIntersecting { a: i.min(j), b: i.max(j) });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn param(&self, i: usize) -> f64 {
        i as f64 / self.m() as f64
    }

    /// Nearest sample index to parameter `t`.
    pub fn index_of(&self, t: f64) -> usize {
        ((t.rem_euclid(1.0) * self.m() as f64).round() as usize) % self.m()
    }

    pub fn min_radius(&self) -> f64 {
        self.min_radius
    }

    fn scale(&self) -> f64 {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &self.points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (hi[0] - lo[0]).max(hi[1] - lo[1])
    }

    fn check_index(&self, i: usize) -> Result<(), ContinuousError> {
        if i < self.m() {
            Ok(())
        } else {
            Err(ContinuousError::BadIndex { index: i, m: self.m() })
        }
    }

    /// Raw crossing counts `(tail, body, head)` for the line through samples
    /// `x` and `y`, skipping edges incident to either.
    pub fn counts(&self, x: usize, y: usize) -> Result<(u32, u32, u32), ContinuousError> {
        let m = self.m();
        let (a, b) = (self.points[x], self.points[y]);
        let d = sub(b, a);
        let len = d[0].hypot(d[1]);
        let tol = TANGENCY_TOL * self.scale() * len;
        let side = |p: [f64; 2]| cross2(d, sub(p, a));
        let mut out = (0, 0, 0);
        for i in 0..m {
            let j = (i + 1) % m;
            if i == x || i == y || j == x || j == y {
                continue;
            }
            let (p, q) = (self.points[i], self.points[j]);
            let (sp, sq) = (side(p), side(q));
            for (s, k) in [(sp, i), (sq, j)] {
                if s.abs() <= tol {
                    return Err(ContinuousError::DegenerateTangency { t: self.param(k) });
                }
            }
            if (sp > 0.0) == (sq > 0.0) {
                continue;
            }
            // Crossing point a + t d.
            let e = sub(q, p);
            let t = cross2(sub(p, a), e) / cross2(d, e);
            if t < 0.0 {
                out.0 += 1;
            } else if t < 1.0 {
                out.1 += 1;
            } else {
                out.2 += 1;
            }
        }
        Ok(out)
    }

    fn classes(&self, x: usize, y: usize) -> Result<[ZpClass; 3], ContinuousError> {
        let (t, b, h) = self.counts(x, y)?;
        Ok([ZpClass::of(t), ZpClass::of(b), ZpClass::of(h)])
    }
}

/// Ellipse with semi-axes `a`, `b`.
pub fn ellipse(a: f64, b: f64, m: usize) -> CurveSample {
    let pts = (0..m)
        .map(|i| {
            let th = 2.0 * PI * i as f64 / m as f64;
            [a * th.cos(), b * th.sin()]
        })
        .collect();
    CurveSample::new(pts, PI).expect("ellipse samples form a simple convex polygon")
}

/// Radial curve `r(theta)` stretched horizontally by `sx`.
fn radial(m: usize, sx: f64, r: impl Fn(f64) -> f64) -> Vec<[f64; 2]> {
    (0..m)
        .map(|i| {
            let th = 2.0 * PI * i as f64 / m as f64;
            let rr = r(th);
            [sx * rr * th.cos(), rr * th.sin()]
        })
        .collect()
}

/// An oval with one smooth dent in its upper side.
pub fn bean(m: usize) -> CurveSample {
    let pts = radial(m, 1.6, |th| {
        let d = (th - PI / 2.0 + PI).rem_euclid(2.0 * PI) - PI;
        1.0 - 0.45 * (-d * d / 0.18).exp()
    });
    CurveSample::new(pts, PI).expect("bean samples form a simple polygon")
}

/// A smooth star with `arms` rounded points.
pub fn star(m: usize, arms: u32) -> CurveSample {
    let pts = radial(m, 1.0, |th| 1.0 + 0.3 * (arms as f64 * th).cos());
    CurveSample::new(pts, PI).expect("star samples form a simple polygon")
}

/// Maximal runs of one class, as half-open parameter intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub from: f64,
    pub to: f64,
    pub class: ZpClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscontinuityPattern {
    pub at: f64,
    pub before: ZpClass,
    pub value: ZpClass,
    pub after: ZpClass,
}

impl DiscontinuityPattern {
    /// Whether a chord rule speaks to this pattern: `z/z/o`, `o/z/z`,
    /// `o/z/e` and `e/z/o`. Patterns at a non-visible `y` are not chord patterns.
    pub fn is_named(&self) -> bool {
        use ZpClass::*;
        self.value != Zero
            || matches!((self.before, self.after), (Zero, Odd) | (Odd, Zero) | (Odd, EvenPos) | (EvenPos, Odd))
    }

    /// `o/z/e` style label.
    pub fn label(&self) -> String {
        format!("{}/{}/{}", self.before.letter(), self.value.letter(), self.after.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZpFunction {
    pub x: f64,
    pub body: Vec<Piece>,
    pub tail: Vec<Piece>,
    pub head: Vec<Piece>,
    /// Class changes of `B_x` at sample resolution.
    pub body_discontinuities: Vec<DiscontinuityPattern>,
    /// Discontinuities at a visible `y` that neither chord rule names.
    pub other_patterns: Vec<DiscontinuityPattern>,
}

/// Runs of equal class in sample order from `x + 1`; a run never crosses
/// parameter 0, so every piece has `from < to <= 1`.
fn pieces(curve: &CurveSample, vals: &[(usize, ZpClass)]) -> Vec<Piece> {
    let m = curve.m() as f64;
    let mut out: Vec<Piece> = Vec::new();
    for &(y, class) in vals {
        let (from, to) = (y as f64 / m, (y + 1) as f64 / m);
        match out.last_mut() {
            Some(p) if p.class == class && p.to == from => p.to = to,
            _ => out.push(Piece { from, to, class }),
        }
    }
    out
}

/// `B`, `T`, `H` for basepoint sample `x` over every other sample.
pub fn zp_functions(curve: &CurveSample, x: usize) -> Result<ZpFunction, ContinuousError> {
    curve.check_index(x)?;
    let m = curve.m();
    let ys: Vec<usize> = (1..m).map(|k| (x + k) % m).collect();
    let mut cls = Vec::with_capacity(m - 1);
    for &y in &ys {
        cls.push((y, curve.classes(x, y)?));
    }
    let pick = |k: usize| cls.iter().map(|&(y, c)| (y, c[k])).collect::<Vec<_>>();
    let body = pick(1);
    let mut disc = Vec::new();
    for w in body.windows(3) {
        let (b, v, a) = (w[0].1, w[1].1, w[2].1);
        if !(b == v && v == a) {
            disc.push(DiscontinuityPattern { at: curve.param(w[1].0), before: b, value: v, after: a });
        }
    }
    let other_patterns = disc.iter().copied().filter(|d| !d.is_named()).collect();
    Ok(ZpFunction {
        other_patterns,
        x: curve.param(x),
        body: pieces(curve, &body),
        tail: pieces(curve, &pick(0)),
        head: pieces(curve, &pick(2)),
        body_discontinuities: disc,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChordClass {
    Internal,
    External,
    Unclassifiable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChordRule {
    /// `o/z/e` in `B_x` at `y`.
    OzeDiscontinuity,
    /// `e/z/o` in `B_x` at `y`.
    EzoDiscontinuity,
    /// Parity of `H_x` on an adjacent interval where `B_x` is zero.
    AdjacentHead,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChordResult {
    pub x: usize,
    pub y: usize,
    pub class: ChordClass,
    pub rule: ChordRule,
    /// Side of `y` the interval was taken from, `+1` or `-1`.
    pub side: i8,
}

/// The discontinuity rule for `B_x` values just before and after a visible `y`.
pub fn pattern_rule(before: ZpClass, after: ZpClass) -> Option<(ChordClass, ChordRule)> {
    match (before, after) {
        (ZpClass::Odd, ZpClass::EvenPos) => Some((ChordClass::External, ChordRule::OzeDiscontinuity)),
        (ZpClass::EvenPos, ZpClass::Odd) => Some((ChordClass::Internal, ChordRule::EzoDiscontinuity)),
        _ => None,
    }
}

/// Samples in the interval next to `y` used by the adjacent-head rule.
const INTERVAL: usize = 2;

/// Classifies chord `xy` from ZP values alone. `B_x(y)` must be zero.
pub fn classify_chord(curve: &CurveSample, x: usize, y: usize) -> Result<ChordResult, ContinuousError> {
    curve.check_index(x)?;
    curve.check_index(y)?;
    let m = curve.m();
    if (x + 1) % m == y || (y + 1) % m == x {
        return Err(ContinuousError::Adjacent { x, y });
    }
    if x == y || curve.classes(x, y)?[1] != ZpClass::Zero {
        return Err(ContinuousError::NotVisible { x, y });
    }
    let at = |k: isize| (y as isize + k).rem_euclid(m as isize) as usize;
    let result = |class, rule, side| ChordResult { x, y, class, rule, side };
    // Values of B next to y; the basepoint and its neighbours say nothing.
    let usable = |s: usize| s != x && (s + 1) % m != x && (x + 1) % m != s;
    if usable(at(-1)) && usable(at(1)) {
        let before = curve.classes(x, at(-1))?[1];
        let after = curve.classes(x, at(1))?[1];
        if let Some((class, rule)) = pattern_rule(before, after) {
            return Ok(result(class, rule, 0));
        }
    }
    let mut verdicts = Vec::new();
    for side in [1isize, -1] {
        let samples: Vec<usize> = (1..=INTERVAL as isize).map(|k| at(side * k)).collect();
        if !samples.iter().all(|&s| usable(s)) {
            continue;
        }
        let mut heads = Vec::new();
        let mut ok = true;
        for &s in &samples {
            match curve.classes(x, s) {
                Ok([_, ZpClass::Zero, h]) => heads.push(h),
                Ok(_) => ok = false,
                // A tangency inside the interval disqualifies this side only.
                Err(ContinuousError::DegenerateTangency { .. }) => ok = false,
                Err(e) => return Err(e),
            }
        }
        if ok && heads.windows(2).all(|w| w[0] == w[1]) {
            let class = if heads[0] == ZpClass::Odd { ChordClass::External } else { ChordClass::Internal };
            verdicts.push((class, side as i8));
        }
    }
    Ok(match verdicts.as_slice() {
        [] => result(ChordClass::Unclassifiable, ChordRule::None, 0),
        [(c, s)] => result(*c, ChordRule::AdjacentHead, *s),
        [(c1, s), (c2, _)] if c1 == c2 => result(*c1, ChordRule::AdjacentHead, *s),
        _ => result(ChordClass::Unclassifiable, ChordRule::None, 0),
    })
}

/// Ground truth: whether the chord's midpoint is inside the sampled region.
pub fn midpoint_oracle(curve: &CurveSample, x: usize, y: usize) -> ChordClass {
    let (a, b) = (curve.points[x], curve.points[y]);
    let p = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let m = curve.m();
    let mut inside = false;
    for i in 0..m {
        let (u, v) = (curve.points[i], curve.points[(i + 1) % m]);
        if (u[1] > p[1]) != (v[1] > p[1]) {
            let xc = u[0] + (p[1] - u[1]) * (v[0] - u[0]) / (v[1] - u[1]);
            if xc > p[0] {
                inside = !inside;
            }
        }
    }
    if inside {
        ChordClass::Internal
    } else {
        ChordClass::External
    }
}

/// Whether samples `x` and `y` see each other (`B_x(y)` zero).
pub fn visible(curve: &CurveSample, x: usize, y: usize) -> Result<bool, ContinuousError> {
    Ok(x != y && curve.counts(x, y)?.1 == 0)
}

/// Which chords a sweep looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChordSelection {
    /// Every visible non-adjacent pair `x < y`.
    All,
    /// `K` visible chords drawn uniformly among non-adjacent pairs.
    Random(usize),
}

impl std::str::FromStr for ChordSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(ChordSelection::All);
        }
        s.strip_prefix("random:")
            .and_then(|k| k.parse().ok())
            .map(ChordSelection::Random)
            .ok_or_else(|| format!("expected `all` or `random:K`, got {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordOutcome {
    pub result: ChordResult,
    pub oracle: ChordClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordReport {
    pub m: usize,
    pub chords: usize,
    pub internal: usize,
    pub external: usize,
    pub unclassifiable: usize,
    /// Classified chords whose class differs from the midpoint oracle.
    pub disagreements: usize,
    /// Candidate chords skipped because visibility itself hit the tangency guard.
    pub tangent_skipped: usize,
    pub classified_fraction: f64,
    pub outcomes: Vec<ChordOutcome>,
}

const RANDOM_ATTEMPTS_PER_CHORD: usize = 200;

/// Classifies the selected chords and checks each definite class against
/// [`midpoint_oracle`]. Deterministic in `seed`.
pub fn chord_campaign(curve: &CurveSample, selection: ChordSelection, seed: u64) -> ChordReport {
    use rand::{Rng, SeedableRng};
    use rayon::prelude::*;

    let m = curve.m();
    let adjacent = |x: usize, y: usize| x == y || (x + 1) % m == y || (y + 1) % m == x;
    let candidates: Vec<(usize, usize)> = match selection {
        ChordSelection::All => (0..m).flat_map(|x| ((x + 1)..m).map(move |y| (x, y))).filter(|&(x, y)| !adjacent(x, y)).collect(),
        ChordSelection::Random(k) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..k * RANDOM_ATTEMPTS_PER_CHORD)
                .map(|_| (rng.gen_range(0..m), rng.gen_range(0..m)))
                .filter(|&(x, y)| !adjacent(x, y))
                .collect()
        }
    };
    let limit = match selection {
        ChordSelection::All => usize::MAX,
        ChordSelection::Random(k) => k,
    };
    let checked: Vec<Option<Result<ChordOutcome, ()>>> = if limit == usize::MAX {
        candidates.par_iter().map(|&(x, y)| check_chord(curve, x, y)).collect()
    } else {
        // Sequential so the first K visible chords do not depend on scheduling.
        let mut out = Vec::new();
        let mut found = 0;
        for &(x, y) in &candidates {
            let r = check_chord(curve, x, y);
            found += usize::from(matches!(r, Some(Ok(_))));
            out.push(r);
            if found == limit {
                break;
            }
        }
        out
    };
    let mut report = ChordReport {
        m,
        chords: 0,
        internal: 0,
        external: 0,
        unclassifiable: 0,
        disagreements: 0,
        tangent_skipped: 0,
        classified_fraction: 0.0,
        outcomes: Vec::new(),
    };
    for r in checked.into_iter().flatten() {
        match r {
            Ok(o) => {
                report.chords += 1;
                match o.result.class {
                    ChordClass::Internal => report.internal += 1,
                    ChordClass::External => report.external += 1,
                    ChordClass::Unclassifiable => report.unclassifiable += 1,
                }
                if o.result.class != ChordClass::Unclassifiable && o.result.class != o.oracle {
                    report.disagreements += 1;
                }
                report.outcomes.push(o);
            }
            Err(()) => report.tangent_skipped += 1,
        }
    }
    if report.chords > 0 {
        report.classified_fraction = (report.internal + report.external) as f64 / report.chords as f64;
    }
    report
}

/// `None` for a non-visible pair, `Err` when the tangency guard fires.
fn check_chord(curve: &CurveSample, x: usize, y: usize) -> Option<Result<ChordOutcome, ()>> {
    match visible(curve, x, y) {
        Ok(false) => None,
        Err(_) => Some(Err(())),
        Ok(true) => Some(match classify_chord(curve, x, y) {
            Ok(result) => Ok(ChordOutcome { result, oracle: midpoint_oracle(curve, x, y) }),
            Err(_) => Err(()),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_chords_are_internal() {
        let c = ellipse(2.0, 1.0, 200);
        for (x, y) in [(0, 100), (3, 17), (50, 199), (120, 10)] {
            let r = classify_chord(&c, x, y).unwrap();
            assert_eq!(r.class, ChordClass::Internal);
            assert_eq!(midpoint_oracle(&c, x, y), ChordClass::Internal);
        }
        let f = zp_functions(&c, 7).unwrap();
        assert!(f.body.iter().all(|p| p.class == ZpClass::Zero));
        assert!(f.head.iter().all(|p| p.class.is_even()));
        assert!(f.body_discontinuities.is_empty());
    }

    #[test]
    fn bean_mouth_chord_is_external() {
        let c = bean(400);
        // A short chord on the concave arc of the dent at theta = pi/2.
        let (x, y) = (2..100)
            .map(|k| (c.index_of(0.25 - k as f64 / 400.0), c.index_of(0.25 + k as f64 / 400.0)))
            .find(|&(x, y)| visible(&c, x, y).unwrap())
            .unwrap();
        assert_eq!(midpoint_oracle(&c, x, y), ChordClass::External);
        assert_eq!(classify_chord(&c, x, y).unwrap().class, ChordClass::External);
    }

    #[test]
    fn discontinuity_rules() {
        use ZpClass::*;
        assert_eq!(pattern_rule(Odd, EvenPos), Some((ChordClass::External, ChordRule::OzeDiscontinuity)));
        assert_eq!(pattern_rule(EvenPos, Odd), Some((ChordClass::Internal, ChordRule::EzoDiscontinuity)));
        assert_eq!(pattern_rule(Zero, Odd), None);
        let p = |b, v, a| DiscontinuityPattern { at: 0.0, before: b, value: v, after: a };
        assert!(p(Zero, Zero, Odd).is_named());
        assert!(p(Odd, Zero, EvenPos).is_named());
        assert!(!p(Zero, Zero, EvenPos).is_named());
        assert_eq!(p(Odd, Zero, EvenPos).label(), "o/z/e");
    }

    #[test]
    fn concave_arc_has_discontinuities() {
        let c = bean(400);
        let f = zp_functions(&c, c.index_of(0.25)).unwrap();
        assert!(!f.body_discontinuities.is_empty());
        assert!(f.body.len() > 1);
        // Pieces cover every sample but the basepoint.
        let covered: f64 = f.body.iter().map(|p| p.to - p.from).sum();
        assert!((covered - 399.0 / 400.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(matches!(CurveSample::new(vec![[0.0, 0.0]; 3], 1.0), Err(ContinuousError::TooFewSamples { .. })));
        let fig8: Vec<[f64; 2]> = (0..66)
            .map(|i| {
                let t = 2.0 * PI * (i as f64 + 0.3) / 66.0;
                [t.sin(), (2.0 * t).sin() / 2.0]
            })
            .collect();
        assert!(CurveSample::new(fig8, PI).is_err());
        let coarse = radial(8, 1.0, |_| 1.0);
        assert!(matches!(CurveSample::new(coarse, 0.5), Err(ContinuousError::TooCoarse { .. })));
    }

    #[test]
    fn campaign_on_ellipse() {
        assert_eq!("random:12".parse(), Ok(ChordSelection::Random(12)));
        assert_eq!("all".parse(), Ok(ChordSelection::All));
        assert!("some".parse::<ChordSelection>().is_err());
        let c = ellipse(2.0, 1.0, 120);
        let r = chord_campaign(&c, ChordSelection::Random(40), 3);
        assert_eq!(r.chords, 40);
        assert_eq!(r.internal, 40);
        assert_eq!(r, chord_campaign(&c, ChordSelection::Random(40), 3));
        let all = chord_campaign(&c, ChordSelection::All, 0);
        assert_eq!(all.chords, 120 * 117 / 2);
        assert_eq!(all.disagreements, 0);
    }
}

//! Randomized campaigns over generated polygons.
//!
//! Trials are independent and seeded from `(campaign seed, trial index)`, so a
//! campaign is reproducible and can be sharded across threads; findings are
//! collected in trial order. Every finding is checked again from its stored
//! coordinates with the brute-force stab oracle before it is reported.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{classify_polygon, explain_ambiguous, EdgeClass};
use crate::geom::Point;
use crate::oracle::brute::brute_stab_table;
use crate::oracle::counterexample::reconstruct_counterexample;
use crate::oracle::equivalence::PolygonPair;
use crate::oracle::generate::{generate_random_polygon, Style};
use crate::oracle::twin::{anneal, flattened_chain, scaled, AnnealParams, TwinTarget};
use crate::polygon::{vertex_flags, Chain, Polygon};
use crate::stabbing::{parity_balance_holds, stab_table, zp_table, StabTriple};
use crate::visibility::{classify_pair, is_triangular_chain, visibility_oracle, VisClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FuzzMode {
    /// Pairs with equal ZP tables and flags but a pair whose I/E class differs.
    ZpCollision,
    /// Pairs with equal pure-parity tables but different hull edges or classes.
    PureParityCollision,
    /// Ambiguous pairs and the length of their triangular chains.
    AmbiguousChain,
    /// How many raw Head/Tail counts differ between ZP-equal neighbours.
    WeakInfoCompare,
}

impl std::str::FromStr for FuzzMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
            format!("unknown mode {s:?}; expected zp-collision, pure-parity-collision, ambiguous-chain or weak-info-compare")
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub mode: FuzzMode,
    pub budget: u64,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    /// Adds the frozen counterexample pair to the campaign as trial `None`.
    pub include_counterexample: bool,
    /// Annealing steps per zp-collision trial.
    pub anneal_iterations: u64,
}

impl FuzzConfig {
    pub fn new(mode: FuzzMode, budget: u64, seed: u64) -> Self {
        let (n_min, n_max) = match mode {
            FuzzMode::PureParityCollision => (4, 10),
            FuzzMode::ZpCollision => (6, 14),
            _ => (4, 30),
        };
        FuzzConfig { mode, budget, seed, n_min, n_max, include_counterexample: false, anneal_iterations: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Property {
    ZpCollision { pair: (usize, usize), class_a: VisClass, class_b: VisClass },
    PureParityCollision { hull_edges_differ: bool, class_diffs: usize },
    AmbiguousChain { pair: (usize, usize), chain: Chain, chain_len: usize, z_internal: usize, z_external: usize },
    /// An ambiguous pair no triangular chain explains.
    MissingWitness { pair: (usize, usize) },
    /// The classifier contradicted the visibility oracle.
    Misclassified { pair: (usize, usize), predicted: EdgeClass, truth: VisClass },
    /// The classifier rejected a real polygon's data as inconsistent.
    ClassifierError { error: String },
    /// An entry of the stab table broke the parity balance.
    ParityBalance,
    WeakInfo { head_tail_diffs: usize, flags_differ: bool, class_diffs: usize },
}

/// One corpus record. Polygons are stored as coordinates so the record can be
/// checked without rerunning the campaign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub mode: FuzzMode,
    pub seed: u64,
    pub trial: Option<u64>,
    pub polygons: Vec<Vec<[i64; 2]>>,
    /// Vertex `i` of the first polygon is vertex `correspondence[i]` of the second.
    pub correspondence: Vec<usize>,
    pub property: Property,
    pub verified: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub trials: u64,
    pub polygons: u64,
    pub findings: usize,
    pub pairs_checked: u64,
    pub ambiguous_pairs: u64,
    pub misclassified: u64,
    pub missing_witness: u64,
    pub parity_violations: u64,
    /// Shortest triangular chain over all ambiguous pairs.
    pub min_chain_len: Option<usize>,
    pub all_verified: bool,
    /// A search mode that found nothing.
    pub inconclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub summary: FuzzSummary,
    pub findings: Vec<Finding>,
}

fn coords(p: &Polygon) -> Vec<[i64; 2]> {
    p.vertices().iter().map(|v| [v.x, v.y]).collect()
}

fn polygon_of(c: &[[i64; 2]]) -> Option<Polygon> {
    Polygon::new(c.iter().map(|&[x, y]| Point::new(x, y)).collect()).ok()
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// What one trial produced.
#[derive(Default)]
struct Outcome {
    polygons: u64,
    pairs_checked: u64,
    ambiguous: u64,
    findings: Vec<Finding>,
}

fn finding(cfg: &FuzzConfig, trial: Option<u64>, polys: &[&Polygon], corr: Vec<usize>, property: Property) -> Finding {
    Finding {
        mode: cfg.mode,
        seed: cfg.seed,
        trial,
        polygons: polys.iter().map(|p| coords(p)).collect(),
        correspondence: corr,
        property,
        verified: false,
    }
}

/// Classifies one polygon and records misclassifications, ambiguous pairs and
/// parity-balance failures.
fn check_polygon(cfg: &FuzzConfig, trial: Option<u64>, poly: &Polygon, out: &mut Outcome) {
    let st = stab_table(poly);
    let flags = vertex_flags(poly);
    let vis = visibility_oracle(poly);
    out.polygons += 1;
    if !parity_balance_holds(poly, &st) {
        out.findings.push(finding(cfg, trial, &[poly], vec![], Property::ParityBalance));
    }
    let classes = match classify_polygon(poly, &zp_table(&st), &flags) {
        Ok(c) => c,
        Err(e) => {
            out.findings.push(finding(cfg, trial, &[poly], vec![], Property::ClassifierError { error: e.to_string() }));
            return;
        }
    };
    let mut ambiguous = Vec::new();
    for e in &classes {
        out.pairs_checked += 1;
        let truth = vis.get(e.pair.0, e.pair.1);
        let wrong = match e.class {
            EdgeClass::Internal => truth != VisClass::Internal,
            EdgeClass::External => truth != VisClass::External,
            EdgeClass::Boundary => truth != VisClass::Boundary,
            EdgeClass::Ambiguous => {
                ambiguous.push(e.pair);
                false
            }
        };
        if wrong {
            let property = Property::Misclassified { pair: e.pair, predicted: e.class, truth };
            out.findings.push(finding(cfg, trial, &[poly], vec![], property));
        }
    }
    out.ambiguous += ambiguous.len() as u64;
    for pair in ambiguous {
        let property = match explain_ambiguous(poly, &vis, &[pair]) {
            Ok(w) => Property::AmbiguousChain {
                pair,
                chain: Chain::new(w[0].from, w[0].to),
                chain_len: w[0].len,
                z_internal: w[0].z_internal,
                z_external: w[0].z_external,
            },
            Err(_) => Property::MissingWitness { pair },
        };
        out.findings.push(finding(cfg, trial, &[poly], vec![], property));
    }
}

fn random_n(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> usize {
    rng.gen_range(cfg.n_min.max(3)..=cfg.n_max.max(cfg.n_min.max(3)))
}

fn ambiguous_trial(cfg: &FuzzConfig, trial: u64) -> Outcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let n = random_n(&mut rng, cfg);
    let poly = generate_random_polygon(n, rng.gen(), Style::Generic).expect("n >= 3");
    let mut out = Outcome::default();
    check_polygon(cfg, Some(trial), &poly, &mut out);
    out
}

/// Tries to flip one pair's class while keeping the ZP table and flags.
fn zp_collision_trial(cfg: &FuzzConfig, trial: u64) -> Outcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let n = random_n(&mut rng, cfg).max(4);
    let poly = scaled(&generate_random_polygon(n, rng.gen(), Style::Generic).expect("n >= 3"), 64);
    let mut out = Outcome { polygons: 1, ..Outcome::default() };
    let vis = visibility_oracle(&poly);
    let flags = vertex_flags(&poly);
    let hull: Vec<_> = flags.hull_edges();
    let candidates: Vec<((usize, usize), VisClass)> = vis
        .pairs()
        .filter(|&((x, y), c)| matches!(c, VisClass::Internal | VisClass::External) && !hull.contains(&(x, y)))
        .collect();
    if candidates.is_empty() {
        return out;
    }
    let ((x, y), class) = candidates[rng.gen_range(0..candidates.len())];
    let want = if class == VisClass::Internal { VisClass::External } else { VisClass::Internal };
    let target = TwinTarget::new(&poly, (x, y), want);
    let mut starts = Vec::new();
    for chain in [Chain::new(x, y), Chain::new(y, x)] {
        for offset in [-40.0, 40.0] {
            if let Some(s) = flattened_chain(&poly, chain, offset, rng.gen()) {
                if classify_pair(&s, x, y) == want {
                    starts.push(s);
                }
            }
        }
    }
    let params = AnnealParams { iterations: cfg.anneal_iterations, ..AnnealParams::default() };
    for s in starts {
        if let Some((twin, 0)) = anneal(&s, &target, params, rng.gen()) {
            let property = Property::ZpCollision { pair: (x, y), class_a: class, class_b: want };
            out.findings.push(finding(cfg, Some(trial), &[&poly, &twin], (0..n).collect(), property));
            break;
        }
    }
    out
}

/// Moves one vertex a little at a time; records the first neighbour with the
/// same ZP table but different raw Head/Tail counts.
fn weak_info_trial(cfg: &FuzzConfig, trial: u64) -> Outcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let n = random_n(&mut rng, cfg);
    let poly = scaled(&generate_random_polygon(n, rng.gen(), Style::Generic).expect("n >= 3"), 16);
    let base = stab_table(&poly);
    let mut out = Outcome { polygons: 1, ..Outcome::default() };
    let v = rng.gen_range(0..n);
    let mut pts = poly.vertices().to_vec();
    for _ in 0..64 {
        pts[v] = pts[v] + Point::new(rng.gen_range(-8..=8), rng.gen_range(-8..=8));
        let Ok(moved) = Polygon::new(pts.clone()) else { continue };
        if moved.vertices() != pts.as_slice() {
            continue;
        }
        let t = stab_table(&moved);
        if zp_table(&t) != zp_table(&base) {
            continue;
        }
        let pair = PolygonPair::identity(poly.clone(), moved.clone()).expect("same size");
        if let Some(p) = weak_property(&pair, &base, &t) {
            out.findings.push(finding(cfg, Some(trial), &[&poly, &moved], (0..n).collect(), p));
            break;
        }
    }
    out
}

fn head_tail_diffs(pair: &PolygonPair, ta: &[StabTriple], tb: &[StabTriple]) -> usize {
    let n = pair.a.n();
    let m = &pair.correspondence;
    let mut k = 0;
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let (a, b) = (ta[x * n + y], tb[m[x] * n + m[y]]);
                k += usize::from(a.head != b.head);
            }
        }
    }
    // Tail(x, y) is Head(y, x), so ordered heads cover both.
    k
}

fn class_diffs(pair: &PolygonPair) -> usize {
    let (va, vb) = (visibility_oracle(&pair.a), visibility_oracle(&pair.b));
    let m = &pair.correspondence;
    va.pairs().filter(|&((x, y), c)| vb.get(m[x], m[y]) != c).count()
}

fn flags_differ(pair: &PolygonPair) -> bool {
    let (fa, fb) = (vertex_flags(&pair.a), vertex_flags(&pair.b));
    let m = &pair.correspondence;
    (0..pair.a.n()).any(|i| fa.convex[i] != fb.convex[m[i]] || fa.on_hull[i] != fb.on_hull[m[i]])
}

fn weak_property(pair: &PolygonPair, ta: &crate::stabbing::StabTable, tb: &crate::stabbing::StabTable) -> Option<Property> {
    let n = pair.a.n();
    let flat = |t: &crate::stabbing::StabTable| -> Vec<StabTriple> {
        (0..n * n).map(|k| if k / n == k % n { StabTriple::default() } else { t.get(k / n, k % n) }).collect()
    };
    let d = head_tail_diffs(pair, &flat(ta), &flat(tb));
    (d > 0).then(|| Property::WeakInfo { head_tail_diffs: d, flags_differ: flags_differ(pair), class_diffs: class_diffs(pair) })
}

/// Pure-parity table relabelled to start at vertex `r`, packed two bits per
/// component (the pair order is fixed, so the encoding is injective).
fn pp_key(t: &crate::stabbing::StabTable, n: usize, r: usize) -> Vec<u8> {
    let mut key = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            if x != y {
                let s = t.get((x + r) % n, (y + r) % n);
                key.push(((s.tail & 1) | (s.body & 1) << 1 | (s.head & 1) << 2) as u8);
            }
        }
    }
    key
}

/// Smallest key over all rotations of the labels, and the rotation giving it.
fn canonical_pp(poly: &Polygon) -> (Vec<u8>, usize) {
    let n = poly.n();
    let t = stab_table(poly);
    (0..n).map(|r| (pp_key(&t, n, r), r)).min().expect("n >= 3")
}

fn pure_parity_campaign(cfg: &FuzzConfig) -> (FuzzSummary, Vec<Finding>) {
    let polys: Vec<(u64, Polygon, Vec<u8>, usize)> = (0..cfg.budget)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let n = random_n(&mut rng, cfg);
            let p = generate_random_polygon(n, rng.gen(), Style::Generic).expect("n >= 3");
            let (key, r) = canonical_pp(&p);
            (trial, p, key, r)
        })
        .collect();
    let mut seen: HashMap<(usize, Vec<u8>), Vec<(u64, usize, usize)>> = HashMap::new();
    let mut findings = Vec::new();
    for (i, (trial, p, key, r)) in polys.iter().enumerate() {
        let n = p.n();
        let bucket = seen.entry((n, key.clone())).or_default();
        if bucket.len() < 8 {
            for &(_, j, r0) in bucket.iter() {
                let q = &polys[j].1;
                // Canonical label k is vertex r0 + k of q and vertex r + k of p.
                let mut corr = vec![0; n];
                for k in 0..n {
                    corr[(r0 + k) % n] = (r + k) % n;
                }
                let pair = PolygonPair::new(q.clone(), p.clone(), corr.clone()).expect("same size");
                if let Some(property) = pp_property(&pair) {
                    findings.push(finding(cfg, Some(*trial), &[q, p], corr, property));
                }
            }
            bucket.push((*trial, i, *r));
        }
    }
    findings.truncate(1000);
    let summary = FuzzSummary { trials: cfg.budget, polygons: cfg.budget, ..FuzzSummary::default() };
    (summary, findings)
}

fn hull_edges_differ(pair: &PolygonPair) -> bool {
    let m = &pair.correspondence;
    let mapped: Vec<(usize, usize)> = {
        let mut v: Vec<_> = vertex_flags(&pair.a)
            .hull_edges()
            .into_iter()
            .map(|(a, b)| (m[a].min(m[b]), m[a].max(m[b])))
            .collect();
        v.sort_unstable();
        v
    };
    mapped != vertex_flags(&pair.b).hull_edges()
}

fn pp_property(pair: &PolygonPair) -> Option<Property> {
    let hull = hull_edges_differ(pair);
    let classes = class_diffs(pair);
    (hull || classes > 0).then_some(Property::PureParityCollision { hull_edges_differ: hull, class_diffs: classes })
}

/// Re-checks a finding from its coordinates, computing every stab count with
/// the brute-force oracle.
pub fn verify_finding(f: &Finding) -> bool {
    let Some(polys) = f.polygons.iter().map(|c| polygon_of(c)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let brute: Vec<Vec<StabTriple>> = polys.iter().map(brute_stab_table).collect();
    // The fast table must agree with the oracle wherever it feeds a decision.
    for (p, b) in polys.iter().zip(&brute) {
        let n = p.n();
        let t = stab_table(p);
        if (0..n * n).any(|k| k / n != k % n && t.get(k / n, k % n) != b[k]) {
            return false;
        }
    }
    let pair = || PolygonPair::new(polys[0].clone(), polys[1].clone(), f.correspondence.clone()).ok();
    let same = |g: fn(StabTriple) -> [u8; 3]| -> bool {
        let n = polys[0].n();
        let m = &f.correspondence;
        (0..n).all(|x| (0..n).all(|y| x == y || g(brute[0][x * n + y]) == g(brute[1][m[x] * n + m[y]])))
    };
    let zp = |s: StabTriple| {
        let z = s.zp();
        [z.tail as u8, z.body as u8, z.head as u8]
    };
    let pp = |s: StabTriple| [(s.tail & 1) as u8, (s.body & 1) as u8, (s.head & 1) as u8];
    match &f.property {
        Property::ZpCollision { pair: (x, y), class_a, class_b } => {
            let Some(pr) = pair() else { return false };
            let m = &pr.correspondence;
            polys.len() == 2
                && same(zp)
                && !flags_differ(&pr)
                && classify_pair(&pr.a, *x, *y) == *class_a
                && classify_pair(&pr.b, m[*x], m[*y]) == *class_b
                && class_a != class_b
        }
        Property::PureParityCollision { .. } => {
            polys.len() == 2 && same(pp) && pair().and_then(|pr| pp_property(&pr)).as_ref() == Some(&f.property)
        }
        Property::WeakInfo { .. } => {
            let Some(pr) = pair() else { return false };
            let (ta, tb) = (stab_table(&pr.a), stab_table(&pr.b));
            polys.len() == 2 && same(zp) && weak_property(&pr, &ta, &tb).as_ref() == Some(&f.property)
        }
        Property::AmbiguousChain { pair: (x, y), chain, chain_len, .. } => {
            let p = &polys[0];
            let vis = visibility_oracle(p);
            let classes = classify_polygon(p, &zp_table(&stab_table(p)), &vertex_flags(p));
            let ambiguous = classes
                .map(|c| c.iter().any(|e| e.pair == (*x, *y) && e.class == EdgeClass::Ambiguous))
                .unwrap_or(false);
            ambiguous && is_triangular_chain(p, &vis, chain.from, chain.to).is_some_and(|w| w.len == *chain_len)
        }
        Property::MissingWitness { pair: (x, y) } => {
            let p = &polys[0];
            let vis = visibility_oracle(p);
            is_triangular_chain(p, &vis, *x, *y).is_none() && is_triangular_chain(p, &vis, *y, *x).is_none()
        }
        Property::Misclassified { pair: (x, y), truth, .. } => classify_pair(&polys[0], *x, *y) == *truth,
        Property::ClassifierError { .. } => {
            let p = &polys[0];
            classify_polygon(p, &zp_table(&stab_table(p)), &vertex_flags(p)).is_err()
        }
        Property::ParityBalance => !parity_balance_holds(&polys[0], &stab_table(&polys[0])),
    }
}

fn counterexample_outcome(cfg: &FuzzConfig) -> Outcome {
    let pair = reconstruct_counterexample();
    let mut out = Outcome::default();
    let corr: Vec<usize> = pair.correspondence.clone();
    match cfg.mode {
        FuzzMode::AmbiguousChain => {
            check_polygon(cfg, None, &pair.a, &mut out);
            check_polygon(cfg, None, &pair.b, &mut out);
        }
        FuzzMode::ZpCollision => {
            let property = Property::ZpCollision {
                pair: (0, 8),
                class_a: classify_pair(&pair.a, 0, 8),
                class_b: classify_pair(&pair.b, 0, 8),
            };
            out.polygons = 2;
            out.findings.push(finding(cfg, None, &[&pair.a, &pair.b], corr, property));
        }
        FuzzMode::WeakInfoCompare => {
            out.polygons = 2;
            if let Some(p) = weak_property(&pair, &stab_table(&pair.a), &stab_table(&pair.b)) {
                out.findings.push(finding(cfg, None, &[&pair.a, &pair.b], corr, p));
            }
        }
        FuzzMode::PureParityCollision => {
            out.polygons = 2;
            if let Some(p) = pp_property(&pair) {
                out.findings.push(finding(cfg, None, &[&pair.a, &pair.b], corr, p));
            }
        }
    }
    out
}

/// Runs a campaign. Trials run in parallel; the result does not depend on
/// the number of threads.
pub fn fuzz_campaign(cfg: &FuzzConfig) -> FuzzReport {
    let mut summary = FuzzSummary::default();
    let mut findings = Vec::new();
    if cfg.include_counterexample {
        let o = counterexample_outcome(cfg);
        summary.polygons += o.polygons;
        summary.pairs_checked += o.pairs_checked;
        summary.ambiguous_pairs += o.ambiguous;
        findings.extend(o.findings);
    }
    if cfg.mode == FuzzMode::PureParityCollision {
        let (s, f) = pure_parity_campaign(cfg);
        summary.trials = s.trials;
        summary.polygons += s.polygons;
        findings.extend(f);
    } else {
        let run = |t: u64| match cfg.mode {
            FuzzMode::AmbiguousChain => ambiguous_trial(cfg, t),
            FuzzMode::ZpCollision => zp_collision_trial(cfg, t),
            FuzzMode::WeakInfoCompare => weak_info_trial(cfg, t),
            FuzzMode::PureParityCollision => unreachable!(),
        };
        let outcomes: Vec<Outcome> = (0..cfg.budget).into_par_iter().map(run).collect();
        summary.trials = cfg.budget;
        for o in outcomes {
            summary.polygons += o.polygons;
            summary.pairs_checked += o.pairs_checked;
            summary.ambiguous_pairs += o.ambiguous;
            findings.extend(o.findings);
        }
    }
    findings.par_iter_mut().for_each(|f| f.verified = verify_finding(f));
    for f in &findings {
        match f.property {
            Property::Misclassified { .. } | Property::ClassifierError { .. } => summary.misclassified += 1,
            Property::MissingWitness { .. } => summary.missing_witness += 1,
            Property::ParityBalance => summary.parity_violations += 1,
            Property::AmbiguousChain { chain_len, .. } => {
                summary.min_chain_len = Some(summary.min_chain_len.map_or(chain_len, |m| m.min(chain_len)));
            }
            _ => {}
        }
    }
    summary.findings = findings.len();
    summary.all_verified = findings.iter().all(|f| f.verified);
    let searching = matches!(cfg.mode, FuzzMode::ZpCollision | FuzzMode::PureParityCollision | FuzzMode::WeakInfoCompare);
    summary.inconclusive = searching && findings.iter().all(|f| f.trial.is_none());
    FuzzReport { config: *cfg, summary, findings }
}

/// Appends findings to a line-delimited corpus file.
pub fn write_corpus(path: &Path, findings: &[Finding]) -> io::Result<()> {
    let file = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = io::BufWriter::new(file);
    for f in findings {
        serde_json::to_writer(&mut w, f)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn read_corpus(path: &Path) -> io::Result<Vec<Finding>> {
    let r = io::BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f = serde_json::from_str(&line)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("line {}: {e}", i + 1)))?;
        out.push(f);
    }
    Ok(out)
}

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs under `cargo test`; `cargo test --test acceptance` alone.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zpstab::analysis::analyze;
use zpstab::classifier::{classify_polygon, EdgeClass};
use zpstab::continuous::{bean, chord_campaign, ellipse, ChordSelection};
use zpstab::oracle::brute::brute_stab_triple;
use zpstab::oracle::counterexample::reconstruct_counterexample;
use zpstab::oracle::equivalence::verify_zp_equivalence;
use zpstab::oracle::fuzz::{fuzz_campaign, FuzzConfig, FuzzMode, FuzzReport};
use zpstab::oracle::generate::{generate_random_polygon, Style};
use zpstab::stabbing::parity_balance_holds;
use zpstab::{is_nontriangular, stab_table, stab_triple, vertex_flags, visibility_oracle, zp_table, VisClass};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn counterexample_reproduction() -> Outcome {
    let start = Instant::now();
    let p = reconstruct_counterexample();
    let r = verify_zp_equivalence(&p);
    let (ta, tb) = (stab_triple(&p.a, 1, 6).tail, stab_triple(&p.b, 1, 6).tail);
    let (ha, hb) = (stab_triple(&p.a, 0, 2).head, stab_triple(&p.b, 0, 2).head);
    let (va, vb) = (visibility_oracle(&p.a).get(0, 8), visibility_oracle(&p.b).get(0, 8));
    let elapsed = start.elapsed();
    let pass = r.equal
        && r.compared == 198
        && (ta, tb, ha, hb) == (3, 1, 3, 5)
        && va == VisClass::Internal
        && vb == VisClass::External
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "equal {} over {} classes, Tail(1,6) {ta} vs {tb}, Head(0,2) {ha} vs {hb}, (0,8) {va:?} vs {vb:?}, {elapsed:.2?}",
            r.equal, r.compared
        ),
    )
}

fn zp_insufficiency() -> Outcome {
    let start = Instant::now();
    let p = reconstruct_counterexample();
    let class_of = |poly: &zpstab::Polygon| {
        let cls = classify_polygon(poly, &zp_table(&stab_table(poly)), &vertex_flags(poly)).expect("valid input");
        cls.iter().find(|c| c.pair == (0, 8)).map(|c| c.class)
    };
    let (a, b) = (class_of(&p.a), class_of(&p.b));
    let elapsed = start.elapsed();
    let pass = a == Some(EdgeClass::Ambiguous) && b == Some(EdgeClass::Ambiguous) && elapsed < Duration::from_secs(1);
    outcome(pass, format!("(0,8) in A {a:?}, in B {b:?}, {elapsed:.2?}"))
}

fn soundness_campaign() -> FuzzReport {
    let mut cfg = FuzzConfig::new(FuzzMode::AmbiguousChain, 5000, 7);
    cfg.n_min = 4;
    cfg.n_max = 30;
    cfg.include_counterexample = true;
    fuzz_campaign(&cfg)
}

fn soundness(r: &FuzzReport) -> Outcome {
    let s = &r.summary;
    outcome(
        s.misclassified == 0 && s.polygons >= 5000,
        format!(
            "{} polygons (n 4-30, seed {}), {} pairs, {} misclassified, {} ambiguous",
            s.polygons, r.config.seed, s.pairs_checked, s.misclassified, s.ambiguous_pairs
        ),
    )
}

fn nontriangular_completeness() -> Outcome {
    let (mut edges, mut ambiguous, mut disagreements, mut not_nontri) = (0, 0, 0, 0);
    for i in 0..100u64 {
        let n = 20 + (i as usize * 40) / 99;
        let p = generate_random_polygon(n, 50_000 + i, Style::Nontriangular).expect("generator succeeds");
        if !is_nontriangular(&p, &visibility_oracle(&p), 8) {
            not_nontri += 1;
        }
        let r = analyze(&p, 0, false).expect("valid input");
        edges += r.edges.len();
        ambiguous += r.counts.ambiguous;
        disagreements += r.counts.disagreements;
    }
    outcome(
        ambiguous == 0 && disagreements == 0 && not_nontri == 0,
        format!("100 polygons (n 20-60), {edges} edges, {ambiguous} ambiguous, {disagreements} disagreements"),
    )
}

fn witness_length(r: &FuzzReport) -> Outcome {
    let s = &r.summary;
    let ok_len = s.min_chain_len.map_or(true, |m| m >= 8);
    let min = s.min_chain_len.map_or("none".to_string(), |m| m.to_string());
    outcome(
        ok_len && s.missing_witness == 0,
        format!(
            "{} ambiguous pairs (counterexample included), shortest witness chain {min}, {} without a witness",
            s.ambiguous_pairs, s.missing_witness
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut checked, mut mismatches, mut seed) = (0, 0, 0u64);
    while checked < 10_000 {
        let n = rng.gen_range(4..=24);
        seed += 1;
        let Ok(p) = generate_random_polygon(n, seed, Style::Generic) else { continue };
        for _ in 0..10 {
            let x = rng.gen_range(0..n);
            let y = (x + rng.gen_range(1..n)) % n;
            if stab_triple(&p, x, y) != brute_stab_triple(&p, x, y) {
                mismatches += 1;
            }
            checked += 1;
        }
    }
    outcome(mismatches == 0, format!("{checked} instances, {mismatches} mismatches"))
}

fn parity_balance(r: &FuzzReport) -> Outcome {
    let mut tables = 0;
    let mut failures = 0;
    for seed in 0..2000u64 {
        let n = 4 + (seed as usize % 40);
        let Ok(p) = generate_random_polygon(n, 90_000 + seed, Style::Generic) else { continue };
        tables += 1;
        if !parity_balance_holds(&p, &stab_table(&p)) {
            failures += 1;
        }
    }
    let v = r.summary.parity_violations;
    outcome(
        failures == 0 && v == 0,
        format!("{tables} tables ({failures} failing) plus {} fuzz polygons ({v} violations)", r.summary.polygons),
    )
}

fn pure_parity() -> Outcome {
    let mut cfg = FuzzConfig::new(FuzzMode::PureParityCollision, 100_000, 3);
    cfg.n_min = 4;
    cfg.n_max = 10;
    let r = fuzz_campaign(&cfg);
    let s = &r.summary;
    let pass = (s.findings > 0 && s.all_verified) || s.inconclusive;
    let what = if s.inconclusive { "inconclusive".to_string() } else { format!("{} verified pairs", s.findings) };
    outcome(pass, format!("budget {}, n <= 10: {what}, all re-verified {}", s.trials, s.all_verified))
}

fn continuous() -> Outcome {
    let e = chord_campaign(&ellipse(2.0, 1.0, 400), ChordSelection::All, 0);
    let b = chord_campaign(&bean(2000), ChordSelection::Random(500), 0);
    let pass = e.chords > 0
        && e.internal == e.chords
        && b.chords == 500
        && b.classified_fraction >= 0.95
        && b.disagreements == 0;
    outcome(
        pass,
        format!(
            "ellipse M=400: {}/{} internal; bean M=2000: {}/{} classified ({:.1}%), {} disagreements",
            e.internal,
            e.chords,
            b.internal + b.external,
            b.chords,
            100.0 * b.classified_fraction,
            b.disagreements
        ),
    )
}

fn main() {
    // libtest flags such as --nocapture or a name filter are accepted and ignored.
    let mut failed = 0;
    let mut report = |name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag}  {name}: {} [{:.1?}]", o.detail, start.elapsed());
        failed += !o.pass as usize;
    };
    report("counterexample reproduction", &mut counterexample_reproduction);
    report("zp insufficiency", &mut zp_insufficiency);
    let mut campaign = None;
    report("classifier soundness", &mut || {
        let c = soundness_campaign();
        let o = soundness(&c);
        campaign = Some(c);
        o
    });
    let campaign = campaign.expect("campaign ran");
    report("nontriangular completeness", &mut nontriangular_completeness);
    report("witness chain length >= 8", &mut || witness_length(&campaign));
    report("oracle equivalence", &mut oracle_equivalence);
    report("parity balance", &mut || parity_balance(&campaign));
    report("pure-parity insufficiency", &mut pure_parity);
    report("continuous zp soundness", &mut continuous);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}

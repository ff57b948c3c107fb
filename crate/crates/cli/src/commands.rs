use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use zpstab::analysis::{analyze, AnalysisResult};
use zpstab::continuous::{bean, chord_campaign, ellipse, star, ChordReport, ChordSelection, CurveFile, CurveSample};
use zpstab::io::{parse_polygon, polygon_to_json, Loaded};
use zpstab::oracle::counterexample::{reconstruct_counterexample, SHARED};
use zpstab::oracle::equivalence::{verify_zp_equivalence, EquivalenceReport, PolygonPair};
use zpstab::oracle::fuzz::{fuzz_campaign, write_corpus, FuzzConfig, FuzzReport};
use zpstab::render::{render_svg, RenderOptions};
use zpstab::Polygon;

use crate::{CliError, Format};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, bytes: &str) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_polygon(path: &Path) -> Result<Loaded, CliError> {
    parse_polygon(&read(path)?).map_err(|source| CliError::Load { path: path.display().to_string(), source })
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

pub fn analysis_of(loaded: &Loaded, timing: bool) -> Result<AnalysisResult, CliError> {
    Ok(analyze(&loaded.polygon, loaded.decimals, timing)?)
}

/// Table dump.
pub fn cmd_analyze(path: &Path, format: Format, timing: bool) -> Result<String, CliError> {
    let r = analysis_of(&load_polygon(path)?, timing)?;
    Ok(match format {
        Format::Json => r.to_json(),
        Format::Text => {
            let mut s = r.table_text();
            if let Some(t) = &r.timing {
                let _ = writeln!(s, "time {:.3} ms", t.total_ms);
            }
            s
        }
    })
}

#[derive(Serialize)]
struct ClassificationOut<'a> {
    n: usize,
    counts: &'a zpstab::analysis::ClassCounts,
    edges: &'a [zpstab::analysis::EdgeReport],
    ambiguity: &'a [zpstab::analysis::AmbiguityWitness],
}

/// Classification report.
pub fn cmd_classify(path: &Path, format: Format) -> Result<String, CliError> {
    let r = analysis_of(&load_polygon(path)?, false)?;
    Ok(match format {
        Format::Json => json(&ClassificationOut { n: r.n, counts: &r.counts, edges: &r.edges, ambiguity: &r.ambiguity }),
        Format::Text => r.classification_text(),
    })
}

pub fn verify_pair(a: Polygon, b: Polygon, correspondence: Option<Vec<usize>>) -> Result<EquivalenceReport, CliError> {
    let pair = match correspondence {
        Some(c) => PolygonPair::new(a, b, c)?,
        None => PolygonPair::identity(a, b)?,
    };
    Ok(verify_zp_equivalence(&pair))
}

pub fn equivalence_text(r: &EquivalenceReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "equal: {}", r.equal);
    let _ = writeln!(s, "compared: {}", r.compared);
    match &r.first_diff {
        Some(d) => {
            let _ = writeln!(
                s,
                "first difference: {:?}({}, {}) = {} vs {}",
                d.component, d.pair.0, d.pair.1, d.value_a, d.value_b
            );
        }
        None => s.push_str("first difference: none\n"),
    }
    let _ = writeln!(s, "pairs with equal classes but different raw counts: {}", r.raw_diffs);
    for d in &r.raw_diff_entries {
        let _ = writeln!(s, "  {:?}({}, {}): {} vs {}", d.component, d.pair.0, d.pair.1, d.value_a, d.value_b);
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn cmd_verify_pair(a: &Path, b: &Path, correspondence: Option<Vec<usize>>, format: Format) -> Result<String, CliError> {
    let r = verify_pair(load_polygon(a)?.polygon, load_polygon(b)?.polygon, correspondence)?;
    Ok(match format {
        Format::Json => json(&r),
        Format::Text => equivalence_text(&r),
    })
}

pub fn fuzz_text(r: &FuzzReport) -> String {
    let c = &r.config;
    let s = &r.summary;
    let mut out = String::new();
    let _ = writeln!(out, "mode {:?}  budget {}  seed {}  n in [{}, {}]", c.mode, c.budget, c.seed, c.n_min, c.n_max);
    let _ = writeln!(out, "trials {}  polygons {}  findings {}", s.trials, s.polygons, s.findings);
    let _ = writeln!(out, "pairs checked {}  ambiguous {}", s.pairs_checked, s.ambiguous_pairs);
    let _ = writeln!(
        out,
        "misclassified {}  missing witness {}  parity violations {}",
        s.misclassified, s.missing_witness, s.parity_violations
    );
    match s.min_chain_len {
        Some(m) => {
            let _ = writeln!(out, "shortest triangular chain behind an ambiguous pair: {m}");
        }
        None => out.push_str("no ambiguous pairs\n"),
    }
    let _ = writeln!(out, "all findings re-verified: {}", s.all_verified);
    if s.inconclusive {
        out.push_str("inconclusive: the search found nothing\n");
    }
    out
}

/// Runs a campaign; findings are appended to `out` when given.
pub fn cmd_fuzz(cfg: &FuzzConfig, out: Option<&Path>, format: Format) -> Result<String, CliError> {
    if cfg.n_min < 3 || cfg.n_min > cfg.n_max {
        return Err(CliError::Usage(format!("bad vertex range [{}, {}]", cfg.n_min, cfg.n_max)));
    }
    let r = fuzz_campaign(cfg);
    if let Some(p) = out {
        write_corpus(p, &r.findings).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
    }
    Ok(match format {
        Format::Json => json(&serde_json::json!({ "config": r.config, "summary": r.summary })),
        Format::Text => fuzz_text(&r),
    })
}

/// A curve file, or one of the built-in shapes with `samples` points.
pub enum CurveSource<'a> {
    File(&'a Path),
    Shape { name: &'a str, samples: usize },
}

pub fn load_curve(src: &CurveSource) -> Result<CurveSample, CliError> {
    match *src {
        CurveSource::File(path) => {
            let text = read(path)?;
            let f: CurveFile = serde_json::from_str(&text).map_err(|e| CliError::CurveParse {
                path: path.display().to_string(),
                message: format!("line {}, column {}: {e}", e.line(), e.column()),
            })?;
            CurveSample::from_file(&f).map_err(|source| CliError::Curve { path: path.display().to_string(), source })
        }
        CurveSource::Shape { name, samples } => {
            if samples < 8 {
                return Err(CliError::Usage("a curve needs at least 8 samples".into()));
            }
            match name {
                "ellipse" => Ok(ellipse(2.0, 1.0, samples)),
                "bean" => Ok(bean(samples)),
                "star" => Ok(star(samples, 5)),
                other => Err(CliError::Usage(format!("unknown shape {other:?}; expected ellipse, bean or star"))),
            }
        }
    }
}

pub fn save_curve(src: &CurveSource, path: &Path) -> Result<(), CliError> {
    let f = load_curve(src)?.to_file();
    let rows: Vec<String> = f.samples.iter().map(|p| format!("    [{:?}, {:?}]", p[0], p[1])).collect();
    write(path, &format!("{{\n  \"closed\": true,\n  \"samples\": [\n{}\n  ]\n}}\n", rows.join(",\n")))
}

pub fn chord_text(r: &ChordReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "samples {}  chords {}", r.m, r.chords);
    let _ = writeln!(s, "internal {}  external {}  unclassifiable {}", r.internal, r.external, r.unclassifiable);
    let _ = writeln!(s, "classified {:.2}%  oracle disagreements {}", 100.0 * r.classified_fraction, r.disagreements);
    if r.tangent_skipped > 0 {
        let _ = writeln!(s, "skipped near tangency: {}", r.tangent_skipped);
    }
    s
}

/// Classifies chords of a sampled curve; the full per-chord report goes to `report`.
pub fn cmd_continuous(
    src: &CurveSource,
    selection: ChordSelection,
    seed: u64,
    report: Option<&Path>,
    format: Format,
) -> Result<String, CliError> {
    let curve = load_curve(src)?;
    let r = chord_campaign(&curve, selection, seed);
    if let Some(p) = report {
        write(p, &json(&r))?;
    }
    Ok(match format {
        Format::Json => {
            let mut summary = r.clone();
            summary.outcomes.clear();
            json(&summary)
        }
        Format::Text => chord_text(&r),
    })
}

pub fn cmd_render(path: &Path, out: &Path, opts: &RenderOptions, format: Format) -> Result<String, CliError> {
    let r = analysis_of(&load_polygon(path)?, false)?;
    let svg = render_svg(&r, opts);
    write(out, &svg)?;
    Ok(match format {
        Format::Json => json(&serde_json::json!({ "svg": out.display().to_string(), "bytes": svg.len(), "counts": r.counts })),
        Format::Text => format!("wrote {} ({} bytes)\n", out.display(), svg.len()),
    })
}

#[derive(Serialize)]
struct PolygonOut {
    vertices: Vec<[i64; 2]>,
}

#[derive(Serialize)]
struct CounterexampleOut {
    a: PolygonOut,
    b: PolygonOut,
    correspondence: Vec<usize>,
    shared: [usize; 5],
    pair: (usize, usize),
}

fn coords(p: &Polygon) -> Vec<[i64; 2]> {
    p.vertices().iter().map(|v| [v.x, v.y]).collect()
}

/// The frozen pair as one JSON document; also served at `/counterexample`.
pub fn counterexample_json() -> String {
    let p = reconstruct_counterexample();
    json(&CounterexampleOut {
        a: PolygonOut { vertices: coords(&p.a) },
        b: PolygonOut { vertices: coords(&p.b) },
        correspondence: p.correspondence.clone(),
        shared: SHARED,
        pair: (0, 8),
    })
}

/// Writes the two polygons as separate polygon files when paths are given.
pub fn cmd_counterexample(out_a: Option<&Path>, out_b: Option<&Path>, format: Format) -> Result<String, CliError> {
    let p = reconstruct_counterexample();
    if let Some(path) = out_a {
        write(path, &polygon_to_json(&p.a))?;
    }
    if let Some(path) = out_b {
        write(path, &polygon_to_json(&p.b))?;
    }
    Ok(match format {
        Format::Json => counterexample_json(),
        Format::Text => {
            let mut s = String::from("vertex            A                      B\n");
            for i in 0..p.a.n() {
                let (a, b) = (p.a.vertex(i), p.b.vertex(i));
                let shared = if SHARED.contains(&i) { "  shared" } else { "" };
                let _ = writeln!(s, "{i:>4}  {:>9} {:>9}   {:>9} {:>9}{shared}", a.x, a.y, b.x, b.y);
            }
            s
        }
    })
}

//! Runs the counterexample search over a range of seeds and prints the best
//! pair as Rust constants.
//!
//!     cargo run --release --example search_counterexample -- <seeds> <iterations>

use rayon::prelude::*;
use zpstab::oracle::counterexample::search_counterexample;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let seeds = args.first().copied().unwrap_or(16);
    let iters = args.get(1).copied().unwrap_or(200_000);
    let results: Vec<_> = (0..seeds)
        .into_par_iter()
        .filter_map(|s| search_counterexample(s, iters).map(|r| (s, r)))
        .collect();
    for (s, (_, _, c)) in &results {
        println!("seed {s}: cost {c}");
    }
    let Some((s, (a, b, c))) = results.into_iter().min_by_key(|(_, r)| r.2) else { return };
    println!("best seed {s}, cost {c}");
    for (name, p) in [("FIG2_A", a), ("FIG2_B", b)] {
        let body: Vec<String> = p.vertices().iter().map(|v| format!("({}, {})", v.x, v.y)).collect();
        println!("pub const {name}: [(i64, i64); N] = [{}];", body.join(", "));
    }
}

use std::path::PathBuf;
use std::process::Command;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use tower::ServiceExt;
use zpstab_cli::commands::{cmd_analyze, cmd_classify, cmd_counterexample, cmd_verify_pair, counterexample_json};
use zpstab_cli::service::router;
use zpstab_cli::Format;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zpstab"))
}

async fn call(method: &str, uri: &str, body: &str) -> (StatusCode, String) {
    let req = Request::builder().method(method).uri(uri).body(Body::from(body.to_string())).unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

#[test]
fn analyze_matches_golden() {
    let out = cmd_analyze(&data("dented_square.json"), Format::Json, false).unwrap();
    assert_eq!(out, golden("dented_square.analysis.json"));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["table"].as_array().unwrap().len(), 5 * 4);
    assert!(v.get("timing").is_none());
}

#[test]
fn classify_matches_golden() {
    let out = cmd_classify(&data("counterexample_a.json"), Format::Text).unwrap();
    assert_eq!(out, golden("counterexample_a.classify.txt"));
    assert!(out.contains("ambiguous (0, 8)"));
}

#[test]
fn convex_polygon_has_no_external_pairs() {
    let out = cmd_classify(&data("convex_hexagon.json"), Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for e in v["edges"].as_array().unwrap() {
        let c = e["class"].as_str().unwrap();
        assert!(c == "Internal" || c == "Boundary", "{e}");
    }
}

#[test]
fn verify_pair_on_frozen_files() {
    let out = cmd_verify_pair(&data("counterexample_a.json"), &data("counterexample_b.json"), None, Format::Json).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["compared"], 198);
    // The committed files are the frozen constants.
    let tmp = std::env::temp_dir().join(format!("zpstab-cx-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let (a, b) = (tmp.join("a.json"), tmp.join("b.json"));
    cmd_counterexample(Some(&a), Some(&b), Format::Text).unwrap();
    assert_eq!(std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(data("counterexample_a.json")).unwrap());
    assert_eq!(std::fs::read_to_string(&b).unwrap(), std::fs::read_to_string(data("counterexample_b.json")).unwrap());
}

#[test]
fn binary_exit_codes_and_errors() {
    let ok = bin().args(["analyze"]).arg(data("dented_square.json")).output().unwrap();
    assert!(ok.status.success());
    let bad = bin().args(["--format", "json", "classify"]).arg(data("bowtie.json")).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["error"], "NotSimple");
    let missing = bin().args(["analyze", "/nonexistent/poly.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    let tmp = std::env::temp_dir().join(format!("zpstab-parse-{}.json", std::process::id()));
    std::fs::write(&tmp, "{\"vertices\": [[0, 0],\n  [1 0]]}").unwrap();
    let parse = bin().args(["analyze"]).arg(&tmp).output().unwrap();
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 2"), "{}", String::from_utf8_lossy(&parse.stderr));
}

#[test]
fn binary_counterexample_output_is_the_served_document() {
    let out = bin().args(["--format", "json", "counterexample"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), counterexample_json());
}

#[tokio::test]
async fn service_endpoints() {
    let (s, body) = call("GET", "/health", "").await;
    assert_eq!(s, StatusCode::OK);
    assert!(body.contains("ok"));

    let square = std::fs::read_to_string(data("dented_square.json")).unwrap();
    let (s, body) = call("POST", "/analyze", &square).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(body, golden("dented_square.analysis.json"));

    let bowtie = std::fs::read_to_string(data("bowtie.json")).unwrap();
    let (s, body) = call("POST", "/analyze", &bowtie).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert!(body.contains("NotSimple"));

    let (s, body) = call("POST", "/analyze", r#"{"vertices": [[0, 0], [1, 0], [2, 0], [1, 1]]}"#).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body.contains("CollinearTriple"));

    let (s, _) = call("POST", "/analyze", "not json").await;
    assert_eq!(s, StatusCode::BAD_REQUEST);

    let (s, body) = call("GET", "/counterexample", "").await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(body, counterexample_json());

    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    let req = serde_json::json!({ "a": doc["a"], "b": doc["b"] }).to_string();
    let (s, body) = call("POST", "/verify-pair", &req).await;
    assert_eq!(s, StatusCode::OK);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["compared"], 198);

    let req = serde_json::json!({ "a": doc["a"], "b": { "vertices": [[0, 0], [1, 0], [0, 1]] } }).to_string();
    let (s, body) = call("POST", "/verify-pair", &req).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert!(body.contains("PairError"));
}

#[tokio::test]
async fn concurrent_requests_agree() {
    let square = std::fs::read_to_string(data("dented_square.json")).unwrap();
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let s = square.clone();
            tokio::spawn(async move { call("POST", "/analyze", &s).await })
        })
        .collect();
    for h in handles {
        let (status, body) = h.await.unwrap();
        assert_eq!(status, StatusCode::OK);
        assert_eq!(body, golden("dented_square.analysis.json"));
    }
}

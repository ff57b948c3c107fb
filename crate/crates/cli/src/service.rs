//! Stateless HTTP front end over the same analysis the CLI prints.

use axum::body::Bytes;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use zpstab::analysis::analyze;
use zpstab::io::{parse_polygon, LoadError};

use crate::commands::{counterexample_json, verify_pair};
use crate::CliError;

/// Default port when neither `--port` nor the environment sets one.
pub const DEFAULT_PORT: u16 = 8787;
pub const PORT_ENV: &str = "ZPSTAB_PORT";
/// Requests with more vertices are refused; the analysis is cubic.
pub const MAX_VERTICES: usize = 2000;

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn error_response(status: StatusCode, kind: &str, message: String) -> Response {
    let body = serde_json::json!({ "error": kind, "message": message });
    json_response(status, body.to_string())
}

fn load_error(e: &LoadError) -> Response {
    let status = if e.is_general_position() { StatusCode::UNPROCESSABLE_ENTITY } else { StatusCode::BAD_REQUEST };
    let body = serde_json::json!({ "error": e.kind(), "message": e.to_string(), "detail": e });
    json_response(status, body.to_string())
}

fn cli_error(e: &CliError) -> Response {
    match e {
        CliError::Load { source, .. } => load_error(source),
        _ => error_response(StatusCode::BAD_REQUEST, e.kind(), e.to_string()),
    }
}

fn too_large(n: usize) -> Option<Response> {
    (n > MAX_VERTICES).then(|| {
        error_response(StatusCode::BAD_REQUEST, "TooManyVertices", format!("{n} vertices; the service accepts at most {MAX_VERTICES}"))
    })
}

/// Body: a polygon file. Reply: the analysis, as `analyze --format json`.
pub fn analyze_body(body: &[u8]) -> Response {
    let text = String::from_utf8_lossy(body);
    let loaded = match parse_polygon(&text) {
        Ok(l) => l,
        Err(e) => return load_error(&e),
    };
    if let Some(r) = too_large(loaded.polygon.n()) {
        return r;
    }
    match analyze(&loaded.polygon, loaded.decimals, false) {
        Ok(r) => json_response(StatusCode::OK, r.to_json()),
        Err(e) => cli_error(&CliError::Classify(e)),
    }
}

#[derive(Deserialize)]
struct PairRequest {
    a: serde_json::Value,
    b: serde_json::Value,
    correspondence: Option<Vec<usize>>,
}

/// Body: `{"a": polygon, "b": polygon, "correspondence": [...]?}`.
pub fn verify_pair_body(body: &[u8]) -> Response {
    let req: PairRequest = match serde_json::from_slice(body) {
        Ok(r) => r,
        Err(e) => {
            let err = LoadError::Json { line: e.line(), column: e.column(), message: e.to_string() };
            return load_error(&err);
        }
    };
    let mut polys = Vec::new();
    for (name, v) in [("a", &req.a), ("b", &req.b)] {
        match parse_polygon(&v.to_string()) {
            Ok(l) => polys.push(l.polygon),
            Err(source) => return cli_error(&CliError::Load { path: name.into(), source }),
        }
    }
    if let Some(r) = too_large(polys[0].n()) {
        return r;
    }
    let b = polys.pop().expect("two polygons");
    let a = polys.pop().expect("two polygons");
    match verify_pair(a, b, req.correspondence) {
        Ok(r) => json_response(StatusCode::OK, serde_json::to_string_pretty(&r).expect("report serializes") + "\n"),
        Err(e) => cli_error(&e),
    }
}

async fn blocking(f: fn(&[u8]) -> Response, body: Bytes) -> Response {
    tokio::task::spawn_blocking(move || f(&body)).await.unwrap_or_else(|e| {
        error_response(StatusCode::INTERNAL_SERVER_ERROR, "InternalError", e.to_string())
    })
}

pub fn router() -> Router {
    Router::new()
        .route("/analyze", post(|body: Bytes| blocking(analyze_body, body)))
        .route("/verify-pair", post(|body: Bytes| blocking(verify_pair_body, body)))
        .route("/counterexample", get(|| async { json_response(StatusCode::OK, counterexample_json()) }))
        .route("/health", get(|| async { json_response(StatusCode::OK, "{\"status\":\"ok\"}\n".to_string()) }))
}

pub async fn serve(host: &str, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

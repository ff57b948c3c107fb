//! Polygon files: `{"vertices": [[x, y], ...]}` with integer coordinates or
//! decimal strings such as `"-1.25"`. Decimals are read exactly and every
//! coordinate is multiplied by the smallest power of ten that makes all of
//! them integers; the scale does not change any stab count or class.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point;
use crate::polygon::{Polygon, PolygonError};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum LoadError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("vertex {index}: {text:?} is not an integer or a decimal string")]
    BadCoordinate { index: usize, text: String },
    #[error("vertex {index}: coordinate too large after scaling by 10^{decimals}")]
    OutOfRange { index: usize, decimals: u32 },
    #[error("{0}")]
    Polygon(#[from] PolygonError),
}

impl LoadError {
    /// Name of the violated invariant or the parse failure.
    pub fn kind(&self) -> &'static str {
        match self {
            LoadError::Json { .. } => "ParseError",
            LoadError::BadCoordinate { .. } => "BadCoordinate",
            LoadError::OutOfRange { .. } => "CoordinateOutOfRange",
            LoadError::Polygon(e) => e.kind(),
        }
    }

    /// General-position failures are well-formed input the model rejects.
    pub fn is_general_position(&self) -> bool {
        matches!(self, LoadError::Polygon(PolygonError::CollinearTriple { .. }))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoord {
    Int(i64),
    Text(String),
    Other(serde_json::Value),
}

#[derive(Deserialize)]
struct RawPolygon {
    vertices: Vec<[RawCoord; 2]>,
}

/// A decimal as `digits / 10^decimals`.
fn parse_decimal(s: &str) -> Option<(i128, u32)> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let frac = frac.trim_end_matches('0');
    let digits: String = format!("{int}{frac}");
    let v: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    Some((if neg { -v } else { v }, frac.len() as u32))
}

/// A loaded polygon and the power of ten its coordinates were scaled by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loaded {
    pub polygon: Polygon,
    pub decimals: u32,
}

pub fn parse_polygon(text: &str) -> Result<Loaded, LoadError> {
    let raw: RawPolygon = serde_json::from_str(text)
        .map_err(|e| LoadError::Json { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut vals: Vec<[(i128, u32); 2]> = Vec::with_capacity(raw.vertices.len());
    for (index, pair) in raw.vertices.iter().enumerate() {
        let mut out = [(0, 0); 2];
        for (k, c) in pair.iter().enumerate() {
            out[k] = match c {
                RawCoord::Int(v) => (*v as i128, 0),
                RawCoord::Text(t) => {
                    parse_decimal(t).ok_or_else(|| LoadError::BadCoordinate { index, text: t.clone() })?
                }
                RawCoord::Other(v) => return Err(LoadError::BadCoordinate { index, text: v.to_string() }),
            };
        }
        vals.push(out);
    }
    let decimals = vals.iter().flatten().map(|&(_, d)| d).max().unwrap_or(0);
    let mut pts = Vec::with_capacity(vals.len());
    for (index, pair) in vals.iter().enumerate() {
        let mut xy = [0i64; 2];
        for (k, &(v, d)) in pair.iter().enumerate() {
            let scaled = 10i128
                .checked_pow(decimals - d)
                .and_then(|f| v.checked_mul(f))
                .and_then(|s| i64::try_from(s).ok())
                .ok_or(LoadError::OutOfRange { index, decimals })?;
            xy[k] = scaled;
        }
        let p = Point::new(xy[0], xy[1]);
        if !p.in_range() {
            return Err(LoadError::OutOfRange { index, decimals });
        }
        pts.push(p);
    }
    Ok(Loaded { polygon: Polygon::new(pts)?, decimals })
}

/// One vertex per line, integer coordinates.
pub fn polygon_to_json(poly: &Polygon) -> String {
    let rows: Vec<String> = poly.vertices().iter().map(|p| format!("    [{}, {}]", p.x, p.y)).collect();
    format!("{{\n  \"vertices\": [\n{}\n  ]\n}}\n", rows.join(",\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_and_decimals() {
        let l = parse_polygon(r#"{"vertices": [[0, 0], ["1.5", 0], [1, "2.25"]]}"#).unwrap();
        assert_eq!(l.decimals, 2);
        assert_eq!(l.polygon.vertex(1), Point::new(150, 0));
        assert_eq!(l.polygon.vertex(2), Point::new(100, 225));
        let back = parse_polygon(&polygon_to_json(&l.polygon)).unwrap();
        assert_eq!(back.polygon, l.polygon);
        assert_eq!(parse_decimal("-0.50"), Some((-5, 1)));
        assert_eq!(parse_decimal("1e3"), None);
        assert_eq!(parse_decimal("."), None);
    }

    #[test]
    fn errors_name_the_problem() {
        let e = parse_polygon("{\"vertices\": [[0, 0],\n [1, 0], [0 1]]}").unwrap_err();
        assert!(matches!(e, LoadError::Json { line: 2, .. }), "{e:?}");
        let e = parse_polygon(r#"{"vertices": [[0, 0], [1, 0.5], [0, 1]]}"#).unwrap_err();
        assert_eq!(e.kind(), "BadCoordinate");
        let e = parse_polygon(r#"{"vertices": [[0, 0], [1, 0], [2, 0], [1, 1]]}"#).unwrap_err();
        assert_eq!(e.kind(), "CollinearTriple");
        assert!(e.is_general_position());
        let e = parse_polygon(r#"{"vertices": [[0, 0], [2, 2], [2, 0], [0, 2]]}"#).unwrap_err();
        assert_eq!(e.kind(), "NotSimple");
    }
}

//! Seeded random simple polygons: random lattice points in general position,
//! a random tour, then 2-opt moves until no two edges cross.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{cross, segments_properly_cross, Point};
use crate::polygon::Polygon;
use crate::visibility::{is_nontriangular, visibility_oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Style {
    Generic,
    /// Retries until no chain of 8 or more vertices is triangular.
    Nontriangular,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("no {style:?} polygon with {n} vertices after {attempts} attempts (seed {seed})")]
    GenerationFailed { n: usize, seed: u64, style: Style, attempts: u32 },
}

pub const NONTRIANGULAR_ATTEMPTS: u32 = 500;

/// Side of the square lattice the points are drawn from.
fn grid_size(n: usize) -> i64 {
    (16 * n as i64).max(64)
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point> {
    let g = grid_size(n);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.gen_range(0..g), rng.gen_range(0..g));
        let clash = pts.iter().enumerate().any(|(i, &a)| {
            a == p || pts[i + 1..].iter().any(|&b| cross(a, b, p) == 0)
        });
        if !clash {
            pts.push(p);
        }
    }
    pts
}

/// Reverses tour segments until no two edges cross. Each move strictly
/// shortens the tour, so this terminates.
pub fn untangle(pts: &mut [Point]) {
    let n = pts.len();
    'outer: loop {
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (pts[i], pts[i + 1]);
                let (c, d) = (pts[j], pts[(j + 1) % n]);
                if segments_properly_cross(a, b, c, d) {
                    pts[i + 1..=j].reverse();
                    continue 'outer;
                }
            }
        }
        return;
    }
}

fn one_polygon(rng: &mut ChaCha8Rng, n: usize) -> Polygon {
    let mut pts = random_points(rng, n);
    pts.shuffle(rng);
    untangle(&mut pts);
    Polygon::new(pts).expect("untangled tour of points in general position is a simple polygon")
}

/// Deterministic in `(n, seed, style)`.
pub fn generate_random_polygon(n: usize, seed: u64, style: Style) -> Result<Polygon, GenerateError> {
    if n < 3 {
        return Err(GenerateError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match style {
        Style::Generic => Ok(one_polygon(&mut rng, n)),
        Style::Nontriangular => {
            for _ in 0..NONTRIANGULAR_ATTEMPTS {
                let p = one_polygon(&mut rng, n);
                if is_nontriangular(&p, &visibility_oracle(&p), 8) {
                    return Ok(p);
                }
            }
            Err(GenerateError::GenerationFailed { n, seed, style, attempts: NONTRIANGULAR_ATTEMPTS })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_determinism() {
        let t = generate_random_polygon(3, 7, Style::Generic).unwrap();
        assert_eq!(t.n(), 3);
        assert!(t.signed_area2() > 0);
        for seed in 0..5 {
            let a = generate_random_polygon(12, seed, Style::Generic).unwrap();
            let b = generate_random_polygon(12, seed, Style::Generic).unwrap();
            assert_eq!(a, b);
        }
        assert_ne!(
            generate_random_polygon(12, 1, Style::Generic).unwrap(),
            generate_random_polygon(12, 2, Style::Generic).unwrap()
        );
        assert_eq!(generate_random_polygon(2, 0, Style::Generic), Err(GenerateError::TooFewVertices(2)));
    }
}

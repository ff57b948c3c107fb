//! Independent stab counts. The full line through `x` and `y` is intersected
//! with each edge by solving the 2x2 system in exact rationals, and the
//! crossing parameter is binned. No predicate from `geom` is used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polygon::Polygon;
use crate::stabbing::StabTriple;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Solves `x + t (y - x) = p + s (q - p)` and returns `(t, s)`, or `None`
/// when the edge is parallel to the line.
fn line_edge_params(
    x: (i64, i64),
    y: (i64, i64),
    p: (i64, i64),
    r: (i64, i64),
) -> Option<(BigRational, BigRational)> {
    let (dx, dy) = (q(y.0) - q(x.0), q(y.1) - q(x.1));
    let (ex, ey) = (q(r.0) - q(p.0), q(r.1) - q(p.1));
    let (wx, wy) = (q(p.0) - q(x.0), q(p.1) - q(x.1));
    // t d - s e = w, by Cramer's rule.
    let det = &ex * &dy - &dx * &ey;
    if det.is_zero() {
        return None;
    }
    let t = (&ex * &wy - &wx * &ey) / &det;
    let s = (&dx * &wy - &wx * &dy) / &det;
    Some((t, s))
}

pub fn brute_stab_triple(poly: &Polygon, x: usize, y: usize) -> StabTriple {
    let n = poly.n();
    let v = |i: usize| {
        let p = poly.vertices()[i];
        (p.x, p.y)
    };
    let mut out = StabTriple::default();
    for i in 0..n {
        let j = (i + 1) % n;
        if [i, j].contains(&x) || [i, j].contains(&y) {
            continue;
        }
        let Some((t, s)) = line_edge_params(v(x), v(y), v(i), v(j)) else {
            continue;
        };
        if s <= BigRational::zero() || s >= BigRational::one() {
            continue;
        }
        if t < BigRational::zero() {
            out.tail += 1;
        } else if t > BigRational::zero() && t < BigRational::one() {
            out.body += 1;
        } else if t > BigRational::one() {
            out.head += 1;
        }
    }
    out
}

/// Full ordered table, row-major `n x n`, zero on the diagonal.
pub fn brute_stab_table(poly: &Polygon) -> Vec<StabTriple> {
    let n = poly.n();
    (0..n * n)
        .map(|k| if k / n == k % n { StabTriple::default() } else { brute_stab_triple(poly, k / n, k % n) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dented_square() {
        let p = Polygon::from_coords(&[(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)]).unwrap();
        // Line through the top corners is crossed by nothing outside them.
        assert_eq!(brute_stab_triple(&p, 2, 4), StabTriple::new(0, 0, 0));
        // Line through the bottom corners and the dent.
        let t = brute_stab_triple(&p, 0, 3);
        assert_eq!(t.body, 0);
        assert_eq!(t.head, 1);
    }
}

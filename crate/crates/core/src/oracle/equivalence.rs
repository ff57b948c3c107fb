//! Comparing the ZP tables of two polygons vertex by vertex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Component;
use crate::polygon::Polygon;
use crate::stabbing::{stab_table, StabTable};

/// Two polygons and a vertex map: vertex `i` of `a` corresponds to vertex
/// `correspondence[i]` of `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonPair {
    pub a: Polygon,
    pub b: Polygon,
    pub correspondence: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("vertex counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("correspondence is not a permutation of 0..{0}")]
    BadCorrespondence(usize),
}

impl PolygonPair {
    pub fn identity(a: Polygon, b: Polygon) -> Result<Self, PairError> {
        let n = a.n();
        Self::new(a, b, (0..n).collect())
    }

    pub fn new(a: Polygon, b: Polygon, correspondence: Vec<usize>) -> Result<Self, PairError> {
        if a.n() != b.n() {
            return Err(PairError::SizeMismatch(a.n(), b.n()));
        }
        let mut seen = vec![false; a.n()];
        if correspondence.len() != a.n() {
            return Err(PairError::BadCorrespondence(a.n()));
        }
        for &j in &correspondence {
            if j >= a.n() || std::mem::replace(&mut seen[j], true) {
                return Err(PairError::BadCorrespondence(a.n()));
            }
        }
        Ok(PolygonPair { a, b, correspondence })
    }

    /// The same pair with `a` and `b` swapped.
    pub fn swapped(&self) -> PolygonPair {
        let mut inv = vec![0; self.correspondence.len()];
        for (i, &j) in self.correspondence.iter().enumerate() {
            inv[j] = i;
        }
        PolygonPair { a: self.b.clone(), b: self.a.clone(), correspondence: inv }
    }
}

/// One component count of an ordered pair, in both polygons. The pair is
/// given in `a`'s labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDiff {
    pub pair: (usize, usize),
    pub component: Component,
    pub value_a: u32,
    pub value_b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equal: bool,
    /// Component classes compared: three per unordered pair.
    pub compared: usize,
    pub first_diff: Option<ComponentDiff>,
    /// Unordered pairs whose raw counts differ although every class agrees.
    pub raw_diffs: usize,
    /// Every raw count that differs, for pairs `x < y`.
    pub raw_diff_entries: Vec<ComponentDiff>,
    pub notes: Vec<String>,
}

const COMPONENTS: [Component; 3] = [Component::Tail, Component::Body, Component::Head];

fn compare(pair: &PolygonPair, ta: &StabTable, tb: &StabTable) -> EquivalenceReport {
    let n = pair.a.n();
    let m = &pair.correspondence;
    let mut first_diff = None;
    let mut compared = 0;
    let mut raw_diffs = 0;
    let mut raw_diff_entries = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let mut class_diff = false;
            let mut raw_diff = false;
            for (u, v) in [(x, y), (y, x)] {
                let (sa, sb) = (ta.get(u, v), tb.get(m[u], m[v]));
                for c in COMPONENTS {
                    let (va, vb) = (sa.get(c), sb.get(c));
                    let d = ComponentDiff { pair: (u, v), component: c, value_a: va, value_b: vb };
                    if sa.zp().get(c) != sb.zp().get(c) {
                        class_diff = true;
                        first_diff.get_or_insert(d);
                    }
                    if va != vb {
                        raw_diff = true;
                        if u < v {
                            raw_diff_entries.push(d);
                        }
                    }
                }
            }
            compared += 3;
            if raw_diff && !class_diff {
                raw_diffs += 1;
            }
        }
    }
    let notes = vec![format!("C({n},2) x 3 = {compared} component classes compared")];
    EquivalenceReport { equal: first_diff.is_none(), compared, first_diff, raw_diffs, raw_diff_entries, notes }
}

/// Compares the ZP classes of Tail, Body and Head for every pair, in both
/// orientations, under the pair's vertex correspondence.
pub fn verify_zp_equivalence(pair: &PolygonPair) -> EquivalenceReport {
    compare(pair, &stab_table(&pair.a), &stab_table(&pair.b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dented() -> Polygon {
        Polygon::from_coords(&[(0, 0), (4, 0), (4, 4), (2, 1), (0, 4)]).unwrap()
    }

    #[test]
    fn identical_polygons() {
        let r = verify_zp_equivalence(&PolygonPair::identity(dented(), dented()).unwrap());
        assert!(r.equal);
        assert_eq!(r.compared, 30);
        assert_eq!(r.raw_diffs, 0);
        assert!(r.first_diff.is_none());
    }

    #[test]
    fn rotated_labels_match_under_correspondence() {
        let a = dented();
        let b = Polygon::new((0..5).map(|i| a.vertex((i + 2) % 5)).collect()).unwrap();
        // a's vertex i sits at b's index (i + 3) % 5.
        let pair = PolygonPair::new(a.clone(), b.clone(), (0..5).map(|i| (i + 3) % 5).collect()).unwrap();
        assert!(verify_zp_equivalence(&pair).equal);
        let naive = PolygonPair::identity(a, b).unwrap();
        assert!(!verify_zp_equivalence(&naive).equal);
    }

    #[test]
    fn bad_inputs() {
        let tri = Polygon::from_coords(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(PolygonPair::identity(tri.clone(), dented()), Err(PairError::SizeMismatch(3, 5)));
        assert!(PolygonPair::new(tri.clone(), tri, vec![0, 0, 1]).is_err());
    }
}

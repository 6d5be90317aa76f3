//! Topological summary of an affine curve: closed components with their
//! nesting, and branches going off to infinity.

use serde::Serialize;

use crate::curve::{CurveGraph, GluingMode};
use crate::error::PatchworkError;
use crate::scheme::{Nest, RealScheme};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffineSummary {
    pub bounded_components: usize,
    pub unbounded_ends: usize,
    pub affine_components: usize,
    /// Nesting of the bounded components, in `⟨…⟩` notation.
    pub nesting: String,
}

impl AffineSummary {
    /// Builds the summary from closed polygons (integer coordinates, pairwise
    /// disjoint) and the number of open branches.
    pub(crate) fn from_polygons(cycles: &[Vec<(i64, i64)>], paths: usize) -> Self {
        let n = cycles.len();
        // inside[a][b]: cycle a lies inside cycle b
        let inside: Vec<Vec<bool>> =
            (0..n).map(|a| (0..n).map(|b| a != b && contains(&cycles[b], cycles[a][0])).collect()).collect();
        let depth: Vec<usize> = (0..n).map(|a| inside[a].iter().filter(|x| **x).count()).collect();
        let parent: Vec<Option<usize>> =
            (0..n).map(|a| (0..n).filter(|&b| inside[a][b]).max_by_key(|&b| depth[b])).collect();
        fn build(node: Option<usize>, parent: &[Option<usize>]) -> Vec<Nest> {
            (0..parent.len()).filter(|&c| parent[c] == node).map(|c| Nest::new(build(Some(c), parent))).collect()
        }
        let nesting = RealScheme::new(false, build(None, &parent)).code();
        AffineSummary { bounded_components: n, unbounded_ends: 2 * paths, affine_components: n + paths, nesting }
    }

    pub fn empty() -> Self {
        Self::from_polygons(&[], 0)
    }
}

/// Even-odd rule with a horizontal ray to the right; the point must not lie
/// on the polygon.
pub(crate) fn contains(poly: &[(i64, i64)], (px, py): (i64, i64)) -> bool {
    let mut inside = false;
    for k in 0..poly.len() {
        let (x1, y1) = poly[k];
        let (x2, y2) = poly[(k + 1) % poly.len()];
        if (y1 > py) != (y2 > py) {
            // crossing abscissa > px  <=>  (x2 - x1)(py - y1) / (y2 - y1) + x1 > px
            let lhs = (x2 - x1) as i128 * (py - y1) as i128 + (x1 - px) as i128 * (y2 - y1) as i128;
            if (lhs > 0) == (y2 > y1) {
                inside = !inside;
            }
        }
    }
    inside
}

/// Summary of the combinatorial affine curve, with exact point-in-polygon
/// tests on the doubled coordinates of its vertices.
pub fn combinatorial_summary(c: &CurveGraph) -> Result<AffineSummary, PatchworkError> {
    if c.mode() != GluingMode::Affine {
        return Err(PatchworkError::WrongMode { expected: "affine", got: c.mode().name() });
    }
    let mut cycles = Vec::new();
    let mut paths = 0;
    for comp in c.components() {
        if comp.closed {
            cycles
                .push(comp.vertices.iter().map(|&v| (c.vertices()[v].x2 as i64, c.vertices()[v].y2 as i64)).collect());
        } else {
            paths += 1;
        }
    }
    Ok(AffineSummary::from_polygons(&cycles, paths))
}

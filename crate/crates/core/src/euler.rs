//! Euler characteristics of the two halves of `RP^2` cut out by an
//! even-degree curve, and of the Arnold surfaces built from them.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::PatchworkError;
use crate::scheme::{RealScheme, RegionComplex};
use crate::signs::Sign;
use crate::square::{SquareComplex, SquarePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    /// `χ` of the closed part where the polynomial is non-negative.
    pub chi_plus: i64,
    pub chi_minus: i64,
    /// The extended signs were negated so that the outermost region is negative.
    pub flipped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArnoldEuler {
    pub chi_plus: i64,
    pub chi_minus: i64,
    /// Number of cross-caps of the non-orientable surface built on the negative half.
    pub cross_caps_minus: i64,
}

pub fn genus(m: u32) -> i64 {
    let m = m as i64;
    (m - 1) * (m - 2) / 2
}

fn canonical_vertex(sq: &SquareComplex, p: SquarePoint) -> SquarePoint {
    if sq.is_boundary(p) {
        p.max(p.antipode())
    } else {
        p
    }
}

/// `V - E + F` of the full subcomplex on the vertices accepted by `keep`,
/// in the cellulation of `RP^2` obtained from the square by gluing antipodal
/// boundary points.
fn subcomplex_euler(sq: &SquareComplex, keep: impl Fn(SquarePoint) -> bool) -> i64 {
    let mut vertices = HashSet::new();
    let mut edges = HashSet::new();
    let mut faces = 0i64;
    for t in sq.triangles() {
        let v = t.vertices;
        let kept = v.map(&keep);
        for r in 0..3 {
            if kept[r] {
                vertices.insert(canonical_vertex(sq, v[r]));
            }
        }
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            if kept[a] && kept[b] {
                let e = (v[a].min(v[b]), v[a].max(v[b]));
                let key = if sq.is_boundary(v[a]) && sq.is_boundary(v[b]) && on_boundary_side(sq, v[a], v[b]) {
                    let f = (v[a].antipode().min(v[b].antipode()), v[a].antipode().max(v[b].antipode()));
                    e.max(f)
                } else {
                    e
                };
                edges.insert(key);
            }
        }
        faces += i64::from(kept.iter().all(|k| *k));
    }
    vertices.len() as i64 - edges.len() as i64 + faces
}

fn on_boundary_side(sq: &SquareComplex, a: SquarePoint, b: SquarePoint) -> bool {
    // both ends on |x| + |y| = m and the midpoint too
    (a.x + b.x).abs() + (a.y + b.y).abs() == 2 * sq.degree() as i32
}

/// `χ(RP^2_+)` and `χ(RP^2_-)`, by counting cells and independently from the
/// nesting as `P - N` (even minus odd ovals).
pub fn euler_rp2(
    sq: &SquareComplex,
    regions: &RegionComplex,
    scheme: &RealScheme,
) -> Result<EulerReport, PatchworkError> {
    let m = sq.degree();
    if m % 2 == 1 {
        return Err(PatchworkError::OddDegree(m));
    }
    let total = subcomplex_euler(sq, |_| true);
    if total != 1 {
        return Err(PatchworkError::Internal(format!("cellulation of RP^2 has Euler characteristic {total}")));
    }
    let root_sign = regions.regions()[regions.root()]
        .sign
        .ok_or_else(|| PatchworkError::Internal("outer region has no sign".into()))?;
    let flipped = root_sign == Sign::Plus;
    let positive = |p: SquarePoint| (sq.sign(p) == Sign::Plus) != flipped;
    let chi_plus = subcomplex_euler(sq, positive);
    let chi_minus = subcomplex_euler(sq, |p| !positive(p));
    if chi_plus + chi_minus != 1 {
        return Err(PatchworkError::Internal(format!("χ+ = {chi_plus} and χ- = {chi_minus} do not add up to 1")));
    }
    let by_ovals = scheme.even_ovals() as i64 - scheme.odd_ovals() as i64;
    if chi_plus != by_ovals {
        return Err(PatchworkError::Internal(format!("cell count gives χ+ = {chi_plus}, nesting gives {by_ovals}")));
    }
    Ok(EulerReport { chi_plus, chi_minus, flipped })
}

/// `χ(A±) = χ(CA / conj) + χ(RP^2_±)` with `χ(CA / conj) = 1 - g`.
pub fn arnold_euler(m: u32, e: &EulerReport) -> Result<ArnoldEuler, PatchworkError> {
    if m % 2 == 1 {
        return Err(PatchworkError::OddDegree(m));
    }
    let quotient = 1 - genus(m);
    let chi_minus = quotient + e.chi_minus;
    Ok(ArnoldEuler { chi_plus: quotient + e.chi_plus, chi_minus, cross_caps_minus: 2 - chi_minus })
}

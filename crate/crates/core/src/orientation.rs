//! Type I / type II decision for T-curves built on elementary triangles.
//!
//! For an elementary triangle the four reflected copies carry three midline
//! segments, which close up into one circle (the real part of a line) once the
//! copies are glued along their edges as in the toric chart of the triangle.
//! Traversing that circle orients the three segments; each of the two complex
//! halves of the line induces either this orientation or its reverse. The
//! curve is of type I exactly when one flip bit per triangle makes the
//! orientations agree at every vertex of the projective curve.

use serde::Serialize;

use crate::curve::{CurveGraph, GluingMode};
use crate::dsu::ParityDsu;
use crate::error::PatchworkError;
use crate::square::SquareComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CurveType {
    TypeI,
    TypeII,
    EmptyCurve,
}

/// A complex orientation of the real curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orientation {
    /// `(source triangle, flipped)` for every triangle of `T_m` carrying segments.
    pub flips: Vec<(usize, bool)>,
    /// `[tail, head]` vertex ids for every segment of the curve.
    pub segments: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    pub value: CurveType,
    pub witness: Option<Orientation>,
}

/// Orientation of each segment along the circle of its triangle's chart:
/// `true` when it runs from `ends[0]` to `ends[1]`.
fn local_orientations(sq: &SquareComplex, c: &CurveGraph) -> Result<Vec<bool>, PatchworkError> {
    let sources = sq.triangles().iter().map(|t| t.source).max().map_or(0, |k| k + 1);
    // per source triangle: (segment, edge at ends[0], edge at ends[1])
    let mut local: Vec<Vec<(usize, [usize; 2])>> = vec![Vec::new(); sources];
    for (k, s) in c.segments().iter().enumerate() {
        let t = &sq.triangles()[s.triangle];
        let a = t.vertices.iter().position(|v| *v == s.minority).expect("minority is a vertex");
        let others: Vec<usize> = (0..3).filter(|&r| r != a).collect();
        // edge r is the one opposite vertex r
        let edge_to = |b: usize| 3 - a - b;
        local[t.source].push((k, [edge_to(others[0]), edge_to(others[1])]));
    }
    let mut forward = vec![true; c.segments().len()];
    for segs in local.iter().filter(|s| !s.is_empty()) {
        let mut used = vec![false; segs.len()];
        let (_, first_edges) = segs[0];
        used[0] = true;
        let start = first_edges[0];
        let mut at = first_edges[1];
        while at != start {
            let (idx, &(k, edges)) = segs
                .iter()
                .enumerate()
                .find(|(i, (_, e))| !used[*i] && e.contains(&at))
                .ok_or_else(|| PatchworkError::Internal("chart of a triangle is not a circle".into()))?;
            used[idx] = true;
            forward[k] = edges[0] == at;
            at = if forward[k] { edges[1] } else { edges[0] };
        }
        if used.iter().any(|u| !u) {
            return Err(PatchworkError::Internal("chart of a triangle has several circles".into()));
        }
    }
    Ok(forward)
}

pub fn curve_type(sq: &SquareComplex, c: &CurveGraph) -> Result<TypeVerdict, PatchworkError> {
    if c.mode() != GluingMode::Projective {
        return Err(PatchworkError::WrongMode { expected: "projective", got: c.mode().name() });
    }
    if !sq.all_elementary() {
        return Err(PatchworkError::NonElementary);
    }
    if c.is_empty() {
        return Ok(TypeVerdict { value: CurveType::EmptyCurve, witness: None });
    }
    let forward = local_orientations(sq, c)?;
    let head = |k: usize| c.segments()[k].ends[usize::from(forward[k])];
    let source = |k: usize| sq.triangles()[c.segments()[k].triangle].source;
    let sources = sq.triangles().iter().map(|t| t.source).max().map_or(0, |k| k + 1);

    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); c.vertices().len()];
    for (k, s) in c.segments().iter().enumerate() {
        at_vertex[s.ends[0]].push(k);
        at_vertex[s.ends[1]].push(k);
    }
    let mut system = ParityDsu::new(sources);
    let mut consistent = true;
    for (v, segs) in at_vertex.iter().enumerate() {
        let &[s1, s2] = segs.as_slice() else {
            return Err(PatchworkError::Internal(format!("vertex {v} has degree {}", segs.len())));
        };
        // exactly one of the two segments must point into v
        let rhs = !((head(s1) == v) ^ (head(s2) == v));
        consistent &= system.relate(source(s1), source(s2), rhs);
    }
    if !consistent {
        return Ok(TypeVerdict { value: CurveType::TypeII, witness: None });
    }
    let bits = system.solution();
    let mut carrying: Vec<usize> = (0..c.segments().len()).map(source).collect();
    carrying.sort_unstable();
    carrying.dedup();
    let segments = (0..c.segments().len())
        .map(|k| {
            let [a, b] = c.segments()[k].ends;
            if forward[k] ^ bits[source(k)] {
                [a, b]
            } else {
                [b, a]
            }
        })
        .collect();
    Ok(TypeVerdict {
        value: CurveType::TypeI,
        witness: Some(Orientation { flips: carrying.into_iter().map(|t| (t, bits[t])).collect(), segments }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{glue_projective, midlines};
    use crate::lattice::{LatticePoint, Triangle, Triangulation};
    use crate::regularity::{Lift, RegularTriangulation};
    use crate::scheme::{classify_components, nesting_tree, RegionComplex};
    use crate::signs::{Sign, SignDistribution};
    use crate::square::build_square;

    fn build(m: u32, d: &SignDistribution) -> (SquareComplex, CurveGraph) {
        let sq = build_square(&RegularTriangulation::standard(m).unwrap(), d).unwrap();
        let c = glue_projective(&midlines(&sq).unwrap()).unwrap();
        (sq, c)
    }

    #[test]
    fn harnack_curves_are_type_one() {
        for m in 1..=8 {
            let (sq, c) = build(m, &SignDistribution::harnack(m).unwrap());
            let v = curve_type(&sq, &c).unwrap();
            assert_eq!(v.value, CurveType::TypeI, "m={m}");
            let w = v.witness.unwrap();
            let mut indeg = vec![0; c.vertices().len()];
            let mut outdeg = vec![0; c.vertices().len()];
            for [a, b] in w.segments {
                outdeg[a] += 1;
                indeg[b] += 1;
            }
            assert!(indeg.iter().chain(&outdeg).all(|&d| d == 1));
        }
    }

    #[test]
    fn cubic_types_follow_component_count() {
        for bits in 0..1u64 << 10 {
            let (sq, c) = build(3, &SignDistribution::from_bits(3, bits).unwrap());
            let v = curve_type(&sq, &c).unwrap().value;
            assert_eq!(v == CurveType::TypeI, c.components().len() == 2, "bits={bits:b}");
        }
    }

    #[test]
    fn quartic_types_match_known_classification() {
        // degree 4 schemes of type I: ⟨4⟩ and ⟨1⟨1⟩⟩
        for bits in (0..1u64 << 15).step_by(7) {
            let d = SignDistribution::from_bits(4, bits).unwrap();
            let (sq, c) = build(4, &d);
            let cls = classify_components(&c).unwrap();
            let s = nesting_tree(&RegionComplex::build(&sq, &c, &cls).unwrap(), &cls);
            let v = curve_type(&sq, &c).unwrap().value;
            let expected = matches!(s.code().as_str(), "⟨4⟩" | "⟨1⟨1⟩⟩");
            assert_eq!(v == CurveType::TypeI, expected, "bits={bits:b} scheme={s}");
        }
    }

    #[test]
    fn rejects_non_elementary_and_affine_input() {
        let p = LatticePoint::new;
        let t = Triangulation::new(2, vec![Triangle::new(p(0, 0), p(2, 0), p(0, 2)).unwrap()]).unwrap();
        let rt = RegularTriangulation::certify(t, Lift::zero(2)).unwrap();
        let sq = build_square(&rt, &SignDistribution::constant(2, Sign::Plus).unwrap()).unwrap();
        let c = glue_projective(&midlines(&sq).unwrap()).unwrap();
        assert_eq!(curve_type(&sq, &c).unwrap_err(), PatchworkError::NonElementary);
        let (sq, c) = build(2, &SignDistribution::harnack(2).unwrap());
        let a = crate::curve::affine_model(&midlines(&sq).unwrap()).unwrap();
        assert!(matches!(curve_type(&sq, &a), Err(PatchworkError::WrongMode { .. })));
        assert_eq!(curve_type(&sq, &c).unwrap().value, CurveType::TypeI);
    }
}

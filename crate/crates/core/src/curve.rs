//! Midline curves on the symmetrized square and their projective and affine
//! models.
//!
//! Vertices are midpoints of triangulation edges, stored with doubled integer
//! coordinates so that every incidence decision is exact.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::PatchworkError;
use crate::signs::QuadrantCopy;
use crate::square::{SquareComplex, SquarePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GluingMode {
    /// Curve on the square `T_m^*` before any identification.
    Square,
    /// Opposite boundary points identified: a curve in `RP^2`.
    Projective,
    /// Boundary removed: a curve in `R^2` with open ends.
    Affine,
}

impl GluingMode {
    pub fn name(self) -> &'static str {
        match self {
            GluingMode::Square => "square",
            GluingMode::Projective => "projective",
            GluingMode::Affine => "affine",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveVertex {
    /// Twice the coordinates of the edge midpoint.
    pub x2: i32,
    pub y2: i32,
    pub quadrant: QuadrantCopy,
    /// Lies on the boundary `|x| + |y| = m` (the line at infinity).
    pub on_boundary: bool,
}

impl CurveVertex {
    pub fn key(&self) -> (i32, i32) {
        (self.x2, self.y2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveSegment {
    /// Midpoints of the two edges incident to the minority vertex.
    pub ends: [usize; 2],
    /// Index into [`SquareComplex::triangles`].
    pub triangle: usize,
    /// The vertex whose sign differs from the other two.
    pub minority: SquarePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Vertices in traversal order.
    pub vertices: Vec<usize>,
    /// Segments in traversal order; segment `k` joins `vertices[k]` and the next vertex.
    pub segments: Vec<usize>,
    /// Cycle (true) or path with two open ends.
    pub closed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveGraph {
    degree: u32,
    mode: GluingMode,
    vertices: Vec<CurveVertex>,
    segments: Vec<CurveSegment>,
    components: Vec<Component>,
    #[serde(skip)]
    segment_component: Vec<usize>,
}

impl CurveGraph {
    fn assemble(
        degree: u32,
        mode: GluingMode,
        vertices: Vec<CurveVertex>,
        segments: Vec<CurveSegment>,
    ) -> Result<Self, PatchworkError> {
        let components = trace_components(vertices.len(), &segments)?;
        let mut segment_component = vec![usize::MAX; segments.len()];
        for (c, comp) in components.iter().enumerate() {
            for &s in &comp.segments {
                segment_component[s] = c;
            }
        }
        Ok(Self { degree, mode, vertices, segments, components, segment_component })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mode(&self) -> GluingMode {
        self.mode
    }

    pub fn vertices(&self) -> &[CurveVertex] {
        &self.vertices
    }

    pub fn segments(&self) -> &[CurveSegment] {
        &self.segments
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of_segment(&self, s: usize) -> usize {
        self.segment_component[s]
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Number of segments meeting each vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for s in &self.segments {
            deg[s.ends[0]] += 1;
            deg[s.ends[1]] += 1;
        }
        deg
    }

    /// Curve ends on the removed boundary (affine and square modes).
    pub fn open_ends(&self) -> usize {
        match self.mode {
            GluingMode::Projective => 0,
            _ => self.vertices.iter().filter(|v| v.on_boundary).count(),
        }
    }

    pub fn vertex_index(&self, x2: i32, y2: i32) -> Option<usize> {
        self.vertices.iter().position(|v| v.x2 == x2 && v.y2 == y2)
    }

    fn require(&self, mode: GluingMode) -> Result<(), PatchworkError> {
        if self.mode != mode {
            return Err(PatchworkError::WrongMode { expected: mode.name(), got: self.mode.name() });
        }
        Ok(())
    }
}

/// Splits a graph of maximum degree two into cycles and paths.
fn trace_components(n: usize, segments: &[CurveSegment]) -> Result<Vec<Component>, PatchworkError> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, s) in segments.iter().enumerate() {
        incident[s.ends[0]].push(k);
        incident[s.ends[1]].push(k);
    }
    if let Some(v) = incident.iter().position(|i| i.len() > 2) {
        return Err(PatchworkError::Internal(format!("curve vertex {v} has degree {}", incident[v].len())));
    }
    let mut used = vec![false; segments.len()];
    let mut components = Vec::new();
    let walk = |start: usize, used: &mut Vec<bool>| {
        let mut vertices = vec![start];
        let mut segs = Vec::new();
        let mut at = start;
        while let Some(&s) = incident[at].iter().find(|&&s| !used[s]) {
            used[s] = true;
            segs.push(s);
            let [a, b] = segments[s].ends;
            at = if a == at { b } else { a };
            if at == start {
                break;
            }
            vertices.push(at);
        }
        (vertices, segs)
    };
    // paths first, from their lower-numbered end
    for v in 0..n {
        if incident[v].len() == 1 && !used[incident[v][0]] {
            let (vertices, segments) = walk(v, &mut used);
            components.push(Component { vertices, segments, closed: false });
        }
    }
    for v in 0..n {
        if incident[v].iter().any(|&s| !used[s]) {
            let (vertices, segments) = walk(v, &mut used);
            components.push(Component { vertices, segments, closed: true });
        }
    }
    Ok(components)
}

/// One segment per triangle with mixed signs, joining the midpoints of the two
/// edges at the minority vertex. Uniform triangles contribute nothing.
pub fn midlines(sq: &SquareComplex) -> Result<CurveGraph, PatchworkError> {
    let m = sq.degree() as i32;
    let mut index: HashMap<(i32, i32), usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut segments = Vec::new();
    let mut vertex = |a: SquarePoint, b: SquarePoint, vertices: &mut Vec<CurveVertex>| {
        let key = (a.x + b.x, a.y + b.y);
        *index.entry(key).or_insert_with(|| {
            vertices.push(CurveVertex {
                x2: key.0,
                y2: key.1,
                quadrant: QuadrantCopy::of_point(key.0 as i64, key.1 as i64),
                on_boundary: key.0.abs() + key.1.abs() == 2 * m,
            });
            vertices.len() - 1
        })
    };
    for (k, t) in sq.triangles().iter().enumerate() {
        let s = t.vertices.map(|v| sq.sign(v));
        let minority = match (s[0] == s[1], s[1] == s[2]) {
            (true, true) => continue,
            (true, false) => 2,
            (false, true) => 0,
            (false, false) => 1,
        };
        let a = t.vertices[minority];
        let others: Vec<usize> = (0..3).filter(|&r| r != minority).collect();
        let p = vertex(a, t.vertices[others[0]], &mut vertices);
        let q = vertex(a, t.vertices[others[1]], &mut vertices);
        segments.push(CurveSegment { ends: [p, q], triangle: k, minority: a });
    }
    CurveGraph::assemble(sq.degree(), GluingMode::Square, vertices, segments)
}

/// Identifies `(x, y)` with `(-x, -y)` on the boundary of the square.
///
/// The result must be a closed 1-manifold; a vertex of degree other than two
/// means the sign extension was inconsistent.
pub fn glue_projective(c: &CurveGraph) -> Result<CurveGraph, PatchworkError> {
    c.require(GluingMode::Square)?;
    let mut index: HashMap<(i32, i32), usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut remap = Vec::with_capacity(c.vertices.len());
    for v in &c.vertices {
        let key = if v.on_boundary { v.key().max((-v.x2, -v.y2)) } else { v.key() };
        let id = *index.entry(key).or_insert_with(|| {
            vertices.push(CurveVertex {
                x2: key.0,
                y2: key.1,
                quadrant: QuadrantCopy::of_point(key.0 as i64, key.1 as i64),
                on_boundary: v.on_boundary,
            });
            vertices.len() - 1
        });
        remap.push(id);
    }
    let segments: Vec<CurveSegment> =
        c.segments.iter().map(|s| CurveSegment { ends: s.ends.map(|e| remap[e]), ..*s }).collect();
    let mut deg = vec![0usize; vertices.len()];
    for s in &segments {
        deg[s.ends[0]] += 1;
        deg[s.ends[1]] += 1;
    }
    if let Some((v, d)) = deg.iter().enumerate().find(|(_, d)| **d != 2) {
        let cv: &CurveVertex = &vertices[v];
        return Err(PatchworkError::BadVertexDegree { x2: cv.x2, y2: cv.y2, degree: *d });
    }
    CurveGraph::assemble(c.degree, GluingMode::Projective, vertices, segments)
}

/// Removes the boundary sides; arcs reaching them become unbounded branches.
pub fn affine_model(c: &CurveGraph) -> Result<CurveGraph, PatchworkError> {
    c.require(GluingMode::Square)?;
    Ok(CurveGraph { mode: GluingMode::Affine, ..c.clone() })
}

/// Number of points of the projective curve on the glued boundary circle.
pub fn boundary_points(c: &CurveGraph) -> Result<usize, PatchworkError> {
    c.require(GluingMode::Projective)?;
    Ok(c.vertices.iter().filter(|v| v.on_boundary).count())
}

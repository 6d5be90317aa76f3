//! Lattice points, triangles and triangulations of the standard triangle
//! `T_m = {x >= 0, y >= 0, x + y <= m}`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// An integer point `(i, j)` in the closed first quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct LatticePoint {
    pub i: u32,
    pub j: u32,
}

impl LatticePoint {
    pub const fn new(i: u32, j: u32) -> Self {
        Self { i, j }
    }

    /// Total degree `i + j` of the monomial `x^i y^j`.
    pub fn weight(&self) -> u32 {
        self.i + self.j
    }

    pub(crate) fn as_i64(&self) -> (i64, i64) {
        (self.i as i64, self.j as i64)
    }
}

impl From<[u32; 2]> for LatticePoint {
    fn from([i, j]: [u32; 2]) -> Self {
        Self { i, j }
    }
}

impl From<LatticePoint> for [u32; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.i, p.j]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Twice the signed area of the triangle `abc`; positive when counter-clockwise.
pub fn doubled_signed_area(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    let (ax, ay) = a.as_i64();
    let (bx, by) = b.as_i64();
    let (cx, cy) = c.as_i64();
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// Unordered lattice segment, stored with its endpoints sorted.
pub type Edge = (LatticePoint, LatticePoint);

pub(crate) fn edge(a: LatticePoint, b: LatticePoint) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A non-degenerate lattice triangle. Vertices are kept in ascending order so
/// that equal triangles compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "[LatticePoint; 3]")]
pub struct Triangle {
    vertices: [LatticePoint; 3],
}

impl Triangle {
    pub fn new(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Result<Self, GeometryError> {
        if doubled_signed_area(a, b, c) == 0 {
            return Err(GeometryError::Degenerate([a, b, c]));
        }
        let mut vertices = [a, b, c];
        vertices.sort();
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> [LatticePoint; 3] {
        self.vertices
    }

    /// Twice the (unsigned) area.
    pub fn doubled_area(&self) -> i64 {
        let [a, b, c] = self.vertices;
        doubled_signed_area(a, b, c).abs()
    }

    /// Elementary triangles have area 1/2 and no lattice points besides
    /// their vertices.
    pub fn is_elementary(&self) -> bool {
        self.doubled_area() == 1
    }

    /// The three edges; edge `k` is opposite vertex `k`.
    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.vertices;
        [edge(b, c), edge(a, c), edge(a, b)]
    }

    /// Vertex not on the given edge, if the edge belongs to this triangle.
    pub fn opposite(&self, e: &Edge) -> Option<LatticePoint> {
        let k = self.edges().iter().position(|x| x == e)?;
        Some(self.vertices[k])
    }
}

impl TryFrom<[LatticePoint; 3]> for Triangle {
    type Error = GeometryError;

    fn try_from([a, b, c]: [LatticePoint; 3]) -> Result<Self, Self::Error> {
        Triangle::new(a, b, c)
    }
}

impl From<Triangle> for [LatticePoint; 3] {
    fn from(t: Triangle) -> Self {
        t.vertices
    }
}

impl<'de> Deserialize<'de> for Triangle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = <[LatticePoint; 3]>::deserialize(d)?;
        Triangle::try_from(raw).map_err(serde::de::Error::custom)
    }
}

/// The polygon `T_m` together with its lattice-point enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StandardTriangle {
    degree: u32,
}

pub fn standard_triangle(m: u32) -> Result<StandardTriangle, GeometryError> {
    if m == 0 {
        return Err(GeometryError::ZeroDegree);
    }
    Ok(StandardTriangle { degree: m })
}

impl StandardTriangle {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn corners(&self) -> [LatticePoint; 3] {
        let m = self.degree;
        [LatticePoint::new(0, 0), LatticePoint::new(m, 0), LatticePoint::new(0, m)]
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        p.weight() <= self.degree
    }

    /// Whether `p` lies on the boundary of `T_m`.
    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        p.i == 0 || p.j == 0 || p.weight() == self.degree
    }

    /// Number of lattice points, `(m+1)(m+2)/2`.
    pub fn point_count(&self) -> usize {
        let m = self.degree as usize;
        (m + 1) * (m + 2) / 2
    }

    /// Lattice points in lexicographic `(i, j)` order.
    pub fn lattice_points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        let m = self.degree;
        (0..=m).flat_map(move |i| (0..=m - i).map(move |j| LatticePoint::new(i, j)))
    }

    /// Position of `p` in the lexicographic enumeration.
    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let m = self.degree as usize;
        let i = p.i as usize;
        // sum over i' < i of (m - i' + 1)
        let before = i * (m + 1) - i * (i.saturating_sub(1)) / 2;
        Some(before + p.j as usize)
    }

    /// Whether the segment `ab` lies in one of the three sides.
    pub fn is_boundary_edge(&self, (a, b): Edge) -> bool {
        (a.i == 0 && b.i == 0) || (a.j == 0 && b.j == 0) || (a.weight() == self.degree && b.weight() == self.degree)
    }
}

/// A list of triangles meant to subdivide `T_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    degree: u32,
    triangles: Vec<Triangle>,
}

impl Triangulation {
    /// Wraps a triangle list without checking it; see [`is_subdivision`].
    pub fn new(degree: u32, triangles: Vec<Triangle>) -> Result<Self, GeometryError> {
        if degree == 0 {
            return Err(GeometryError::ZeroDegree);
        }
        Ok(Self { degree, triangles })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn polygon(&self) -> StandardTriangle {
        StandardTriangle { degree: self.degree }
    }

    /// Distinct vertices used by the triangles, in ascending order.
    pub fn vertices(&self) -> Vec<LatticePoint> {
        let mut v: Vec<_> = self.triangles.iter().flat_map(|t| t.vertices()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn all_elementary(&self) -> bool {
        self.triangles.iter().all(Triangle::is_elementary)
    }

    /// Map from each edge to the indices of the triangles containing it.
    pub fn edge_map(&self) -> HashMap<Edge, Vec<usize>> {
        let mut map: HashMap<Edge, Vec<usize>> = HashMap::new();
        for (k, t) in self.triangles.iter().enumerate() {
            for e in t.edges() {
                map.entry(e).or_default().push(k);
            }
        }
        map
    }

    /// Interior edges with their two incident triangles, sorted by edge.
    pub fn interior_edges(&self) -> Vec<(Edge, usize, usize)> {
        let mut out: Vec<_> = self
            .edge_map()
            .into_iter()
            .filter_map(|(e, ts)| match ts.as_slice() {
                [a, b] => Some((e, *a, *b)),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }
}

/// The triangulation of `T_m` cut by the lines `x = i`, `y = j`, `x + y = k`:
/// each unit square is split along its anti-diagonal.
pub fn harnack_triangulation(m: u32) -> Triangulation {
    let mut triangles = Vec::with_capacity((m * m) as usize);
    for i in 0..m {
        for j in 0..m - i {
            let p = LatticePoint::new;
            triangles.push(Triangle::new(p(i, j), p(i + 1, j), p(i, j + 1)).expect("unit triangle"));
            if i + j + 2 <= m {
                triangles.push(Triangle::new(p(i + 1, j), p(i + 1, j + 1), p(i, j + 1)).expect("unit triangle"));
            }
        }
    }
    Triangulation { degree: m, triangles }
}

/// Side of the line through `a`, `b` on which `c` lies: `1`, `-1` or `0`.
fn side(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    doubled_signed_area(a, b, c).signum()
}

/// Checks that the triangles tile `T_m` face-to-face.
///
/// Area accounting rules out gaps and overlaps of total measure; the edge audit
/// rules out hanging vertices and folds: boundary edges of `T_m` are used once,
/// every other edge exactly twice with the two triangles on opposite sides.
pub fn is_subdivision(t: &Triangulation) -> bool {
    if t.triangles.is_empty() {
        return false;
    }
    let poly = t.polygon();
    let m = t.degree as i64;
    if t.triangles.iter().flat_map(|tr| tr.vertices()).any(|p| !poly.contains(p)) {
        return false;
    }
    let area: i64 = t.triangles.iter().map(Triangle::doubled_area).sum();
    if area != m * m {
        return false;
    }
    for (e, owners) in t.edge_map() {
        if poly.is_boundary_edge(e) {
            if owners.len() != 1 {
                return false;
            }
        } else {
            let [a, b] = match owners.as_slice() {
                [a, b] => [*a, *b],
                _ => return false,
            };
            let oa = t.triangles[a].opposite(&e).expect("edge of triangle");
            let ob = t.triangles[b].opposite(&e).expect("edge of triangle");
            if side(e.0, e.1, oa) * side(e.0, e.1, ob) != -1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32, j: u32) -> LatticePoint {
        LatticePoint::new(i, j)
    }

    #[test]
    fn standard_triangle_counts() {
        let t1 = standard_triangle(1).unwrap();
        assert_eq!(t1.lattice_points().collect::<Vec<_>>(), vec![p(0, 0), p(0, 1), p(1, 0)]);
        assert_eq!(standard_triangle(2).unwrap().lattice_points().count(), 6);
        assert_eq!(standard_triangle(10).unwrap().lattice_points().count(), 66);
        assert_eq!(standard_triangle(0), Err(GeometryError::ZeroDegree));
    }

    #[test]
    fn index_matches_enumeration() {
        for m in 1..8 {
            let t = standard_triangle(m).unwrap();
            for (k, q) in t.lattice_points().enumerate() {
                assert_eq!(t.index_of(q), Some(k));
            }
            assert_eq!(t.index_of(p(m, 1)), None);
        }
    }

    #[test]
    fn harnack_triangle_counts() {
        let t = harnack_triangulation(1);
        assert_eq!(t.triangles(), &[Triangle::new(p(0, 0), p(1, 0), p(0, 1)).unwrap()]);
        assert_eq!(harnack_triangulation(2).triangles().len(), 4);
        let t4 = harnack_triangulation(4);
        assert_eq!(t4.triangles().len(), 16);
        assert_eq!(t4.triangles().iter().map(Triangle::doubled_area).sum::<i64>(), 16);
        assert!(t4.all_elementary());
        assert_eq!(t4.vertices().len(), 15);
    }

    #[test]
    fn subdivision_checks() {
        for m in 1..=6 {
            assert!(is_subdivision(&harnack_triangulation(m)));
        }
        let whole = Triangle::new(p(0, 0), p(1, 0), p(0, 1)).unwrap();
        let twice = Triangulation::new(1, vec![whole, whole]).unwrap();
        assert!(!is_subdivision(&twice));

        let mut t2 = harnack_triangulation(2);
        t2.triangles.pop();
        assert!(!is_subdivision(&t2));
    }

    #[test]
    fn hanging_vertex_rejected() {
        // (1,2) is a vertex on the right but hangs on the edge (2,0)-(0,4) on the left.
        let l = Triangle::new(p(0, 0), p(2, 0), p(0, 4)).unwrap();
        let r1 = Triangle::new(p(2, 0), p(4, 0), p(1, 2)).unwrap();
        let r2 = Triangle::new(p(1, 2), p(4, 0), p(0, 4)).unwrap();
        let t = Triangulation::new(4, vec![l, r1, r2]).unwrap();
        assert_eq!(t.triangles().iter().map(Triangle::doubled_area).sum::<i64>(), 16);
        assert!(!is_subdivision(&t));
        let r = Triangle::new(p(2, 0), p(4, 0), p(0, 4)).unwrap();
        assert!(is_subdivision(&Triangulation::new(4, vec![l, r]).unwrap()));
        let coarse = Triangulation::new(2, vec![Triangle::new(p(0, 0), p(2, 0), p(0, 2)).unwrap()]).unwrap();
        assert!(is_subdivision(&coarse));
    }

    #[test]
    fn degenerate_triangle_rejected() {
        assert!(Triangle::new(p(0, 0), p(1, 1), p(2, 2)).is_err());
        let json = "[[0,0],[1,1],[2,2]]";
        assert!(serde_json::from_str::<Triangle>(json).is_err());
    }
}

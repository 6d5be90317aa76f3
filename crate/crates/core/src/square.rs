//! The symmetrized square `T_m^* = {|x| + |y| <= m}` with the reflected
//! triangulation and the extended sign distribution.

use serde::{Deserialize, Serialize};

use crate::error::PatchworkError;
use crate::regularity::RegularTriangulation;
use crate::signs::{extend_signs, QuadrantCopy, Sign, SignDistribution};

/// Integer point of the square, with signed coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct SquarePoint {
    pub x: i32,
    pub y: i32,
}

impl SquarePoint {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn norm1(&self) -> i32 {
        self.x.abs() + self.y.abs()
    }

    pub fn antipode(&self) -> Self {
        Self { x: -self.x, y: -self.y }
    }
}

impl From<[i32; 2]> for SquarePoint {
    fn from([x, y]: [i32; 2]) -> Self {
        Self { x, y }
    }
}

impl From<SquarePoint> for [i32; 2] {
    fn from(p: SquarePoint) -> Self {
        [p.x, p.y]
    }
}

/// A copy of a triangle of `T_m` placed in one quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareTriangle {
    /// Images of the source vertices, in the source order.
    pub vertices: [SquarePoint; 3],
    /// Index of the source triangle in the triangulation of `T_m`.
    pub source: usize,
    pub copy: QuadrantCopy,
}

#[derive(Debug, Clone)]
pub struct SquareComplex {
    degree: u32,
    triangles: Vec<SquareTriangle>,
    // dense grid over [-m, m]^2; entries outside the square are unused
    signs: Vec<Sign>,
    certified: bool,
    elementary: bool,
}

impl SquareComplex {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn triangles(&self) -> &[SquareTriangle] {
        &self.triangles
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn all_elementary(&self) -> bool {
        self.elementary
    }

    /// Side length of the dense grid behind [`SquareComplex::slot`].
    pub fn side(&self) -> usize {
        2 * self.degree as usize + 1
    }

    /// Dense index of a point in the `(2m + 1)^2` grid over `[-m, m]^2`.
    pub fn slot(&self, p: SquarePoint) -> usize {
        let m = self.degree as i32;
        let side = 2 * m + 1;
        ((p.x + m) * side + (p.y + m)) as usize
    }

    pub fn point_at_slot(&self, k: usize) -> SquarePoint {
        let m = self.degree as i32;
        let side = self.side();
        SquarePoint::new((k / side) as i32 - m, (k % side) as i32 - m)
    }

    pub fn contains(&self, p: SquarePoint) -> bool {
        p.norm1() <= self.degree as i32
    }

    pub fn is_boundary(&self, p: SquarePoint) -> bool {
        p.norm1() == self.degree as i32
    }

    /// Extended sign at a lattice point of the square.
    pub fn sign(&self, p: SquarePoint) -> Sign {
        assert!(self.contains(p), "{p:?} outside the square");
        self.signs[self.slot(p)]
    }

    /// All lattice points of the square, in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = SquarePoint> + '_ {
        let m = self.degree as i32;
        (-m..=m).flat_map(move |x| {
            let r = m - x.abs();
            (-r..=r).map(move |y| SquarePoint::new(x, y))
        })
    }
}

/// Reflects the triangulation and the signs into the four quadrants.
pub fn build_square(t: &RegularTriangulation, d: &SignDistribution) -> Result<SquareComplex, PatchworkError> {
    let m = t.degree();
    if m != d.degree() {
        return Err(PatchworkError::DegreeMismatch { triangulation: m, signs: d.degree() });
    }
    let source = t.triangulation();
    let mut triangles = Vec::with_capacity(4 * source.triangles().len());
    for (k, tr) in source.triangles().iter().enumerate() {
        for q in QuadrantCopy::ALL {
            let vertices = tr.vertices().map(|v| {
                let (x, y) = q.apply(v);
                SquarePoint::new(x, y)
            });
            triangles.push(SquareTriangle { vertices, source: k, copy: q });
        }
    }
    let mi = m as i32;
    let side = (2 * mi + 1) as usize;
    let mut signs = vec![Sign::Plus; side * side];
    for (p, _) in d.iter() {
        for q in QuadrantCopy::ALL {
            let (x, y) = q.apply(p);
            let s = extend_signs(d, q, p);
            let slot = ((x + mi) * (2 * mi + 1) + (y + mi)) as usize;
            signs[slot] = s;
        }
    }
    Ok(SquareComplex { degree: m, triangles, signs, certified: t.is_certified(), elementary: source.all_elementary() })
}

use thiserror::Error;

use crate::lattice::LatticePoint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("degenerate triangle {0:?}")]
    Degenerate([LatticePoint; 3]),
    #[error("triangles do not subdivide T_{0}")]
    NotSubdivision(u32),
    #[error("lift is undefined at vertex {0}")]
    LiftUndefined(LatticePoint),
    #[error("lift is negative at {0}")]
    NegativeLift(LatticePoint),
    #[error("lift is not convexifying")]
    NotConvexifying,
    #[error("triangulation is not regular")]
    NotRegular,
    #[error("lift is not generic: {0:?} are coplanar with another lifted point")]
    NotGeneric([LatticePoint; 3]),
    #[error("linear program: {0}")]
    Lp(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatchworkError {
    #[error("degree mismatch: triangulation has degree {triangulation}, signs have degree {signs}")]
    DegreeMismatch { triangulation: u32, signs: u32 },
    #[error("expected {expected} signs for degree {degree}, got {got}")]
    SignCount { degree: u32, expected: usize, got: usize },
    #[error("invalid sign symbol {0:?}")]
    BadSymbol(char),
    #[error("operation needs a curve in {expected} mode, got {got}")]
    WrongMode { expected: &'static str, got: &'static str },
    #[error("curve vertex ({x2}/2, {y2}/2) has degree {degree} after gluing")]
    BadVertexDegree { x2: i32, y2: i32, degree: usize },
    #[error("orientation analysis needs elementary triangles")]
    NonElementary,
    #[error("inconsistent analysis: {0}")]
    Internal(String),
    #[error("operation needs even degree, got {0}")]
    OddDegree(u32),
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: u32, got: u32 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

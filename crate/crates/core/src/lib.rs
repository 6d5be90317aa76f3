//! Combinatorial patchworking of real plane T-curves.
//!
//! The pipeline runs from a regular triangulation of `T_m` and a sign
//! distribution to a midline curve in the projective plane, its real scheme,
//! its type, and Euler characteristics of the associated surfaces. An exact
//! polynomial oracle checks each construction against the sign pattern of the
//! actual patchwork polynomial.

pub mod analysis;
pub mod census;
pub mod curve;
mod dsu;
pub mod error;
pub mod euler;
pub mod formulas;
pub mod lattice;
pub mod lp;
pub mod oracle;
pub mod orientation;
pub mod rational;
pub mod regularity;
pub mod scheme;
pub mod signs;
pub mod square;

pub use error::{GeometryError, PatchworkError};

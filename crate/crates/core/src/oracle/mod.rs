//! Independent check of a patchwork construction: trace the zero set of the
//! actual polynomial for small dyadic `t` and compare its affine topology
//! with the combinatorial curve.

mod poly;
mod summary;
mod trace;
mod verify;

use thiserror::Error;

use crate::lattice::LatticePoint;

pub use poly::{patch_polynomial, sign_at, Dyadic, PatchPolynomial, Term};
pub use summary::{combinatorial_summary, AffineSummary};
pub use trace::{sample_box, trace_affine, QuadrantStats, SampleBox, Trace, TraceParams};
pub use verify::{verify_patchwork, Attempt, VerifyParams, VerifyReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("lift has no value at {0}")]
    MissingLift(LatticePoint),
    #[error("exponent overflow")]
    Overflow,
    #[error("resolution exceeded at s = {s}: {detail}")]
    Unresolved { s: u32, detail: String },
    #[error("no stabilization for s <= {s_max}")]
    NotStabilized { s_max: u32 },
    #[error(transparent)]
    Patchwork(#[from] crate::error::PatchworkError),
}

//! Stabilization loop over `s`.

use serde::Serialize;

use super::poly::patch_polynomial;
use super::summary::AffineSummary;
use super::trace::{sample_box, trace_affine, QuadrantStats, TraceParams};
use super::OracleError;
use crate::regularity::Lift;
use crate::signs::SignDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyParams {
    pub trace: TraceParams,
    pub s_start: u32,
    pub s_max: u32,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self { trace: TraceParams::default(), s_start: 1, s_max: 64 }
    }
}

/// Outcome of one value of `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub s: u32,
    pub summary: Option<AffineSummary>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    #[serde(rename = "match")]
    pub matched: bool,
    /// First of the two consecutive values of `s` that agreed.
    pub s: u32,
    pub grid: usize,
    pub combinatorial: AffineSummary,
    pub oracle: AffineSummary,
    pub quadrants: Vec<QuadrantStats>,
    pub attempts: Vec<Attempt>,
}

/// Traces `b_t` for `s = s_start, s_start + 1, …` and accepts as soon as two
/// consecutive values give the combinatorial summary.
///
/// If the search ends on two agreeing summaries that differ from the
/// combinatorial one, the report says `matched = false`; if it ends without
/// two agreeing summaries, the result is [`OracleError::NotStabilized`].
pub fn verify_patchwork(
    d: &SignDistribution,
    lift: &Lift,
    combinatorial: &AffineSummary,
    params: &VerifyParams,
) -> Result<VerifyReport, OracleError> {
    if params.s_start == 0 || params.s_start > params.s_max {
        return Err(OracleError::InvalidParameter(format!("bad range of s: {}..={}", params.s_start, params.s_max)));
    }
    let window = sample_box(lift, params.trace.delta)?;
    let mut attempts: Vec<Attempt> = Vec::new();
    let mut previous = None;
    let mut stable = None;
    for s in params.s_start..=params.s_max {
        let p = patch_polynomial(d, lift, s)?;
        let current = match trace_affine(&p, &window, &params.trace) {
            Ok(t) => {
                attempts.push(Attempt { s, summary: Some(t.summary.clone()), error: None });
                Some(t)
            }
            Err(e @ OracleError::Unresolved { .. }) => {
                attempts.push(Attempt { s, summary: None, error: Some(e.to_string()) });
                None
            }
            Err(e) => return Err(e),
        };
        if let (Some(prev), Some(cur)) = (&previous, &current) {
            let (prev, cur): (&super::trace::Trace, &super::trace::Trace) = (prev, cur);
            if prev.summary == cur.summary {
                let report = VerifyReport {
                    matched: cur.summary == *combinatorial,
                    s: prev.s,
                    grid: params.trace.grid,
                    combinatorial: combinatorial.clone(),
                    oracle: cur.summary.clone(),
                    quadrants: cur.quadrants.clone(),
                    attempts: Vec::new(),
                };
                if report.matched {
                    return Ok(VerifyReport { attempts, ..report });
                }
                stable = Some(report);
            } else {
                stable = None;
            }
        }
        previous = current;
    }
    match stable {
        Some(r) => Ok(VerifyReport { attempts, ..r }),
        None => Err(OracleError::NotStabilized { s_max: params.s_max }),
    }
}

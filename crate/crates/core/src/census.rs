//! Exhaustive enumeration of sign distributions for small degrees.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::scheme_and_type;
use crate::error::PatchworkError;
use crate::orientation::CurveType;
use crate::regularity::RegularTriangulation;
use crate::signs::SignDistribution;

pub const DEFAULT_DEGREE_CAP: u32 = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusFilter {
    pub components: Option<usize>,
    pub code: Option<String>,
    pub curve_type: Option<CurveType>,
}

impl CensusFilter {
    fn accepts(&self, components: usize, code: &str, t: Option<CurveType>) -> bool {
        self.components.is_none_or(|c| c == components)
            && self.code.as_deref().is_none_or(|c| c == code)
            && self.curve_type.is_none_or(|want| t == Some(want))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusHit {
    /// Bit `k` set means the `k`-th lattice point (lexicographic) is negative.
    pub bits: u64,
    pub signs: String,
    pub code: String,
    pub curve_type: Option<CurveType>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SchemeCount {
    pub count: u64,
    pub type_i: u64,
    pub type_ii: u64,
    /// Smallest distribution realizing the scheme.
    pub first: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub degree: u32,
    pub total: u64,
    pub matched: u64,
    /// Matching distributions per real scheme, keyed by Viro code.
    pub schemes: BTreeMap<String, SchemeCount>,
    /// Individual hits in enumeration order, when requested.
    pub hits: Vec<CensusHit>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("degree {degree} exceeds the census cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },
    #[error(transparent)]
    Patchwork(#[from] PatchworkError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusParams {
    pub filter: CensusFilter,
    pub cap: u32,
    pub keep_hits: bool,
}

impl Default for CensusParams {
    fn default() -> Self {
        Self { filter: CensusFilter::default(), cap: DEFAULT_DEGREE_CAP, keep_hits: false }
    }
}

const CHUNK: u64 = 1 << 10;

/// Runs every sign distribution on `t` through the pipeline. Work is split
/// into fixed chunks of the sign space and merged in order, so the result
/// does not depend on the number of threads.
pub fn census(t: &RegularTriangulation, params: &CensusParams) -> Result<CensusResult, CensusError> {
    let m = t.degree();
    if m > params.cap {
        return Err(CensusError::CapExceeded { degree: m, cap: params.cap });
    }
    let n = t.triangulation().polygon().point_count();
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Result<CensusResult, PatchworkError>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut part = CensusResult { degree: m, total: 0, matched: 0, schemes: BTreeMap::new(), hits: Vec::new() };
            for bits in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let d = SignDistribution::from_bits(m, bits)?;
                let (scheme, verdict) = scheme_and_type(t, &d)?;
                let code = scheme.code();
                let ty = verdict.map(|v| v.value);
                part.total += 1;
                if !params.filter.accepts(scheme.component_count(), &code, ty) {
                    continue;
                }
                part.matched += 1;
                let entry =
                    part.schemes.entry(code.clone()).or_insert(SchemeCount { first: bits, ..Default::default() });
                entry.count += 1;
                entry.type_i += u64::from(ty == Some(CurveType::TypeI));
                entry.type_ii += u64::from(ty == Some(CurveType::TypeII));
                if params.keep_hits {
                    part.hits.push(CensusHit { bits, signs: d.to_symbols(), code, curve_type: ty });
                }
            }
            Ok(part)
        })
        .collect();
    let mut result = CensusResult { degree: m, total: 0, matched: 0, schemes: BTreeMap::new(), hits: Vec::new() };
    for part in parts {
        let part = part?;
        result.total += part.total;
        result.matched += part.matched;
        for (code, c) in part.schemes {
            let e = result.schemes.entry(code).or_insert(SchemeCount { first: c.first, ..Default::default() });
            e.count += c.count;
            e.type_i += c.type_i;
            e.type_ii += c.type_ii;
            e.first = e.first.min(c.first);
        }
        result.hits.extend(part.hits);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_schemes() {
        let r = census(&RegularTriangulation::standard(3).unwrap(), &CensusParams::default()).unwrap();
        assert_eq!(r.total, 1024);
        assert_eq!(r.schemes.keys().cloned().collect::<Vec<_>>(), vec!["⟨J ⊔ 1⟩", "⟨J⟩"]);
    }

    #[test]
    fn filters_and_hits() {
        let params = CensusParams {
            filter: CensusFilter { components: Some(2), ..Default::default() },
            keep_hits: true,
            ..Default::default()
        };
        let r = census(&RegularTriangulation::standard(3).unwrap(), &params).unwrap();
        assert_eq!(r.matched as usize, r.hits.len());
        assert!(r.hits.iter().all(|h| h.code == "⟨J ⊔ 1⟩" && h.curve_type == Some(CurveType::TypeI)));
        assert!(r.hits.windows(2).all(|w| w[0].bits < w[1].bits));
        let harnack = SignDistribution::harnack(3).unwrap().to_bits().unwrap();
        assert!(r.hits.iter().any(|h| h.bits == harnack));
        assert_eq!(SignDistribution::from_bits(3, harnack).unwrap(), SignDistribution::harnack(3).unwrap());
    }

    #[test]
    fn cap() {
        let params = CensusParams { cap: 2, ..Default::default() };
        assert_eq!(
            census(&RegularTriangulation::standard(3).unwrap(), &params).unwrap_err(),
            CensusError::CapExceeded { degree: 3, cap: 2 }
        );
    }
}

//! End-to-end analysis of one T-curve.

use serde::Serialize;

use crate::curve::{affine_model, boundary_points, glue_projective, midlines, CurveGraph};
use crate::error::PatchworkError;
use crate::euler::{arnold_euler, euler_rp2, ArnoldEuler, EulerReport};
use crate::formulas::{cross_check, harnack_bound, CrossCheckReport, Observed};
use crate::orientation::{curve_type, CurveType, TypeVerdict};
use crate::regularity::RegularTriangulation;
use crate::scheme::{classify_components, nesting_tree, Classification, RealScheme, RegionComplex};
use crate::signs::{Sign, SignDistribution};
use crate::square::{build_square, SquareComplex};

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    #[serde(skip)]
    pub square: SquareComplex,
    /// The curve on the square before gluing.
    #[serde(skip)]
    pub square_curve: CurveGraph,
    pub projective: CurveGraph,
    #[serde(skip)]
    pub affine: CurveGraph,
    pub classification: Classification,
    pub regions: RegionComplex,
    pub scheme: RealScheme,
    pub boundary_points: usize,
    /// `None` when the triangulation has non-elementary triangles.
    pub verdict: Option<TypeVerdict>,
    /// Even degree only.
    pub euler: Option<EulerReport>,
    pub arnold: Option<ArnoldEuler>,
}

/// Runs the full construction. The type is left out for triangulations with
/// non-elementary triangles, the Euler data for odd degree.
pub fn analyze(t: &RegularTriangulation, d: &SignDistribution) -> Result<Analysis, PatchworkError> {
    let square = build_square(t, d)?;
    let square_curve = midlines(&square)?;
    let projective = glue_projective(&square_curve)?;
    let affine = affine_model(&square_curve)?;
    let classification = classify_components(&projective)?;
    let regions = RegionComplex::build(&square, &projective, &classification)?;
    let scheme = nesting_tree(&regions, &classification);
    let boundary_points = boundary_points(&projective)?;
    let verdict = match curve_type(&square, &projective) {
        Ok(v) => Some(v),
        Err(PatchworkError::NonElementary) => None,
        Err(e) => return Err(e),
    };
    let (euler, arnold) = if d.degree().is_multiple_of(2) {
        let e = euler_rp2(&square, &regions, &scheme)?;
        (Some(e), Some(arnold_euler(d.degree(), &e)?))
    } else {
        (None, None)
    };
    Ok(Analysis {
        square,
        square_curve,
        projective,
        affine,
        classification,
        regions,
        scheme,
        boundary_points,
        verdict,
        euler,
        arnold,
    })
}

/// Scheme and type only; the inner loop of enumerations.
pub fn scheme_and_type(
    t: &RegularTriangulation,
    d: &SignDistribution,
) -> Result<(RealScheme, Option<TypeVerdict>), PatchworkError> {
    let square = build_square(t, d)?;
    let projective = glue_projective(&midlines(&square)?)?;
    let cls = classify_components(&projective)?;
    let scheme = nesting_tree(&RegionComplex::build(&square, &projective, &cls)?, &cls);
    let verdict = match curve_type(&square, &projective) {
        Ok(v) => Some(v),
        Err(PatchworkError::NonElementary) => None,
        Err(e) => return Err(e),
    };
    Ok((scheme, verdict))
}

impl Analysis {
    pub fn degree(&self) -> u32 {
        self.square.degree()
    }

    /// Ovals that avoid the line at infinity, split by the sign of the
    /// polynomial just inside them: `(positive, negative)`.
    pub fn bounded_ovals_by_inner_sign(&self) -> (usize, usize) {
        let mut counts = (0, 0);
        for o in self.regions.ovals().iter().filter(|o| !o.meets_boundary) {
            match self.regions.regions()[o.inner].sign {
                Some(Sign::Plus) => counts.0 += 1,
                Some(Sign::Minus) => counts.1 += 1,
                None => {}
            }
        }
        counts
    }

    pub fn observed(&self) -> Observed {
        let (pos, neg) = self.bounded_ovals_by_inner_sign();
        Observed {
            degree: self.degree(),
            scheme: self.scheme.clone(),
            components: self.projective.components().len(),
            boundary_points: self.boundary_points,
            bounded_positive_inside: pos,
            bounded_negative_inside: neg,
            curve_type: self.verdict.as_ref().map(|v| v.value),
            arnold: self.arnold,
        }
    }

    /// Properties every T-curve has, whatever the signs: a closed 1-manifold
    /// within the Harnack bound, meeting the line at infinity in at most `m`
    /// points of the right parity, with a consistent region tree and Euler
    /// data, and obeying Klein's congruence when of type I.
    pub fn structural_checks(&self) -> CrossCheckReport {
        let m = self.degree();
        let mut r = CrossCheckReport { degree: m, checks: Vec::new() };
        let bad = self.projective.vertex_degrees().into_iter().filter(|&d| d != 2).count();
        r.push("every curve vertex has degree 2", 0, bad);
        let n = self.projective.components().len() as u64;
        r.push("components <= harnack bound", true, n <= harnack_bound(m));
        r.push("boundary points <= degree", true, self.boundary_points <= m as usize);
        r.push("boundary points = degree mod 2", m % 2, self.boundary_points % 2);
        r.push("one-sided component iff degree is odd", m % 2 == 1, self.scheme.one_sided());
        r.push("regions = ovals + 1", self.regions.ovals().len() + 1, self.regions.regions().len());
        if let Some(e) = self.euler {
            r.push("χ+ + χ- = χ(RP2)", 1, e.chi_plus + e.chi_minus);
            r.push(
                "χ+ = even ovals - odd ovals",
                self.scheme.even_ovals() as i64 - self.scheme.odd_ovals() as i64,
                e.chi_plus,
            );
        }
        if let Some(v) = &self.verdict {
            if n == harnack_bound(m) {
                r.push("M-curve is of type I", format!("{:?}", CurveType::TypeI), format!("{:?}", v.value));
            }
            if v.value == CurveType::TypeI {
                r.push("type I: components = harnack bound mod 2", harnack_bound(m) % 2, n % 2);
            }
        }
        r
    }

    /// Closed-form report; meaningful for the Harnack distribution.
    pub fn cross_check(&self) -> CrossCheckReport {
        cross_check(&self.observed())
    }
}

//! The subcommands, as functions from a job to a JSON-ready report.

use serde::Serialize;
use tcurve_core::analysis::{analyze, Analysis};
use tcurve_core::census::{census, CensusFilter, CensusParams, CensusResult};
use tcurve_core::curve::CurveGraph;
use tcurve_core::euler::{ArnoldEuler, EulerReport};
use tcurve_core::formulas::{Check, CrossCheckReport};
use tcurve_core::lattice::Triangulation;
use tcurve_core::oracle::{combinatorial_summary, verify_patchwork, OracleError, VerifyParams, VerifyReport};
use tcurve_core::orientation::{CurveType, Orientation};
use tcurve_core::regularity::{find_convexifier, Lift, RegularTriangulation};
use tcurve_core::scheme::RealScheme;
use tcurve_core::signs::{Sign, SignDistribution};
use tcurve_core::GeometryError;

use crate::error::CliError;
use crate::job::{JobSpec, SignsSource};

#[derive(Debug, Serialize)]
pub struct BuildReport {
    pub degree: u32,
    pub triangulation: Triangulation,
    pub lift: Lift,
    pub certified: bool,
    pub integral_lift: bool,
    pub signs: Vec<Sign>,
    pub signs_text: String,
    pub scheme: RealScheme,
    pub components: usize,
    pub boundary_points: usize,
    /// `null` when some triangle is not elementary.
    pub curve_type: Option<CurveType>,
    pub orientation: Option<Orientation>,
    pub euler: Option<EulerReport>,
    pub arnold: Option<ArnoldEuler>,
    pub curve: CurveGraph,
}

pub struct Built {
    pub triangulation: RegularTriangulation,
    pub signs: SignDistribution,
    pub analysis: Analysis,
    pub report: BuildReport,
}

pub fn build(job: &JobSpec) -> Result<Built, CliError> {
    let t = job.load_triangulation()?;
    let d = job.load_signs()?;
    let a = analyze(&t, &d).map_err(|e| CliError::Usage(format!("construction failed: {e}")))?;
    let report = BuildReport {
        degree: t.degree(),
        triangulation: t.triangulation().clone(),
        lift: t.lift().clone(),
        certified: t.is_certified(),
        integral_lift: t.is_integral(),
        signs: d.signs().to_vec(),
        signs_text: d.to_symbols(),
        scheme: a.scheme.clone(),
        components: a.projective.components().len(),
        boundary_points: a.boundary_points,
        curve_type: a.verdict.as_ref().map(|v| v.value),
        orientation: a.verdict.as_ref().and_then(|v| v.witness.clone()),
        euler: a.euler,
        arnold: a.arnold,
        curve: a.projective.clone(),
    };
    Ok(Built { triangulation: t, signs: d, analysis: a, report })
}

#[derive(Debug, Serialize)]
pub struct OracleSection {
    pub params: VerifyParams,
    pub report: Option<VerifyReport>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub degree: u32,
    pub pass: bool,
    pub scheme: RealScheme,
    pub structural: CrossCheckReport,
    /// Closed-form predictions; only for Harnack signs on the standard triangulation.
    pub closed_forms: Option<CrossCheckReport>,
    pub oracle: Option<OracleSection>,
    pub failed: Vec<String>,
}

/// Runs every applicable check. The error, if any, is returned alongside
/// the report so that the caller can still print it.
pub fn verify(job: &JobSpec, oracle: Option<VerifyParams>) -> (Result<VerifyOutput, CliError>, Option<CliError>) {
    let built = match build(job) {
        Ok(b) => b,
        Err(e) => return (Err(e), None),
    };
    let a = &built.analysis;
    let structural = a.structural_checks();
    let harnack = job.signs == SignsSource::Harnack && job.is_standard_triangulation();
    let closed_forms = harnack.then(|| a.cross_check());
    let mut failed: Vec<String> = structural.failures().map(describe).collect();
    if let Some(r) = &closed_forms {
        failed.extend(r.failures().map(describe));
    }
    let mut resolution = None;
    let oracle = oracle.map(|params| {
        let expected = match combinatorial_summary(&a.affine) {
            Ok(s) => s,
            Err(e) => return OracleSection { params, report: None, error: Some(e.to_string()) },
        };
        match verify_patchwork(&built.signs, built.triangulation.lift(), &expected, &params) {
            Ok(r) => {
                if !r.matched {
                    failed.push(format!(
                        "oracle: numeric summary {:?} differs from combinatorial {:?}",
                        r.oracle, r.combinatorial
                    ));
                }
                OracleSection { params, report: Some(r), error: None }
            }
            Err(e @ (OracleError::Unresolved { .. } | OracleError::NotStabilized { .. })) => {
                resolution = Some(CliError::Resolution(format!("oracle: {e}")));
                OracleSection { params, report: None, error: Some(e.to_string()) }
            }
            Err(e) => {
                failed.push(format!("oracle: {e}"));
                OracleSection { params, report: None, error: Some(e.to_string()) }
            }
        }
    });
    let out = VerifyOutput {
        degree: a.degree(),
        pass: failed.is_empty() && resolution.is_none(),
        scheme: a.scheme.clone(),
        structural,
        closed_forms,
        oracle,
        failed: failed.clone(),
    };
    let err =
        if !failed.is_empty() { Some(CliError::Check(format!("failed: {}", failed.join("; ")))) } else { resolution };
    (Ok(out), err)
}

fn describe(c: &Check) -> String {
    format!("{} (expected {}, observed {})", c.name, c.expected, c.observed)
}

pub fn run_census(job: &JobSpec, filter: CensusFilter, cap: u32, keep_hits: bool) -> Result<CensusResult, CliError> {
    JobSpec::validate_degree(job.degree)?;
    if job.degree > cap {
        return Err(CliError::Usage(format!("degree {} exceeds the census cap {cap}", job.degree)));
    }
    let t = job.load_triangulation()?;
    census(&t, &CensusParams { filter, cap, keep_hits }).map_err(CliError::usage)
}

/// Text rendering of a census: one line per hit, then the counts per scheme.
pub fn census_text(r: &CensusResult) -> String {
    let mut out = String::new();
    for h in &r.hits {
        let ty = h.curve_type.map_or("-".to_string(), |t| format!("{t:?}"));
        out.push_str(&format!("{}\t{}\t{}\n", h.signs, h.code, ty));
    }
    out.push_str(&format!("# degree {}: {} of {} distributions matched\n", r.degree, r.matched, r.total));
    for (code, c) in &r.schemes {
        out.push_str(&format!("# {code}\tcount {}\ttype I {}\ttype II {}\n", c.count, c.type_i, c.type_ii));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ConvexifyOutput {
    pub degree: u32,
    pub regular: bool,
    pub lift: Option<Lift>,
    pub integral: Option<bool>,
}

pub fn convexify(job: &JobSpec) -> Result<ConvexifyOutput, CliError> {
    let path = job.triangulation.as_ref().ok_or_else(|| CliError::Usage("convexify needs --triangulation".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let t: Triangulation =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if t.degree() != job.degree {
        return Err(CliError::Usage(format!(
            "triangulation has degree {}, but --degree is {}",
            t.degree(),
            job.degree
        )));
    }
    let t = Triangulation::new(t.degree(), t.triangles().to_vec()).map_err(CliError::usage)?;
    match find_convexifier(&t) {
        Ok(lift) => {
            let rt = RegularTriangulation::certify(t, lift.clone()).map_err(CliError::usage)?;
            Ok(ConvexifyOutput {
                degree: job.degree,
                regular: true,
                lift: Some(lift),
                integral: Some(rt.is_integral()),
            })
        }
        Err(GeometryError::NotRegular) => {
            Ok(ConvexifyOutput { degree: job.degree, regular: false, lift: None, integral: None })
        }
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

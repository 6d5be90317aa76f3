//! Input sources and their validation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use tcurve_core::lattice::Triangulation;
use tcurve_core::regularity::{lower_hull_triangulation, Lift, RegularTriangulation};
use tcurve_core::signs::{Sign, SignDistribution};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignsSource {
    Harnack,
    Literal(String),
    File(PathBuf),
}

impl SignsSource {
    /// `harnack`, a `+`/`-` string, or a path.
    pub fn parse(text: &str) -> Self {
        if text == "harnack" {
            SignsSource::Harnack
        } else if !text.is_empty() && text.chars().all(|c| matches!(c, '+' | '-' | ' ' | ',')) {
            SignsSource::Literal(text.into())
        } else {
            SignsSource::File(PathBuf::from(text))
        }
    }
}

/// Everything needed to build one curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub degree: u32,
    /// `None` for the standard triangulation, or the one induced by the lift.
    pub triangulation: Option<PathBuf>,
    /// `None` for the standard lift, or one found by linear programming.
    pub lift: Option<PathBuf>,
    pub signs: SignsSource,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SignsFile {
    Tagged { degree: u32, signs: Vec<Sign> },
    Plain(Vec<Sign>),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn check_degree(what: &str, expected: u32, got: u32) -> Result<(), CliError> {
    if expected == got {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} has degree {got}, but --degree is {expected}")))
    }
}

impl JobSpec {
    pub fn validate_degree(degree: u32) -> Result<(), CliError> {
        if degree == 0 {
            Err(CliError::Usage("--degree must be at least 1".into()))
        } else {
            Ok(())
        }
    }

    pub fn load_triangulation(&self) -> Result<RegularTriangulation, CliError> {
        Self::validate_degree(self.degree)?;
        let lift = match &self.lift {
            Some(path) => Some(parse_json::<Lift>(path, &read(path)?)?),
            None => None,
        };
        let triangulation = match &self.triangulation {
            Some(path) => {
                let t: Triangulation = parse_json(path, &read(path)?)?;
                check_degree("triangulation", self.degree, t.degree())?;
                Some(Triangulation::new(t.degree(), t.triangles().to_vec()).map_err(CliError::usage)?)
            }
            None => None,
        };
        let rt = match (triangulation, lift) {
            (None, None) => RegularTriangulation::standard(self.degree),
            (Some(t), Some(l)) => RegularTriangulation::certify(t, l),
            (Some(t), None) => RegularTriangulation::from_triangulation(t),
            (None, Some(l)) => lower_hull_triangulation(self.degree, &l),
        };
        rt.map_err(|e| CliError::Usage(format!("triangulation: {e}")))
    }

    pub fn load_signs(&self) -> Result<SignDistribution, CliError> {
        Self::validate_degree(self.degree)?;
        let m = self.degree;
        let d = match &self.signs {
            SignsSource::Harnack => SignDistribution::harnack(m),
            SignsSource::Literal(text) => SignDistribution::from_symbols(m, &text.replace(',', "")),
            SignsSource::File(path) => {
                let text = read(path)?;
                let trimmed = text.trim_start();
                if trimmed.starts_with('{') || trimmed.starts_with('[') {
                    match parse_json::<SignsFile>(path, &text)? {
                        SignsFile::Tagged { degree, signs } => {
                            check_degree("sign file", m, degree)?;
                            SignDistribution::new(m, signs)
                        }
                        SignsFile::Plain(signs) => SignDistribution::new(m, signs),
                    }
                } else {
                    SignDistribution::from_symbols(m, &text.replace(',', ""))
                }
            }
        };
        d.map_err(|e| CliError::Usage(format!("signs: {e}")))
    }

    pub fn is_standard_triangulation(&self) -> bool {
        self.triangulation.is_none() && self.lift.is_none()
    }
}

//! `tcurve`: build, verify and enumerate T-curves from the command line.

mod commands;
mod error;
mod job;
mod svg;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tcurve_core::census::{CensusFilter, DEFAULT_DEGREE_CAP};
use tcurve_core::oracle::{TraceParams, VerifyParams};
use tcurve_core::orientation::CurveType;

use crate::error::CliError;
use crate::job::{JobSpec, SignsSource};
use crate::svg::SvgOptions;

#[derive(Parser)]
#[command(name = "tcurve", version, about = "Combinatorial patchworking of real plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one T-curve and report its scheme, type and Euler data.
    Build(BuildArgs),
    /// Build one T-curve and run every applicable check.
    Verify(VerifyArgs),
    /// Enumerate all sign distributions of a small degree.
    Census(CensusArgs),
    /// Find a convexifying lift for a triangulation, or report that none exists.
    Convexify(ConvexifyArgs),
}

#[derive(Args)]
struct Geometry {
    /// Degree m of the curve.
    #[arg(long, short = 'd')]
    degree: u32,
    /// Triangulation of T_m as JSON; default: the standard one.
    #[arg(long)]
    triangulation: Option<PathBuf>,
    /// Lift as JSON; default: i^2 + ij + j^2, or one found by linear programming.
    #[arg(long)]
    lift: Option<PathBuf>,
}

#[derive(Args)]
struct SignArgs {
    /// `harnack`, a string of `+`/`-` in lexicographic (i, j) order, or a file.
    #[arg(long, default_value = "harnack")]
    signs: String,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    geometry: Geometry,
    #[command(flatten)]
    signs: SignArgs,
    /// Write the JSON report here instead of standard output.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Also draw the curve.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Draw a complex orientation when the curve is of type I.
    #[arg(long)]
    arrows: bool,
    /// Stamp the SVG with the current time.
    #[arg(long)]
    svg_timestamp: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    geometry: Geometry,
    #[command(flatten)]
    signs: SignArgs,
    /// Compare with the zero set of the patchwork polynomial.
    #[arg(long)]
    oracle: bool,
    /// Base sampling grid of the oracle.
    #[arg(long, default_value_t = 128)]
    grid: usize,
    /// Largest exponent scale tried by the oracle.
    #[arg(long, default_value_t = 32)]
    s_max: u32,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeFilter {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    Ii,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    geometry: Geometry,
    /// Keep only curves with this many components.
    #[arg(long)]
    components: Option<usize>,
    /// Keep only curves with this scheme (Unicode or ASCII code).
    #[arg(long)]
    code: Option<String>,
    /// Keep only curves of this type.
    #[arg(long = "type", value_enum)]
    curve_type: Option<TypeFilter>,
    /// Largest degree accepted.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    cap: u32,
    /// Print every matching distribution, not just the counts.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConvexifyArgs {
    #[arg(long, short = 'd')]
    degree: u32,
    #[arg(long)]
    triangulation: PathBuf,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

fn job(g: &Geometry, signs: &str) -> JobSpec {
    JobSpec {
        degree: g.degree,
        triangulation: g.triangulation.clone(),
        lift: g.lift.clone(),
        signs: SignsSource::parse(signs),
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(CliError::usage)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build(a) => {
            let built = commands::build(&job(&a.geometry, &a.signs.signs))?;
            if let Some(path) = &a.svg {
                let timestamp = a.svg_timestamp.then(|| {
                    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
                });
                let picture = svg::render(&built.analysis, SvgOptions { arrows: a.arrows, timestamp });
                fs::write(path, picture).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            }
            emit(&a.output, &to_json(&built.report))
        }
        Command::Verify(a) => {
            let params = a.oracle.then(|| VerifyParams {
                trace: TraceParams { grid: a.grid, ..TraceParams::default() },
                s_start: 1,
                s_max: a.s_max,
            });
            let (out, err) = commands::verify(&job(&a.geometry, &a.signs.signs), params);
            emit(&a.output, &to_json(&out?))?;
            err.map_or(Ok(()), Err)
        }
        Command::Census(a) => {
            let code = match &a.code {
                Some(c) => Some(tcurve_core::scheme::RealScheme::parse(c).map_err(CliError::Usage)?.code()),
                None => None,
            };
            let filter = CensusFilter {
                components: a.components,
                code,
                curve_type: a.curve_type.map(|t| match t {
                    TypeFilter::I => CurveType::TypeI,
                    TypeFilter::Ii => CurveType::TypeII,
                }),
            };
            let r = commands::run_census(&job(&a.geometry, "harnack"), filter, a.cap, a.list)?;
            let text = match a.format {
                Format::Text => commands::census_text(&r),
                Format::Json => to_json(&r),
            };
            emit(&a.output, &text)
        }
        Command::Convexify(a) => {
            let j = JobSpec {
                degree: a.degree,
                triangulation: Some(a.triangulation),
                lift: None,
                signs: SignsSource::Harnack,
            };
            let out = commands::convexify(&j)?;
            emit(&a.output, &to_json(&out))?;
            if out.regular {
                Ok(())
            } else {
                Err(CliError::Check("triangulation is not regular".into()))
            }
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("TCURVE_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Usage(format!("TCURVE_THREADS must be a number, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(CliError::usage)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tcurve: {e}");
            e.exit_code()
        }
    }
}

//! The `mckay` command line.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or parse
//! error, 3 numeric failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::diagram::{classify, DiagramType};
use crate::error::{Error, Result};
use crate::group::Ambient;
use crate::groupspec::{parse_spec, Family, GroupSpec};
use crate::io::{dot, graph_json, group_json, read_graph_json};
use crate::survey::{run_survey, suites_for};
use crate::verify::{
    verify_applications, verify_parity, verify_so4, verify_so4_structure, verify_su2, Construction,
    GroupAnalysis, Status, VerificationReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mckay", version, about = "McKay correspondence for finite subgroups of SU(2) and SU(2)×SU(2)")]
struct Cli {
    /// Tolerance for integer snapping and rank decisions.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Seed for the randomized character-table eigensolve.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a group and write its elements as JSON.
    Build {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the McKay diagram; without --dot or --json, JSON goes to stdout.
    Graph {
        spec: String,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classify every connected component of every colour of a graph JSON file.
    Classify { graph: PathBuf },
    /// Run verification suites on one group.
    Verify {
        spec: String,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every applicable suite over the corpus.
    Survey {
        #[arg(long)]
        max_order: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Su2,
    Parity,
    So4,
    Apps,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Su2 => "su2",
            Suite::Parity => "parity",
            Suite::So4 => "so4",
            Suite::Apps => "apps",
            Suite::All => "all",
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        let _ = writeln!(err, "error: --tol must be positive, got {}", cli.tol);
        return EXIT_USAGE;
    }
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numeric() {
                EXIT_NUMERIC
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Build { spec, out: file } => {
            let g = parse_spec(spec)?.build()?;
            let text = group_json(&g);
            match file {
                Some(p) => write_file(p, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_PASS)
        }
        Command::Graph { spec, dot: dot_path, json } => {
            let spec = parse_spec(spec)?;
            let a = GroupAnalysis::new(spec.to_string(), spec.build()?, cli.seed, cli.tol)?;
            if let Some(p) = dot_path {
                write_file(p, &dot(&a.graph))?;
            }
            if let Some(p) = json {
                write_file(p, &graph_json(&a.graph))?;
            }
            if dot_path.is_none() && json.is_none() {
                out.write_all(graph_json(&a.graph).as_bytes())?;
            }
            Ok(EXIT_PASS)
        }
        Command::Classify { graph } => {
            let g = read_graph_json(&std::fs::read_to_string(graph)?)?;
            for &color in g.colors() {
                let layer = g.layer(color);
                for comp in layer.components() {
                    let t = classify(&layer.induced(&comp))?;
                    writeln!(out, "color {color} component {comp:?}: {t}")?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { spec, suite, report } => {
            let spec = parse_spec(spec)?;
            let a = GroupAnalysis::new(spec.to_string(), spec.build()?, cli.seed, cli.tol)?;
            let reports = suite_reports(&a, &spec, suite.name(), cli.seed, cli.tol)?;
            let text = reports_json(&reports);
            match report {
                Some(p) => {
                    write_file(p, &text)?;
                    for r in &reports {
                        print_report(r, out)?;
                    }
                }
                None => out.write_all(text.as_bytes())?,
            }
            Ok(if reports.iter().all(VerificationReport::passed) { EXIT_PASS } else { EXIT_FAILED })
        }
        Command::Survey { max_order, report } => {
            let survey = run_survey(*max_order, cli.seed, cli.tol);
            let text = survey.to_json();
            match report {
                Some(p) => write_file(p, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
            for g in survey.groups.iter().filter(|g| !g.passed()) {
                let why = g
                    .error
                    .clone()
                    .or_else(|| {
                        g.reports.iter().find_map(|r| r.first_failure().map(|c| format!("{}/{}", r.suite, c.name)))
                    })
                    .unwrap_or_default();
                writeln!(err, "FAIL {}: {why}", g.group)?;
            }
            let s = &survey.summary;
            writeln!(
                err,
                "{} groups, {} passed; {} checks, {} failed, {} skipped; {} errors",
                s.groups, s.groups_passed, s.checks, s.failed_checks, s.skipped_checks, s.errors
            )?;
            Ok(if survey.has_numeric_error() {
                EXIT_NUMERIC
            } else if survey.passed() {
                EXIT_PASS
            } else {
                EXIT_FAILED
            })
        }
    }
}

fn factor_type(f: Family, seed: u64, tol: f64) -> Result<DiagramType> {
    let a = GroupAnalysis::new(f.to_string(), f.build()?, seed, tol)?;
    classify(&a.graph.total_graph())
}

/// What the characterization suite should expect, when the spec says.
fn construction(spec: &GroupSpec, seed: u64, tol: f64) -> Result<Option<Construction>> {
    Ok(match spec {
        GroupSpec::Prod(a, b) => match (&**a, &**b) {
            (GroupSpec::Family(x), GroupSpec::Family(y)) => {
                Some(Construction::Product(factor_type(*x, seed, tol)?, factor_type(*y, seed, tol)?))
            }
            _ => None,
        },
        GroupSpec::Diag(f) => Some(Construction::Diagonal(factor_type(*f, seed, tol)?)),
        _ => None,
    })
}

/// Runs the named suite (`su2`, `parity`, `so4`, `apps` or `all`) on a group
/// built from `spec`.
pub fn suite_reports(
    a: &GroupAnalysis,
    spec: &GroupSpec,
    suite: &str,
    seed: u64,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let so4 = |a: &GroupAnalysis| if a.has_minus_one() { verify_so4(a) } else { verify_so4_structure(a) };
    Ok(match suite {
        "su2" => vec![verify_su2(a)?],
        "parity" => vec![verify_parity(a)?],
        "so4" => vec![so4(a)?],
        "apps" => vec![verify_applications(a)?],
        "all" => {
            let built = construction(spec, seed, tol)?;
            let mut reports = suites_for(a, built.unwrap_or(Construction::Other))?;
            if built.is_none() && a.group.ambient() == Ambient::Su2xSu2 {
                // nothing to compare detector output against
                reports.retain(|r| r.suite != "characterization");
            }
            reports
        }
        other => return Err(Error::Input(format!("unknown suite {other:?}"))),
    })
}

fn reports_json(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

fn print_report(r: &VerificationReport, out: &mut dyn Write) -> Result<()> {
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        writeln!(out, "{status} {}/{}: {}", r.suite, c.name, c.detail)?;
    }
    Ok(())
}

//! `wprod`: numerical ranges, spectra of products and rank-one witnesses
//! from the command line.
//!
//! Exit codes: 0 affirmative, 1 negative finding, 2 inconclusive,
//! 64 bad input, 70 numerical failure.

mod output;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wprod_core::classify::{theorem_hypotheses, ClassificationReport};
use wprod_core::matcore::eig_general;
use wprod_core::numrange::{compute_range, Membership, RangeApprox};
use wprod_core::productset::{
    containment_in_context, sample_product_in_context, Containment, ProductContext,
};
use wprod_core::repro::{run_example, ReproResult, EXAMPLE_IDS};
use wprod_core::witness::{falsify_with, WitnessCertificate, DEFAULT_TRIALS};
use wprod_core::{CMatrix, Error, C64};

use output::{write_output, Render};
use svg::{verdict_color, Figure};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_SOFTWARE: u8 = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "wprod", version, about = "Spectra of matrix products against products of numerical ranges")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of support-function angles.
    #[arg(long, global = true, default_value_t = 720)]
    angles: usize,

    /// Quadtree resolution for product-set membership.
    #[arg(long, global = true, default_value_t = 128)]
    grid: usize,

    /// Membership tolerance, relative to 1 + |λ|.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write here instead of stdout (atomically).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerical range W(A) with inner and outer polygons.
    Range { a: PathBuf },
    /// Test σ(AB) ⊆ W(A)W(B) eigenvalue by eigenvalue.
    Check { a: PathBuf, b: PathBuf },
    /// PSD-multiple test, radii and the hypotheses of the witness constructions.
    Classify { a: PathBuf },
    /// Search for a rank-one B with σ(AB) ⊄ W(A)W(B).
    Witness {
        a: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Rerun one of the bundled worked examples, or `all`.
    Repro { example: String },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::DimensionMismatch(..) | Error::ZeroVector | Error::NonHermitianInput(_) => {
                EXIT_USAGE
            }
            Error::Inconclusive => EXIT_INCONCLUSIVE,
            _ => EXIT_SOFTWARE,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("wprod: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    validate(cli)?;
    match &cli.command {
        Command::Range { a } => cmd_range(cli, &read_matrix(a)?),
        Command::Check { a, b } => cmd_check(cli, &read_matrix(a)?, &read_matrix(b)?),
        Command::Classify { a } => cmd_classify(cli, &read_matrix(a)?),
        Command::Witness { a, trials } => cmd_witness(cli, &read_matrix(a)?, *trials),
        Command::Repro { example } => cmd_repro(cli, example),
    }
}

fn validate(cli: &Cli) -> Result<(), Failure> {
    if cli.angles < 8 {
        return Err(Failure::usage(format!("--angles must be at least 8, got {}", cli.angles)));
    }
    if cli.grid < 32 {
        return Err(Failure::usage(format!("--grid must be at least 32, got {}", cli.grid)));
    }
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Failure::usage(format!("--tol must be positive and finite, got {}", cli.tol)));
    }
    Ok(())
}

fn read_matrix(path: &Path) -> Result<CMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    CMatrix::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize + Render>(cli: &Cli, report: &T, figure: impl FnOnce() -> Option<Figure>) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(report).map_err(|e| Failure {
            code: EXIT_SOFTWARE,
            message: format!("serializing report: {e}"),
        })? + "\n",
        Format::Text => report.render_text(),
        Format::Svg => match figure() {
            Some(f) => f.render(),
            None => return Err(Failure::usage("this command has no SVG output")),
        },
    };
    write_output(cli.out.as_deref(), &body).map_err(|e| Failure {
        code: EXIT_SOFTWARE,
        message: format!("writing output: {e}"),
    })
}

fn range_figure(fig: &mut Figure, r: &RangeApprox, color: &'static str) {
    fig.polygon(r.outer_polygon.vertices(), color, false);
}

fn cmd_range(cli: &Cli, a: &CMatrix) -> CmdResult {
    let range = compute_range(a, cli.angles)?;
    let eig = eig_general(a)?;
    emit(cli, &range, || {
        let mut fig = Figure::new("W(A)");
        range_figure(&mut fig, &range, "#2166ac");
        for &z in &eig.eigenvalues {
            fig.marker(z, "black", fmt_c(z));
        }
        Some(fig)
    })?;
    Ok(0)
}

fn cmd_check(cli: &Cli, a: &CMatrix, b: &CMatrix) -> CmdResult {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()).into());
    }
    let ctx = ProductContext::new(a, b, cli.angles)?;
    let eig = eig_general(&(a * b))?;
    let report = containment_in_context(&ctx, &eig.eigenvalues, cli.tol, cli.grid)?;
    emit(cli, &report, || {
        let mut fig = Figure::new("W(A)W(B) and σ(AB)");
        fig.cloud(&sample_product_in_context(&ctx, 48), "#4d4d4d");
        range_figure(&mut fig, &ctx.range_a, "#2166ac");
        range_figure(&mut fig, &ctx.range_b, "#7b3294");
        for ev in &report.eigen_verdicts {
            fig.marker(
                ev.lambda,
                verdict_color(ev.verdict.verdict),
                format!("{} {:?}", fmt_c(ev.lambda), ev.verdict.verdict),
            );
        }
        Some(fig)
    })?;
    Ok(match report.overall {
        Containment::Contained => 0,
        Containment::Violated => EXIT_NEGATIVE,
        Containment::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_classify(cli: &Cli, a: &CMatrix) -> CmdResult {
    let report: ClassificationReport = theorem_hypotheses(a)?;
    emit(cli, &report, || {
        let range = compute_range(a, cli.angles).ok()?;
        let mut fig = Figure::new("W(A)");
        range_figure(&mut fig, &range, "#2166ac");
        for &z in &eig_general(a).ok()?.eigenvalues {
            let color = if report.w_attaining_mu.is_some_and(|mu| (mu - z).norm() <= 1e-9 * (1.0 + z.norm())) {
                "#d73027"
            } else {
                "black"
            };
            fig.marker(z, color, fmt_c(z));
        }
        Some(fig)
    })?;
    Ok(if report.is_psd_multiple { 0 } else { EXIT_NEGATIVE })
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WitnessOutcome {
    Certificate { seed: u64, certificate: Box<WitnessCertificate> },
    /// No witness can exist for a multiple of a PSD matrix.
    PsdMultiple { seed: u64 },
    Inconclusive { seed: u64, trials: usize },
}

fn cmd_witness(cli: &Cli, a: &CMatrix, trials: usize) -> CmdResult {
    let outcome = match falsify_with(a, trials, cli.seed) {
        Ok(Some(cert)) => WitnessOutcome::Certificate { seed: cli.seed, certificate: Box::new(cert) },
        Ok(None) => WitnessOutcome::PsdMultiple { seed: cli.seed },
        Err(Error::Inconclusive) => WitnessOutcome::Inconclusive { seed: cli.seed, trials },
        Err(e) => return Err(e.into()),
    };
    emit(cli, &outcome, || {
        let WitnessOutcome::Certificate { certificate, .. } = &outcome else {
            return None;
        };
        let ctx = ProductContext::new(a, &certificate.b, cli.angles).ok()?;
        let mut fig = Figure::new("W(A)W(B) and the witness eigenvalue");
        fig.cloud(&sample_product_in_context(&ctx, 48), "#4d4d4d");
        range_figure(&mut fig, &ctx.range_a, "#2166ac");
        fig.marker(certificate.lambda, verdict_color(Membership::Out), fmt_c(certificate.lambda));
        Some(fig)
    })?;
    Ok(match outcome {
        WitnessOutcome::Certificate { .. } => 0,
        WitnessOutcome::PsdMultiple { .. } => EXIT_NEGATIVE,
        WitnessOutcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    })
}

fn cmd_repro(cli: &Cli, example: &str) -> CmdResult {
    let results: Vec<ReproResult> = if example == "all" {
        EXAMPLE_IDS.iter().map(|id| run_example(id, cli.seed)).collect::<Result<_, _>>()?
    } else {
        if !EXAMPLE_IDS.contains(&example) {
            return Err(Failure::usage(format!(
                "unknown example {example:?}; expected one of {}, or all",
                EXAMPLE_IDS.join(", ")
            )));
        }
        vec![run_example(example, cli.seed)?]
    };
    let pass = results.iter().all(|r| r.overall_pass);
    if results.len() == 1 {
        emit(cli, &results[0], || None)?;
    } else {
        emit(cli, &results, || None)?;
    }
    Ok(if pass { 0 } else { EXIT_NEGATIVE })
}

pub fn fmt_c(z: C64) -> String {
    if z.im < 0.0 {
        format!("{:.6}-{:.6}i", z.re, -z.im)
    } else {
        format!("{:.6}+{:.6}i", z.re, z.im)
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage/parse/validation error, 2 spectrum not
//! representable in Q(i), 3 a verification check failed.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::decomp::{
    block_diagonalize_with, blockwise_trigonalize_with, jordan_analysis, trigonalize_with,
    Decomposition,
};
use crate::error::Error;
use crate::io::{
    parse_matrix_json, pretty_decomposition, pretty_spectrum, to_json, DecompositionDocument,
    GeneratedDocument, MatrixDocument, ReportDocument, SpectrumDocument,
};
use crate::matrix::Matrix;
use crate::scalar::Gaussian;
use crate::spectral::{parse_eigenvalue_list, spectrum};
use crate::verify::{
    check_decomposition, check_jordan_analysis, generate_case, CheckReport, JordanStructure,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_REPRESENTABLE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "exact-jordan",
    version,
    about = "Exact Schur, block and Jordan decompositions over Q(i)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Matrix document (JSON); `-` or omitted reads standard input
    path: Option<String>,
    /// Comma separated eigenvalues to use instead of root finding
    #[arg(long = "spectrum", value_name = "LIST")]
    spectrum: Option<String>,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args, Debug)]
struct DecompArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Append a check report; failed checks give exit code 3
    #[arg(long)]
    check: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues with multiplicity, geometric dimension and ladder height
    Spectrum(MatrixArgs),
    /// Triangularization A = V U V^-1
    Schur(DecompArgs),
    /// Block diagonalization along generalized eigenspaces
    Blockdiag(DecompArgs),
    /// Block diagonalization with triangular blocks
    Blocktri(DecompArgs),
    /// Jordan decomposition A = V J V^-1
    Jordan(DecompArgs),
    /// Run every stage and all structural checks
    Verify(MatrixArgs),
    /// Generate A = S J S^-1 with a prescribed Jordan structure
    Gen {
        /// e.g. `3:3` or `0:2,1;1:1`
        #[arg(long)]
        structure: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(op: &str, err: Error) -> Self {
        let code = match err {
            Error::SpectrumNotRepresentable { .. } => EXIT_NOT_REPRESENTABLE,
            _ => EXIT_USAGE,
        };
        let text = err.to_string();
        let message = if text.starts_with(&format!("{op}:")) {
            text
        } else {
            format!("{op}: {text}")
        };
        Failure { code, message }
    }
}

fn read_matrix(path: Option<&str>, stdin: &mut dyn Read, op: &str) -> Result<Matrix, Failure> {
    let text = match path {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("{op}: cannot read standard input: {e}"),
            })?;
            s
        }
        Some(p) => fs::read_to_string(p).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("{op}: cannot read `{p}`: {e}"),
        })?,
    };
    parse_matrix_json(&text).map_err(|e| Failure::new(op, e))
}

fn provided(args: &MatrixArgs, op: &str) -> Result<Option<Vec<Gaussian>>, Failure> {
    args.spectrum
        .as_deref()
        .map(parse_eigenvalue_list)
        .transpose()
        .map_err(|e| Failure::new(&format!("{op} --spectrum"), e))
}

fn render_decomposition(d: &Decomposition, report: Option<&CheckReport>, format: Format) -> String {
    match format {
        Format::Json => to_json(&DecompositionDocument::from_decomposition(d, report)),
        Format::Pretty => {
            let mut s = pretty_decomposition(d);
            if let Some(r) = report {
                s.push_str("checks:\n");
                s.push_str(&r.to_string());
            }
            s
        }
    }
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<(String, i32), Failure> {
    match cli.command {
        Command::Spectrum(args) => {
            let a = read_matrix(args.path.as_deref(), stdin, "spectrum")?;
            let hint = provided(&args, "spectrum")?;
            let s = spectrum(&a, hint.as_deref()).map_err(|e| Failure::new("spectrum", e))?;
            let out = match args.format {
                Format::Json => to_json(&SpectrumDocument::from_spectrum(&s)),
                Format::Pretty => pretty_spectrum(&s),
            };
            Ok((out, EXIT_OK))
        }
        Command::Schur(args) => run_decomposition("schur", args, stdin),
        Command::Blockdiag(args) => run_decomposition("blockdiag", args, stdin),
        Command::Blocktri(args) => run_decomposition("blocktri", args, stdin),
        Command::Jordan(args) => run_decomposition("jordan", args, stdin),
        Command::Verify(args) => {
            let a = read_matrix(args.path.as_deref(), stdin, "verify")?;
            let hint = provided(&args, "verify")?;
            let hint = hint.as_deref();
            let mut report = CheckReport::default();
            let mut docs = Vec::new();
            let mut pretty = String::new();
            let analysis = jordan_analysis(&a, hint).map_err(|e| Failure::new("verify", e))?;
            let stages = [
                trigonalize_with(&a, hint),
                block_diagonalize_with(&a, hint),
                blockwise_trigonalize_with(&a, hint),
                Ok(analysis.decomposition.clone()),
            ];
            for d in stages {
                let d = d.map_err(|e| Failure::new("verify", e))?;
                let r = check_decomposition(&a, &d);
                pretty.push_str(&format!("[{}]\n{r}", d.kind));
                docs.push(serde_json::json!({
                    "kind": d.kind.as_str(),
                    "report": ReportDocument::from_report(&r),
                }));
                report.extend(r);
            }
            let structural = check_jordan_analysis(&a, &analysis);
            pretty.push_str(&format!("[structure]\n{structural}"));
            docs.push(serde_json::json!({
                "kind": "structure",
                "report": ReportDocument::from_report(&structural),
            }));
            report.extend(structural);
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            };
            let out = match args.format {
                Format::Json => to_json(&serde_json::json!({
                    "passed": report.passed(),
                    "stages": docs,
                })),
                Format::Pretty => {
                    let verdict = if report.passed() {
                        "all checks passed"
                    } else {
                        "checks FAILED"
                    };
                    format!("{pretty}{verdict}\n")
                }
            };
            Ok((out, code))
        }
        Command::Gen {
            structure,
            seed,
            bound,
            format,
        } => {
            let st: JordanStructure = structure.parse().map_err(|e| Failure::new("gen", e))?;
            let case = generate_case(&st, seed, bound).map_err(|e| Failure::new("gen", e))?;
            let out = match format {
                Format::Json => to_json(&GeneratedDocument {
                    matrix: MatrixDocument::from_matrix(&case.a),
                    structure: st.to_string(),
                    seed,
                    bound,
                    jordan: MatrixDocument::from_matrix(&case.jordan),
                }),
                Format::Pretty => format!("A =\n{}J =\n{}", case.a, case.jordan),
            };
            Ok((out, EXIT_OK))
        }
    }
}

fn run_decomposition(
    op: &str,
    args: DecompArgs,
    stdin: &mut dyn Read,
) -> Result<(String, i32), Failure> {
    let a = read_matrix(args.matrix.path.as_deref(), stdin, op)?;
    let hint = provided(&args.matrix, op)?;
    let hint = hint.as_deref();
    let d = match op {
        "schur" => trigonalize_with(&a, hint),
        "blockdiag" => block_diagonalize_with(&a, hint),
        "blocktri" => blockwise_trigonalize_with(&a, hint),
        _ => jordan_analysis(&a, hint).map(|j| j.decomposition),
    }
    .map_err(|e| Failure::new(op, e))?;
    let report = args.check.then(|| check_decomposition(&a, &d));
    let code = match &report {
        Some(r) if !r.passed() => EXIT_CHECK_FAILED,
        _ => EXIT_OK,
    };
    Ok((
        render_decomposition(&d, report.as_ref(), args.matrix.format),
        code,
    ))
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run(
    argv: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, stdin) {
        Ok((out, code)) => {
            let _ = stdout.write_all(out.as_bytes());
            if code == EXIT_CHECK_FAILED {
                let _ = writeln!(stderr, "verification failed");
            }
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

//! Command-line front end: file ingestion, JSON reports on stdout, and the
//! documented exit-code contract.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use shiftkit::counterexample;
use shiftkit::error::Error;
use shiftkit::filterbank::{self, Signal};
use shiftkit::io::{self, GraphFormat, GraphInput};
use shiftkit::report::{self, ScanFileEntry, ScanSummary};
use shiftkit::represent::conversion::{conversion_search, SamplingSpec};
use shiftkit::represent::{self, Verdict};
use shiftkit::spectra;
use shiftkit::{commutant, MatQ, DEFAULT_SEED};

mod exit_code {
    pub const SCAN_FAILURES: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const DIMENSION: u8 = 3;
    pub const APPLY_DIMENSION: u8 = 4;
    pub const NOT_REPRESENTABLE: u8 = 10;
    pub const NOT_COMMUTING: u8 = 11;
    pub const COUNTEREXAMPLE_FAILED: u8 = 20;
}

#[derive(Parser)]
#[command(
    name = "shiftkit",
    version,
    about = "Exact shift-matrix analysis and polynomial graph filters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    /// Sniff: Matrix Market header, then square token grid as dense, else edge list.
    Auto,
    EdgeList,
    MatrixMarket,
    Dense,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::Auto => GraphFormat::Auto,
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::MatrixMarket => GraphFormat::MatrixMarket,
            FormatArg::Dense => GraphFormat::DenseText,
        }
    }
}

#[derive(Args, Clone)]
struct InputOpts {
    /// Input format.
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
    /// Accept float literals in exact mode, rationalized with denominator at
    /// most this limit.
    #[arg(long, value_name = "LIMIT")]
    rationalize_denominator_limit: Option<u64>,
}

#[derive(Args, Clone, Copy)]
struct SeedOpt {
    /// RNG seed; defaults to the SHIFTKIT_SEED environment variable, then 42.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Full spectral and commutant analysis of one graph file.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        seed: SeedOpt,
    },
    /// Characteristic polynomial of the shift matrix.
    Charpoly {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpts,
    },
    /// Minimal polynomial of the shift matrix.
    Minpoly {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpts,
    },
    /// Commutant dimension, optionally with the full basis.
    Commutant {
        path: PathBuf,
        /// Include the canonical basis matrices in the report.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        input: InputOpts,
    },
    /// Decide whether the filter is a polynomial in the shift matrix.
    Represent {
        graph: PathBuf,
        filter: PathBuf,
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        seed: SeedOpt,
    },
    /// Emit a commuting, non-representable filter when one exists.
    Witness {
        graph: PathBuf,
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        seed: SeedOpt,
    },
    /// Reproduce the bundled counterexample end to end.
    Counterexample {
        /// Candidates for the conversion-search stage.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        seed: SeedOpt,
        /// Self-test: replace the built-in filter by the shift matrix and
        /// confirm the harness reports the failure.
        #[arg(long)]
        tamper: bool,
    },
    /// Seeded search for a shift-enabled conversion of the pair (S, H).
    SearchConversion {
        graph: PathBuf,
        filter: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        seed: SeedOpt,
        #[command(flatten)]
        input: InputOpts,
    },
    /// Apply a polynomial filter to a signal (floating-point path).
    Apply {
        graph: PathBuf,
        /// Ascending polynomial coefficients, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        coeffs: Vec<f64>,
        /// Signal values, comma separated, one per vertex.
        #[arg(long, value_delimiter = ',', required = true)]
        signal: Vec<f64>,
        /// Also time the Horner route against dense materialization.
        #[arg(long)]
        bench: bool,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Dense benchmarking is skipped above this dimension.
        #[arg(long, default_value_t = 4096)]
        dense_cap: usize,
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        seed: SeedOpt,
    },
    /// Analyze every graph file in a directory, writing per-file reports.
    Scan {
        dir: PathBuf,
        /// Worker threads; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        seed: SeedOpt,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn classify(err: &Error) -> u8 {
    match err {
        Error::ZeroDimension => exit_code::DIMENSION,
        Error::DimensionMismatch { .. } | Error::NotSquare { .. } => exit_code::DIMENSION,
        _ => exit_code::PARSE,
    }
}

fn resolve_seed(opt: SeedOpt) -> Result<u64, Failure> {
    if let Some(seed) = opt.seed {
        return Ok(seed);
    }
    match std::env::var("SHIFTKIT_SEED") {
        Ok(text) => text.parse().map_err(|_| {
            Failure::new(
                exit_code::PARSE,
                format!("SHIFTKIT_SEED must be an unsigned integer, got '{text}'"),
            )
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn load_graph(path: &Path, input: &InputOpts) -> Result<GraphInput, Failure> {
    let text = fs::read_to_string(path).map_err(|e| {
        Failure::new(exit_code::PARSE, format!("{}: {e}", path.display()))
    })?;
    io::parse_graph(
        &text,
        input.format.into(),
        input.rationalize_denominator_limit,
    )
    .map_err(|e| Failure::new(classify(&e), format!("{}: {e}", path.display())))
}

fn load_exact(path: &Path, input: &InputOpts) -> Result<MatQ, Failure> {
    let graph = load_graph(path, input)?;
    graph
        .to_exact()
        .map_err(|e| Failure::new(classify(&e), format!("{}: {e}", path.display())))
}

fn emit(report: &impl serde::Serialize) {
    print!("{}", report::to_json(report));
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { path, input, seed } => {
            let seed = resolve_seed(seed)?;
            let s = load_exact(&path, &input)?;
            emit(&report::analyze(&s, seed));
            Ok(0)
        }
        Command::Charpoly { path, input } => {
            let s = load_exact(&path, &input)?;
            emit(&report::PolyReport {
                schema: report::SCHEMA_VERSION,
                tool_version: report::tool_version().to_string(),
                n: s.n(),
                kind: "charpoly".to_string(),
                coeffs: report::poly_strings(&spectra::charpoly(&s)),
            });
            Ok(0)
        }
        Command::Minpoly { path, input } => {
            let s = load_exact(&path, &input)?;
            emit(&report::PolyReport {
                schema: report::SCHEMA_VERSION,
                tool_version: report::tool_version().to_string(),
                n: s.n(),
                kind: "minpoly".to_string(),
                coeffs: report::poly_strings(&spectra::minpoly(&s)),
            });
            Ok(0)
        }
        Command::Commutant { path, basis, input } => {
            let s = load_exact(&path, &input)?;
            let cb = commutant::commutant_basis(&s);
            emit(&report::CommutantReport {
                schema: report::SCHEMA_VERSION,
                tool_version: report::tool_version().to_string(),
                n: s.n(),
                dim: cb.dim(),
                basis: basis.then(|| cb.basis().iter().map(report::matrix_strings).collect()),
            });
            Ok(0)
        }
        Command::Represent {
            graph,
            filter,
            input,
            seed,
        } => {
            let seed = resolve_seed(seed)?;
            let s = load_exact(&graph, &input)?;
            let h = load_exact(&filter, &input)?;
            let result = represent::represent_filter(&h, &s)
                .map_err(|e| Failure::new(classify(&e), e.to_string()))?;
            emit(&report::represent_report(s.n(), seed, &result));
            Ok(match result.verdict {
                Verdict::Representable => 0,
                Verdict::NotRepresentable => exit_code::NOT_REPRESENTABLE,
                Verdict::NotCommuting => exit_code::NOT_COMMUTING,
            })
        }
        Command::Witness { graph, input, seed } => {
            let _ = resolve_seed(seed)?;
            let s = load_exact(&graph, &input)?;
            let witness = represent::find_nonrepresentable_witness(&s);
            emit(&report::WitnessReport {
                schema: report::SCHEMA_VERSION,
                tool_version: report::tool_version().to_string(),
                n: s.n(),
                shift_enabled: witness.is_none(),
                witness: witness.as_ref().map(report::matrix_strings),
            });
            Ok(0)
        }
        Command::Counterexample {
            samples,
            seed,
            tamper,
        } => {
            let seed = resolve_seed(seed)?;
            let outcome = counterexample::run(samples, seed, tamper);
            emit(&report::counterexample_report(&outcome, samples));
            if outcome.passed {
                Ok(0)
            } else {
                eprintln!(
                    "error: expectation failed at stage '{}'",
                    outcome.first_failed.unwrap_or("unknown")
                );
                Ok(exit_code::COUNTEREXAMPLE_FAILED)
            }
        }
        Command::SearchConversion {
            graph,
            filter,
            samples,
            seed,
            input,
        } => {
            let seed = resolve_seed(seed)?;
            let s = load_exact(&graph, &input)?;
            let h = load_exact(&filter, &input)?;
            let search = conversion_search(&s, &h, samples, seed, &SamplingSpec::default())
                .map_err(|e| Failure::new(classify(&e), e.to_string()))?;
            emit(&report::conversion_report(&search));
            Ok(0)
        }
        Command::Apply {
            graph,
            coeffs,
            signal,
            bench,
            repeats,
            dense_cap,
            input,
            seed,
        } => {
            let seed = resolve_seed(seed)?;
            let parsed = load_graph(&graph, &input)?;
            let sparse = parsed
                .to_sparse()
                .map_err(|e| Failure::new(classify(&e), e.to_string()))?;
            let x = Signal::new(signal).map_err(|e| {
                Failure::new(exit_code::PARSE, format!("--signal: {e}"))
            })?;
            let apply_failure = |e: &Error| match e {
                Error::DimensionMismatch { .. } => {
                    Failure::new(exit_code::APPLY_DIMENSION, e.to_string())
                }
                _ => Failure::new(exit_code::PARSE, e.to_string()),
            };
            let output = filterbank::apply_poly_horner(&sparse, &coeffs, &x)
                .map_err(|e| apply_failure(&e))?;
            let bench_block = if bench {
                Some(
                    filterbank::bench_apply(&sparse, &coeffs, &x, repeats, dense_cap)
                        .map_err(|e| apply_failure(&e))?,
                )
            } else {
                None
            };
            emit(&report::ApplyReportJson {
                schema: report::SCHEMA_VERSION,
                tool_version: report::tool_version().to_string(),
                seed,
                n: sparse.n(),
                coeffs,
                output: output.values().to_vec(),
                bench: bench_block,
            });
            Ok(0)
        }
        Command::Scan {
            dir,
            jobs,
            input,
            seed,
        } => {
            let seed = resolve_seed(seed)?;
            scan(&dir, jobs, &input, seed)
        }
    }
}

fn scan(dir: &Path, jobs: usize, input: &InputOpts, seed: u64) -> Result<u8, Failure> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::new(exit_code::PARSE, format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file() && !p.to_string_lossy().ends_with(".report.json")
        })
        .collect();
    paths.sort();

    let analyze_one = |path: &PathBuf| -> ScanFileEntry {
        match load_exact(path, input) {
            Ok(s) => {
                let file_report = report::analyze(&s, seed);
                let out_path = PathBuf::from(format!("{}.report.json", path.display()));
                match fs::write(&out_path, report::to_json(&file_report)) {
                    Ok(()) => ScanFileEntry {
                        path: path.display().to_string(),
                        status: "ok".to_string(),
                        shift_enabled: Some(file_report.shift_enabled),
                        error: None,
                    },
                    Err(e) => ScanFileEntry {
                        path: path.display().to_string(),
                        status: "failed".to_string(),
                        shift_enabled: None,
                        error: Some(format!("writing report: {e}")),
                    },
                }
            }
            Err(failure) => ScanFileEntry {
                path: path.display().to_string(),
                status: "failed".to_string(),
                shift_enabled: None,
                error: Some(failure.message),
            },
        }
    };

    let files: Vec<ScanFileEntry> = if jobs == 1 {
        paths.iter().map(analyze_one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::new(exit_code::PARSE, e.to_string()))?;
        pool.install(|| {
            use rayon::prelude::*;
            paths.par_iter().map(analyze_one).collect()
        })
    };

    let shift_enabled = files
        .iter()
        .filter(|f| f.shift_enabled == Some(true))
        .count();
    let not_shift_enabled = files
        .iter()
        .filter(|f| f.shift_enabled == Some(false))
        .count();
    let failed = files.iter().filter(|f| f.status == "failed").count();
    emit(&ScanSummary {
        schema: report::SCHEMA_VERSION,
        tool_version: report::tool_version().to_string(),
        scanned: files.len(),
        shift_enabled,
        not_shift_enabled,
        failed,
        files,
    });
    Ok(if failed > 0 {
        exit_code::SCAN_FAILURES
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

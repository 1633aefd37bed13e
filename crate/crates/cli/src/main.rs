use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use compop_core::report::{Finding, Meta, Mode};
use compop_core::runner::{
    parse_mu_spec, render, run_check, run_douglas, run_example, run_search, ExampleRequest,
    Scenario, SearchRequest, WeightSpec, DEFAULT_CHECK_TOL,
};
use compop_core::{Error, Execution, Property};

const EXIT_INPUT: u8 = 1;
const EXIT_DISAGREE: u8 = 2;

#[derive(Parser)]
#[command(name = "compop", version, about = "Composition operators relative to a positive operator")]
struct Cli {
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Matrix,
    Formula,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Matrix => Mode::Matrix,
            ModeArg::Formula => Mode::Formula,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario file with the matrix predicates, the criteria, or both.
    Check {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the scenario's mode.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Overrides the scenario's tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        findings_out: Option<PathBuf>,
    },
    /// Classify all nⁿ self-maps of an n-atom space.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        property: String,
        /// List `1,2,3` or closed form `const:c`, `exp[:r]`, `affine:a:b`, `piecewise:breaks:values`.
        #[arg(long, default_value = "const:1")]
        u: String,
        /// `uniform` or a list of masses.
        #[arg(long, default_value = "uniform")]
        mu: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        findings_out: Option<PathBuf>,
    },
    /// Evaluate the doubling or tent map criteria on a sample grid.
    Example {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "const:1")]
        u: String,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Comma-separated property names.
        #[arg(long, default_value = "normal,quasinormal,isometry,unitary")]
        properties: String,
        #[arg(long, default_value_t = DEFAULT_CHECK_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        findings_out: Option<PathBuf>,
    },
    /// Random Douglas range-inclusion trials.
    Douglas {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_err(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_findings(findings: &[Finding], out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, render(&findings)).map_err(|e| io_err(path, e)),
        None => Ok(()),
    }
}

fn stamp(meta: &mut Meta, start: Instant, timing: bool) {
    if timing {
        meta.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let start = Instant::now();
    match cli.command {
        Command::Check {
            file,
            out,
            mode,
            tol,
            findings_out,
        } => {
            let text = std::fs::read_to_string(&file).map_err(|e| io_err(&file, e))?;
            let mut scenario = Scenario::from_json(&text)?;
            if let Some(m) = mode {
                scenario.mode = m.into();
            }
            if let Some(t) = tol {
                if t.is_nan() || t <= 0.0 {
                    return Err(Error::Input("tol: must be positive".into()));
                }
                scenario.tol = t;
            }
            let mut report = run_check(&scenario)?;
            stamp(&mut report.meta, start, cli.timing);
            emit(&render(&report), out.as_ref())?;
            emit_findings(&report.findings, findings_out.as_ref())?;
            Ok(if report.disagreements() > 0 { EXIT_DISAGREE } else { 0 })
        }
        Command::Search {
            n,
            property,
            u,
            mu,
            tol,
            out,
            findings_out,
        } => {
            let req = SearchRequest {
                n,
                property: property.parse()?,
                u: WeightSpec::parse(&u)?,
                mu: parse_mu_spec(&mu, n)?,
                tol,
            };
            let mut report = run_search(&req, exec)?;
            stamp(&mut report.meta, start, cli.timing);
            emit(&render(&report), out.as_ref())?;
            emit_findings(&report.findings, findings_out.as_ref())?;
            Ok(if report.failed() { EXIT_DISAGREE } else { 0 })
        }
        Command::Example {
            name,
            u,
            grid,
            properties,
            tol,
            out,
            findings_out,
        } => {
            let req = ExampleRequest {
                name,
                u: WeightSpec::parse(&u)?,
                grid,
                properties: properties
                    .split(',')
                    .map(str::parse::<Property>)
                    .collect::<Result<_, _>>()?,
                tol,
            };
            let mut report = run_example(&req, exec)?;
            stamp(&mut report.meta, start, cli.timing);
            emit(&render(&report), out.as_ref())?;
            emit_findings(&report.findings, findings_out.as_ref())?;
            Ok(0)
        }
        Command::Douglas { seed, trials, out } => {
            let mut report = run_douglas(seed, trials, exec)?;
            stamp(&mut report.meta, start, cli.timing);
            emit(&render(&report), out.as_ref())?;
            Ok(if report.violations > 0 { EXIT_DISAGREE } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use egb_core::{is_egb, orbit_truncate, EgbResult, Status};

use crate::parse::{parse, parse_polynomial, Algorithm, ProblemFile};
use crate::report::RunReport;
use crate::serialize::{serialize_basis, serialize_generators, serialize_options, serialize_ring};
use crate::{reduce, solve, CliError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "egb",
    version,
    about = "Equivariant Groebner bases for Inc(N)-invariant ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute an equivariant Groebner basis of the generators.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        /// Write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print the JSON report instead of the basis.
        #[arg(long)]
        json: bool,
        /// Write a problem file whose generators are the basis.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print the basis as accumulated by the engine, before autoreduction.
        #[arg(long)]
        engine_basis: bool,
    },
    /// Print the normal form of a polynomial modulo the basis.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        /// Reduce by the generators as given instead of solving first.
        #[arg(long)]
        no_solve: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Exit 0 if the polynomial lies in the ideal, 1 if not.
    Member {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Print all images of the generators of width at most N.
    Orbit {
        file: PathBuf,
        #[arg(long)]
        width: usize,
    },
    /// Check the equivariant Buchberger criterion on the generators.
    Check { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Buchberger,
    Incremental,
    Signature,
    Classical,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Buchberger => Algorithm::Buchberger,
            AlgorithmArg::Incremental => Algorithm::Incremental,
            AlgorithmArg::Signature => Algorithm::Signature,
            AlgorithmArg::Classical => Algorithm::Classical,
        }
    }
}

/// Overrides for the file's options block.
#[derive(Debug, Args)]
struct EngineArgs {
    #[arg(long, value_enum)]
    algorithm: Option<AlgorithmArg>,
    #[arg(long)]
    max_width: Option<usize>,
    #[arg(long)]
    max_pairs: Option<u64>,
    #[arg(long)]
    max_basis: Option<usize>,
    #[arg(long)]
    principal_syzygies: bool,
    /// Disable the cover test of the signature engine.
    #[arg(long)]
    no_cover: bool,
    /// Width-ordered queue for the incremental engine.
    #[arg(long)]
    width_queue: bool,
}

impl EngineArgs {
    fn apply(&self, problem: &mut ProblemFile) {
        let o = &mut problem.options;
        if let Some(a) = self.algorithm {
            o.algorithm = a.into();
        }
        if self.max_width.is_some() {
            o.limits.max_width = self.max_width;
        }
        if self.max_pairs.is_some() {
            o.limits.max_pairs = self.max_pairs;
        }
        if self.max_basis.is_some() {
            o.limits.max_basis = self.max_basis;
        }
        o.principal_syzygies |= self.principal_syzygies;
        o.width_queue |= self.width_queue;
        o.cover &= !self.no_cover;
    }
}

fn load(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text).map_err(|error| CliError::Parse {
        path: path.to_path_buf(),
        error,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn timed_solve(problem: &ProblemFile) -> Result<EgbResult, CliError> {
    let start = Instant::now();
    let mut result = solve(problem)?;
    result.stats.elapsed = Some(start.elapsed());
    Ok(result)
}

fn summary(result: &EgbResult) -> String {
    let s = &result.stats;
    let status = match result.status {
        Status::Complete => "complete".to_string(),
        Status::BudgetExhausted(l) => format!("budget exhausted ({l}), partial basis"),
    };
    let mut line = format!(
        "{status}: {} elements, {} pairs, {} zero reductions",
        result.basis.len(),
        s.pairs_processed,
        s.zero_reductions
    );
    if s.covered_pairs > 0 || s.rank > 0 {
        line += &format!(", {} covered pairs, rank {}", s.covered_pairs, s.rank);
    }
    if let Some(n) = s.stabilized_at {
        line += &format!(", stabilized at n = {n}");
    }
    if let Some(t) = s.elapsed {
        line += &format!(", {:.3} s", t.as_secs_f64());
    }
    line
}

fn status_code(result: &EgbResult) -> i32 {
    if result.status.is_complete() {
        EXIT_OK
    } else {
        EXIT_BUDGET
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Solve {
            file,
            engine,
            report,
            json,
            output,
            engine_basis,
        } => {
            let mut problem = load(&file)?;
            engine.apply(&mut problem);
            let result = timed_solve(&problem)?;
            let rep = RunReport::new(
                &problem.ring,
                &problem.generators,
                &problem.options,
                &result,
            );
            if let Some(path) = report {
                write_file(&path, &rep.to_json())?;
            }
            if let Some(path) = output {
                let text = serialize_ring(&problem.ring)
                    + &serialize_generators(&problem.ring, &result.basis)
                    + &serialize_options(&problem.options);
                write_file(&path, &text)?;
            }
            if json {
                out.write_all(rep.to_json().as_bytes())?;
            } else if engine_basis {
                for line in &rep.engine_basis {
                    writeln!(out, "{line}")?;
                }
            } else {
                out.write_all(serialize_basis(&problem.ring, &result.basis).as_bytes())?;
            }
            writeln!(err, "{}", summary(&result))?;
            Ok(status_code(&result))
        }
        Command::Reduce {
            file,
            poly,
            no_solve,
            engine,
        } => {
            let mut problem = load(&file)?;
            engine.apply(&mut problem);
            let f =
                parse_polynomial(&problem.ring, &poly).map_err(|error| CliError::Poly { error })?;
            let (basis, code) = if no_solve {
                (problem.generators.clone(), EXIT_OK)
            } else {
                let result = timed_solve(&problem)?;
                writeln!(err, "{}", summary(&result))?;
                (result.basis.clone(), status_code(&result))
            };
            let nf = reduce(&problem, &f, &basis);
            writeln!(out, "{}", nf.display(&problem.ring))?;
            Ok(code)
        }
        Command::Member { file, poly, engine } => {
            let mut problem = load(&file)?;
            engine.apply(&mut problem);
            let f =
                parse_polynomial(&problem.ring, &poly).map_err(|error| CliError::Poly { error })?;
            let result = timed_solve(&problem)?;
            writeln!(err, "{}", summary(&result))?;
            let nf = reduce(&problem, &f, &result.basis);
            // A zero normal form proves membership even for a partial basis.
            if nf.is_zero() {
                writeln!(out, "member")?;
                Ok(EXIT_OK)
            } else if result.status.is_complete() {
                writeln!(out, "not a member")?;
                Ok(EXIT_NEGATIVE)
            } else {
                writeln!(out, "unknown")?;
                Ok(EXIT_BUDGET)
            }
        }
        Command::Orbit { file, width } => {
            let problem = load(&file)?;
            for g in orbit_truncate(&problem.generators, width)? {
                writeln!(out, "{}", g.display(&problem.ring))?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { file } => {
            let problem = load(&file)?;
            if is_egb(&problem.ring, &problem.generators) {
                writeln!(out, "true")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "false")?;
                Ok(EXIT_NEGATIVE)
            }
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return EXIT_USAGE;
            }
            let _ = out.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

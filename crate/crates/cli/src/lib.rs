//! Problem files, run reports and the `egb` command line on top of
//! `egb-core`.

use std::path::PathBuf;

use egb_core::{
    classical_buchberger, egb_buchberger, egb_incremental, egb_signature, reduce_with, Action,
    EgbResult, IncrementalMode, Polynomial, ReducerSet, SignatureOptions,
};

pub mod cli;
pub mod parse;
pub mod report;
pub mod serialize;

pub use parse::{parse, parse_polynomial, Algorithm, Options, ParseError, ProblemFile};
pub use report::RunReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{error}", path.display())]
    Parse { path: PathBuf, error: ParseError },
    #[error("--poly:{error}")]
    Poly { error: ParseError },
    #[error("{0}")]
    Engine(egb_core::Error),
    #[error(transparent)]
    Output(#[from] std::io::Error),
}

impl From<egb_core::Error> for CliError {
    fn from(e: egb_core::Error) -> Self {
        CliError::Engine(e)
    }
}

/// Runs the engine selected by the problem's options.
pub fn solve(problem: &ProblemFile) -> Result<EgbResult, egb_core::Error> {
    let (ring, gens, opts) = (&problem.ring, &problem.generators, &problem.options);
    match opts.algorithm {
        Algorithm::Buchberger => egb_buchberger(ring, gens, opts.limits),
        Algorithm::Classical => classical_buchberger(ring, gens, opts.limits),
        Algorithm::Incremental => {
            let mode = if opts.width_queue {
                IncrementalMode::WidthQueue
            } else {
                IncrementalMode::Truncation
            };
            egb_incremental(ring, gens, opts.limits, mode)
        }
        Algorithm::Signature => {
            let sig = SignatureOptions {
                principal_syzygies: opts.principal_syzygies,
                cover: opts.cover,
            };
            egb_signature(ring, gens, sig, opts.limits)
        }
    }
}

/// Full normal form of `f` modulo `basis`, under the index action unless the
/// problem asks for the classical engine.
pub fn reduce(problem: &ProblemFile, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let action = match problem.options.algorithm {
        Algorithm::Classical => Action::Trivial,
        _ => Action::Inc,
    };
    let reducers = ReducerSet::from_polys(action, basis);
    reduce_with(&problem.ring, f, &reducers, true, None)
}

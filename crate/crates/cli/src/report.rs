//! Versioned JSON run reports.
//!
//! Wall time is deliberately left out so repeated runs produce identical
//! bytes.

use egb_core::{sort_basis, EgbResult, Polynomial, Ring, Stats, Status};
use serde::{Deserialize, Serialize};

use crate::parse::{Algorithm, Options};

pub const FORMAT: &str = "egb-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionsEcho {
    pub algorithm: String,
    pub max_width: Option<usize>,
    pub max_pairs: Option<u64>,
    pub max_basis: Option<usize>,
    pub principal_syzygies: bool,
    pub width_queue: bool,
    pub cover: bool,
}

impl From<&Options> for OptionsEcho {
    fn from(o: &Options) -> Self {
        OptionsEcho {
            algorithm: o.algorithm.tag().to_string(),
            max_width: o.limits.max_width,
            max_pairs: o.limits.max_pairs,
            max_basis: o.limits.max_basis,
            principal_syzygies: o.principal_syzygies,
            width_queue: o.width_queue,
            cover: o.cover,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsEcho {
    pub pairs_processed: u64,
    pub zero_reductions: u64,
    pub insertions: u64,
    pub max_pair_width: usize,
    pub covered_pairs: u64,
    pub singular_pairs: u64,
    pub rank: usize,
    pub completions: u64,
    pub levels: usize,
    pub stabilized_at: Option<usize>,
}

impl From<&Stats> for StatsEcho {
    fn from(s: &Stats) -> Self {
        StatsEcho {
            pairs_processed: s.pairs_processed,
            zero_reductions: s.zero_reductions,
            insertions: s.insertions,
            max_pair_width: s.max_pair_width,
            covered_pairs: s.covered_pairs,
            singular_pairs: s.singular_pairs,
            rank: s.rank,
            completions: s.completions,
            levels: s.levels,
            stabilized_at: s.stabilized_at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub status: String,
    pub exhausted_limit: Option<String>,
    pub options: OptionsEcho,
    pub generators: Vec<String>,
    /// Monic, autoreduced basis.
    pub basis: Vec<String>,
    /// Basis as accumulated by the engine before autoreduction.
    pub engine_basis: Vec<String>,
    pub stats: StatsEcho,
}

fn lines(ring: &Ring, polys: &[Polynomial], sort: bool) -> Vec<String> {
    let mut polys: Vec<Polynomial> = polys.iter().map(Polynomial::monic).collect();
    if sort {
        sort_basis(ring, &mut polys);
    }
    polys.iter().map(|p| p.display(ring).to_string()).collect()
}

impl RunReport {
    pub fn new(
        ring: &Ring,
        generators: &[Polynomial],
        options: &Options,
        result: &EgbResult,
    ) -> Self {
        let (status, exhausted_limit) = match result.status {
            Status::Complete => ("complete", None),
            Status::BudgetExhausted(l) => ("budget_exhausted", Some(l.to_string())),
        };
        RunReport {
            format: FORMAT.to_string(),
            status: status.to_string(),
            exhausted_limit,
            options: options.into(),
            generators: generators
                .iter()
                .map(|g| g.display(ring).to_string())
                .collect(),
            basis: lines(ring, &result.basis, true),
            engine_basis: lines(ring, &result.raw, false),
            stats: (&result.stats).into(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn algorithm(&self) -> Option<Algorithm> {
        Algorithm::from_tag(&self.options.algorithm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use egb_core::{egb_buchberger, EngineLimits};

    #[test]
    fn report_round_trips_through_json() {
        let p = parse("ring { family x { arity = 1 } } generators { x[1] - x[0] }").unwrap();
        let res = egb_buchberger(&p.ring, &p.generators, EngineLimits::default()).unwrap();
        let report = RunReport::new(&p.ring, &p.generators, &p.options, &res);
        assert_eq!(report.format, "egb-report/1");
        assert_eq!(report.status, "complete");
        assert_eq!(report.basis, vec!["x[1] - x[0]".to_string()]);
        let json = report.to_json();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.algorithm(), Some(Algorithm::Buchberger));
        let again = RunReport::new(&p.ring, &p.generators, &p.options, &res).to_json();
        assert_eq!(again, json);
    }
}

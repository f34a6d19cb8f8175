//! Equivariant Buchberger, the truncated/incremental variant, the
//! finite-variable engine and the criterion check.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::time::Duration;

use crate::error::{Error, Limit};
use crate::inc::increasing_maps;
use crate::monomial::Ring;
use crate::poly::{reduce_with, Action, Polynomial, ReducerSet};
use crate::spairs::{spair_generators, SPairGen, SPairOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineLimits {
    pub max_width: Option<usize>,
    pub max_pairs: Option<u64>,
    pub max_basis: Option<usize>,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits {
            max_width: Some(16),
            max_pairs: Some(100_000),
            max_basis: None,
        }
    }
}

impl EngineLimits {
    pub fn unlimited() -> Self {
        EngineLimits {
            max_width: None,
            max_pairs: None,
            max_basis: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    BudgetExhausted(Limit),
}

impl Status {
    pub fn is_complete(self) -> bool {
        self == Status::Complete
    }
}

/// Run counters. Engines that do not use a counter leave it at zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub pairs_processed: u64,
    pub zero_reductions: u64,
    pub insertions: u64,
    pub max_pair_width: usize,
    /// Signature engine: J-pairs dropped by the cover test.
    pub covered_pairs: u64,
    /// Signature engine: J-pairs dropped as singular top-reducible.
    pub singular_pairs: u64,
    /// Signature engine: final module rank.
    pub rank: usize,
    /// Signature engine: generators re-added by the closing criterion check.
    pub completions: u64,
    /// Incremental engine: last truncation level visited.
    pub levels: usize,
    /// Incremental engine: first `n` whose autoreduced basis equals the one at
    /// `n + 1`, or the level at which the truncated basis passed the criterion.
    pub stabilized_at: Option<usize>,
    /// Wall time, filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
}

#[derive(Debug, Clone)]
pub struct EgbResult {
    /// Monic, autoreduced basis.
    pub basis: Vec<Polynomial>,
    /// Basis as accumulated by the engine, monic but not interreduced.
    pub raw: Vec<Polynomial>,
    pub stats: Stats,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IncrementalMode {
    /// Classical Groebner bases of successive generator truncations.
    #[default]
    Truncation,
    /// Width-ordered pair queue; needs a width order.
    WidthQueue,
}

struct PendingPair {
    key: (usize, u32, u64),
    gen: SPairGen,
}

impl PartialEq for PendingPair {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for PendingPair {}
impl PartialOrd for PendingPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PendingPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// Pair generators of `(basis[i], basis[j])`, `i <= j`, with mirrored self
/// pairs dropped (they give the negated S-polynomial).
pub(crate) fn pair_generators(
    basis: &[Polynomial],
    i: usize,
    j: usize,
    action: Action,
    opts: SPairOptions,
) -> Vec<SPairGen> {
    let mut gens = spair_generators(&basis[i], i, &basis[j], j, action, opts);
    if i == j {
        gens.retain(|g| g.left.map < g.right.map);
    }
    gens
}

struct Engine<'r> {
    ring: &'r Ring,
    action: Action,
    limits: EngineLimits,
    reducers: ReducerSet,
    queue: BinaryHeap<Reverse<PendingPair>>,
    seq: u64,
    stats: Stats,
    /// Some pair was left out for exceeding `max_width`.
    over_width: bool,
}

impl<'r> Engine<'r> {
    fn new(ring: &'r Ring, action: Action, limits: EngineLimits) -> Self {
        Engine {
            ring,
            action,
            limits,
            reducers: ReducerSet::new(action),
            queue: BinaryHeap::new(),
            seq: 0,
            stats: Stats::default(),
            over_width: false,
        }
    }

    fn basis(&self) -> &[Polynomial] {
        self.reducers.polys()
    }

    /// Adds a nonzero normal form and enqueues its pairs.
    fn insert(&mut self, h: Polynomial) -> Result<(), Limit> {
        if let Some(max) = self.limits.max_basis {
            if self.basis().len() >= max {
                return Err(Limit::Basis);
            }
        }
        debug_assert!(self.reducers.find(h.lm().expect("nonzero")).is_none());
        self.reducers.push(h.monic());
        self.stats.insertions += 1;
        let new = self.basis().len() - 1;
        for i in 0..=new {
            for gen in pair_generators(self.basis(), i, new, self.action, SPairOptions::default()) {
                // The queue is width-first, so an over-wide pair would only be
                // popped after everything else; dropping it early is the same.
                if self
                    .limits
                    .max_width
                    .is_some_and(|m| gen.overlap.width() > m)
                {
                    self.over_width = true;
                    continue;
                }
                let key = (gen.overlap.width(), gen.overlap.degree(), self.seq);
                self.seq += 1;
                self.queue.push(Reverse(PendingPair { key, gen }));
            }
        }
        Ok(())
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        reduce_with(self.ring, f, &self.reducers, true, None)
    }

    fn run(&mut self, input: &[Polynomial]) -> Result<(), Limit> {
        for f in input {
            let h = self.reduce(f);
            if !h.is_zero() {
                self.insert(h)?;
            }
        }
        while let Some(Reverse(pair)) = self.queue.pop() {
            let width = pair.key.0;
            if self
                .limits
                .max_pairs
                .is_some_and(|m| self.stats.pairs_processed >= m)
            {
                return Err(Limit::Pairs);
            }
            self.stats.pairs_processed += 1;
            self.stats.max_pair_width = self.stats.max_pair_width.max(width);
            let gen = &pair.gen;
            let basis = self.basis();
            let s = gen.spoly(self.ring, &basis[gen.left.source], &basis[gen.right.source]);
            let h = self.reduce(&s);
            if h.is_zero() {
                self.stats.zero_reductions += 1;
            } else {
                self.insert(h)?;
            }
        }
        if self.over_width {
            return Err(Limit::Width);
        }
        Ok(())
    }

    fn finish(self, outcome: Result<(), Limit>) -> EgbResult {
        let raw = self.basis().to_vec();
        EgbResult {
            basis: autoreduce(self.ring, &raw, self.action),
            raw,
            stats: self.stats,
            status: match outcome {
                Ok(()) => Status::Complete,
                Err(limit) => Status::BudgetExhausted(limit),
            },
        }
    }
}

fn check_input(ring: &Ring, input: &[Polynomial]) -> Result<Vec<Polynomial>, Error> {
    let mut out = Vec::with_capacity(input.len());
    for f in input {
        if f.ring_tag() != ring.tag() {
            return Err(Error::MixedRing);
        }
        if !f.is_zero() {
            out.push(f.clone());
        }
    }
    Ok(out)
}

/// Equivariant Buchberger algorithm with a width-first pair queue.
pub fn egb_buchberger(
    ring: &Ring,
    input: &[Polynomial],
    limits: EngineLimits,
) -> Result<EgbResult, Error> {
    let input = check_input(ring, input)?;
    let mut engine = Engine::new(ring, Action::Inc, limits);
    let outcome = engine.run(&input);
    Ok(engine.finish(outcome))
}

/// Reduced Groebner basis over the finitely many variables occurring in the
/// input, ignoring the index action.
pub fn classical_buchberger(
    ring: &Ring,
    input: &[Polynomial],
    limits: EngineLimits,
) -> Result<EgbResult, Error> {
    let input = check_input(ring, input)?;
    let mut engine = Engine::new(ring, Action::Trivial, limits);
    let outcome = engine.run(&input);
    Ok(engine.finish(outcome))
}

/// Every image of every generator under an increasing map into `0..n`.
pub fn orbit_truncate(input: &[Polynomial], n: usize) -> Result<Vec<Polynomial>, Error> {
    let mut out: Vec<Polynomial> = Vec::new();
    for f in input {
        let maps = increasing_maps(f.width(), n).map_err(|_| Error::TruncationTooNarrow {
            level: n,
            width: f.width(),
        })?;
        for rho in maps {
            let g = f.act(&rho);
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Truncated computation: successive levels `n = w(F), w(F) + 1, ...` until
/// the level basis satisfies the equivariant criterion.
pub fn egb_incremental(
    ring: &Ring,
    input: &[Polynomial],
    limits: EngineLimits,
    mode: IncrementalMode,
) -> Result<EgbResult, Error> {
    let input = check_input(ring, input)?;
    if mode == IncrementalMode::WidthQueue {
        if !ring.is_width_order() {
            return Err(Error::Configuration(
                "width-queue mode needs a width order".into(),
            ));
        }
        // With a width order the queue already visits S-pairs by width, and
        // reductions never raise the width, so level-by-level truncation is
        // the plain run.
        let mut engine = Engine::new(ring, Action::Inc, limits);
        let outcome = engine.run(&input);
        let mut result = engine.finish(outcome);
        result.stats.levels = result
            .basis
            .iter()
            .map(Polynomial::width)
            .max()
            .unwrap_or(0);
        return Ok(result);
    }

    let mut stats = Stats::default();
    let mut previous: Vec<Polynomial> = Vec::new();
    let mut n = input.iter().map(Polynomial::width).max().unwrap_or(0);
    loop {
        stats.levels = n;
        if limits.max_width.is_some_and(|m| n > m) {
            return Ok(EgbResult {
                raw: previous.clone(),
                basis: previous,
                stats,
                status: Status::BudgetExhausted(Limit::Width),
            });
        }
        let mut seed = previous.clone();
        seed.extend(input.iter().cloned());
        let level_input = orbit_truncate(&seed, n)?;
        let remaining = EngineLimits {
            max_pairs: limits
                .max_pairs
                .map(|m| m.saturating_sub(stats.pairs_processed)),
            max_width: None,
            max_basis: limits.max_basis,
        };
        let level = classical_buchberger(ring, &level_input, remaining)?;
        stats.pairs_processed += level.stats.pairs_processed;
        stats.zero_reductions += level.stats.zero_reductions;
        stats.insertions += level.stats.insertions;
        let current = autoreduce(ring, &level.raw, Action::Inc);
        if let Status::BudgetExhausted(limit) = level.status {
            return Ok(EgbResult {
                raw: level.raw,
                basis: current,
                stats,
                status: Status::BudgetExhausted(limit),
            });
        }
        if stats.stabilized_at.is_none() && n > 0 && current == previous {
            stats.stabilized_at = Some(n - 1);
        }
        if is_egb(ring, &current) {
            stats.stabilized_at.get_or_insert(n);
            return Ok(EgbResult {
                raw: current.clone(),
                basis: current,
                stats,
                status: Status::Complete,
            });
        }
        previous = current;
        n += 1;
    }
}

/// First nonzero reduced S-polynomial over all pairs, if any.
pub fn criterion_violation(
    ring: &Ring,
    basis: &[Polynomial],
    action: Action,
) -> Option<Polynomial> {
    let basis: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    let reducers = ReducerSet::from_polys(action, &basis);
    for j in 0..basis.len() {
        for i in 0..=j {
            for gen in pair_generators(&basis, i, j, action, SPairOptions::default()) {
                let s = gen.spoly(ring, &basis[i], &basis[j]);
                let h = reduce_with(ring, &s, &reducers, false, None);
                if !h.is_zero() {
                    return Some(h);
                }
            }
        }
    }
    None
}

/// Equivariant Buchberger criterion.
pub fn is_egb(ring: &Ring, basis: &[Polynomial]) -> bool {
    criterion_violation(ring, basis, Action::Inc).is_none()
}

/// Monic, lead-minimal and tail-reduced presentation, sorted by
/// (width, degree, lead monomial).
pub fn autoreduce(ring: &Ring, basis: &[Polynomial], action: Action) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();
    polys.sort_by(|a, b| ring.compare(a.lm().unwrap(), b.lm().unwrap()));
    // A Pi-divisor of a lead is never larger than it, so scanning upwards
    // sees every divisor before the multiple.
    let mut kept = ReducerSet::new(action);
    for g in polys {
        if kept.find(g.lm().unwrap()).is_none() {
            kept.push(g);
        }
    }
    let kept = kept.polys().to_vec();
    let mut out = Vec::with_capacity(kept.len());
    for (i, g) in kept.iter().enumerate() {
        let mut others = ReducerSet::new(action);
        for (j, h) in kept.iter().enumerate() {
            if i != j {
                others.push(h.clone());
            }
        }
        out.push(reduce_with(ring, g, &others, true, None).monic());
    }
    sort_basis(ring, &mut out);
    out
}

/// Canonical presentation order: width, then degree, then lead monomial.
pub fn sort_basis(ring: &Ring, basis: &mut [Polynomial]) {
    basis.sort_by(|a, b| {
        a.width()
            .cmp(&b.width())
            .then(a.degree().cmp(&b.degree()))
            .then_with(|| match (a.lm(), b.lm()) {
                (Ok(x), Ok(y)) => ring.compare(x, y),
                (a, b) => a.is_ok().cmp(&b.is_ok()),
            })
    });
}

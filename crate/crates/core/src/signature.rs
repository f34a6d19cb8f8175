//! Signature-based engines: strong Buchberger for the trivial action and the
//! equivariant signature algorithm with rank growth.
//!
//! Only the leading module term of each representation is tracked. A
//! signature `m * w * e_i` is kept together with its image `m * w(lm F_i)`
//! in the ring, which is what the Schreyer order compares first.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::buchberger::{
    autoreduce, criterion_violation, pair_generators, EgbResult, EngineLimits, Stats, Status,
};
use crate::error::{Error, Limit};
use crate::inc::{IncMap, Index, TauWord};
use crate::monomial::{Monomial, Ring};
use crate::poly::{reduce_with, Action, Coeff, Polynomial, ReducerSet};
use crate::spairs::{interlacings, Multiplier, SPairOptions};

/// `mono * tau_{j_1} ... tau_{j_d}` in left standard form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedMonomial {
    mono: Monomial,
    word: TauWord,
    map: IncMap,
}

impl TwistedMonomial {
    pub fn one() -> Self {
        TwistedMonomial::from_map(Monomial::one(), IncMap::identity())
    }

    pub fn new(mono: Monomial, word: TauWord) -> Self {
        let map = word.to_map();
        TwistedMonomial { mono, word, map }
    }

    pub fn from_map(mono: Monomial, map: IncMap) -> Self {
        TwistedMonomial {
            word: map.to_tau(),
            mono,
            map,
        }
    }

    pub fn mono(&self) -> &Monomial {
        &self.mono
    }

    pub fn word(&self) -> &TauWord {
        &self.word
    }

    pub fn map(&self) -> &IncMap {
        &self.map
    }

    /// Image of a ring monomial: `mono * w(m)`.
    pub fn apply(&self, m: &Monomial) -> Monomial {
        self.mono.mul(&m.act(&self.map))
    }

    pub fn apply_poly(&self, p: &Polynomial) -> Polynomial {
        p.act(&self.map)
            .mul_term(&Coeff::from_integer(1.into()), &self.mono)
    }
}

impl From<&Multiplier> for TwistedMonomial {
    fn from(m: &Multiplier) -> Self {
        TwistedMonomial::from_map(m.cofactor.clone(), m.map.clone())
    }
}

/// `(m, s)(n, t) = (m s(n), s t)`.
pub fn twisted_mul(a: &TwistedMonomial, b: &TwistedMonomial) -> TwistedMonomial {
    TwistedMonomial::from_map(a.apply(&b.mono), a.map.compose(&b.map))
}

/// All `t` with `t * divisor = target`, at most `cap` of them.
///
/// The map part of `t` is fixed on the image of the divisor's map; the
/// finitely many points off that image are enumerated.
pub fn left_quotients(
    divisor: &TwistedMonomial,
    target: &TwistedMonomial,
    cap: usize,
) -> Vec<TwistedMonomial> {
    let mut out = Vec::new();
    if target.word.len() < divisor.word.len() || target.mono.degree() < divisor.mono.degree() {
        return out;
    }
    let (wg, w) = (&divisor.map, &target.map);
    let p = wg.domain_size().max(w.domain_size()) + 1;
    let top = wg.apply(p as Index - 1) as usize;
    let mut fixed: Vec<Option<Index>> = vec![None; top + 1];
    for i in 0..p as Index {
        fixed[wg.apply(i) as usize] = Some(w.apply(i));
    }
    // Past `top` both maps are shifts, so the quotient is one as well.
    if w.apply(p as Index - 1) < top as Index {
        return out;
    }
    let mut values = Vec::with_capacity(top + 1);
    quotient_search(&fixed, &mut values, divisor, target, cap, &mut out);
    out
}

fn quotient_search(
    fixed: &[Option<Index>],
    values: &mut Vec<Index>,
    divisor: &TwistedMonomial,
    target: &TwistedMonomial,
    cap: usize,
    out: &mut Vec<TwistedMonomial>,
) {
    if out.len() >= cap {
        return;
    }
    let v = values.len();
    let lower = values.last().map_or(0, |&x| x + 1);
    if v == fixed.len() {
        let sigma = IncMap::from_values(values.clone()).expect("increasing");
        let shifted = divisor.mono.act(&sigma);
        if let Ok(cofactor) = target.mono.quotient(&shifted) {
            out.push(TwistedMonomial::from_map(cofactor, sigma));
        }
        return;
    }
    match fixed[v] {
        Some(x) => {
            if x >= lower {
                values.push(x);
                quotient_search(fixed, values, divisor, target, cap, out);
                values.pop();
            }
        }
        None => {
            let (u, next) = fixed[v..]
                .iter()
                .enumerate()
                .find_map(|(k, f)| f.map(|x| (v + k, x)))
                .expect("last point is fixed");
            let room = (u - v) as Index;
            if next < room {
                return;
            }
            for x in lower..=next - room {
                values.push(x);
                quotient_search(fixed, values, divisor, target, cap, out);
                values.pop();
            }
        }
    }
}

/// Leading module term `tm * e_index`, with its ring image cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub tm: TwistedMonomial,
    pub index: usize,
    image: Monomial,
}

impl Signature {
    /// `e_index`, where `head` is the lead monomial of the generator.
    pub fn unit(index: usize, head: &Monomial) -> Self {
        Signature {
            tm: TwistedMonomial::one(),
            index,
            image: head.clone(),
        }
    }

    pub fn new(tm: TwistedMonomial, index: usize, heads: &[Monomial]) -> Self {
        let image = tm.apply(&heads[index]);
        Signature { tm, index, image }
    }

    /// `t * self`.
    pub fn mul_left(&self, t: &TwistedMonomial) -> Signature {
        Signature {
            tm: twisted_mul(t, &self.tm),
            index: self.index,
            image: t.apply(&self.image),
        }
    }

    /// `tm` applied to the lead monomial of the generator.
    pub fn image(&self) -> &Monomial {
        &self.image
    }
}

/// Schreyer order: ring images, then position (smaller index is smaller),
/// then the twisted monomial itself.
pub fn schreyer_compare(ring: &Ring, s: &Signature, t: &Signature) -> Ordering {
    ring.compare(&s.image, &t.image)
        .then(s.index.cmp(&t.index))
        .then_with(|| ring.compare(&s.tm.mono, &t.tm.mono))
        .then_with(|| s.tm.word.cmp(&t.tm.word))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoly {
    pub sig: Signature,
    pub poly: Polynomial,
}

/// Larger sides of the S-pairs of `(p, q)`; equal signatures give nothing.
pub fn j_pairs(
    ring: &Ring,
    p: &LabeledPoly,
    q: &LabeledPoly,
    same: bool,
    action: Action,
) -> Vec<LabeledPoly> {
    let polys = [p.poly.clone(), q.poly.clone()];
    let j = if same { 0 } else { 1 };
    let opts = SPairOptions {
        coprime_filter: false,
    };
    let mut out = Vec::new();
    for gen in pair_generators(&polys, 0, j, action, opts) {
        let tl = TwistedMonomial::from(&gen.left);
        let tr = TwistedMonomial::from(&gen.right);
        let (sl, sr) = (p.sig.mul_left(&tl), q.sig.mul_left(&tr));
        match schreyer_compare(ring, &sl, &sr) {
            Ordering::Greater => out.push(LabeledPoly {
                sig: sl,
                poly: tl.apply_poly(&p.poly),
            }),
            Ordering::Less => out.push(LabeledPoly {
                sig: sr,
                poly: tr.apply_poly(&q.poly),
            }),
            Ordering::Equal => {}
        }
    }
    out
}

/// Quotient search budget per cover or reduction test.
const QUOTIENT_CAP: usize = 64;

/// Whether `(sig, lead)` is covered: some `t * sig(g) = sig` with
/// `t * lm(g)` strictly below `lead`, or `sig` a multiple of a syzygy
/// signature.
pub fn is_covered(
    ring: &Ring,
    sig: &Signature,
    lead: &Monomial,
    basis: &[LabeledPoly],
    syzygies: &[Signature],
) -> bool {
    let divides = |s: &Signature| s.index == sig.index && s.image.degree() <= sig.image.degree();
    for s in syzygies.iter().filter(|s| divides(s)) {
        if !left_quotients(&s.tm, &sig.tm, 1).is_empty() {
            return true;
        }
    }
    for g in basis.iter().filter(|g| divides(&g.sig)) {
        let Ok(lg) = g.poly.lm() else { continue };
        for t in left_quotients(&g.sig.tm, &sig.tm, QUOTIENT_CAP) {
            if ring.compare(&t.apply(lg), lead).is_lt() {
                return true;
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopReduction {
    /// No regular top-reduction applies any more; the poly may be zero.
    Regular(LabeledPoly),
    /// A reducer with equal multiplied signature exists.
    Singular,
}

/// Regular top-reduction of `p` by `basis`; the signature is preserved.
pub fn regular_top_reduce(
    ring: &Ring,
    p: &LabeledPoly,
    basis: &[LabeledPoly],
    action: Action,
) -> TopReduction {
    let mut f = p.poly.clone();
    'outer: while let Ok(lf) = f.lm() {
        let lf = lf.clone();
        let mut singular = false;
        for g in basis {
            let Ok(lg) = g.poly.lm() else { continue };
            if lg.degree() > lf.degree() {
                continue;
            }
            for rho in action.divisor_witnesses(lg, &lf) {
                let cofactor = lf.quotient(&lg.act(&rho)).expect("witness divides");
                let t = TwistedMonomial::from_map(cofactor, rho);
                match schreyer_compare(ring, &g.sig.mul_left(&t), &p.sig) {
                    Ordering::Less => {
                        let ratio = f.lc().expect("nonzero") / g.poly.lc().expect("nonzero");
                        let sub = t.apply_poly(&g.poly).scale(&ratio);
                        f = f.sub(ring, &sub).expect("same ring");
                        continue 'outer;
                    }
                    Ordering::Equal => singular = true,
                    Ordering::Greater => {}
                }
            }
        }
        if singular {
            return TopReduction::Singular;
        }
        break;
    }
    TopReduction::Regular(LabeledPoly {
        sig: p.sig.clone(),
        poly: f,
    })
}

/// Schreyer-larger side of each commutation relation between distinct
/// generators.
pub fn principal_syzygies(ring: &Ring, generators: &[Polynomial]) -> Vec<Signature> {
    let heads: Vec<Monomial> = generators
        .iter()
        .map(|f| f.lm().expect("nonzero").clone())
        .collect();
    let mut out = Vec::new();
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            for (s, s2) in interlacings(generators[i].width(), generators[j].width()) {
                let a = Signature::unit(i, &heads[i])
                    .mul_left(&TwistedMonomial::from_map(heads[j].act(&s2), s.clone()));
                let b = Signature::unit(j, &heads[j])
                    .mul_left(&TwistedMonomial::from_map(heads[i].act(&s), s2));
                let larger = match schreyer_compare(ring, &a, &b) {
                    Ordering::Less => b,
                    _ => a,
                };
                if !out.contains(&larger) {
                    out.push(larger);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureOptions {
    pub principal_syzygies: bool,
    /// Turning the cover test off changes only the work done.
    pub cover: bool,
}

impl Default for SignatureOptions {
    fn default() -> Self {
        SignatureOptions {
            principal_syzygies: false,
            cover: true,
        }
    }
}

struct SigEngine<'r> {
    ring: &'r Ring,
    action: Action,
    opts: SignatureOptions,
    limits: EngineLimits,
    /// Lead monomials of the module generators `e_0 .. e_{r-1}`.
    heads: Vec<Monomial>,
    basis: Vec<LabeledPoly>,
    reducers: ReducerSet,
    syzygies: Vec<Signature>,
    /// Sorted descending, so the minimal signature is popped from the end.
    queue: Vec<LabeledPoly>,
    stats: Stats,
    grow_rank: bool,
}

impl<'r> SigEngine<'r> {
    fn enqueue(&mut self, j: LabeledPoly) {
        let ring = self.ring;
        match self
            .queue
            .binary_search_by(|q| schreyer_compare(ring, &j.sig, &q.sig))
        {
            Ok(_) => {}
            Err(pos) => self.queue.insert(pos, j),
        }
    }

    fn covered(&self, j: &LabeledPoly) -> bool {
        let Ok(lead) = j.poly.lm() else { return true };
        self.opts.cover && is_covered(self.ring, &j.sig, lead, &self.basis, &self.syzygies)
    }

    fn add_generator(&mut self, f: Polynomial) {
        let head = f.lm().expect("nonzero").clone();
        let sig = Signature::unit(self.heads.len(), &head);
        self.heads.push(head);
        self.enqueue(LabeledPoly { sig, poly: f });
    }

    fn insert(&mut self, p: LabeledPoly) -> Result<(), Limit> {
        if self.limits.max_basis.is_some_and(|m| self.basis.len() >= m) {
            return Err(Limit::Basis);
        }
        self.reducers.push(p.poly.clone());
        self.basis.push(p);
        self.stats.insertions += 1;
        let new = self.basis.len() - 1;
        for i in 0..=new {
            for j in j_pairs(
                self.ring,
                &self.basis[i],
                &self.basis[new],
                i == new,
                self.action,
            ) {
                if self.covered(&j) {
                    self.stats.covered_pairs += 1;
                } else {
                    self.enqueue(j);
                }
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), Limit> {
        loop {
            while let Some(p) = self.queue.pop() {
                let width = p.poly.lm().map_or(0, Monomial::width);
                if self.limits.max_width.is_some_and(|m| width > m) {
                    return Err(Limit::Width);
                }
                if self
                    .limits
                    .max_pairs
                    .is_some_and(|m| self.stats.pairs_processed >= m)
                {
                    return Err(Limit::Pairs);
                }
                self.stats.pairs_processed += 1;
                self.stats.max_pair_width = self.stats.max_pair_width.max(width);
                if self.covered(&p) {
                    self.stats.covered_pairs += 1;
                    continue;
                }
                let reduced = match regular_top_reduce(self.ring, &p, &self.basis, self.action) {
                    TopReduction::Singular => {
                        self.stats.singular_pairs += 1;
                        continue;
                    }
                    TopReduction::Regular(r) => r,
                };
                if reduced.poly.is_zero() {
                    self.stats.zero_reductions += 1;
                    self.syzygies.push(reduced.sig);
                    continue;
                }
                let mut entry = LabeledPoly {
                    sig: reduced.sig,
                    poly: reduced.poly.monic(),
                };
                if self.grow_rank {
                    let h = reduce_with(self.ring, &entry.poly, &self.reducers, false, None);
                    if h.is_zero() {
                        continue;
                    }
                    if h != entry.poly {
                        let h = h.monic();
                        let head = h.lm().expect("nonzero").clone();
                        entry = LabeledPoly {
                            sig: Signature::unit(self.heads.len(), &head),
                            poly: h,
                        };
                        self.heads.push(head);
                    }
                }
                self.insert(entry)?;
            }
            if !self.grow_rank {
                return Ok(());
            }
            // Closing check of the equivariant criterion; anything left over
            // re-enters as a fresh generator.
            match self.leftover() {
                Some(h) => {
                    self.stats.completions += 1;
                    self.add_generator(h.monic());
                }
                None => return Ok(()),
            }
        }
    }

    fn leftover(&self) -> Option<Polynomial> {
        let raw: Vec<Polynomial> = self.basis.iter().map(|p| p.poly.clone()).collect();
        let reduced = autoreduce(self.ring, &raw, self.action);
        if let Some(h) = criterion_violation(self.ring, &reduced, self.action) {
            return Some(h);
        }
        let reducers = ReducerSet::from_polys(self.action, &reduced);
        raw.iter()
            .map(|g| reduce_with(self.ring, g, &reducers, false, None))
            .find(|h| !h.is_zero())
    }
}

fn signature_engine<'r>(
    ring: &'r Ring,
    input: &[Polynomial],
    action: Action,
    opts: SignatureOptions,
    limits: EngineLimits,
    grow_rank: bool,
) -> Result<(SigEngine<'r>, Result<(), Limit>), Error> {
    let mut gens = Vec::new();
    for f in input {
        if f.ring_tag() != ring.tag() {
            return Err(Error::MixedRing);
        }
        if !f.is_zero() {
            gens.push(f.monic());
        }
    }
    let mut engine = SigEngine {
        ring,
        action,
        opts,
        limits,
        heads: Vec::new(),
        basis: Vec::new(),
        reducers: ReducerSet::new(action),
        syzygies: Vec::new(),
        queue: Vec::new(),
        stats: Stats::default(),
        grow_rank,
    };
    if opts.principal_syzygies && action == Action::Inc {
        engine.syzygies = principal_syzygies(ring, &gens);
    }
    for f in gens {
        engine.add_generator(f);
    }
    let outcome = engine.run();
    engine.stats.rank = engine.heads.len();
    Ok((engine, outcome))
}

fn status(outcome: Result<(), Limit>) -> Status {
    match outcome {
        Ok(()) => Status::Complete,
        Err(limit) => Status::BudgetExhausted(limit),
    }
}

/// Classical strong Buchberger over the variables of the input: returns the
/// labeled basis and the syzygy signatures.
pub fn strong_buchberger(
    ring: &Ring,
    input: &[Polynomial],
    limits: EngineLimits,
) -> Result<(Vec<LabeledPoly>, Vec<Signature>, Status), Error> {
    let opts = SignatureOptions::default();
    let (engine, outcome) = signature_engine(ring, input, Action::Trivial, opts, limits, false)?;
    Ok((engine.basis, engine.syzygies, status(outcome)))
}

/// Equivariant signature algorithm.
pub fn egb_signature(
    ring: &Ring,
    input: &[Polynomial],
    opts: SignatureOptions,
    limits: EngineLimits,
) -> Result<EgbResult, Error> {
    let (engine, outcome) = signature_engine(ring, input, Action::Inc, opts, limits, true)?;
    let raw: Vec<Polynomial> = engine.basis.iter().map(|p| p.poly.clone()).collect();
    Ok(EgbResult {
        basis: autoreduce(ring, &raw, Action::Inc),
        raw,
        stats: engine.stats,
        status: status(outcome),
    })
}

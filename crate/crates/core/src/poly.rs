//! Exact rational polynomials, Pi-reduction and Pi-normal forms.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::inc::IncMap;
use crate::monomial::{Monomial, Ring};

pub type Coeff = BigRational;

/// Which monoid acts on the variable indices.
///
/// `Trivial` turns every Pi-notion into its classical counterpart: divisibility
/// is plain divisibility and each pair has a single S-pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Inc,
    Trivial,
}

impl Action {
    /// Witness that `a` divides `b` up to the action.
    pub fn divisor_witness(self, a: &Monomial, b: &Monomial) -> Option<IncMap> {
        match self {
            Action::Inc => a.pi_divides(b),
            Action::Trivial => a.divides(b).then(IncMap::identity),
        }
    }

    pub fn divisor_witnesses(self, a: &Monomial, b: &Monomial) -> Vec<IncMap> {
        match self {
            Action::Inc => a.pi_div_witnesses(b),
            Action::Trivial => {
                if a.divides(b) {
                    alloc::vec![IncMap::identity()]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

/// Sparse polynomial with terms in strictly descending monomial order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coeff)>,
    width: usize,
    ring: u64,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{m:?}")?;
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            terms: Vec::new(),
            width: 0,
            ring: ring.tag(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Polynomial::term(ring, c, Monomial::one())
    }

    pub fn term(ring: &Ring, c: Coeff, m: Monomial) -> Self {
        Polynomial::from_terms(ring, alloc::vec![(m, c)])
    }

    /// Canonicalizes arbitrary terms: sorts, merges and drops zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        terms.sort_by(|a, b| ring.compare(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial::from_sorted(ring.tag(), merged)
    }

    fn from_sorted(ring: u64, terms: Vec<(Monomial, Coeff)>) -> Self {
        let width = terms.iter().map(|(m, _)| m.width()).max().unwrap_or(0);
        Polynomial { terms, width, ring }
    }

    pub fn ring_tag(&self) -> u64 {
        self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn lm(&self) -> Result<&Monomial, Error> {
        self.terms
            .first()
            .map(|t| &t.0)
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn lc(&self) -> Result<&Coeff, Error> {
        self.terms
            .first()
            .map(|t| &t.1)
            .ok_or(Error::ZeroPolynomial)
    }

    pub(crate) fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn check_ring(&self, ring: &Ring) -> Result<(), Error> {
        if self.ring == ring.tag() {
            Ok(())
        } else {
            Err(Error::MixedRing)
        }
    }

    pub fn add(&self, ring: &Ring, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_ring(ring)?;
        other.check_ring(ring)?;
        Ok(self.combine(ring, &Coeff::one(), &other.terms))
    }

    pub fn sub(&self, ring: &Ring, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_ring(ring)?;
        other.check_ring(ring)?;
        Ok(self.combine(ring, &-Coeff::one(), &other.terms))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial {
                terms: Vec::new(),
                width: 0,
                ring: self.ring,
            };
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
            width: self.width,
            ring: self.ring,
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Coeff::one())
    }

    /// `c * m * self`. Monomial orders respect multiplication, so the term
    /// order is kept without sorting.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return self.scale(c);
        }
        let terms: Vec<_> = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial::from_sorted(self.ring, terms)
    }

    pub fn mul(&self, ring: &Ring, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_ring(ring)?;
        other.check_ring(ring)?;
        let mut acc = Polynomial::zero(ring);
        for (m, c) in &other.terms {
            acc = acc.combine(ring, &Coeff::one(), &self.mul_term(c, m).terms);
        }
        Ok(acc)
    }

    pub fn pow(&self, ring: &Ring, e: u32) -> Result<Polynomial, Error> {
        let mut acc = Polynomial::constant(ring, Coeff::one());
        for _ in 0..e {
            acc = acc.mul(ring, self)?;
        }
        Ok(acc)
    }

    /// `rho · self`. Pi-respecting orders keep the term order.
    pub fn act(&self, rho: &IncMap) -> Polynomial {
        if rho.is_identity() {
            return self.clone();
        }
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.act(rho), c.clone()))
            .collect();
        Polynomial::from_sorted(self.ring, terms)
    }

    /// Scales so the lead coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// `self + k * other`, merging two descending term lists.
    fn combine(&self, ring: &Ring, k: &Coeff, other: &[(Monomial, Coeff)]) -> Polynomial {
        Polynomial::from_sorted(self.ring, merge_terms(ring, &self.terms, k, other))
    }

    /// `self - k * cofactor * (rho · g)`.
    fn subtract_multiple(
        &self,
        ring: &Ring,
        k: &Coeff,
        cofactor: &Monomial,
        rho: &IncMap,
        g: &Polynomial,
    ) -> Polynomial {
        Polynomial::from_sorted(
            self.ring,
            sub_multiple(ring, &self.terms, k, cofactor, rho, g),
        )
    }

    /// Largest coefficient denominator and numerator bit sizes, for stats.
    pub fn coefficient_bits(&self) -> u64 {
        self.terms
            .iter()
            .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PolyDisplay<'a> {
        PolyDisplay { ring, p: self }
    }
}

fn merge_terms(
    ring: &Ring,
    a: &[(Monomial, Coeff)],
    k: &Coeff,
    b: &[(Monomial, Coeff)],
) -> Vec<(Monomial, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.compare(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), &b[j].1 * k));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1 * k;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), c * k)));
    out
}

/// `terms - k * cofactor * (rho · g)` on descending term lists.
pub(crate) fn sub_multiple(
    ring: &Ring,
    terms: &[(Monomial, Coeff)],
    k: &Coeff,
    cofactor: &Monomial,
    rho: &IncMap,
    g: &Polynomial,
) -> Vec<(Monomial, Coeff)> {
    let shifted: Vec<(Monomial, Coeff)> = g
        .terms
        .iter()
        .map(|(m, c)| (m.act(rho).mul(cofactor), c.clone()))
        .collect();
    merge_terms(ring, terms, &-k.clone(), &shifted)
}

/// Canonical text: descending terms, `name[i,j]` variables, `*` and `^`.
pub struct PolyDisplay<'a> {
    ring: &'a Ring,
    p: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.p.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", self.ring.display(m))?;
            }
        }
        Ok(())
    }
}

/// One reduction `f <- f - ratio * cofactor * (witness · G[reducer])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub reducer: usize,
    pub witness: IncMap,
    pub cofactor: Monomial,
    pub ratio: Coeff,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    /// Re-applies every step to `f`.
    pub fn replay(&self, ring: &Ring, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
        self.steps.iter().fold(f.clone(), |acc, s| {
            acc.subtract_multiple(ring, &s.ratio, &s.cofactor, &s.witness, &basis[s.reducer])
        })
    }
}

/// Reducers with their lead monomials precomputed, searched in insertion
/// order.
#[derive(Debug, Clone)]
pub struct ReducerSet {
    action: Action,
    polys: Vec<Polynomial>,
    // (lead degree, lead factor count) for quick rejection.
    keys: Vec<(u32, usize)>,
}

impl ReducerSet {
    pub fn new(action: Action) -> Self {
        ReducerSet {
            action,
            polys: Vec::new(),
            keys: Vec::new(),
        }
    }

    pub fn from_polys(action: Action, polys: &[Polynomial]) -> Self {
        let mut set = ReducerSet::new(action);
        for p in polys {
            set.push(p.clone());
        }
        set
    }

    pub fn action(&self) -> Action {
        self.action
    }

    /// Adds a reducer. Zero polynomials are kept as placeholders so indices
    /// stay aligned with the caller's list, but never reduce anything.
    pub fn push(&mut self, p: Polynomial) {
        let key = match p.terms.first() {
            Some((m, _)) => (m.degree(), m.factors().len()),
            None => (u32::MAX, usize::MAX),
        };
        self.keys.push(key);
        self.polys.push(p);
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// First reducer (in insertion order) whose lead divides `m` up to the
    /// action, with its smallest witness.
    pub fn find(&self, m: &Monomial) -> Option<(usize, IncMap)> {
        self.find_excluding(m, None)
    }

    pub fn find_excluding(&self, m: &Monomial, skip: Option<usize>) -> Option<(usize, IncMap)> {
        let (deg, nf) = (m.degree(), m.factors().len());
        for (i, g) in self.polys.iter().enumerate() {
            let (gd, gn) = self.keys[i];
            if gd > deg || gn > nf || Some(i) == skip {
                continue;
            }
            if let Some(w) = self.action.divisor_witness(g.lead(), m) {
                return Some((i, w));
            }
        }
        None
    }
}

/// One Pi-reduction of the lead term of `f` by `g`, if `lm(g) |_Pi lm(f)`.
pub fn pi_reduce_step(
    ring: &Ring,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Option<Polynomial>, Error> {
    f.check_ring(ring)?;
    g.check_ring(ring)?;
    let (lf, lg) = (f.lm()?, g.lm()?);
    let Some(rho) = lg.pi_divides(lf) else {
        return Ok(None);
    };
    let cofactor = lf.quotient(&lg.act(&rho))?;
    let ratio = f.lc()? / g.lc()?;
    Ok(Some(f.subtract_multiple(ring, &ratio, &cofactor, &rho, g)))
}

/// Fully reduced Pi-normal form of `f` modulo `basis`, with a replayable trace.
pub fn normal_form(
    ring: &Ring,
    f: &Polynomial,
    basis: &[Polynomial],
) -> (Polynomial, ReductionTrace) {
    let reducers = ReducerSet::from_polys(Action::Inc, basis);
    let mut trace = ReductionTrace::default();
    let nf = reduce_with(ring, f, &reducers, true, Some(&mut trace));
    (nf, trace)
}

/// Normal form against a prepared reducer set. With `full = false` only the
/// lead term is reduced.
pub fn reduce_with(
    ring: &Ring,
    f: &Polynomial,
    reducers: &ReducerSet,
    full: bool,
    mut trace: Option<&mut ReductionTrace>,
) -> Polynomial {
    let mut terms = f.terms.clone();
    // terms[..pos] are irreducible and larger than everything after them.
    let mut pos = 0;
    while pos < terms.len() {
        let Some((i, rho)) = reducers.find(&terms[pos].0) else {
            if !full {
                break;
            }
            pos += 1;
            continue;
        };
        let g = &reducers.polys[i];
        let cofactor = terms[pos]
            .0
            .quotient(&g.lead().act(&rho))
            .expect("witness makes the shifted lead divide");
        let ratio = &terms[pos].1 / &g.terms[0].1;
        let tail = sub_multiple(ring, &terms[pos..], &ratio, &cofactor, &rho, g);
        terms.truncate(pos);
        terms.extend(tail);
        if let Some(t) = trace.as_deref_mut() {
            t.steps.push(ReductionStep {
                reducer: i,
                witness: rho,
                cofactor,
                ratio,
            });
        }
    }
    Polynomial::from_sorted(f.ring, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Constraint, FamilySpec, OrderSpec};
    use alloc::vec;
    use num_bigint::BigInt;

    fn ring() -> Ring {
        Ring::new(
            vec![
                FamilySpec::new("x", 1),
                FamilySpec::new("y", 2).constraint(Constraint::StrictlyDecreasing),
            ],
            OrderSpec::lex(),
        )
        .unwrap()
    }

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(BigInt::from(n))
    }

    fn x(r: &Ring, i: u32) -> Monomial {
        r.var_monomial("x", &[i]).unwrap()
    }

    fn y(r: &Ring, i: u32, j: u32) -> Monomial {
        r.var_monomial("y", &[i, j]).unwrap()
    }

    fn poly(r: &Ring, terms: &[(i64, Monomial)]) -> Polynomial {
        Polynomial::from_terms(r, terms.iter().map(|(c, m)| (m.clone(), q(*c))).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let r = ring();
        let f = poly(&r, &[(1, x(&r, 0)), (1, Monomial::one())]);
        assert_eq!(f.add(&r, &Polynomial::zero(&r)).unwrap(), f);
        assert!(f.sub(&r, &f).unwrap().is_zero());
        let g = f.mul_term(&q(1), &x(&r, 1));
        assert_eq!(g, poly(&r, &[(1, x(&r, 0).mul(&x(&r, 1))), (1, x(&r, 1))]));
        assert_eq!(g.width(), 2);
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let r = ring();
        let other = Ring::new(vec![FamilySpec::new("z", 1)], OrderSpec::lex()).unwrap();
        let f = Polynomial::term(&r, q(1), x(&r, 0));
        let g = Polynomial::term(&other, q(1), other.var_monomial("z", &[0]).unwrap());
        assert_eq!(f.add(&r, &g), Err(Error::MixedRing));
    }

    #[test]
    fn leading_data() {
        let r = ring();
        // x0*x1 - x1*x2^2 + x1^2: lex with x0 < x1 < x2 puts x1*x2^2 first.
        let lead = x(&r, 1).mul(&x(&r, 2)).mul(&x(&r, 2));
        let f = poly(
            &r,
            &[
                (1, x(&r, 0).mul(&x(&r, 1))),
                (-1, lead.clone()),
                (1, x(&r, 1).mul(&x(&r, 1))),
            ],
        );
        assert_eq!(f.lm().unwrap(), &lead);
        assert_eq!(f.lc().unwrap(), &q(-1));
        let single = poly(&r, &[(3, y(&r, 1, 0))]);
        assert_eq!(
            (single.lm().unwrap(), single.lc().unwrap()),
            (&y(&r, 1, 0), &q(3))
        );
        assert_eq!(Polynomial::zero(&r).lm(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn reduce_step_examples() {
        let r = ring();
        let f = poly(&r, &[(1, x(&r, 2).mul(&x(&r, 3)))]);
        let g = poly(&r, &[(1, x(&r, 0).mul(&x(&r, 1)))]);
        assert!(pi_reduce_step(&r, &f, &g).unwrap().unwrap().is_zero());

        let f = poly(&r, &[(1, x(&r, 0).mul(&x(&r, 0)))]);
        assert_eq!(pi_reduce_step(&r, &f, &g).unwrap(), None);

        // f = x2*y10, g = x0*x1 - y10 (lead x0*x1 since x > y).
        let f = poly(&r, &[(1, x(&r, 2).mul(&y(&r, 1, 0)))]);
        let g = poly(&r, &[(1, x(&r, 0).mul(&x(&r, 1))), (-1, y(&r, 1, 0))]);
        assert_eq!(g.lm().unwrap(), &x(&r, 0).mul(&x(&r, 1)));
        // x0*x1 cannot reach x2*y10 (needs two x's).
        assert_eq!(pi_reduce_step(&r, &f, &g).unwrap(), None);
        // f = 2*x1*x3*y10: witness 0->1, 1->3 gives f - 2*y10*(x1*x3 - y31).
        let f = poly(&r, &[(2, x(&r, 1).mul(&x(&r, 3)).mul(&y(&r, 1, 0)))]);
        let h = pi_reduce_step(&r, &f, &g).unwrap().unwrap();
        assert_eq!(h, poly(&r, &[(2, y(&r, 3, 1).mul(&y(&r, 1, 0)))]));
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let g = poly(&r, &[(1, x(&r, 0).mul(&x(&r, 1))), (-1, y(&r, 1, 0))]);
        let (nf, trace) = normal_form(&r, &Polynomial::zero(&r), &[g.clone()]);
        assert!(nf.is_zero() && trace.steps.is_empty());
        let (nf, _) = normal_form(&r, &g, &[g.clone()]);
        assert!(nf.is_zero());

        // Tail reduction: y31 + x1*x3 reduces in both terms.
        let f = poly(
            &r,
            &[(1, x(&r, 1).mul(&x(&r, 3))), (5, x(&r, 0).mul(&x(&r, 2)))],
        );
        let (nf, trace) = normal_form(&r, &f, &[g.clone()]);
        assert_eq!(nf, poly(&r, &[(1, y(&r, 3, 1)), (5, y(&r, 2, 0))]));
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.replay(&r, &f, &[g]), nf);
    }

    #[test]
    fn display_is_canonical() {
        let r = ring();
        let f = poly(
            &r,
            &[
                (-1, y(&r, 1, 0)),
                (1, x(&r, 0).mul(&x(&r, 1))),
                (-3, Monomial::one()),
            ],
        );
        assert_eq!(
            alloc::format!("{}", f.display(&r)),
            "x[1]*x[0] - y[1,0] - 3"
        );
        let h = Polynomial::term(&r, Coeff::new(BigInt::from(-1), BigInt::from(2)), x(&r, 0));
        assert_eq!(alloc::format!("{}", h.display(&r)), "-1/2*x[0]");
    }
}

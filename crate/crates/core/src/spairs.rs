//! Finite generating sets of S-pair modules via interlacings.
//!
//! Any pair `(rho1 · f, rho2 · g)` is an Inc-shift of a pair whose two maps
//! jointly cover an initial segment `0..k`, so enumerating those
//! "interlacings" and taking the classical S-pair of each instantiated pair
//! generates all S-pairs.

use alloc::vec::Vec;

use num_traits::One;

use crate::inc::{IncMap, Index};
use crate::monomial::{Monomial, Ring};
use crate::poly::{sub_multiple, Action, Coeff, Polynomial};

/// Twisted multiplier `cofactor * map` applied to a source polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiplier {
    pub cofactor: Monomial,
    pub map: IncMap,
    pub source: usize,
}

impl Multiplier {
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        p.act(&self.map).mul_term(&Coeff::one(), &self.cofactor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SPairGen {
    pub left: Multiplier,
    pub right: Multiplier,
    /// Common lead monomial of both sides.
    pub overlap: Monomial,
}

impl SPairGen {
    /// `left·f / lc(f) - right·g / lc(g)`.
    pub fn spoly(&self, ring: &Ring, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let lf = self.left.apply(f).monic();
        let kg = g.lc().expect("nonzero").recip();
        let rest = sub_multiple(
            ring,
            lf.terms(),
            &kg,
            &self.right.cofactor,
            &self.right.map,
            g,
        );
        Polynomial::from_terms(ring, rest)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SPairOptions {
    /// Drop generators whose instantiated leads are coprime.
    pub coprime_filter: bool,
}

impl Default for SPairOptions {
    fn default() -> Self {
        SPairOptions {
            coprime_filter: true,
        }
    }
}

/// All pairs of increasing maps `0..wf -> 0..k`, `0..wg -> 0..k` whose images
/// together are exactly `0..k`, for `max(wf, wg) <= k <= wf + wg`.
pub fn interlacings(wf: usize, wg: usize) -> Vec<(IncMap, IncMap)> {
    let mut out = Vec::new();
    let mut a = Vec::with_capacity(wf);
    let mut b = Vec::with_capacity(wg);
    interlace(wf, wg, 0, &mut a, &mut b, &mut out);
    out
}

fn interlace(
    wf: usize,
    wg: usize,
    next: Index,
    a: &mut Vec<Index>,
    b: &mut Vec<Index>,
    out: &mut Vec<(IncMap, IncMap)>,
) {
    let (ra, rb) = (a.len() < wf, b.len() < wg);
    if !ra && !rb {
        let fa = IncMap::from_values(a.clone()).expect("increasing");
        let fb = IncMap::from_values(b.clone()).expect("increasing");
        out.push((fa, fb));
        return;
    }
    // The value `next` is hit by f only, by both, or by g only.
    if ra {
        a.push(next);
        interlace(wf, wg, next + 1, a, b, out);
        a.pop();
    }
    if ra && rb {
        a.push(next);
        b.push(next);
        interlace(wf, wg, next + 1, a, b, out);
        a.pop();
        b.pop();
    }
    if rb {
        b.push(next);
        interlace(wf, wg, next + 1, a, b, out);
        b.pop();
    }
}

/// One generator per interlacing of `(f, g)`. For `f_id == g_id` the diagonal
/// interlacing (zero S-polynomial) is skipped.
pub fn spair_generators(
    f: &Polynomial,
    f_id: usize,
    g: &Polynomial,
    g_id: usize,
    action: Action,
    opts: SPairOptions,
) -> Vec<SPairGen> {
    let (Ok(lf), Ok(lg)) = (f.lm(), g.lm()) else {
        return Vec::new();
    };
    let maps = match action {
        Action::Inc => interlacings(f.width(), g.width()),
        Action::Trivial => alloc::vec![(IncMap::identity(), IncMap::identity())],
    };
    let mut out = Vec::new();
    for (s1, s2) in maps {
        if f_id == g_id && s1 == s2 {
            continue;
        }
        let (l1, l2) = (lf.act(&s1), lg.act(&s2));
        if opts.coprime_filter && l1.is_coprime(&l2) {
            continue;
        }
        let overlap = l1.lcm(&l2);
        let left = Multiplier {
            cofactor: overlap.quotient(&l1).expect("lcm is a multiple"),
            map: s1,
            source: f_id,
        };
        let right = Multiplier {
            cofactor: overlap.quotient(&l2).expect("lcm is a multiple"),
            map: s2,
            source: g_id,
        };
        out.push(SPairGen {
            left,
            right,
            overlap,
        });
    }
    out
}

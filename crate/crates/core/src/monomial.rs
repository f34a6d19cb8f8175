//! Indexed variable families, monomials and Inc-respecting monomial orders.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::inc::{IncMap, Index};

/// Largest supported number of indices per variable.
pub const MAX_ARITY: usize = 4;

/// Restriction on the index tuple of a family's variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    None,
    StrictlyDecreasing,
    StrictlyIncreasing,
    AllDistinct,
}

impl Constraint {
    pub fn tag(self) -> &'static str {
        match self {
            Constraint::None => "none",
            Constraint::StrictlyDecreasing => "strictly_decreasing",
            Constraint::StrictlyIncreasing => "strictly_increasing",
            Constraint::AllDistinct => "all_distinct",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "none" => Constraint::None,
            "strictly_decreasing" => Constraint::StrictlyDecreasing,
            "strictly_increasing" => Constraint::StrictlyIncreasing,
            "all_distinct" => Constraint::AllDistinct,
            _ => return None,
        })
    }

    pub fn admits(self, idx: &[Index]) -> bool {
        match self {
            Constraint::None => true,
            Constraint::StrictlyDecreasing => idx.windows(2).all(|w| w[0] > w[1]),
            Constraint::StrictlyIncreasing => idx.windows(2).all(|w| w[0] < w[1]),
            Constraint::AllDistinct => idx
                .iter()
                .enumerate()
                .all(|(i, a)| idx[i + 1..].iter().all(|b| a != b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub name: String,
    pub arity: usize,
    pub constraint: Constraint,
    pub weight: u32,
}

impl FamilySpec {
    pub fn new(name: &str, arity: usize) -> Self {
        FamilySpec {
            name: name.to_string(),
            arity,
            constraint: Constraint::None,
            weight: 1,
        }
    }

    pub fn constraint(mut self, constraint: Constraint) -> Self {
        self.constraint = constraint;
        self
    }

    pub fn weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrLex,
}

impl OrderKind {
    pub fn tag(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::GrLex => "grlex",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "lex" => Some(OrderKind::Lex),
            "grlex" => Some(OrderKind::GrLex),
            _ => None,
        }
    }
}

/// Monomial order description. `precedence` lists family names from the
/// largest family to the smallest; empty means declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderSpec {
    pub kind: OrderKind,
    pub precedence: Vec<String>,
    pub use_weights: bool,
}

impl OrderSpec {
    pub fn lex() -> Self {
        OrderSpec {
            kind: OrderKind::Lex,
            precedence: Vec::new(),
            use_weights: false,
        }
    }

    pub fn grlex() -> Self {
        OrderSpec {
            kind: OrderKind::GrLex,
            ..OrderSpec::lex()
        }
    }

    pub fn with_precedence(mut self, names: &[&str]) -> Self {
        self.precedence = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn weighted(mut self, on: bool) -> Self {
        self.use_weights = on;
        self
    }
}

/// A variable `name[i_1, ..., i_k]`.
///
/// `rank` encodes family precedence (larger rank = larger variable), so the
/// derived ordering is the lex variable order: family first, then the index
/// tuple lexicographically. Unused index slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    rank: u16,
    arity: u8,
    idx: [Index; MAX_ARITY],
}

impl Var {
    pub fn rank(&self) -> u16 {
        self.rank
    }

    pub fn indices(&self) -> &[Index] {
        &self.idx[..self.arity as usize]
    }

    pub fn max_index(&self) -> Index {
        self.indices().iter().copied().max().unwrap_or(0)
    }

    fn act(&self, rho: &IncMap) -> Var {
        let mut out = *self;
        for slot in &mut out.idx[..self.arity as usize] {
            *slot = rho.apply(*slot);
        }
        out
    }

    fn with_indices(&self, f: impl Fn(Index) -> Index) -> Var {
        let mut out = *self;
        for slot in &mut out.idx[..self.arity as usize] {
            *slot = f(*slot);
        }
        out
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}{:?}", self.rank, self.indices())
    }
}

/// Element of the free commutative monoid on the variables. Factors are kept
/// sorted by descending variable with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v:?}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs.
    pub fn from_factors(mut factors: Vec<(Var, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn var(v: Var) -> Self {
        Monomial {
            factors: alloc::vec![(v, 1)],
        }
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// One plus the largest index occurring; 0 for the unit.
    pub fn width(&self) -> usize {
        self.factors
            .iter()
            .map(|(v, _)| v.max_index() as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        // Factors are sorted descending.
        match self.factors.binary_search_by(|(w, _)| v.cmp(w)) {
            Ok(pos) => self.factors[pos].1,
            Err(_) => 0,
        }
    }

    /// `rho · self`, replacing every index `i` by `rho(i)`.
    pub fn act(&self, rho: &IncMap) -> Monomial {
        if rho.is_identity() {
            return self.clone();
        }
        // Increasing maps preserve the tuple order, so the result stays sorted.
        Monomial {
            factors: self.factors.iter().map(|&(v, e)| (v.act(rho), e)).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(v, k)| (*v, k * e)).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.factors.len() > other.factors.len() {
            return false;
        }
        let mut j = 0;
        for &(v, e) in &self.factors {
            while j < other.factors.len() && other.factors[j].0 > v {
                j += 1;
            }
            if j == other.factors.len() || other.factors[j].0 != v || other.factors[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / divisor`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial, Error> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            if j < divisor.factors.len() && divisor.factors[j].0 == v {
                let d = divisor.factors[j].1;
                if d > e {
                    return Err(Error::NotDivisible);
                }
                if e > d {
                    out.push((v, e - d));
                }
                j += 1;
            } else {
                if j < divisor.factors.len() && divisor.factors[j].0 > v {
                    return Err(Error::NotDivisible);
                }
                out.push((v, e));
            }
        }
        if j < divisor.factors.len() {
            return Err(Error::NotDivisible);
        }
        Ok(Monomial { factors: out })
    }

    fn merge_with(
        &self,
        other: &Monomial,
        pick: fn(u32, u32) -> u32,
        keep_single: bool,
    ) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    if keep_single {
                        out.push(a[i]);
                    }
                    i += 1;
                }
                Ordering::Less => {
                    if keep_single {
                        out.push(b[j]);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, pick(a[i].1, b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { factors: out }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, core::cmp::max, true)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, core::cmp::min, false)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for (v, _) in &self.factors {
            while j < other.factors.len() && other.factors[j].0 > *v {
                j += 1;
            }
            if j < other.factors.len() && other.factors[j].0 == *v {
                return false;
            }
        }
        true
    }

    /// Distinct indices occurring in the monomial, ascending.
    pub fn support(&self) -> Vec<Index> {
        let mut s: Vec<Index> = self
            .factors
            .iter()
            .flat_map(|(v, _)| v.indices().iter().copied())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Some `rho` with `rho · self` dividing `other`, choosing the witness whose
    /// image sequence is lexicographically smallest.
    pub fn pi_divides(&self, other: &Monomial) -> Option<IncMap> {
        let mut found = None;
        pi_search(self, other, &mut |w| {
            found = Some(w);
            true
        });
        found
    }

    /// Every witness of `self |_Pi other`, in lexicographic order of images.
    pub fn pi_div_witnesses(&self, other: &Monomial) -> Vec<IncMap> {
        let mut out = Vec::new();
        pi_search(self, other, &mut |w| {
            out.push(w);
            false
        });
        out
    }

    /// Cheap necessary condition for `self |_Pi other`.
    pub fn may_pi_divide(&self, other: &Monomial) -> bool {
        self.factors.len() <= other.factors.len() && self.degree() <= other.degree()
    }
}

/// Depth-first search over increasing assignments of `a`'s support indices
/// into `b`'s support indices. The callback returns `true` to stop.
fn pi_search(a: &Monomial, b: &Monomial, visit: &mut dyn FnMut(IncMap) -> bool) {
    if a.is_one() {
        visit(IncMap::identity());
        return;
    }
    if !a.may_pi_divide(b) {
        return;
    }
    let sa = a.support();
    let sb = b.support();
    if sa.len() > sb.len() {
        return;
    }
    // Variables of `a`, bucketed by the position (in `sa`) of their largest
    // index: once that position is assigned, the variable's image is fixed.
    let mut ready: Vec<Vec<usize>> = alloc::vec![Vec::new(); sa.len()];
    for (k, (v, _)) in a.factors.iter().enumerate() {
        let top = v.max_index();
        let pos = sa
            .binary_search(&top)
            .expect("support contains every index");
        ready[pos].push(k);
    }
    let mut image: Vec<Index> = Vec::with_capacity(sa.len());
    let mut ctx = Search {
        a,
        b,
        sa: &sa,
        sb: &sb,
        ready: &ready,
        visit,
        stop: false,
    };
    ctx.go(&mut image, 0);
}

struct Search<'a, 'v> {
    a: &'a Monomial,
    b: &'a Monomial,
    sa: &'a [Index],
    sb: &'a [Index],
    ready: &'a [Vec<usize>],
    visit: &'v mut dyn FnMut(IncMap) -> bool,
    stop: bool,
}

impl Search<'_, '_> {
    fn go(&mut self, image: &mut Vec<Index>, start: usize) {
        let k = image.len();
        if k == self.sa.len() {
            let map = witness_map(self.sa, image);
            self.stop = (self.visit)(map);
            return;
        }
        // Leave room for the remaining support points.
        let remaining = self.sa.len() - k - 1;
        for t in start..self.sb.len() - remaining {
            let target = self.sb[t];
            let ok_gap = match k {
                0 => target >= self.sa[0],
                _ => target - image[k - 1] >= self.sa[k] - self.sa[k - 1],
            };
            if !ok_gap {
                continue;
            }
            image.push(target);
            if self.fits(image, k) {
                self.go(image, t + 1);
            }
            image.pop();
            if self.stop {
                return;
            }
        }
    }

    fn fits(&self, image: &[Index], k: usize) -> bool {
        self.ready[k].iter().all(|&f| {
            let (v, e) = self.a.factors[f];
            let mapped = v.with_indices(|i| {
                let pos = self.sa.binary_search(&i).expect("index in support");
                image[pos]
            });
            self.b.exponent(&mapped) >= e
        })
    }
}

fn witness_map(sa: &[Index], image: &[Index]) -> IncMap {
    let width = *sa.last().expect("nonempty support") as usize + 1;
    let mut values = Vec::with_capacity(width);
    let mut next_support = 0;
    for j in 0..width as Index {
        if next_support < sa.len() && sa[next_support] == j {
            values.push(image[next_support]);
            next_support += 1;
        } else {
            let v = values.last().map_or(0, |p: &Index| p + 1);
            values.push(v);
        }
    }
    IncMap::from_values(values).expect("gap conditions keep the witness increasing")
}

/// Families, precedence and the monomial order: everything needed to build
/// and compare monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    families: Vec<FamilySpec>,
    order: OrderSpec,
    /// `rank_of[f]` for family `f` in declaration order.
    rank_of: Vec<u16>,
    /// Family for each rank.
    family_of_rank: Vec<usize>,
    tag: u64,
}

impl Ring {
    pub fn new(families: Vec<FamilySpec>, order: OrderSpec) -> Result<Ring, Error> {
        if families.is_empty() {
            return Err(Error::InvalidFamily(
                "a ring needs at least one family".into(),
            ));
        }
        for (i, f) in families.iter().enumerate() {
            if f.name.is_empty() {
                return Err(Error::InvalidFamily("empty family name".into()));
            }
            if f.arity == 0 || f.arity > MAX_ARITY {
                return Err(Error::InvalidFamily(alloc::format!(
                    "family {} has arity {}, supported range is 1..={MAX_ARITY}",
                    f.name,
                    f.arity
                )));
            }
            if f.weight == 0 {
                return Err(Error::InvalidFamily(alloc::format!(
                    "family {} has weight 0",
                    f.name
                )));
            }
            if families[..i].iter().any(|g| g.name == f.name) {
                return Err(Error::InvalidFamily(alloc::format!(
                    "family {} declared twice",
                    f.name
                )));
            }
        }
        let n = families.len();
        let precedence: Vec<usize> = if order.precedence.is_empty() {
            (0..n).collect()
        } else {
            if order.precedence.len() != n {
                return Err(Error::InvalidOrder(
                    "precedence must list every family exactly once".into(),
                ));
            }
            let mut seen = alloc::vec![false; n];
            let mut out = Vec::with_capacity(n);
            for name in &order.precedence {
                let f = families
                    .iter()
                    .position(|f| &f.name == name)
                    .ok_or_else(|| Error::InvalidOrder(alloc::format!("unknown family {name}")))?;
                if seen[f] {
                    return Err(Error::InvalidOrder(alloc::format!(
                        "family {name} listed twice"
                    )));
                }
                seen[f] = true;
                out.push(f);
            }
            out
        };
        let mut rank_of = alloc::vec![0u16; n];
        let mut family_of_rank = alloc::vec![0usize; n];
        for (pos, &f) in precedence.iter().enumerate() {
            let rank = (n - 1 - pos) as u16;
            rank_of[f] = rank;
            family_of_rank[rank as usize] = f;
        }
        let mut ring = Ring {
            families,
            order,
            rank_of,
            family_of_rank,
            tag: 0,
        };
        ring.tag = ring.fingerprint();
        Ok(ring)
    }

    fn fingerprint(&self) -> u64 {
        // FNV-1a over a textual description; identical declarations give
        // identical tags.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for f in &self.families {
            eat(f.name.as_bytes());
            eat(&[f.arity as u8, 0xff]);
            eat(f.constraint.tag().as_bytes());
            eat(&f.weight.to_le_bytes());
        }
        eat(self.order.kind.tag().as_bytes());
        eat(&self
            .rank_of
            .iter()
            .flat_map(|r| r.to_le_bytes())
            .collect::<Vec<_>>());
        eat(&[self.order.use_weights as u8]);
        h
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn families(&self) -> &[FamilySpec] {
        &self.families
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    /// Family names from the largest to the smallest.
    pub fn precedence(&self) -> Vec<&str> {
        (0..self.families.len())
            .rev()
            .map(|r| self.families[self.family_of_rank[r]].name.as_str())
            .collect()
    }

    pub fn family_index(&self, name: &str) -> Option<usize> {
        self.families.iter().position(|f| f.name == name)
    }

    pub fn family_of(&self, v: &Var) -> &FamilySpec {
        &self.families[self.family_of_rank[v.rank as usize]]
    }

    pub fn var(&self, family: usize, indices: &[Index]) -> Result<Var, Error> {
        let spec = self
            .families
            .get(family)
            .ok_or_else(|| Error::InvalidVariable(alloc::format!("no family #{family}")))?;
        if indices.len() != spec.arity {
            return Err(Error::InvalidVariable(alloc::format!(
                "{} takes {} indices, got {}",
                spec.name,
                spec.arity,
                indices.len()
            )));
        }
        if !spec.constraint.admits(indices) {
            return Err(Error::InvalidVariable(alloc::format!(
                "{}{:?} violates constraint {}",
                spec.name,
                indices,
                spec.constraint.tag()
            )));
        }
        let mut idx = [0; MAX_ARITY];
        idx[..indices.len()].copy_from_slice(indices);
        Ok(Var {
            rank: self.rank_of[family],
            arity: spec.arity as u8,
            idx,
        })
    }

    /// Shorthand for `var` by family name, producing a degree-one monomial.
    pub fn var_monomial(&self, name: &str, indices: &[Index]) -> Result<Monomial, Error> {
        let f = self
            .family_index(name)
            .ok_or_else(|| Error::InvalidVariable(alloc::format!("unknown family {name}")))?;
        Ok(Monomial::var(self.var(f, indices)?))
    }

    fn var_weight(&self, v: &Var) -> u32 {
        if self.order.use_weights {
            self.family_of(v).weight
        } else {
            1
        }
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.factors
            .iter()
            .map(|(v, e)| self.var_weight(v) as u64 * *e as u64)
            .sum()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.order.kind == OrderKind::GrLex {
            let by_degree = self.weighted_degree(a).cmp(&self.weighted_degree(b));
            if by_degree != Ordering::Equal {
                return by_degree;
            }
        }
        lex_compare(a, b)
    }

    /// Whether smaller width always means smaller monomial. This holds for lex
    /// on a single family whose first index is its largest.
    pub fn is_width_order(&self) -> bool {
        self.order.kind == OrderKind::Lex
            && self.families.len() == 1
            && (self.families[0].arity == 1
                || self.families[0].constraint == Constraint::StrictlyDecreasing)
    }

    pub fn display<'a>(&'a self, m: &'a Monomial) -> MonomialDisplay<'a> {
        MonomialDisplay { ring: self, m }
    }
}

fn lex_compare(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.factors.iter().zip(&b.factors) {
        match x.0.cmp(&y.0) {
            Ordering::Equal => match x.1.cmp(&y.1) {
                Ordering::Equal => continue,
                other => return other,
            },
            other => return other,
        }
    }
    a.factors.len().cmp(&b.factors.len())
}

/// Renders a monomial as `x[1]*y[2,0]^2`.
pub struct MonomialDisplay<'a> {
    ring: &'a Ring,
    m: &'a Monomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.m.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(&self.ring.family_of(v).name)?;
            f.write_str("[")?;
            for (i, idx) in v.indices().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{idx}")?;
            }
            f.write_str("]")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

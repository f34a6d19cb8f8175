//! Property checks shared by the test suites.

use egb_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn toric_ring(order: OrderSpec) -> Ring {
    Ring::new(
        vec![
            FamilySpec::new("x", 1),
            FamilySpec::new("y", 2)
                .constraint(Constraint::StrictlyDecreasing)
                .weight(2),
        ],
        order,
    )
    .unwrap()
}

fn xring() -> Ring {
    Ring::new(vec![FamilySpec::new("x", 1)], OrderSpec::lex()).unwrap()
}

fn rings() -> Vec<Ring> {
    vec![
        toric_ring(OrderSpec::lex()),
        toric_ring(OrderSpec::grlex()),
        toric_ring(OrderSpec::grlex().weighted(true)),
        toric_ring(OrderSpec::lex().with_precedence(&["y", "x"])),
    ]
}

/// A variable of the toric ring: `x[i]` or `y[i, j]` with `i > j`.
fn var_spec(max: u32) -> impl Strategy<Value = (bool, u32, u32)> {
    (any::<bool>(), 0..max, 0..max).prop_map(|(is_x, a, b)| {
        if is_x || a == b {
            (true, a, 0)
        } else {
            (false, a.max(b), a.min(b))
        }
    })
}

fn monomial_spec(
    max_index: u32,
    max_factors: usize,
) -> impl Strategy<Value = Vec<((bool, u32, u32), u32)>> {
    prop::collection::vec((var_spec(max_index), 1u32..3), 0..=max_factors)
}

fn build(r: &Ring, spec: &[((bool, u32, u32), u32)]) -> Monomial {
    spec.iter()
        .fold(Monomial::one(), |acc, &((is_x, a, b), e)| {
            let v = if is_x {
                r.var_monomial("x", &[a]).unwrap()
            } else {
                r.var_monomial("y", &[a, b]).unwrap()
            };
            acc.mul(&v.pow(e))
        })
}

fn map_spec() -> impl Strategy<Value = IncMap> {
    prop::collection::btree_set(0u32..12, 0..5)
        .prop_map(|s| IncMap::from_values(s.into_iter().collect()).unwrap())
}

fn poly_spec(max_index: u32) -> impl Strategy<Value = Vec<(i64, Vec<((bool, u32, u32), u32)>)>> {
    prop::collection::vec((-3i64..=3, monomial_spec(max_index, 3)), 1..5)
}

fn build_poly(r: &Ring, spec: &[(i64, Vec<((bool, u32, u32), u32)>)]) -> Polynomial {
    Polynomial::from_terms(
        r,
        spec.iter()
            .map(|(c, m)| (build(r, m), Coeff::from_integer(BigInt::from(*c))))
            .collect(),
    )
}

/// Brute-force Pi-divisibility: some increasing map on `0..w(a)` into
/// `0..w(b)` sends `a` to a divisor of `b`.
fn brute_pi_divides(a: &Monomial, b: &Monomial) -> bool {
    if a.width() > b.width() {
        return false;
    }
    increasing_maps(a.width(), b.width())
        .unwrap()
        .iter()
        .any(|rho| a.act(rho).divides(b))
}

fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    })
    .run(&strategy, test)
    .map_err(|e| e.to_string())
}

/// Antisymmetry, multiplicativity, equivariance, divisibility refinement and
/// transitivity of every sample ring's order.
pub fn order_axioms(cases: u32) -> Result<(), String> {
    let strategy = (
        monomial_spec(5, 4),
        monomial_spec(5, 4),
        monomial_spec(5, 4),
        map_spec(),
    );
    run_cases(cases, strategy, |(a, b, c, rho)| {
        for r in rings() {
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            let ab = r.compare(&a, &b);
            prop_assert_eq!(ab, r.compare(&b, &a).reverse());
            prop_assert_eq!(ab == core::cmp::Ordering::Equal, a == b);
            // Multiplicative.
            prop_assert_eq!(r.compare(&a.mul(&c), &b.mul(&c)), ab);
            // Equivariant.
            prop_assert_eq!(r.compare(&a.act(&rho), &b.act(&rho)), ab);
            // Refines divisibility, plain and up to the action.
            prop_assert!(r.compare(&Monomial::one(), &a).is_le());
            if a.divides(&b) || a.pi_divides(&b).is_some() {
                prop_assert!(ab.is_le());
            }
            // Transitive.
            if ab.is_le() && r.compare(&b, &c).is_le() {
                prop_assert!(r.compare(&a, &c).is_le());
            }
        }
        Ok(())
    })
}

pub fn action_is_a_monoid_action(cases: u32) -> Result<(), String> {
    run_cases(
        cases,
        (monomial_spec(6, 4), map_spec(), map_spec()),
        |(a, s, t)| {
            let r = toric_ring(OrderSpec::lex());
            let m = build(&r, &a);
            prop_assert_eq!(m.act(&s.compose(&t)), m.act(&t).act(&s));
            prop_assert_eq!(m.act(&IncMap::identity()), m.clone());
            prop_assert!(m.act(&s).width() >= m.width());
            Ok(())
        },
    )
}

/// Associativity, composition as function composition, and the standard
/// form of words.
pub fn inc_monoid_laws(cases: u32) -> Result<(), String> {
    run_cases(cases, (map_spec(), map_spec(), map_spec()), |(s, t, u)| {
        prop_assert_eq!(s.compose(&t).compose(&u), s.compose(&t.compose(&u)));
        let st = s.compose(&t);
        for i in 0..20 {
            prop_assert_eq!(st.apply(i), s.apply(t.apply(i)));
        }
        let w = s.to_tau();
        prop_assert!(w.indices().windows(2).all(|p| p[0] <= p[1]));
        prop_assert_eq!(w.to_map(), s.clone());
        prop_assert_eq!(w.concat(&t.to_tau()), st.to_tau());
        prop_assert_eq!(
            TauWord::standard_form(&[t.to_tau().indices(), w.indices()].concat()),
            t.compose(&s).to_tau()
        );
        Ok(())
    })
}

pub fn pi_divides_on_toric_samples(cases: u32) -> Result<(), String> {
    run_cases(
        cases,
        (monomial_spec(4, 3), monomial_spec(4, 4)),
        |(a, b)| {
            let r = toric_ring(OrderSpec::lex());
            let (a, b) = (build(&r, &a), build(&r, &b));
            let got = a.pi_divides(&b);
            prop_assert_eq!(got.is_some(), brute_pi_divides(&a, &b));
            if let Some(rho) = got {
                prop_assert!(a.act(&rho).divides(&b));
            }
            Ok(())
        },
    )
}

pub fn normal_form_is_idempotent_and_replayable(cases: u32) -> Result<(), String> {
    let strategy = (poly_spec(4), prop::collection::vec(poly_spec(3), 1..4));
    run_cases(cases, strategy, |(f, basis)| {
        let r = toric_ring(OrderSpec::grlex());
        let f = build_poly(&r, &f);
        let basis: Vec<Polynomial> = basis.iter().map(|g| build_poly(&r, g)).collect();
        let (nf, trace) = normal_form(&r, &f, &basis);
        prop_assert_eq!(trace.replay(&r, &f, &basis), nf.clone());
        let (again, steps) = normal_form(&r, &nf, &basis);
        prop_assert_eq!(again, nf.clone());
        prop_assert!(steps.steps.is_empty());
        for (m, _) in nf.terms() {
            for g in basis.iter().filter(|g| !g.is_zero()) {
                prop_assert!(g.lm().unwrap().pi_divides(m).is_none());
            }
        }
        Ok(())
    })
}

/// Every monomial in `x[0..4]` of degree at most 4.
fn all_small_monomials(r: &Ring) -> Vec<Monomial> {
    let vars: Vec<Monomial> = (0..4).map(|i| r.var_monomial("x", &[i]).unwrap()).collect();
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..4 {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (k, v) in vars.iter().enumerate().skip(*start) {
                let p = m.mul(v);
                out.push(p.clone());
                next.push((p, k));
            }
        }
        frontier = next;
    }
    out
}

/// Every pair of monomials in `x[0..4]` of degree at most 4.
pub fn pi_divides_exhaustive_small_width() -> Result<(), String> {
    let r = xring();
    let all = all_small_monomials(&r);
    if all.len() != 70 {
        return Err(format!("expected 70 monomials, got {}", all.len()));
    }
    for a in &all {
        for b in &all {
            let got = a.pi_divides(b);
            let ok = got.is_some() == brute_pi_divides(a, b)
                && got.map_or(true, |rho| a.act(&rho).divides(b));
            if !ok {
                return Err(format!("{} | {}", r.display(a), r.display(b)));
            }
        }
    }
    Ok(())
}

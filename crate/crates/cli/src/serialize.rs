//! Canonical text for polynomials, bases and whole problem files.

use std::fmt::Write;

use egb_core::{sort_basis, Polynomial, Ring};

use crate::parse::{Options, ProblemFile};

/// One polynomial per line: monic, sorted by (width, degree, lead).
pub fn serialize_basis(ring: &Ring, basis: &[Polynomial]) -> String {
    let mut polys: Vec<Polynomial> = basis.iter().map(Polynomial::monic).collect();
    sort_basis(ring, &mut polys);
    let mut out = String::new();
    for p in &polys {
        writeln!(out, "{}", p.display(ring)).unwrap();
    }
    out
}

pub fn serialize_ring(ring: &Ring) -> String {
    let mut out = String::from("ring {\n  field = QQ;\n");
    for f in ring.families() {
        writeln!(
            out,
            "  family {} {{ arity = {}, constraint = {}, weight = {} }}",
            f.name,
            f.arity,
            f.constraint.tag(),
            f.weight
        )
        .unwrap();
    }
    let order = ring.order();
    writeln!(out, "  order = {};", order.kind.tag()).unwrap();
    writeln!(out, "  precedence = [{}];", ring.precedence().join(", ")).unwrap();
    writeln!(out, "  use_weights = {};", order.use_weights).unwrap();
    out.push_str("}\n");
    out
}

/// A generators block; generators are written as given, in order.
pub fn serialize_generators(ring: &Ring, generators: &[Polynomial]) -> String {
    let mut out = String::from("generators {\n");
    for g in generators {
        writeln!(out, "  {};", g.display(ring)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn limit<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

pub fn serialize_options(opts: &Options) -> String {
    let mut out = String::from("options {\n");
    writeln!(out, "  algorithm = {};", opts.algorithm).unwrap();
    writeln!(out, "  max_width = {};", limit(opts.limits.max_width)).unwrap();
    writeln!(out, "  max_pairs = {};", limit(opts.limits.max_pairs)).unwrap();
    writeln!(out, "  max_basis = {};", limit(opts.limits.max_basis)).unwrap();
    writeln!(out, "  principal_syzygies = {};", opts.principal_syzygies).unwrap();
    writeln!(out, "  width_queue = {};", opts.width_queue).unwrap();
    writeln!(out, "  cover = {};", opts.cover).unwrap();
    out.push_str("}\n");
    out
}

pub fn serialize_problem(problem: &ProblemFile) -> String {
    let mut out = serialize_ring(&problem.ring);
    out.push_str(&serialize_generators(&problem.ring, &problem.generators));
    out.push_str(&serialize_options(&problem.options));
    out
}

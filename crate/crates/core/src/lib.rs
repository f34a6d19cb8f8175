#![no_std]

extern crate alloc;

pub mod buchberger;
pub mod error;
pub mod inc;
pub mod monomial;
pub mod poly;
pub mod signature;
pub mod spairs;

pub use buchberger::{
    autoreduce, classical_buchberger, criterion_violation, egb_buchberger, egb_incremental, is_egb,
    orbit_truncate, sort_basis, EgbResult, EngineLimits, IncrementalMode, Stats, Status,
};
pub use error::{Error, Limit};
pub use inc::{increasing_maps, IncMap, Index, TauWord};
pub use monomial::{Constraint, FamilySpec, Monomial, OrderKind, OrderSpec, Ring, Var};
pub use poly::{
    normal_form, pi_reduce_step, reduce_with, Action, Coeff, Polynomial, ReducerSet, ReductionTrace,
};
pub use signature::{
    egb_signature, is_covered, j_pairs, left_quotients, principal_syzygies, regular_top_reduce,
    schreyer_compare, strong_buchberger, twisted_mul, LabeledPoly, Signature, SignatureOptions,
    TopReduction, TwistedMonomial,
};
pub use spairs::{interlacings, spair_generators, Multiplier, SPairGen, SPairOptions};

//! Permutation trinomials and complete permutation polynomials over finite
//! fields, built on the order-3 cyclotomic decomposition of F_q^*.
//!
//! When q = 1 mod 3 the unit group splits into three cosets of its index-3
//! subgroup, and any map f = X^r c(X^s) with s = (q-1)/3 acts fiberwise:
//! `c` is just a table of three values, one per coset. This crate provides
//! exact arithmetic for every F_q up to 2^31 ([`FieldSpec`]), the coset
//! machinery ([`Mu3Context`]), the trinomial families ([`CycloTrinomial`]),
//! sufficient-condition checkers that certify when f and f + X both permute
//! ([`scalar_cpp_check`], [`general_cpp_check`], [`zieve_check`],
//! [`agw_check`]), and an exhaustive oracle ([`check_pp_cpp`]) that settles
//! any instance by brute force. Nothing is trusted: every certificate the
//! search layer emits carries the oracle's verdict alongside the
//! criterion's, and [`Certificate::reverify`] recomputes both from scratch.
//!
//! Start with the runnable walkthroughs in `examples/`:
//!
//! - `field_tour` — prime and extension arithmetic, ranks, generators
//! - `cube_roots_and_fibers` — the subgroup, projection, and coset tables
//! - `trinomial_families` — the delta and gamma shapes and their dense forms
//! - `zieve_criterion` — the exact permutation test on cyclotomic classes
//! - `agw_criterion` — the label-square equivalence behind the fiber view
//! - `general_criterion` — the four-condition certificate, with failures
//! - `cpp_certificates` — the published instances, end to end
//! - `scalar_family_search` / `census_report` / `counterexample_scan` —
//!   sweeps, aggregate tables, and refuted shapes
//!
//! The `mu3perm` binary wraps the same layers as `verify`, `certify`,
//! `search`, `census`, and `reproduce-paper` subcommands.

pub mod arith;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod mu3;
pub mod oracle;
pub mod search;
pub mod trinomial;

pub use criteria::{
    agw_check, constant_v_check, family_hypothesis, fixed_gamma_divisibility, general_cpp_check,
    scalar_cpp_check, zieve_check, AgwData, AgwReport, ConstantVReport, DivisibilityReport,
    FamilyForm, GeneralReport, HypothesisReport, ScalarReport, ZieveInput, ZieveReport,
};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, MAX_ORDER};
pub use mu3::Mu3Context;
pub use oracle::{check_permutation, check_pp_cpp, BijectionVerdict, PpCppVerdict};
pub use search::{
    census, census_csv, counterexample_scan, enumerate_delta, family_context,
    scan_scalar_families, Certificate, CensusRow, DeltaStatus, FailureReason, FailureRecord,
};
pub use trinomial::{CycloTrinomial, FixedGamma};

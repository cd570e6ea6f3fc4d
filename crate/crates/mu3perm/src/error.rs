//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong, from malformed input to violated
/// mathematical hypotheses. Construction errors and arithmetic misuse are
/// kept apart from hypothesis failures so callers (the CLI in particular)
/// can distinguish "you typed it wrong" from "the criterion does not apply".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{n} exceeds 2^31")]
    OrderTooLarge { p: u64, n: u32 },
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("q = {0} is not congruent to 1 mod 3; the field has no order-3 subgroup")]
    NotOneModThree(u64),
    #[error("the projection of zero is undefined")]
    ZeroInput,
    #[error("delta = {0} is not a cube root of unity")]
    DeltaNotInMu3(String),
    #[error("gamma = {0} is degenerate (gamma in {{1, -2}} makes a c-value vanish)")]
    GammaDegenerate(String),
    #[error("item {item} hypothesis violated: {reason}")]
    HypothesisViolated { item: u8, reason: String },
    #[error("d = {d} does not divide q - 1 = {q_minus_one}")]
    DNotDividing { d: u64, q_minus_one: u64 },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("c-table entry {0} is zero; the criterion requires nonzero c-values")]
    ZeroCValue(usize),
    #[error("q = {0} is not congruent to 1 mod 9")]
    NotOneModNine(u64),
    #[error("r = {r} is not of the scalar form 1 + k*s (s = {s})")]
    RNotScalarForm { r: u64, s: u64 },
    #[error("c({0}) is not kernel-valued: its s-th power is not 1")]
    CNotKernelValued(String),
    #[error("exponent r must be at least 1, got {0}")]
    InvalidExponent(u64),
    #[error("cannot parse field description {0:?}; expected \"p\" or \"p^n\"")]
    BadFieldString(String),
    #[error("cannot parse element encoding {0:?}")]
    BadElementEncoding(String),
    #[error("cannot parse certificate: {0}")]
    BadCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

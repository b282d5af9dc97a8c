//! Exact arithmetic for membership of rationals in missing-digit sets.
//!
//! A *missing-digit set* `K_{m,D}` collects the numbers in `[0, 1]` that
//! admit a base-`m` expansion whose every digit lies in a proper subset
//! `D` of the digit alphabet (the classical middle-thirds set is
//! `K_{3,{0,2}}`). This crate decides whether rationals — in particular
//! reciprocals `1/a_n` of structured integer products such as factorials,
//! Fibonacci products, or `∏(m^k − 1)` — belong to such a set, and it
//! certifies that the set of indices `n` with `1/a_n ∈ K_{m,D}` is finite
//! by combining a digit-search with a fixed-prime valuation obstruction.
//!
//! Every verdict is computed in exact integer or rational arithmetic; no
//! floating point participates in any comparison.
//!
//! Module map:
//! - [`numtheory`]: factorization, p-adic valuations, digit sums, and
//!   multiplicative orders over arbitrary-precision naturals;
//! - [`expansion`]: exact base-`m` long division with cycle detection,
//!   membership verdicts, and the denominator reduction map;
//! - [`criterion`]: the valuation obstruction and the two cutoff
//!   inequalities that bound where members may still occur;
//! - [`sequences`]: the shipped product families with their exact bound
//!   evaluators, certified cutoffs, and the two non-example demonstrations;
//! - [`selftest`]: executable property suites shared by the test suite and
//!   the command-line `selftest` subcommand.

pub mod criterion;
pub mod expansion;
pub mod numtheory;
pub mod selftest;
pub mod sequences;

use num_bigint::BigUint;

pub use expansion::{Membership, MissingDigitSet, ReducedRational};

/// Crate-wide error type. Constructors and operations validate their
/// preconditions eagerly and report violations through these variants.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} requires a nonzero argument")]
    ZeroArgument(&'static str),
    #[error("{0} requires an argument of at least {1}")]
    ArgumentBelowMinimum(&'static str, u64),
    #[error("{a} is not coprime to {modulus}")]
    NotCoprime { a: BigUint, modulus: BigUint },
    #[error("base must be at least 3, got {0}")]
    BaseTooSmall(u32),
    #[error("digit {digit} is not a base-{base} digit")]
    DigitOutOfRange { digit: u32, base: u32 },
    #[error("digit set of size {size} is not admissible for base {base}: need 1 < size < base")]
    DigitSetSize { size: usize, base: u32 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero numerator: expansion inputs lie in (0, 1]")]
    ZeroNumerator,
    #[error("{numer}/{denom} exceeds 1: expansion inputs lie in (0, 1]")]
    AboveOne { numer: BigUint, denom: BigUint },
    #[error("the value 1 has no long-division expansion; it is handled by the unit identity 1 = 0.(m-1) repeating")]
    UnitValue,
    #[error("report has no closed remainder cycle")]
    UnclosedCycle,
    #[error("report is not purely periodic (cycle does not start at the first digit)")]
    NotPurelyPeriodic,
    #[error("denominator {0} has coprime part 1: the expansion terminates and no reduced denominator of size at least 2 remains")]
    DegenerateReduction(BigUint),
    #[error("auxiliary prime {p0} divides the base {base}")]
    AuxiliaryPrimeDividesBase { p0: u64, base: u32 },
    #[error("auxiliary prime must be prime, got {0}")]
    AuxiliaryPrimeComposite(u64),
    #[error("no qualifying auxiliary prime found for k up to {limit}")]
    AuxiliaryPrimeNotFound { limit: u64 },
    #[error("auxiliary prime exceeds the supported machine range")]
    AuxiliaryPrimeTooLarge,
    #[error("largest-prime-factor bound must be at least 2, got {0}")]
    BoundBelowTwo(String),
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("polynomial must have a positive leading coefficient")]
    NonPositiveLeadingCoefficient,
    #[error("polynomial takes a non-positive value at k = {k}")]
    NonPositivePolynomialValue { k: u64 },
    #[error("polynomial coefficient list is malformed: {0}")]
    MalformedPolynomial(String),
    #[error("Fibonacci products require an odd base, got {0}")]
    EvenBaseForFibonacci(u32),
    #[error("denominator must be at least 2 and coprime to the base")]
    ObstructionDenominator,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

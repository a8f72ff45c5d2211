//! Exact arithmetic for rational (2-bridge) knots.
//!
//! A rational knot is classified by a Schubert pair `(p, q)` (p odd, q even,
//! `0 < q < p`, coprime), or equivalently by a Conway word: a finite integer
//! sequence whose iterated fraction `[[c1, ..., cn]] = c1 + 1/[[c2, ..., cn]]`
//! evaluates to `p/q`. Two normal forms matter here: the all-positive word
//! (an alternating diagram; entries sum to the crossing number) and the
//! all-even word (whose length is twice the genus). Everything in this crate
//! is computed exactly: big integers, big rationals, truncated power series
//! with rational coefficients, quadratic integer rings. No floating point is
//! used except in final ratio *reports*.
//!
//! Module map:
//! * [`fraction`] — iterated fractions over ℚ∪{∞}, Conway words, Schubert
//!   pairs, normal-form conversions and canonicalization.
//! * [`invariants`] — crossing number, genus, signature, determinant, leading
//!   Alexander coefficient, and the classification flags (fibered, positive,
//!   achiral, unknotting number one, Bleiler counterexample).
//! * [`census`] — exhaustive enumeration by crossing number, census reports,
//!   unknotting-number-one census by determinant, and the signature-sum
//!   dynamic program that reaches n = 1000.
//! * [`series`] — exact truncated multivariate power series, the generating
//!   function catalog, the trivariate signature pipeline, Hadamard products
//!   and coefficient selection.
//! * [`lens`] — lens-space counting by fundamental group: totients, prime
//!   omega, sums of two squares, the exceptional determinant sequences and
//!   the hyperelliptic search.
//! * [`monoid`] — unimodular matrix monoid orbits and the proposition
//!   verifiers for the arithmetic reformulation of fiberedness.
//! * [`verify`] — named PASS/FAIL check suites used by the CLI and the
//!   acceptance tests.
//!
//! Censuses, sweeps and orbit expansions are data-parallel. With the default
//! `parallel` feature they run on rayon; every parallel entry point has a
//! sequential twin (`*_seq`) that produces bit-identical results, and the
//! feature can be disabled to fall back to the sequential path everywhere.

pub mod census;
pub mod fraction;
pub mod invariants;
pub mod lens;
pub mod monoid;
pub mod series;
pub mod verify;

mod num_util;

pub use fraction::{ConwayWord, ExtendedRational, KnotClass, SchubertPair, WordForm};
pub use invariants::InvariantSet;

use std::fmt;

/// Errors produced by classification entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A pair `p/q` that does not describe a knot (even p is a 2-component
    /// link, zero denominators, common factors, ...).
    InvalidPair(String),
    /// A word in the wrong normal form for the requested operation.
    InvalidWord(String),
    /// Malformed textual input.
    Parse(String),
    /// An unknown generating-function catalog name.
    UnknownGf(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPair(msg) => write!(f, "invalid Schubert pair: {msg}"),
            Error::InvalidWord(msg) => write!(f, "invalid Conway word: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::UnknownGf(name) => write!(f, "unknown generating function: {name}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

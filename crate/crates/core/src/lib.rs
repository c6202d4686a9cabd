//! Exact arithmetic for q-cyclotomic cosets modulo n and their
//! equal-difference structure.
//!
//! A q-cyclotomic coset modulo n is the orbit of a residue under repeated
//! multiplication by q. This crate computes cosets, decides when they are
//! equal-difference (the elements form an arithmetic progression), enumerates
//! their multiple equal-difference representations, factors X^n - 1 into
//! irreducible (where possible, binomial) polynomials over finite fields, and
//! locates coset leaders with a short modular-window scan instead of a full
//! orbit walk.
//!
//! Everything is exact: fixed-width integers with overflow checks on the hot
//! paths, big integers only where an exponent cannot fit in a machine word.
//! All constructions (field moduli, generators, roots of unity) are
//! deterministic, so repeated runs produce bit-identical output.

pub mod cosets;
pub mod equal_difference;
mod error;
pub mod fields;
pub mod leaders;
pub mod numtheory;

pub use cosets::{CosetContext, CyclotomicCoset};
pub use equal_difference::{EdStatus, MerDecomposition, MerExponents};
pub use error::{Error, Result};
pub use fields::{
    DensePoly, ExtensionField, FactorReport, FieldConfig, RootOfUnity, SplittingContext,
    SymbolicBinomial,
};
pub use leaders::{LeaderMethod, LeaderResult};
pub use numtheory::PrimeFactorization;

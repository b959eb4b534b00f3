//! Exact and approximate null distribution of the Kendall score S over digit
//! sequences with ties.
//!
//! A sequence `x₁ … xₙ` over the ordered alphabet `0..ℓ` scores
//! `S = S⁺ − S⁻`, where S⁺ counts index pairs whose earlier digit is larger and
//! S⁻ those whose earlier digit is smaller. Ties count in neither. Under the null
//! hypothesis that every sequence is equally likely (or, for binary digits, that
//! digits are independent with `P(0) = p`) S is symmetric about zero and
//! approaches normality as `n` grows. This crate computes
//!
//! * the exact distribution, via a generating-function product for binary
//!   sequences and a tie-profile recursion for any alphabet ([`exact`]);
//! * closed-form moments and moments read off a distribution ([`moments`]);
//! * characteristic functions, normal and Edgeworth approximations and
//!   p-values ([`approx`]);
//! * an exhaustive-enumeration oracle for cross-checking ([`oracle`]).
//!
//! The `kdigits` binary wraps all of this as a significance test for digit
//! streams; its command implementations live in [`cli`].

pub mod approx;
pub mod cli;
pub mod error;
pub mod exact;
pub mod moments;
pub mod oracle;
pub mod poly;
pub mod score;

pub use error::{Error, Result};
pub use exact::{Bias, CountIndexedDistribution, Limits, NullModel, ScoreDistribution};
pub use score::{CountVector, DigitSequence, ScoreTriple};

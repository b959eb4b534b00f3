//! Exhaustive ground truth: enumerate every sequence and score it with the
//! O(n²) pair scan. Shares no construction code with [`crate::exact`].

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{Bias, CountIndexedDistribution, Limits, NullModel, ScoreDistribution};
use crate::score::{counts_of, score_naive, CountVector, DigitSequence};

fn check(n: usize, alphabet: usize, limits: &Limits) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    let estimate = (alphabet as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if estimate > limits.enumeration_cap {
        return Err(Error::ResourceCap {
            estimate,
            cap: limits.enumeration_cap,
        });
    }
    Ok(())
}

/// Odometer over all `ℓⁿ` digit strings; the last position turns fastest.
struct Odometer {
    digits: Vec<u32>,
    alphabet: u32,
    done: bool,
}

impl Odometer {
    fn new(n: usize, alphabet: usize) -> Self {
        Self {
            digits: vec![0; n],
            alphabet: alphabet as u32,
            done: false,
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let current = self.digits.clone();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.alphabet {
                break;
            }
            self.digits[i] = 0;
        }
        Some(current)
    }
}

fn for_each_sequence(n: usize, alphabet: usize, mut f: impl FnMut(&DigitSequence)) {
    for digits in Odometer::new(n, alphabet) {
        let seq = DigitSequence::new(digits, alphabet).expect("odometer digits are in range");
        f(&seq);
    }
}

/// Histogram of S over all `ℓⁿ` sequences.
pub fn brute_dist(n: usize, alphabet: usize, limits: &Limits) -> Result<ScoreDistribution> {
    check(n, alphabet, limits)?;
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    for_each_sequence(n, alphabet, |seq| {
        *hist.entry(score_naive(seq).s).or_default() += 1;
    });
    let hist = hist
        .into_iter()
        .map(|(t, c)| (t, BigUint::from(c)))
        .collect();
    Ok(ScoreDistribution::from_histogram(
        n,
        NullModel::Uniform { alphabet },
        &hist,
    ))
}

/// Exhaustive `P_n(t; cv)` tables.
pub fn brute_dist_by_counts(
    n: usize,
    alphabet: usize,
    limits: &Limits,
) -> Result<CountIndexedDistribution> {
    check(n, alphabet, limits)?;
    let mut hist: BTreeMap<CountVector, BTreeMap<i64, u64>> = BTreeMap::new();
    for_each_sequence(n, alphabet, |seq| {
        *hist
            .entry(counts_of(seq))
            .or_default()
            .entry(score_naive(seq).s)
            .or_default() += 1;
    });
    let tables = hist
        .into_iter()
        .map(|(cv, h)| {
            let h = h.into_iter().map(|(t, c)| (t, BigUint::from(c))).collect();
            (
                cv,
                ScoreDistribution::from_histogram(n, NullModel::Uniform { alphabet }, &h),
            )
        })
        .collect();
    Ok(CountIndexedDistribution::new(n, alphabet, tables))
}

/// Probability of S under independent binary digits with `P(0) = p`, summing
/// `p^{#0}·q^{#1}` over every sequence.
pub fn brute_dist_pq(n: usize, p: &BigRational, limits: &Limits) -> Result<ScoreDistribution> {
    check(n, 2, limits)?;
    let bias = Bias::Exact(p.clone());
    bias.validate()?;
    let q = BigRational::one() - p;
    // (score, number of zeros) → how many sequences
    let mut hist: BTreeMap<(i64, usize), u64> = BTreeMap::new();
    for_each_sequence(n, 2, |seq| {
        let zeros = seq.digits().iter().filter(|&&d| d == 0).count();
        *hist.entry((score_naive(seq).s, zeros)).or_default() += 1;
    });
    let mut probs: BTreeMap<i64, BigRational> = BTreeMap::new();
    for ((t, zeros), c) in hist {
        let w = pow(p, zeros) * pow(&q, n - zeros) * BigRational::from_integer(BigInt::from(c));
        *probs
            .entry(t)
            .or_insert_with(|| BigRational::from_integer(0.into())) += w;
    }
    Ok(ScoreDistribution::from_rational_histogram(
        n,
        NullModel::BiasedBinary { p: bias },
        &probs,
    ))
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * base)
}

/// Probability of one specific binary sequence under `P(0) = p`.
pub fn sequence_probability(seq: &DigitSequence, p: &BigRational) -> Result<BigRational> {
    if seq.alphabet() != 2 {
        return Err(Error::NotBinary(seq.alphabet()));
    }
    let zeros = seq.digits().iter().filter(|&&d| d == 0).count();
    Ok(pow(p, zeros) * pow(&(BigRational::one() - p), seq.len() - zeros))
}

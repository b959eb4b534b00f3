//! Digit sequences and their score S = S⁺ − S⁻.
//!
//! S⁺ counts index pairs `j < k` where the earlier digit is strictly greater,
//! S⁻ counts pairs where the earlier digit is strictly smaller. Tied pairs
//! contribute to neither. With this convention `0 1 1 2 0 2 1` scores
//! `5 − 11 = −6`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Sequences at least this long are scored with the merge-count path.
pub const MERGE_THRESHOLD: usize = 64;

/// An observed sequence `x₁ … xₙ` over the ordered alphabet `0..ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSequence {
    digits: Vec<u32>,
    alphabet: usize,
}

impl DigitSequence {
    pub fn new(digits: Vec<u32>, alphabet: usize) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::AlphabetTooSmall(alphabet));
        }
        if digits.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((position, &digit)) = digits
            .iter()
            .enumerate()
            .find(|(_, &d)| d as usize >= alphabet)
        {
            return Err(Error::DigitOutOfRange {
                digit,
                position,
                alphabet,
            });
        }
        Ok(Self { digits, alphabet })
    }

    pub fn binary(digits: Vec<u32>) -> Result<Self> {
        Self::new(digits, 2)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Always false; empty sequences are rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Same digits in reverse index order.
    pub fn reversed(&self) -> Self {
        let mut digits = self.digits.clone();
        digits.reverse();
        Self {
            digits,
            alphabet: self.alphabet,
        }
    }

    /// Value reflection `d ↦ ℓ − 1 − d`.
    pub fn complemented(&self) -> Self {
        let top = self.alphabet as u32 - 1;
        Self {
            digits: self.digits.iter().map(|&d| top - d).collect(),
            alphabet: self.alphabet,
        }
    }
}

/// `(S⁺, S⁻, S)` for one sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ScoreTriple {
    pub s_plus: u64,
    pub s_minus: u64,
    pub s: i64,
}

impl ScoreTriple {
    fn from_parts(s_plus: u64, s_minus: u64) -> Self {
        Self {
            s_plus,
            s_minus,
            s: s_plus as i64 - s_minus as i64,
        }
    }

    /// Number of index pairs with unequal values.
    pub fn mixed_pairs(&self) -> u64 {
        self.s_plus + self.s_minus
    }
}

/// Tie profile `(i₀, …, i_{ℓ−1})` of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CountVector {
    counts: Vec<usize>,
    n: usize,
}

impl CountVector {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::AlphabetTooSmall(counts.len()));
        }
        let n = counts.iter().sum();
        Ok(Self { counts, n })
    }

    /// Checks the counts against an expected length.
    pub fn with_len(counts: Vec<usize>, n: usize) -> Result<Self> {
        let cv = Self::new(counts)?;
        if cv.n != n {
            return Err(Error::CountMismatch {
                sum: cv.n as u64,
                n: n as u64,
            });
        }
        Ok(cv)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> usize {
        self.counts.len()
    }

    /// `(n² − Σ iₖ²) / 2`, the number of index pairs holding different digits.
    pub fn mixed_pairs(&self) -> u64 {
        let n = self.n as u64;
        let squares: u64 = self.counts.iter().map(|&c| (c as u64) * (c as u64)).sum();
        (n * n - squares) / 2
    }

    /// Multinomial coefficient `n! / (i₀! ⋯ i_{ℓ−1}!)`: how many sequences share this profile.
    pub fn multinomial(&self) -> num_bigint::BigUint {
        use num_bigint::BigUint;
        let mut acc = BigUint::from(1u32);
        let mut placed = 0usize;
        for &c in &self.counts {
            // C(placed + c, c), built incrementally so every division is exact.
            for j in 1..=c {
                acc *= placed + j;
                acc /= j;
            }
            placed += c;
        }
        acc
    }
}

/// Reference O(n²) pair scan.
pub fn score_naive(seq: &DigitSequence) -> ScoreTriple {
    let x = seq.digits();
    let mut s_plus = 0u64;
    let mut s_minus = 0u64;
    for (j, &a) in x.iter().enumerate() {
        for &b in &x[j + 1..] {
            if a > b {
                s_plus += 1;
            } else if a < b {
                s_minus += 1;
            }
        }
    }
    ScoreTriple::from_parts(s_plus, s_minus)
}

/// O(n log n) scoring: S⁺ is the strict inversion count from a stable merge sort,
/// S⁻ follows from the mixed-pair count of the tie profile.
pub fn score_merge(seq: &DigitSequence) -> ScoreTriple {
    let mut buf = seq.digits().to_vec();
    let mut scratch = vec![0u32; buf.len()];
    let s_plus = count_strict_inversions(&mut buf, &mut scratch);
    let mixed = counts_of(seq).mixed_pairs();
    ScoreTriple::from_parts(s_plus, mixed - s_plus)
}

fn count_strict_inversions(xs: &mut [u32], scratch: &mut [u32]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left_scratch, right_scratch) = scratch.split_at_mut(mid);
    let mut inversions = {
        let (left, right) = xs.split_at_mut(mid);
        count_strict_inversions(left, left_scratch) + count_strict_inversions(right, right_scratch)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        // Ties go left first so equal pairs are never counted.
        if xs[j] < xs[i] {
            inversions += (mid - i) as u64;
            scratch[k] = xs[j];
            j += 1;
        } else {
            scratch[k] = xs[i];
            i += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&scratch[..n]);
    inversions
}

/// Scores a sequence, switching to the merge-count path for long inputs.
pub fn score(seq: &DigitSequence) -> ScoreTriple {
    if seq.len() >= MERGE_THRESHOLD {
        score_merge(seq)
    } else {
        score_naive(seq)
    }
}

/// Binary shortcut `S = Σₖ (n − 2k + 1)·jₖ` (1-based k).
pub fn score_binary_fast(seq: &DigitSequence) -> Result<i64> {
    if seq.alphabet() != 2 {
        return Err(Error::NotBinary(seq.alphabet()));
    }
    let n = seq.len() as i64;
    Ok(seq
        .digits()
        .iter()
        .enumerate()
        .map(|(idx, &j)| (n - 2 * (idx as i64 + 1) + 1) * j as i64)
        .sum())
}

/// Recovers S from S⁺ and the tie profile: `S = 2S⁺ − (n² − Σ iₖ²)/2`.
pub fn score_from_splus(s_plus: u64, cv: &CountVector) -> Result<i64> {
    let mixed = cv.mixed_pairs();
    if s_plus > mixed {
        return Err(Error::TooManyDescendingPairs { s_plus, mixed });
    }
    Ok(2 * s_plus as i64 - mixed as i64)
}

/// Digit histogram of a sequence.
pub fn counts_of(seq: &DigitSequence) -> CountVector {
    let mut counts = vec![0usize; seq.alphabet()];
    for &d in seq.digits() {
        counts[d as usize] += 1;
    }
    CountVector {
        n: seq.len(),
        counts,
    }
}

/// Largest attainable |S| for length `n`, namely `n(n−1)/2`.
pub fn max_abs_score(n: usize) -> i64 {
    let n = n as i64;
    n * (n - 1) / 2
}

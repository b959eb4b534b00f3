//! Exact null distributions of S.
//!
//! Two engines live here:
//!
//! * the binary generating-function product `∏ₖ (1 + x^{n−2k+1})`, and its biased
//!   counterpart `∏ (pq·x^{−w} + p² + q² + pq·x^{w})`, where a 0 has probability `p`;
//! * the count-vector recursion for any alphabet, which appends one digit at a time.
//!   Appending digit `d` to a prefix with tie profile `c` moves S by
//!   `Σ_{d'>d} c[d'] − Σ_{d'<d} c[d']`, so `P_{n+1}(t; i)` is the sum over `d` of
//!   `P_n(t − shift_d; i − e_d)`.
//!
//! Coefficients are arbitrary precision; nothing here rounds unless a float `p`
//! is requested.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Laurent};
use crate::score::CountVector;

/// Default ceiling on `C(n+ℓ−1, ℓ−1)·n²` for the count-vector recursion.
pub const DEFAULT_STATE_CAP: u128 = 100_000_000;
/// Default ceiling on `ℓⁿ` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// Work limits shared by the exact engines and the enumeration oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub state_cap: u128,
    pub enumeration_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            state_cap: DEFAULT_STATE_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Limits {
    /// Same cap for both engines.
    pub fn uniform(cap: u128) -> Self {
        Self {
            state_cap: cap,
            enumeration_cap: cap,
        }
    }
}

/// Digit-0 probability for biased binary sequences.
#[derive(Debug, Clone, PartialEq)]
pub enum Bias {
    Exact(BigRational),
    Float(f64),
}

impl Bias {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            Bias::Exact(p) => p.is_positive() && *p < BigRational::one(),
            Bias::Float(p) => p.is_finite() && *p > 0.0 && *p < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidProbability(self.to_string()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Bias::Exact(p) => p.to_f64().unwrap_or(f64::NAN),
            Bias::Float(p) => *p,
        }
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bias::Exact(p) => write!(f, "{p}"),
            Bias::Float(p) => write!(f, "{p}"),
        }
    }
}

/// Which population of sequences a distribution describes.
#[derive(Debug, Clone, PartialEq)]
pub enum NullModel {
    /// All `ℓⁿ` sequences equally likely.
    Uniform { alphabet: usize },
    /// Independent binary digits with `P(0) = p`.
    BiasedBinary { p: Bias },
}

impl NullModel {
    pub fn alphabet(&self) -> usize {
        match self {
            NullModel::Uniform { alphabet } => *alphabet,
            NullModel::BiasedBinary { .. } => 2,
        }
    }
}

/// Weight representation of a [`ScoreDistribution`].
#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    /// Number of sequences attaining each score.
    Count(Vec<BigUint>),
    Rational(Vec<BigRational>),
    Float(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Count,
    Rational,
    Float,
}

/// Map from score `t` to weight, stored densely from `low` upward.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreDistribution {
    n: usize,
    model: NullModel,
    low: i64,
    weights: Weights,
}

impl ScoreDistribution {
    pub(crate) fn from_counts(n: usize, model: NullModel, poly: Laurent<BigUint>) -> Self {
        let (low, coeffs) = poly.trim().into_dense();
        Self {
            n,
            model,
            low,
            weights: Weights::Count(coeffs),
        }
    }

    /// Builds a count distribution from a sparse histogram.
    pub fn from_histogram(n: usize, model: NullModel, hist: &BTreeMap<i64, BigUint>) -> Self {
        Self::from_counts(
            n,
            model,
            Laurent::from_terms(hist.iter().map(|(&t, c)| (t, c.clone()))),
        )
    }

    pub fn from_rational_histogram(
        n: usize,
        model: NullModel,
        hist: &BTreeMap<i64, BigRational>,
    ) -> Self {
        let (low, coeffs) = Laurent::from_terms(hist.iter().map(|(&t, c)| (t, c.clone())))
            .trim()
            .into_dense();
        Self {
            n,
            model,
            low,
            weights: Weights::Rational(coeffs),
        }
    }

    pub fn from_float_probabilities(n: usize, model: NullModel, low: i64, probs: Vec<f64>) -> Self {
        Self {
            n,
            model,
            low,
            weights: Weights::Float(probs),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> &NullModel {
        &self.model
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn kind(&self) -> WeightKind {
        match self.weights {
            Weights::Count(_) => WeightKind::Count,
            Weights::Rational(_) => WeightKind::Rational,
            Weights::Float(_) => WeightKind::Float,
        }
    }

    fn len(&self) -> usize {
        match &self.weights {
            Weights::Count(w) => w.len(),
            Weights::Rational(w) => w.len(),
            Weights::Float(w) => w.len(),
        }
    }

    /// Smallest stored score.
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Largest stored score.
    pub fn high(&self) -> i64 {
        self.low + self.len() as i64 - 1
    }

    fn index(&self, t: i64) -> Option<usize> {
        let i = t - self.low;
        (i >= 0 && (i as usize) < self.len()).then_some(i as usize)
    }

    /// Sequence count at `t` (count mode only).
    pub fn count(&self, t: i64) -> Option<BigUint> {
        match &self.weights {
            Weights::Count(w) => Some(self.index(t).map_or_else(BigUint::zero, |i| w[i].clone())),
            _ => None,
        }
    }

    pub fn counts(&self) -> Option<&[BigUint]> {
        match &self.weights {
            Weights::Count(w) => Some(w),
            _ => None,
        }
    }

    /// Sum of all weights: a sequence count, or a probability total.
    pub fn total_count(&self) -> Option<BigUint> {
        self.counts().map(|w| w.iter().sum())
    }

    /// Exact probability of `t` (count and rational modes).
    pub fn probability_exact(&self, t: i64) -> Option<BigRational> {
        match &self.weights {
            Weights::Count(w) => {
                let total = BigInt::from(self.total_count()?);
                let c = self.index(t).map_or_else(BigUint::zero, |i| w[i].clone());
                Some(BigRational::new(BigInt::from(c), total))
            }
            Weights::Rational(w) => Some(
                self.index(t)
                    .map_or_else(BigRational::zero, |i| w[i].clone()),
            ),
            Weights::Float(_) => None,
        }
    }

    /// `(t, P(S = t))` pairs, exact where possible.
    pub fn probabilities_exact(&self) -> Option<Vec<(i64, BigRational)>> {
        let total = match &self.weights {
            Weights::Count(_) => BigRational::from(BigInt::from(self.total_count()?)),
            Weights::Rational(_) => BigRational::one(),
            Weights::Float(_) => return None,
        };
        Some(
            (self.low..=self.high())
                .map(|t| {
                    let w = match &self.weights {
                        Weights::Count(w) => {
                            BigRational::from(BigInt::from(w[(t - self.low) as usize].clone()))
                        }
                        Weights::Rational(w) => w[(t - self.low) as usize].clone(),
                        Weights::Float(_) => unreachable!(),
                    };
                    (t, w / &total)
                })
                .collect(),
        )
    }

    /// `(t, P(S = t))` pairs as floats.
    pub fn probabilities_f64(&self) -> Vec<(i64, f64)> {
        match &self.weights {
            Weights::Float(w) => w
                .iter()
                .enumerate()
                .map(|(i, &p)| (self.low + i as i64, p))
                .collect(),
            _ => self
                .probabilities_exact()
                .unwrap()
                .into_iter()
                .map(|(t, p)| (t, ratio_to_f64(&p)))
                .collect(),
        }
    }

    /// Float probability of `t`.
    pub fn probability_f64(&self, t: i64) -> f64 {
        match &self.weights {
            Weights::Float(w) => self.index(t).map_or(0.0, |i| w[i]),
            _ => ratio_to_f64(&self.probability_exact(t).unwrap()),
        }
    }

    /// Exact `P(lo ≤ S ≤ hi)`.
    pub fn range_probability_exact(&self, lo: i64, hi: i64) -> Option<BigRational> {
        let probs = self.probabilities_exact()?;
        Some(
            probs
                .into_iter()
                .filter(|(t, _)| *t >= lo && *t <= hi)
                .map(|(_, p)| p)
                .sum(),
        )
    }

    pub fn range_probability_f64(&self, lo: i64, hi: i64) -> f64 {
        self.probabilities_f64()
            .into_iter()
            .filter(|(t, _)| *t >= lo && *t <= hi)
            .map(|(_, p)| p)
            .sum()
    }

    /// `weight(t) == weight(−t)` for every `t` (exact modes compare exactly).
    pub fn is_symmetric(&self) -> bool {
        if self.low != -self.high() {
            return false;
        }
        match &self.weights {
            Weights::Count(w) => w.iter().eq(w.iter().rev()),
            Weights::Rational(w) => w.iter().eq(w.iter().rev()),
            Weights::Float(w) => w
                .iter()
                .zip(w.iter().rev())
                .all(|(a, b)| (a - b).abs() <= 1e-12),
        }
    }

    /// Nonzero support points.
    pub fn support(&self) -> Vec<i64> {
        (self.low..=self.high())
            .filter(|&t| match &self.weights {
                Weights::Count(w) => !w[(t - self.low) as usize].is_zero(),
                Weights::Rational(w) => !w[(t - self.low) as usize].is_zero(),
                Weights::Float(w) => w[(t - self.low) as usize] != 0.0,
            })
            .collect()
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale through the integer quotient.
        let scaled = (r * BigRational::from(BigInt::from(1u64 << 53))).to_integer();
        scaled.to_f64().unwrap_or(f64::NAN) / (1u64 << 53) as f64
    })
}

/// Coefficient counts of `∏_{k=1..n} (1 + x^{n−2k+1})`.
pub fn dist_binary(n: usize) -> Result<ScoreDistribution> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let mut poly = Laurent::constant(BigUint::one());
    for k in 1..=n as i64 {
        poly.mul_one_plus_monomial(n as i64 - 2 * k + 1);
    }
    Ok(ScoreDistribution::from_counts(
        n,
        NullModel::Uniform { alphabet: 2 },
        poly,
    ))
}

/// The two-case closed product for the binary counts: `∏ (x^{2k−1} + 2 + x^{1−2k})`
/// for even `n`, `2·∏ (x^k + x^{−k})²` for odd `n`.
pub fn binary_pgf_closed_form(n: usize) -> Result<ScoreDistribution> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let nu = (n / 2) as i64;
    let two = || BigUint::from(2u32);
    let mut poly = if n.is_multiple_of(2) {
        Laurent::constant(BigUint::one())
    } else {
        Laurent::constant(two())
    };
    for k in 1..=nu {
        let factor = if n.is_multiple_of(2) {
            Laurent::from_terms([
                (1 - 2 * k, BigUint::one()),
                (0, two()),
                (2 * k - 1, BigUint::one()),
            ])
        } else {
            let half = Laurent::from_terms([(-k, BigUint::one()), (k, BigUint::one())]);
            half.mul(&half)
        };
        poly = poly.mul(&factor);
    }
    Ok(ScoreDistribution::from_counts(
        n,
        NullModel::Uniform { alphabet: 2 },
        poly,
    ))
}

fn pq_product<T: Coeff>(n: usize, p: T, q: T) -> Laurent<T> {
    let pq = p.clone() * q.clone();
    let middle = p.clone() * p.clone() + q.clone() * q.clone();
    let nu = (n / 2) as i64;
    let mut poly = if n.is_multiple_of(2) {
        Laurent::constant(T::one())
    } else {
        Laurent::constant(p + q)
    };
    for k in 1..=nu {
        let w = if n.is_multiple_of(2) {
            2 * k - 1
        } else {
            2 * k
        };
        let factor = Laurent::from_terms([(-w, pq.clone()), (0, middle.clone()), (w, pq.clone())]);
        poly = poly.mul(&factor);
    }
    poly
}

/// Probability distribution of S for binary digits with `P(0) = p`.
///
/// Pairs positions `k` and `n+1−k`: their weights `±(n−2k+1)` cancel unless the two
/// digits differ, so each pair contributes an independent three-point factor.
pub fn dist_binary_pq(n: usize, p: &Bias) -> Result<ScoreDistribution> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    p.validate()?;
    let model = NullModel::BiasedBinary { p: p.clone() };
    Ok(match p {
        Bias::Exact(p) => {
            let q = BigRational::one() - p;
            let (low, coeffs) = pq_product(n, p.clone(), q).trim().into_dense();
            ScoreDistribution {
                n,
                model,
                low,
                weights: Weights::Rational(coeffs),
            }
        }
        Bias::Float(p) => {
            let (low, coeffs) = pq_product(n, *p, 1.0 - *p).into_dense();
            ScoreDistribution {
                n,
                model,
                low,
                weights: Weights::Float(coeffs),
            }
        }
    })
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for j in 1..=k {
        acc = acc.saturating_mul(n - k + j) / j;
    }
    acc
}

/// Estimated work `C(n+ℓ−1, ℓ−1)·n²` of the count-vector recursion.
pub fn recursion_state_estimate(n: usize, alphabet: usize) -> u128 {
    let profiles = binomial_u128((n + alphabet - 1) as u128, (alphabet - 1) as u128);
    profiles.saturating_mul((n as u128) * (n as u128))
}

/// Exact distributions `P_n(·; cv)` for every tie profile `cv` of length `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountIndexedDistribution {
    n: usize,
    alphabet: usize,
    tables: BTreeMap<CountVector, ScoreDistribution>,
}

impl CountIndexedDistribution {
    pub fn new(
        n: usize,
        alphabet: usize,
        tables: BTreeMap<CountVector, ScoreDistribution>,
    ) -> Self {
        Self {
            n,
            alphabet,
            tables,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn get(&self, cv: &CountVector) -> Option<&ScoreDistribution> {
        self.tables.get(cv)
    }

    /// `P_n(t; counts)`, zero for unknown or negative profiles.
    pub fn count(&self, t: i64, counts: &[i64]) -> BigUint {
        if counts.iter().any(|&c| c < 0) {
            return BigUint::zero();
        }
        let Ok(cv) = CountVector::new(counts.iter().map(|&c| c as usize).collect()) else {
            return BigUint::zero();
        };
        self.tables
            .get(&cv)
            .and_then(|d| d.count(t))
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CountVector, &ScoreDistribution)> {
        self.tables.iter()
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// Sum over all tie profiles.
    pub fn marginal(&self) -> ScoreDistribution {
        let mut acc = Laurent::<BigUint>::zero();
        for d in self.tables.values() {
            let counts = d.counts().expect("count tables");
            acc.add_shifted(&Laurent::from_dense(d.low(), counts.to_vec()), 0);
        }
        ScoreDistribution::from_counts(
            self.n,
            NullModel::Uniform {
                alphabet: self.alphabet,
            },
            acc,
        )
    }

    /// Checks the one-step recursion `self → next` term by term.
    pub fn satisfies_recursion_into(&self, next: &CountIndexedDistribution) -> bool {
        if next.n != self.n + 1 || next.alphabet != self.alphabet {
            return false;
        }
        next.tables.iter().all(|(cv, dist)| {
            let i: Vec<i64> = cv.counts().iter().map(|&c| c as i64).collect();
            let reach = cv.mixed_pairs() as i64 + 1;
            (-reach..=reach).all(|t| {
                let mut rhs = BigUint::zero();
                for d in 0..i.len() {
                    let greater: i64 = i[d + 1..].iter().sum();
                    let less: i64 = i[..d].iter().sum();
                    let mut prev = i.clone();
                    prev[d] -= 1;
                    rhs += self.count(t - (greater - less), &prev);
                }
                dist.count(t).unwrap_or_default() == rhs
            })
        })
    }
}

fn check_state_cap(n: usize, alphabet: usize, limits: &Limits) -> Result<()> {
    let estimate = recursion_state_estimate(n, alphabet);
    if estimate > limits.state_cap {
        return Err(Error::ResourceCap {
            estimate,
            cap: limits.state_cap,
        });
    }
    Ok(())
}

fn check_args(n: usize, alphabet: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    Ok(())
}

/// Runs the count-vector recursion up to length `n`, keeping one layer at a time.
fn recursion_layer(n: usize, alphabet: usize) -> BTreeMap<Vec<usize>, Laurent<BigUint>> {
    let mut layer: BTreeMap<Vec<usize>, Laurent<BigUint>> = BTreeMap::new();
    layer.insert(vec![0; alphabet], Laurent::constant(BigUint::one()));
    for _ in 0..n {
        let mut next: BTreeMap<Vec<usize>, Laurent<BigUint>> = BTreeMap::new();
        for (cv, poly) in &layer {
            let mut less = 0i64;
            let mut greater: i64 = cv.iter().map(|&c| c as i64).sum();
            for d in 0..alphabet {
                greater -= cv[d] as i64;
                let mut grown = cv.clone();
                grown[d] += 1;
                next.entry(grown)
                    .or_insert_with(Laurent::zero)
                    .add_shifted(poly, greater - less);
                less += cv[d] as i64;
            }
        }
        layer = next;
    }
    layer
}

/// `P_n(t; cv)` for every tie profile of length `n` over `ℓ` digits.
pub fn dist_by_counts(
    n: usize,
    alphabet: usize,
    limits: &Limits,
) -> Result<CountIndexedDistribution> {
    check_args(n, alphabet)?;
    check_state_cap(n, alphabet, limits)?;
    let tables = recursion_layer(n, alphabet)
        .into_iter()
        .map(|(cv, poly)| {
            (
                CountVector::new(cv).expect("alphabet >= 2"),
                ScoreDistribution::from_counts(n, NullModel::Uniform { alphabet }, poly),
            )
        })
        .collect();
    Ok(CountIndexedDistribution::new(n, alphabet, tables))
}

/// Distribution of S over all `ℓⁿ` equiprobable sequences (sequence counts).
pub fn dist_general(n: usize, alphabet: usize, limits: &Limits) -> Result<ScoreDistribution> {
    check_args(n, alphabet)?;
    check_state_cap(n, alphabet, limits)?;
    let mut acc = Laurent::<BigUint>::zero();
    for poly in recursion_layer(n, alphabet).values() {
        acc.add_shifted(poly, 0);
    }
    Ok(ScoreDistribution::from_counts(
        n,
        NullModel::Uniform { alphabet },
        acc,
    ))
}

/// Which engine produced a distribution or p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Trivial closed answer or exhaustive enumeration.
    Exact,
    /// Generating-function product (binary and biased binary).
    Pgf,
    /// Count-vector recursion (any alphabet).
    Recursion,
    /// Normal or Edgeworth approximation.
    Approximation,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Exact => "exact",
            Engine::Pgf => "pgf",
            Engine::Recursion => "recursion",
            Engine::Approximation => "approximation",
        })
    }
}

/// Work estimate of the exact engine [`exact_distribution`] would pick.
pub fn exact_cost_estimate(n: usize, model: &NullModel) -> u128 {
    match model {
        NullModel::Uniform { alphabet } if *alphabet > 2 => recursion_state_estimate(n, *alphabet),
        // n/2 factors, each touching a support of at most n²/2 + 1 entries.
        _ => (n as u128).pow(3) / 4,
    }
}

/// Exact distribution for a null model, refusing work above `limits.state_cap`.
pub fn exact_distribution(
    n: usize,
    model: &NullModel,
    limits: &Limits,
) -> Result<(ScoreDistribution, Engine)> {
    let estimate = exact_cost_estimate(n, model);
    if estimate > limits.state_cap {
        return Err(Error::ResourceCap {
            estimate,
            cap: limits.state_cap,
        });
    }
    match model {
        NullModel::Uniform { alphabet: 2 } => Ok((dist_binary(n)?, Engine::Pgf)),
        NullModel::Uniform { alphabet } => {
            Ok((dist_general(n, *alphabet, limits)?, Engine::Recursion))
        }
        NullModel::BiasedBinary { p } => Ok((dist_binary_pq(n, p)?, Engine::Pgf)),
    }
}

/// Variants of the binary two-step identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoStepForm {
    /// Ending `1 0` shifts S by `i₁ − i₀ + 1`, read back as `P_{n−1}(t + i₀ − i₁ − 1; …)`.
    Corrected,
    /// The historical printing with `P_{n−1}(t + i₀ − 1; …)` for that term.
    AsPrinted,
}

/// Checks the binary identity obtained by appending two digits to length `n − 1`:
///
/// ```text
/// P_{n+1}(t; i₀, i₁) = P_{n−1}(t − 2i₁; i₀−2, i₁)
///                    + P_{n−1}(t + i₀ − i₁ − 1; i₀−1, i₁−1)
///                    + P_{n−1}(t + i₀ − i₁ + 1; i₀−1, i₁−1)
///                    + P_{n−1}(t + 2i₀; i₀, i₁−2)
/// ```
pub fn check_two_step_identity(n: usize, form: TwoStepForm) -> Result<bool> {
    if n < 2 {
        return Err(Error::LengthTooSmall { min: 2, got: n });
    }
    let limits = Limits::uniform(u128::MAX);
    let after = dist_by_counts(n + 1, 2, &limits)?;
    let before = dist_by_counts(n - 1, 2, &limits)?;
    for i0 in 0..=(n as i64 + 1) {
        let i1 = n as i64 + 1 - i0;
        let reach = i0 * i1 + 1;
        for t in -reach..=reach {
            let lhs = after.count(t, &[i0, i1]);
            let second = match form {
                TwoStepForm::Corrected => t + i0 - i1 - 1,
                TwoStepForm::AsPrinted => t + i0 - 1,
            };
            let rhs = before.count(t - 2 * i1, &[i0 - 2, i1])
                + before.count(second, &[i0 - 1, i1 - 1])
                + before.count(t + i0 - i1 + 1, &[i0 - 1, i1 - 1])
                + before.count(t + 2 * i0, &[i0, i1 - 2]);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`check_two_step_identity`] in its corrected form.
pub fn verify_two_step_identity(n: usize) -> Result<bool> {
    check_two_step_identity(n, TwoStepForm::Corrected)
}

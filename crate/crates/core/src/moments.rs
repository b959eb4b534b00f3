//! Closed-form central moments of S and moment extraction from distributions.
//!
//! The mean of S is zero under every supported null model, so raw and central
//! moments coincide and odd moments vanish.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::exact::{ratio_to_f64, Bias, NullModel, ScoreDistribution, Weights};

fn r(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Even central moments of S for one `(n, model)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    pub n: usize,
    pub model: NullModel,
    pub mu2: BigRational,
    pub mu4: BigRational,
    pub mu6: Option<BigRational>,
}

impl MomentSet {
    pub fn sigma(&self) -> f64 {
        ratio_to_f64(&self.mu2).sqrt()
    }

    /// `μ₄/σ⁴`, undefined when the variance is zero (`n = 1`).
    pub fn kurtosis_ratio(&self) -> Option<BigRational> {
        if self.mu2.is_zero() {
            None
        } else {
            Some(&self.mu4 / (&self.mu2 * &self.mu2))
        }
    }

    pub fn kurtosis_ratio_f64(&self) -> f64 {
        self.kurtosis_ratio().map_or(f64::NAN, |k| ratio_to_f64(&k))
    }
}

/// Variance over all `ℓⁿ` equiprobable sequences:
/// `(ℓ−1)/ℓ · n(n−1)/2 + (ℓ²−1)/ℓ² · n(n−1)(n−2)/9`.
pub fn var_closed(n: usize, alphabet: usize) -> BigRational {
    let (n, l) = (n as i64, alphabet as i64);
    frac(l - 1, l) * frac(n * (n - 1), 2) + frac(l * l - 1, l * l) * frac(n * (n - 1) * (n - 2), 9)
}

/// Fourth central moment over all `ℓⁿ` equiprobable sequences.
pub fn mu4_closed(n: usize, alphabet: usize) -> BigRational {
    let n = r(n as i64);
    let l = r(alphabet as i64);
    let one = BigRational::one();
    let l2 = &l * &l;
    let l3 = &l2 * &l;
    let l4 = &l2 * &l2;
    let pairs = &n * (&n - &one);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    let n4 = &n3 * &n;
    let a = (&l2 - &one) / &l2;

    let t1 =
        &a * &a * (r(100) * &n4 + r(328) * &n3 - r(127) * &n2 - r(997) * &n - r(372)) / r(2700);
    let t2 = (&l2 - &one) / &l4 * (r(252) * &n3 + r(507) * &n2 - r(3623) * &n + r(3652)) / r(900);
    let t3 = (&l2 - &one) / &l3 * (r(2) * &n3 + r(3) * &n2 - r(5) * &n - r(15)) / r(6);
    let t4 = (&l - &one) / &l3 * (&n2 + r(11) * &n - r(25)) / r(2);
    (t1 + t2 - t3 + t4) * pairs
}

/// `μ₂ = n(n²−1)/12` for uniform binary sequences.
pub fn binary_mu2(n: usize) -> BigRational {
    let n = n as i64;
    frac(n * (n * n - 1), 12)
}

/// `μ₄ = n(n²−1)(5n³−6n²−5n+14)/240`.
pub fn binary_mu4(n: usize) -> BigRational {
    let n = BigInt::from(n);
    let poly = BigInt::from(5) * &n * &n * &n - BigInt::from(6) * &n * &n - BigInt::from(5) * &n
        + BigInt::from(14);
    BigRational::new(&n * (&n * &n - 1) * poly, BigInt::from(240))
}

/// `μ₆ = n(n²−1)(35n⁶−126n⁵+74n⁴+420n³−829n²−294n+1488)/4032`.
pub fn binary_mu6(n: usize) -> BigRational {
    let n = BigInt::from(n);
    let coeffs = [35i64, -126, 74, 420, -829, -294, 1488];
    let poly = coeffs
        .iter()
        .fold(BigInt::zero(), |acc, &c| acc * &n + BigInt::from(c));
    BigRational::new(&n * (&n * &n - 1) * poly, BigInt::from(4032))
}

/// Exact kurtosis ratio for uniform binary sequences, `3(5n³−6n²−5n+14)/(5n(n²−1))`.
pub fn binary_kurtosis_ratio(n: usize) -> Option<BigRational> {
    if n < 2 {
        return None;
    }
    let n = n as i64;
    Some(frac(
        3 * (5 * n * n * n - 6 * n * n - 5 * n + 14),
        5 * n * (n * n - 1),
    ))
}

pub fn binary_moments(n: usize) -> MomentSet {
    MomentSet {
        n,
        model: NullModel::Uniform { alphabet: 2 },
        mu2: binary_mu2(n),
        mu4: binary_mu4(n),
        mu6: Some(binary_mu6(n)),
    }
}

/// Moments for independent binary digits with `P(0) = p`:
/// `μ₂ = n(n²−1)pq/3` and
/// `μ₄ = n(n²−1)(5n³−6n²−5n+14)p²q²/15 + n(n²−1)(3n²−7)pq(p−q)²/15`.
///
/// A float `p` is taken at its exact binary value.
pub fn pq_moments(n: usize, p: &Bias) -> Result<MomentSet> {
    p.validate()?;
    let p_exact = match p {
        Bias::Exact(p) => p.clone(),
        Bias::Float(x) => BigRational::from_float(*x).expect("validated finite"),
    };
    let q = BigRational::one() - &p_exact;
    let pq = &p_exact * &q;
    let diff = &p_exact - &q;
    let n_ = n as i64;
    let base = r(n_ * (n_ * n_ - 1));
    let quartic = r(5 * n_ * n_ * n_ - 6 * n_ * n_ - 5 * n_ + 14);
    let mu2 = &base * &pq / r(3);
    let mu4 = &base * quartic * &pq * &pq / r(15)
        + &base * r(3 * n_ * n_ - 7) * &pq * &diff * &diff / r(15);
    Ok(MomentSet {
        n,
        model: NullModel::BiasedBinary { p: p.clone() },
        mu2,
        mu4,
        mu6: None,
    })
}

/// Closed-form moments for any supported null model.
pub fn closed_moments(n: usize, model: &NullModel) -> Result<MomentSet> {
    match model {
        NullModel::Uniform { alphabet: 2 } => Ok(binary_moments(n)),
        NullModel::Uniform { alphabet } => Ok(MomentSet {
            n,
            model: model.clone(),
            mu2: var_closed(n, *alphabet),
            mu4: mu4_closed(n, *alphabet),
            mu6: None,
        }),
        NullModel::BiasedBinary { p } => pq_moments(n, p),
    }
}

/// A moment computed from a distribution: exact for count and rational weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum MomentValue {
    Exact(#[serde(serialize_with = "ser_ratio")] BigRational),
    Float(f64),
}

fn ser_ratio<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl MomentValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            MomentValue::Exact(v) => ratio_to_f64(v),
            MomentValue::Float(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            MomentValue::Exact(v) => Some(v),
            MomentValue::Float(_) => None,
        }
    }
}

/// `Σ_t weight(t)·t^k / total`.
pub fn moment_from_dist(d: &ScoreDistribution, k: u32) -> MomentValue {
    let low = d.low();
    match d.weights() {
        Weights::Count(w) => {
            let mut num = BigInt::zero();
            let mut total = BigInt::zero();
            for (i, c) in w.iter().enumerate() {
                let c = BigInt::from(c.clone());
                num += BigInt::from(low + i as i64).pow(k) * &c;
                total += c;
            }
            MomentValue::Exact(BigRational::new(num, total))
        }
        Weights::Rational(w) => {
            let mut num = BigRational::zero();
            let mut total = BigRational::zero();
            for (i, p) in w.iter().enumerate() {
                num += BigRational::from_integer(BigInt::from(low + i as i64).pow(k)) * p;
                total += p;
            }
            MomentValue::Exact(num / total)
        }
        Weights::Float(w) => {
            let total: f64 = w.iter().sum();
            let num: f64 = w
                .iter()
                .enumerate()
                .map(|(i, p)| p * ((low + i as i64) as f64).powi(k as i32))
                .sum();
            MomentValue::Float(num / total)
        }
    }
}

/// Which increment to use in the one-step variance recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarianceIncrement {
    /// `n(ℓ−1)/ℓ + n(n−1)/3 · (ℓ²−1)/ℓ²`, consistent with the closed variance.
    Corrected,
    /// The historical printing with `n(n−3)/3` in the second term.
    AsPrinted,
}

/// `μ₂(n+1) − μ₂(n)` according to the chosen form.
pub fn variance_increment(n: usize, alphabet: usize, form: VarianceIncrement) -> BigRational {
    let (n, l) = (n as i64, alphabet as i64);
    let second = match form {
        VarianceIncrement::Corrected => n * (n - 1),
        VarianceIncrement::AsPrinted => n * (n - 3),
    };
    frac(n * (l - 1), l) + frac(second, 3) * frac(l * l - 1, l * l)
}

/// Whether `var(n+1) − var(n)` equals the increment in the chosen form.
pub fn variance_recurrence_holds(n: usize, alphabet: usize, form: VarianceIncrement) -> bool {
    var_closed(n + 1, alphabet) - var_closed(n, alphabet) == variance_increment(n, alphabet, form)
}

pub fn variance_recurrence_check(n: usize, alphabet: usize) -> bool {
    variance_recurrence_holds(n, alphabet, VarianceIncrement::Corrected)
}

/// `(2k−1)!! = 1·3·5⋯(2k−1)`, the `2k`-th moment of a standard normal.
pub fn odd_double_factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1))
}

/// Standardised moment `μ_{2k}/σ^{2k}` from a distribution, as a float.
pub fn standardized_moment(d: &ScoreDistribution, k: u32) -> f64 {
    let mu2 = moment_from_dist(d, 2).to_f64();
    let m = moment_from_dist(d, 2 * k).to_f64();
    m / mu2.powi(k as i32)
}

/// `true` when every odd moment up to `max_k` is zero (exact modes) or below `tol`.
pub fn odd_moments_vanish(d: &ScoreDistribution, max_k: u32, tol: f64) -> bool {
    (1..=max_k)
        .step_by(2)
        .all(|k| match moment_from_dist(d, k) {
            MomentValue::Exact(v) => v.is_zero(),
            MomentValue::Float(v) => v.abs() <= tol,
        })
}

/// `μ₄ ≥ μ₂²` and `μ₂ ≥ 0` as exact rationals.
pub fn satisfies_moment_inequalities(m: &MomentSet) -> bool {
    !m.mu2.is_negative()
        && m.mu4 >= &m.mu2 * &m.mu2
        && m.mu6.as_ref().is_none_or(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dist_binary, dist_binary_pq, dist_general, Limits};

    #[test]
    fn variance_values() {
        assert!(var_closed(1, 5).is_zero());
        assert_eq!(var_closed(3, 2), r(2));
        assert_eq!(var_closed(3, 3), frac(70, 27));
        assert_eq!(var_closed(2, 2), frac(1, 2));
    }

    #[test]
    fn fourth_moment_values() {
        assert_eq!(mu4_closed(2, 2), frac(1, 2));
        assert!(mu4_closed(1, 7).is_zero());
        // 81 sequences of length 4 over three digits, enumerated independently.
        assert_eq!(mu4_closed(4, 3), frac(2452, 27));
    }

    #[test]
    fn binary_specialisation() {
        for n in 1..=100 {
            assert_eq!(var_closed(n, 2), binary_mu2(n));
            assert_eq!(mu4_closed(n, 2), binary_mu4(n));
        }
        let m = binary_moments(2);
        assert_eq!(m.mu4, frac(1, 2));
        assert_eq!(m.mu6, Some(frac(1, 2)));
        assert_eq!(binary_moments(3).mu2, r(2));
    }

    #[test]
    fn pq_reduces() {
        for n in 1..=20 {
            let half = pq_moments(n, &Bias::Exact(frac(1, 2))).unwrap();
            assert_eq!(half.mu2, binary_mu2(n));
            assert_eq!(half.mu4, binary_mu4(n));
        }
        for p in [frac(1, 10), frac(3, 10), frac(5, 7)] {
            let q = BigRational::one() - &p;
            let m = pq_moments(2, &Bias::Exact(p.clone())).unwrap();
            assert_eq!(m.mu2, r(2) * &p * &q);
            assert_eq!(m.mu4, r(2) * &p * &q);
        }
        assert!(pq_moments(3, &Bias::Exact(r(1))).is_err());
        assert!(pq_moments(3, &Bias::Float(0.0)).is_err());
    }

    #[test]
    fn pq_matches_distribution_float() {
        let m = pq_moments(5, &Bias::Float(0.3)).unwrap();
        let d = dist_binary_pq(5, &Bias::Float(0.3)).unwrap();
        let m2 = moment_from_dist(&d, 2).to_f64();
        let m4 = moment_from_dist(&d, 4).to_f64();
        assert!((m2 - ratio_to_f64(&m.mu2)).abs() < 1e-10);
        assert!((m4 - ratio_to_f64(&m.mu4)).abs() < 1e-8);
    }

    #[test]
    fn from_distribution() {
        let d3 = dist_binary(3).unwrap();
        assert_eq!(moment_from_dist(&d3, 2), MomentValue::Exact(r(2)));
        assert!(odd_moments_vanish(&d3, 7, 0.0));
        let g = dist_general(3, 3, &Limits::default()).unwrap();
        assert_eq!(moment_from_dist(&g, 2), MomentValue::Exact(frac(70, 27)));
        for n in 1..=14 {
            let d = dist_binary(n).unwrap();
            assert_eq!(
                moment_from_dist(&d, 6).exact().unwrap(),
                &binary_mu6(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn recurrence() {
        assert!(variance_recurrence_check(2, 2));
        assert_eq!(
            variance_increment(2, 2, VarianceIncrement::Corrected),
            frac(3, 2)
        );
        assert!(!variance_recurrence_holds(
            2,
            2,
            VarianceIncrement::AsPrinted
        ));
        for l in 2..=10 {
            assert!(variance_recurrence_check(1, l));
            assert_eq!(
                var_closed(2, l) - var_closed(1, l),
                frac(l as i64 - 1, l as i64)
            );
        }
        assert!(variance_recurrence_check(5, 4));
    }

    #[test]
    fn kurtosis_ratio_binary() {
        for n in 2..=60 {
            assert_eq!(binary_moments(n).kurtosis_ratio(), binary_kurtosis_ratio(n));
        }
        let k = ratio_to_f64(&binary_kurtosis_ratio(400).unwrap());
        assert!((k - 3.0).abs() < 0.01);
        assert_eq!(odd_double_factorial(2), BigInt::from(3));
        assert_eq!(odd_double_factorial(3), BigInt::from(15));
        assert!(binary_moments(1).kurtosis_ratio().is_none());
    }

    #[test]
    fn inequalities() {
        for n in 1..30 {
            for l in 2..7 {
                let m = closed_moments(n, &NullModel::Uniform { alphabet: l }).unwrap();
                assert!(satisfies_moment_inequalities(&m));
            }
        }
    }
}

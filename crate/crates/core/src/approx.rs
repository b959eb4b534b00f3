//! Characteristic functions, normal and Edgeworth approximations, and p-values.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    exact_distribution, ratio_to_f64, Engine, Limits, NullModel, ScoreDistribution,
};
use crate::moments::closed_moments;
use crate::score::max_abs_score;

/// Below this many sequences the exact distribution is cheap and preferable.
pub const APPROXIMATION_ADVISORY: f64 = 1e6;

/// Binary null models with a product-form characteristic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharMode {
    Uniform,
    /// Digit-0 probability `p`.
    Biased(f64),
}

/// `φ(θ) = E[e^{iθS}]` for binary sequences of length `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharFunction {
    pub n: usize,
    pub mode: CharMode,
}

impl CharFunction {
    pub fn new(n: usize, mode: CharMode) -> Self {
        Self { n, mode }
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        char_eval(self.n, theta, self.mode)
    }
}

/// Cosine-product form of the characteristic function.
///
/// Uniform: `∏ cos²(kθ)` for odd `n = 2ν+1`, `∏ cos²((2k−1)θ/2)` for even `n = 2ν`.
/// Biased: `∏ (p² + q² + 2pq·cos(wₖθ))` with `wₖ = 2k` (odd n) or `2k−1` (even n).
pub fn char_eval(n: usize, theta: f64, mode: CharMode) -> Complex64 {
    let nu = n / 2;
    let odd = n % 2 == 1;
    let value: f64 = (1..=nu)
        .map(|k| {
            let k = k as f64;
            match mode {
                CharMode::Uniform => {
                    let c = if odd {
                        (k * theta).cos()
                    } else {
                        ((2.0 * k - 1.0) / 2.0 * theta).cos()
                    };
                    c * c
                }
                CharMode::Biased(p) => {
                    let q = 1.0 - p;
                    let w = if odd { 2.0 * k } else { 2.0 * k - 1.0 };
                    p * p + q * q + 2.0 * p * q * (w * theta).cos()
                }
            }
        })
        .product();
    Complex64::new(value, 0.0)
}

/// `Σ_t P(S = t)·e^{iθt}` straight from a distribution.
pub fn char_from_dist(d: &ScoreDistribution, theta: f64) -> Complex64 {
    d.probabilities_f64()
        .into_iter()
        .map(|(t, p)| Complex64::from_polar(p, theta * t as f64))
        .sum()
}

/// Recovers `P(S = t)` on `[−N, N]`, `N = n(n−1)/2`, from `2N+1` equally spaced
/// samples of the characteristic function.
pub fn char_invert(n: usize, mode: CharMode) -> ScoreDistribution {
    let big_n = max_abs_score(n);
    let m = 2 * big_n + 1;
    let step = 2.0 * PI / m as f64;
    let samples: Vec<Complex64> = (0..m)
        .map(|j| char_eval(n, step * j as f64, mode))
        .collect();
    let probs = (-big_n..=big_n)
        .map(|t| {
            let sum: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, phi)| {
                    // Reduce j·t mod m first so the angle stays small and exact.
                    let r = (j as i64 * t).rem_euclid(m);
                    phi * Complex64::from_polar(1.0, -step * r as f64)
                })
                .sum();
            sum.re / m as f64
        })
        .collect();
    let model = match mode {
        CharMode::Uniform => NullModel::Uniform { alphabet: 2 },
        CharMode::Biased(p) => NullModel::BiasedBinary {
            p: crate::exact::Bias::Float(p),
        },
    };
    ScoreDistribution::from_float_probabilities(n, model, -big_n, probs)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `erfc(z)` for `z ≥ 0`.
fn erfc_nonneg(z: f64) -> f64 {
    if z < 3.0 {
        // erf(z) = 2/√π · e^{−z²} · Σ 2ⁿ z^{2n+1} / (2n+1)!!, all terms positive.
        let mut term = z;
        let mut sum = z;
        let z2 = z * z;
        let mut k = 0.0;
        while term > 1e-17 * sum {
            k += 1.0;
            term *= 2.0 * z2 / (2.0 * k + 1.0);
            sum += term;
        }
        1.0 - 2.0 / PI.sqrt() * (-z2).exp() * sum
    } else {
        // erfc(z) = e^{−z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …)))), Lentz's method.
        let tiny = 1e-300;
        let mut f = z;
        let mut c = z;
        let mut d = 0.0;
        for k in 1..500 {
            let a = k as f64 / 2.0;
            d = z + a * d;
            d = if d.abs() < tiny { tiny } else { d };
            c = z + a / c;
            c = if c.abs() < tiny { tiny } else { c };
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-z * z).exp() / PI.sqrt() / f
    }
}

/// Standard normal distribution function Φ.
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let z = x.abs() * FRAC_1_SQRT_2;
    let upper = 0.5 * erfc_nonneg(z);
    if x >= 0.0 {
        1.0 - upper
    } else {
        upper
    }
}

/// Fourth derivative of Φ: `(3x − x³)·φ(x)`.
pub fn normal_cdf_d4(x: f64) -> f64 {
    (3.0 * x - x * x * x) * normal_pdf(x)
}

/// One-term Edgeworth correction `Φ(x) + (μ₄/σ⁴ − 3)/24 · Φ⁽⁴⁾(x)`.
pub fn edgeworth_cdf(x: f64, kurtosis_ratio: f64) -> f64 {
    normal_cdf(x) + (kurtosis_ratio - 3.0) / 24.0 * normal_cdf_d4(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproxKind {
    Exact,
    Normal,
    Edgeworth,
}

impl fmt::Display for ApproxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ApproxKind::Exact => "exact",
            ApproxKind::Normal => "normal",
            ApproxKind::Edgeworth => "edgeworth",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tail {
    #[serde(rename = "two-sided")]
    TwoSided,
    #[serde(rename = "left")]
    Left,
    #[serde(rename = "right")]
    Right,
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::TwoSided => "two-sided",
            Tail::Left => "left",
            Tail::Right => "right",
        })
    }
}

impl FromStr for Tail {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "two-sided" => Ok(Tail::TwoSided),
            "left" => Ok(Tail::Left),
            "right" => Ok(Tail::Right),
            other => Err(format!("unknown tail {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PValueOptions {
    /// Shift the evaluation point by half a lattice step toward the centre.
    pub continuity: bool,
    pub limits: Limits,
}

impl Default for PValueOptions {
    fn default() -> Self {
        Self {
            continuity: true,
            limits: Limits::default(),
        }
    }
}

/// A p-value together with the context needed to report it.
#[derive(Debug, Clone, PartialEq)]
pub struct PValue {
    pub value: f64,
    /// Present for exact computations with exact weights.
    pub exact: Option<BigRational>,
    pub kind: ApproxKind,
    pub engine: Engine,
    pub tail: Tail,
    pub sigma: f64,
    pub z_score: f64,
    pub kurtosis_ratio: f64,
    pub warnings: Vec<String>,
}

/// Number of sequences `ℓⁿ` as a float (saturates to infinity).
pub fn sequence_count(n: usize, alphabet: usize) -> f64 {
    (alphabet as f64).powi(n as i32)
}

/// Half the lattice step of S: odd-length binary scores are all even.
pub fn continuity_offset(n: usize, model: &NullModel) -> f64 {
    if model.alphabet() == 2 && n % 2 == 1 {
        1.0
    } else {
        0.5
    }
}

/// Approximate `P(S ≤ s)`; callers apply any continuity shift to `s`.
pub fn approx_cdf(s: f64, sigma: f64, kurtosis: f64, kind: ApproxKind) -> f64 {
    let x = s / sigma;
    match kind {
        ApproxKind::Edgeworth => edgeworth_cdf(x, kurtosis),
        _ => normal_cdf(x),
    }
}

fn tail_from_exact(d: &ScoreDistribution, s: i64, tail: Tail) -> (f64, Option<BigRational>) {
    let (lo, hi) = (d.low(), d.high());
    let ranges: Vec<(i64, i64)> = match tail {
        Tail::Right => vec![(s, hi)],
        Tail::Left => vec![(lo, s)],
        Tail::TwoSided if s == 0 => vec![(lo, hi)],
        Tail::TwoSided => vec![(lo, -s.abs()), (s.abs(), hi)],
    };
    match d.probabilities_exact() {
        Some(probs) => {
            let exact: BigRational = probs
                .into_iter()
                .filter(|(t, _)| ranges.iter().any(|(a, b)| t >= a && t <= b))
                .map(|(_, p)| p)
                .sum();
            (ratio_to_f64(&exact), Some(exact))
        }
        None => {
            let v = ranges
                .iter()
                .map(|&(a, b)| d.range_probability_f64(a, b))
                .sum::<f64>();
            (v.clamp(0.0, 1.0), None)
        }
    }
}

/// p-value of an observed score under a null model.
///
/// Exact: tail sums of the exact distribution; two-sided is `P(|S| ≥ |s|)`.
/// Normal/Edgeworth: the CDF evaluated at `(s ± c)/σ`, `c` half the lattice step
/// when continuity correction is on; two-sided doubles the upper tail of `|s|`.
pub fn p_value(
    s_obs: i64,
    n: usize,
    model: &NullModel,
    kind: ApproxKind,
    tail: Tail,
    opts: &PValueOptions,
) -> Result<PValue> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let max = max_abs_score(n);
    if s_obs.abs() > max {
        return Err(Error::ScoreOutOfRange { s: s_obs, n, max });
    }
    let moments = closed_moments(n, model)?;
    let sigma = moments.sigma();
    let kurtosis = moments.kurtosis_ratio_f64();
    let z_score = if sigma > 0.0 {
        s_obs as f64 / sigma
    } else {
        0.0
    };
    let mut warnings = Vec::new();

    let base = PValue {
        value: 1.0,
        exact: None,
        kind,
        engine: Engine::Exact,
        tail,
        sigma,
        z_score,
        kurtosis_ratio: kurtosis,
        warnings: Vec::new(),
    };

    if n == 1 {
        // S is identically zero.
        return Ok(PValue {
            exact: Some(BigRational::one()),
            ..base
        });
    }

    match kind {
        ApproxKind::Exact => {
            let (dist, engine) = exact_distribution(n, model, &opts.limits)?;
            let (value, exact) = tail_from_exact(&dist, s_obs, tail);
            Ok(PValue {
                value,
                exact,
                engine,
                ..base
            })
        }
        ApproxKind::Normal | ApproxKind::Edgeworth => {
            let count = sequence_count(n, model.alphabet());
            if count <= APPROXIMATION_ADVISORY {
                warnings.push(format!(
                    "l^n = {count} <= 10^6 is outside the approximation regime; the exact method is recommended"
                ));
            }
            let c = if opts.continuity {
                continuity_offset(n, model)
            } else {
                0.0
            };
            let s = s_obs as f64;
            let right = |s: f64| 1.0 - approx_cdf(s - c, sigma, kurtosis, kind);
            let raw = match tail {
                Tail::Right => right(s),
                Tail::Left => approx_cdf(s + c, sigma, kurtosis, kind),
                Tail::TwoSided if s_obs == 0 => 1.0,
                Tail::TwoSided => 2.0 * right(s.abs()),
            };
            let value = raw.clamp(0.0, 1.0);
            // A doubled tail above 1 near the centre is expected; anything else
            // outside [0, 1] is a truncated-series artifact worth flagging.
            if value != raw && kind == ApproxKind::Edgeworth {
                warnings.push(format!("edgeworth value {raw:.6e} clamped to [0, 1]"));
            }
            Ok(PValue {
                value,
                engine: Engine::Approximation,
                warnings,
                ..base
            })
        }
    }
}

/// Largest absolute gap between the exact CDF and an approximation over the
/// support of `d`; with continuity correction the approximation is evaluated half
/// a lattice step above each support point.
pub fn max_cdf_error(d: &ScoreDistribution, kind: ApproxKind, continuity: bool) -> Result<f64> {
    let moments = closed_moments(d.n(), d.model())?;
    let sigma = moments.sigma();
    let kurtosis = moments.kurtosis_ratio_f64();
    let c = if continuity {
        continuity_offset(d.n(), d.model())
    } else {
        0.0
    };
    let mut cum = 0.0;
    let mut worst: f64 = 0.0;
    for (t, p) in d.probabilities_f64() {
        if p == 0.0 {
            continue;
        }
        cum += p;
        let approx = match kind {
            ApproxKind::Exact => cum,
            _ => approx_cdf(t as f64 + c, sigma, kurtosis, kind),
        };
        worst = worst.max((approx - cum).abs());
    }
    Ok(worst)
}

/// Sum of `P(S = t)` over the support as a float; used by float-mode checks.
pub fn total_probability(d: &ScoreDistribution) -> f64 {
    d.probabilities_f64().iter().map(|x| x.1).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dist_binary, dist_binary_pq, Bias};

    #[test]
    fn char_function_basics() {
        for n in 1..10 {
            assert_eq!(char_eval(n, 0.0, CharMode::Uniform).re, 1.0);
            assert!((char_eval(n, 0.0, CharMode::Biased(0.3)).re - 1.0).abs() < 1e-15);
        }
        assert!((char_eval(3, PI, CharMode::Uniform).re - 1.0).abs() < 1e-15);
        let theta: f64 = 1.0;
        let direct =
            (Complex64::from_polar(1.0, theta) + 2.0 + Complex64::from_polar(1.0, -theta)) / 4.0;
        let phi = char_eval(2, theta, CharMode::Uniform);
        assert!((phi - direct).norm() < 1e-15);
        assert!((phi.re - (theta / 2.0).cos().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn char_matches_distribution() {
        let d = dist_binary(9).unwrap();
        let b = dist_binary_pq(8, &Bias::Float(0.2)).unwrap();
        for i in 0..50 {
            let theta = -PI + 0.13 * i as f64;
            assert!(
                (char_eval(9, theta, CharMode::Uniform) - char_from_dist(&d, theta)).norm() < 1e-12
            );
            assert!(
                (char_eval(8, theta, CharMode::Biased(0.2)) - char_from_dist(&b, theta)).norm()
                    < 1e-12
            );
        }
    }

    #[test]
    fn inversion_small() {
        let d = char_invert(3, CharMode::Uniform);
        for (t, want) in [
            (-2, 0.25),
            (-1, 0.0),
            (0, 0.5),
            (1, 0.0),
            (2, 0.25),
            (3, 0.0),
        ] {
            assert!((d.probability_f64(t) - want).abs() < 1e-10, "t={t}");
        }
        let b = char_invert(2, CharMode::Biased(0.3));
        assert!((b.probability_f64(-1) - 0.21).abs() < 1e-10);
        assert!((b.probability_f64(0) - 0.58).abs() < 1e-10);
        assert!((b.probability_f64(1) - 0.21).abs() < 1e-10);
        assert!((total_probability(&b) - 1.0).abs() < 1e-12);
    }

    /// Maclaurin series of erf, alternating form, summed with 50+ terms.
    fn erf_maclaurin(z: f64) -> f64 {
        let mut sum = 0.0;
        let mut power = z;
        let mut fact = 1.0;
        for k in 0..80 {
            if k > 0 {
                power *= -z * z;
                fact *= k as f64;
            }
            sum += power / (fact * (2 * k + 1) as f64);
        }
        2.0 / PI.sqrt() * sum
    }

    #[test]
    fn normal_cdf_accuracy() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert_eq!(normal_cdf(40.0), 1.0);
        assert_eq!(normal_cdf(-40.0), 0.0);
        let reference = 0.5 * (1.0 + erf_maclaurin(FRAC_1_SQRT_2));
        assert!((normal_cdf(1.0) - reference).abs() < 1e-13);
        for i in -60..=60 {
            let x = i as f64 * 0.1;
            assert!((normal_cdf(-x) - (1.0 - normal_cdf(x))).abs() < 1e-15);
            if x.abs() <= 4.0 {
                let r = 0.5 * (1.0 + erf_maclaurin(x * FRAC_1_SQRT_2));
                assert!((normal_cdf(x) - r).abs() < 1e-12, "x={x}");
            }
        }
        // Both branches of erfc meet smoothly.
        let z = 3.0 * std::f64::consts::SQRT_2;
        assert!((normal_cdf(-z + 1e-9) - normal_cdf(-z - 1e-9)).abs() < 1e-11);
        assert!((normal_cdf(-5.0) - 2.866515718791939e-7).abs() < 1e-19);
    }

    #[test]
    fn fourth_derivative_by_differences() {
        let h = 0.01;
        for i in -30..=30 {
            let x = i as f64 * 0.1;
            // Third central difference of the density approximates Φ''''.
            let fd = (normal_pdf(x + 1.5 * h) - 3.0 * normal_pdf(x + 0.5 * h)
                + 3.0 * normal_pdf(x - 0.5 * h)
                - normal_pdf(x - 1.5 * h))
                / (h * h * h);
            assert!((fd - normal_cdf_d4(x)).abs() < 1e-4, "x={x}");
        }
    }

    #[test]
    fn edgeworth_reductions() {
        assert_eq!(edgeworth_cdf(0.0, 2.5), 0.5);
        for x in [-2.0, -0.3, 1.7] {
            assert_eq!(edgeworth_cdf(x, 3.0), normal_cdf(x));
        }
    }

    #[test]
    fn exact_p_values() {
        let opts = PValueOptions::default();
        let uni2 = NullModel::Uniform { alphabet: 2 };
        let p = p_value(2, 3, &uni2, ApproxKind::Exact, Tail::TwoSided, &opts).unwrap();
        assert_eq!(p.value, 0.5);
        assert_eq!(p.engine, Engine::Pgf);
        for n in 2..8 {
            let p = p_value(0, n, &uni2, ApproxKind::Exact, Tail::TwoSided, &opts).unwrap();
            assert_eq!(p.exact.unwrap(), BigRational::one());
        }
        assert!(p_value(4, 3, &uni2, ApproxKind::Exact, Tail::Right, &opts).is_err());
    }

    #[test]
    fn exact_two_sided_monotone() {
        let opts = PValueOptions::default();
        let model = NullModel::Uniform { alphabet: 3 };
        let mut last = 2.0;
        for s in 0..=15 {
            let p = p_value(s, 6, &model, ApproxKind::Exact, Tail::TwoSided, &opts).unwrap();
            assert_eq!(p.engine, Engine::Recursion);
            assert!(p.value <= last);
            last = p.value;
        }
    }

    #[test]
    fn approximation_warns_and_clamps() {
        let opts = PValueOptions::default();
        let uni2 = NullModel::Uniform { alphabet: 2 };
        let p = p_value(2, 5, &uni2, ApproxKind::Normal, Tail::TwoSided, &opts).unwrap();
        assert!(p
            .warnings
            .iter()
            .any(|w| w.contains("approximation regime")));
        for s in -10..=10 {
            for kind in [ApproxKind::Normal, ApproxKind::Edgeworth] {
                for tail in [Tail::TwoSided, Tail::Left, Tail::Right] {
                    let p = p_value(s, 5, &uni2, kind, tail, &opts).unwrap();
                    assert!((0.0..=1.0).contains(&p.value));
                }
            }
        }
    }

    #[test]
    fn cap_refusal() {
        let opts = PValueOptions {
            continuity: true,
            limits: Limits::uniform(10),
        };
        let err = p_value(
            0,
            40,
            &NullModel::Uniform { alphabet: 4 },
            ApproxKind::Exact,
            Tail::Right,
            &opts,
        );
        assert!(matches!(err, Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn lattice_offsets() {
        let uni2 = NullModel::Uniform { alphabet: 2 };
        assert_eq!(continuity_offset(7, &uni2), 1.0);
        assert_eq!(continuity_offset(8, &uni2), 0.5);
        assert_eq!(
            continuity_offset(7, &NullModel::Uniform { alphabet: 3 }),
            0.5
        );
    }
}

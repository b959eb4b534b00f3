//! Command implementations behind the `kdigits` binary.
//!
//! Every command returns its output as a value (or a string) so it can be tested
//! without spawning a process. Output is deterministic: no hash-ordered
//! containers, and floats print with Rust's shortest round-trip formatting.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::approx::{
    approx_cdf, continuity_offset, max_cdf_error, p_value, ApproxKind, PValueOptions, Tail,
};
use crate::error::{Error, Result};
use crate::exact::{
    dist_by_counts, exact_cost_estimate, exact_distribution, Bias, Engine, Limits, NullModel,
    ScoreDistribution, Weights,
};
use crate::moments::closed_moments;
use crate::oracle::{brute_dist, brute_dist_pq};
use crate::score::{score, DigitSequence};

pub const SCHEMA_VERSION: u32 = 1;

/// Method selection, including automatic choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exact when the exact engine fits under the cap, Edgeworth otherwise.
    Auto,
    Exact,
    Normal,
    Edgeworth,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "exact" => Ok(Method::Exact),
            "normal" => Ok(Method::Normal),
            "edgeworth" => Ok(Method::Edgeworth),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

impl Method {
    pub fn resolve(self, n: usize, model: &NullModel, limits: &Limits) -> ApproxKind {
        match self {
            Method::Exact => ApproxKind::Exact,
            Method::Normal => ApproxKind::Normal,
            Method::Edgeworth => ApproxKind::Edgeworth,
            Method::Auto => {
                if exact_cost_estimate(n, model) <= limits.state_cap {
                    ApproxKind::Exact
                } else {
                    ApproxKind::Edgeworth
                }
            }
        }
    }
}

/// Parses whitespace- or comma-separated decimal digit tokens.
pub fn parse_digits(input: &str, alphabet: usize) -> Result<DigitSequence> {
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    let mut digits = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() || b == b',' {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b',' {
            i += 1;
        }
        let token = &input[start..i];
        let value: u64 = token.parse().map_err(|_| Error::Parse {
            offset: start,
            token: token.to_string(),
            message: "expected a decimal digit".into(),
        })?;
        if value >= alphabet as u64 {
            return Err(Error::Parse {
                offset: start,
                token: token.to_string(),
                message: format!("digit must be below the alphabet size {alphabet}"),
            });
        }
        digits.push(value as u32);
    }
    if digits.is_empty() {
        return Err(Error::Parse {
            offset: input.len(),
            token: String::new(),
            message: "no digits in input".into(),
        });
    }
    DigitSequence::new(digits, alphabet)
}

/// Maps raw bytes to digits `b mod ℓ`.
pub fn digits_from_bytes(bytes: &[u8], alphabet: usize) -> Result<DigitSequence> {
    if alphabet < 2 {
        return Err(Error::AlphabetTooSmall(alphabet));
    }
    DigitSequence::new(
        bytes
            .iter()
            .map(|&b| (b as usize % alphabet) as u32)
            .collect(),
        alphabet,
    )
}

/// Parses `p` as a decimal (`0.3`) or a fraction (`3/10`) into an exact rational.
pub fn parse_probability(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidProbability(s.to_string());
    let s = s.trim();
    let p = if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        BigRational::new(num, den)
    } else {
        let (negative, unsigned) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = unsigned.split_once('.').unwrap_or((unsigned, ""));
        if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let magnitude = BigRational::new(int * &scale + frac, scale);
        if negative {
            -magnitude
        } else {
            magnitude
        }
    };
    Bias::Exact(p.clone()).validate()?;
    Ok(p)
}

/// Builds the null model from `--alphabet` and `--p`.
pub fn model_from_flags(alphabet: usize, p: Option<&str>) -> Result<NullModel> {
    match p {
        None => {
            if alphabet < 2 {
                return Err(Error::AlphabetTooSmall(alphabet));
            }
            Ok(NullModel::Uniform { alphabet })
        }
        Some(_) if alphabet != 2 => Err(Error::NotBinary(alphabet)),
        Some(p) => Ok(NullModel::BiasedBinary {
            p: Bias::Exact(parse_probability(p)?),
        }),
    }
}

fn model_p(model: &NullModel) -> Option<String> {
    match model {
        NullModel::BiasedBinary { p } => Some(p.to_string()),
        NullModel::Uniform { .. } => None,
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), |v| v.to_string())
}

/// Significance report for one observed sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub schema_version: u32,
    pub n: usize,
    pub alphabet: usize,
    pub p: Option<String>,
    pub s: i64,
    pub s_plus: u64,
    pub s_minus: u64,
    pub method: ApproxKind,
    pub tail: Tail,
    pub p_value: f64,
    pub p_value_exact: Option<String>,
    pub z_score: Option<f64>,
    pub kurtosis_ratio: Option<f64>,
    pub warnings: Vec<String>,
    pub engine: Engine,
}

impl TestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n               {}", self.n);
        match &self.p {
            Some(p) => {
                let _ = writeln!(out, "model           binary, P(0) = {p}");
            }
            None => {
                let _ = writeln!(out, "model           uniform, alphabet {}", self.alphabet);
            }
        }
        let _ = writeln!(out, "S+              {}", self.s_plus);
        let _ = writeln!(out, "S-              {}", self.s_minus);
        let _ = writeln!(out, "S               {}", self.s);
        let _ = writeln!(out, "method          {} ({})", self.method, self.engine);
        let _ = writeln!(out, "tail            {}", self.tail);
        match &self.p_value_exact {
            Some(exact) => {
                let _ = writeln!(out, "p-value         {} = {}", self.p_value, exact);
            }
            None => {
                let _ = writeln!(out, "p-value         {}", self.p_value);
            }
        }
        let _ = writeln!(out, "z-score         {}", fmt_opt(self.z_score));
        let _ = writeln!(out, "kurtosis ratio  {}", fmt_opt(self.kurtosis_ratio));
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreOptions {
    pub model: NullModel,
    pub method: Method,
    pub tail: Tail,
    pub continuity: bool,
    pub limits: Limits,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        Self {
            model: NullModel::Uniform { alphabet: 2 },
            method: Method::Auto,
            tail: Tail::TwoSided,
            continuity: true,
            limits: Limits::default(),
        }
    }
}

/// Scores a sequence and tests it against the null model.
pub fn cmd_score(seq: &DigitSequence, opts: &ScoreOptions) -> Result<TestReport> {
    if seq.alphabet() != opts.model.alphabet() {
        return Err(Error::NotBinary(seq.alphabet()));
    }
    let n = seq.len();
    let triple = score(seq);
    let kind = opts.method.resolve(n, &opts.model, &opts.limits);
    let pv = p_value(
        triple.s,
        n,
        &opts.model,
        kind,
        opts.tail,
        &PValueOptions {
            continuity: opts.continuity,
            limits: opts.limits,
        },
    )?;
    let z = if pv.sigma > 0.0 {
        Some(pv.z_score)
    } else {
        None
    };
    Ok(TestReport {
        schema_version: SCHEMA_VERSION,
        n,
        alphabet: seq.alphabet(),
        p: model_p(&opts.model),
        s: triple.s,
        s_plus: triple.s_plus,
        s_minus: triple.s_minus,
        method: kind,
        tail: opts.tail,
        p_value: pv.value,
        p_value_exact: pv.exact.map(|e| e.to_string()),
        z_score: z,
        kurtosis_ratio: finite(pv.kurtosis_ratio),
        warnings: pv.warnings,
        engine: pv.engine,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TableOptions {
    /// Print the weights on one line instead of `t<TAB>weight` rows.
    pub row: bool,
    /// Also print the per-tie-profile tables `P_n(t; cv)` (uniform models only).
    pub by_counts: bool,
    /// Add exact, normal and Edgeworth CDF columns plus their maximum errors.
    pub compare: bool,
}

fn weight_strings(d: &ScoreDistribution) -> Vec<String> {
    match d.weights() {
        Weights::Count(w) => w.iter().map(|c| c.to_string()).collect(),
        Weights::Rational(w) => w.iter().map(|c| c.to_string()).collect(),
        Weights::Float(w) => w.iter().map(|c| c.to_string()).collect(),
    }
}

fn total_string(d: &ScoreDistribution) -> String {
    match d.total_count() {
        Some(t) => t.to_string(),
        None => "1".to_string(),
    }
}

fn write_distribution(out: &mut String, d: &ScoreDistribution, row: bool) {
    let weights = weight_strings(d);
    if row {
        let _ = writeln!(out, "{}", weights.join(" "));
    } else {
        for (i, w) in weights.iter().enumerate() {
            let _ = writeln!(out, "{}\t{}", d.low() + i as i64, w);
        }
    }
}

fn model_header(model: &NullModel) -> String {
    match model {
        NullModel::Uniform { alphabet } => format!("alphabet={alphabet}"),
        NullModel::BiasedBinary { p } => format!("alphabet=2 p={p}"),
    }
}

/// Exact distribution dump: `t<TAB>weight` rows from the lowest to the highest
/// attainable score, `#` header lines.
pub fn cmd_table(
    n: usize,
    model: &NullModel,
    opts: TableOptions,
    limits: &Limits,
) -> Result<String> {
    let (dist, engine) = exact_distribution(n, model, limits)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# n={n} {} engine={engine} total={}",
        model_header(model),
        total_string(&dist)
    );
    if opts.compare {
        write_comparison(&mut out, &dist)?;
    } else {
        write_distribution(&mut out, &dist, opts.row);
    }
    if opts.by_counts {
        let NullModel::Uniform { alphabet } = model else {
            return Err(Error::NotBinary(2));
        };
        let tables = dist_by_counts(n, *alphabet, limits)?;
        for (cv, d) in tables.iter() {
            let counts: Vec<String> = cv.counts().iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                out,
                "# counts={} total={}",
                counts.join(","),
                total_string(d)
            );
            write_distribution(&mut out, d, opts.row);
        }
    }
    Ok(out)
}

fn write_comparison(out: &mut String, dist: &ScoreDistribution) -> Result<()> {
    let n = dist.n();
    let moments = closed_moments(n, dist.model())?;
    let sigma = moments.sigma();
    let kurtosis = moments.kurtosis_ratio_f64();
    let c = continuity_offset(n, dist.model());
    let _ = writeln!(out, "# t\tP(S=t)\tP(S<=t)\tnormal\tedgeworth");
    let mut cum = 0.0;
    for (t, p) in dist.probabilities_f64() {
        cum += p;
        let (normal, edge) = if sigma > 0.0 {
            (
                approx_cdf(t as f64 + c, sigma, kurtosis, ApproxKind::Normal),
                approx_cdf(t as f64 + c, sigma, kurtosis, ApproxKind::Edgeworth),
            )
        } else {
            (1.0, 1.0)
        };
        let _ = writeln!(out, "{t}\t{p}\t{cum}\t{normal}\t{edge}");
    }
    if sigma > 0.0 {
        let _ = writeln!(
            out,
            "# max |normal - exact| = {}",
            max_cdf_error(dist, ApproxKind::Normal, true)?
        );
        let _ = writeln!(
            out,
            "# max |edgeworth - exact| = {}",
            max_cdf_error(dist, ApproxKind::Edgeworth, true)?
        );
    }
    Ok(())
}

/// Exhaustive-enumeration dump in the same format as [`cmd_table`].
pub fn cmd_oracle(n: usize, model: &NullModel, limits: &Limits) -> Result<String> {
    let dist = match model {
        NullModel::Uniform { alphabet } => brute_dist(n, *alphabet, limits)?,
        NullModel::BiasedBinary { p: Bias::Exact(p) } => brute_dist_pq(n, p, limits)?,
        NullModel::BiasedBinary { p: Bias::Float(p) } => {
            let exact = BigRational::from_float(*p)
                .ok_or_else(|| Error::InvalidProbability(p.to_string()))?;
            brute_dist_pq(n, &exact, limits)?
        }
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# n={n} {} engine=oracle total={}",
        model_header(model),
        total_string(&dist)
    );
    write_distribution(&mut out, &dist, false);
    Ok(out)
}

/// Sums the weight column of [`cmd_table`] output (rows only, headers skipped).
pub fn sum_table_weights(table: &str) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for (lineno, line) in table.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let field = line.split('\t').nth(1).ok_or_else(|| Error::Parse {
            offset: lineno,
            token: line.to_string(),
            message: "expected t<TAB>weight".into(),
        })?;
        let value: BigRational = field.parse().map_err(|_| Error::Parse {
            offset: lineno,
            token: field.to_string(),
            message: "weight is not an exact number".into(),
        })?;
        sum += value;
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloConfig {
    pub n: usize,
    pub model: NullModel,
    pub samples: u64,
    pub seed: u64,
    pub limits: Limits,
}

/// Empirical moments and CDF agreement from simulated sequences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub schema_version: u32,
    pub n: usize,
    pub alphabet: usize,
    pub p: Option<String>,
    pub samples: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub empirical_mean: f64,
    pub empirical_mu2: f64,
    pub empirical_mu4: f64,
    pub empirical_kurtosis: Option<f64>,
    pub closed_mu2: f64,
    pub closed_mu4: f64,
    pub closed_kurtosis: Option<f64>,
    /// `√((μ₄ − μ₂²)/M)`, the standard error of the empirical `μ₂`.
    pub mu2_standard_error: f64,
    pub reference: ApproxKind,
    pub max_cdf_gap: f64,
}

impl MonteCarloReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n                   {}", self.n);
        match &self.p {
            Some(p) => {
                let _ = writeln!(out, "model               binary, P(0) = {p}");
            }
            None => {
                let _ = writeln!(
                    out,
                    "model               uniform, alphabet {}",
                    self.alphabet
                );
            }
        }
        let _ = writeln!(out, "samples             {}", self.samples);
        let _ = writeln!(
            out,
            "seed                {} ({})",
            self.seed, self.generator
        );
        let _ = writeln!(out, "empirical mean      {}", self.empirical_mean);
        let _ = writeln!(out, "empirical mu2       {}", self.empirical_mu2);
        let _ = writeln!(out, "closed-form mu2     {}", self.closed_mu2);
        let _ = writeln!(out, "mu2 standard error  {}", self.mu2_standard_error);
        let _ = writeln!(out, "empirical mu4       {}", self.empirical_mu4);
        let _ = writeln!(out, "closed-form mu4     {}", self.closed_mu4);
        let _ = writeln!(
            out,
            "empirical kurtosis  {}",
            fmt_opt(self.empirical_kurtosis)
        );
        let _ = writeln!(out, "closed kurtosis     {}", fmt_opt(self.closed_kurtosis));
        let _ = writeln!(
            out,
            "max CDF gap         {} (vs {})",
            self.max_cdf_gap, self.reference
        );
        out
    }
}

fn sample_sequence(rng: &mut ChaCha8Rng, n: usize, model: &NullModel, p: f64) -> DigitSequence {
    let digits = match model {
        NullModel::Uniform { alphabet } => {
            (0..n).map(|_| rng.gen_range(0..*alphabet as u32)).collect()
        }
        NullModel::BiasedBinary { .. } => (0..n)
            .map(|_| if rng.gen::<f64>() < p { 0 } else { 1 })
            .collect(),
    };
    DigitSequence::new(digits, model.alphabet()).expect("sampled digits are in range")
}

/// Simulates `samples` sequences with a ChaCha8 stream seeded from `seed` and
/// compares their scores with the null distribution.
pub fn cmd_montecarlo(cfg: &MonteCarloConfig) -> Result<MonteCarloReport> {
    if cfg.n == 0 {
        return Err(Error::EmptySequence);
    }
    if cfg.samples == 0 {
        return Err(Error::LengthTooSmall { min: 1, got: 0 });
    }
    let moments = closed_moments(cfg.n, &cfg.model)?;
    let p = match &cfg.model {
        NullModel::BiasedBinary { p } => p.to_f64(),
        NullModel::Uniform { .. } => 0.5,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
    let (mut s1, mut s2, mut s4) = (0i128, 0i128, 0i128);
    for _ in 0..cfg.samples {
        let s = score(&sample_sequence(&mut rng, cfg.n, &cfg.model, p)).s;
        let s = s as i128;
        s1 += s;
        s2 += s * s;
        s4 += s * s * s * s;
        *hist.entry(s as i64).or_default() += 1;
    }
    let m = cfg.samples as f64;
    let mu2 = s2 as f64 / m;
    let mu4 = s4 as f64 / m;
    let closed_mu2 = moments.mu2.to_f64().unwrap_or(f64::NAN);
    let closed_mu4 = moments.mu4.to_f64().unwrap_or(f64::NAN);

    // Empirical CDF against the exact one when affordable, else Edgeworth.
    let (reference, gap) = match exact_distribution(cfg.n, &cfg.model, &cfg.limits) {
        Ok((dist, _)) => {
            let mut cum_exact = 0.0;
            let mut cum_emp = 0u64;
            let mut gap: f64 = 0.0;
            for (t, prob) in dist.probabilities_f64() {
                cum_exact += prob;
                cum_emp += hist.get(&t).copied().unwrap_or(0);
                gap = gap.max((cum_emp as f64 / m - cum_exact).abs());
            }
            (ApproxKind::Exact, gap)
        }
        Err(Error::ResourceCap { .. }) => {
            let sigma = moments.sigma();
            let kurt = moments.kurtosis_ratio_f64();
            let c = continuity_offset(cfg.n, &cfg.model);
            let mut cum_emp = 0u64;
            let mut gap: f64 = 0.0;
            for (&t, &count) in &hist {
                cum_emp += count;
                let approx = approx_cdf(t as f64 + c, sigma, kurt, ApproxKind::Edgeworth);
                gap = gap.max((cum_emp as f64 / m - approx).abs());
            }
            (ApproxKind::Edgeworth, gap)
        }
        Err(e) => return Err(e),
    };

    Ok(MonteCarloReport {
        schema_version: SCHEMA_VERSION,
        n: cfg.n,
        alphabet: cfg.model.alphabet(),
        p: model_p(&cfg.model),
        samples: cfg.samples,
        seed: cfg.seed,
        generator: "chacha8",
        empirical_mean: s1 as f64 / m,
        empirical_mu2: mu2,
        empirical_mu4: mu4,
        empirical_kurtosis: finite(mu4 / (mu2 * mu2)),
        closed_mu2,
        closed_mu4,
        closed_kurtosis: finite(moments.kurtosis_ratio_f64()),
        mu2_standard_error: ((closed_mu4 - closed_mu2 * closed_mu2) / m).sqrt(),
        reference,
        max_cdf_gap: gap,
    })
}

const ERRATA: &str = "\
Known inconsistencies in the source formulas and how this tool resolves them
=============================================================================

1. Sign convention of S+.
   The prose definition counts x_i > x_j with i > j (later-greater pairs) in S+,
   but the worked example 0 1 1 2 0 2 1 -> S = 5 - 11 = -6 and the binary
   weights (n - 2k + 1) j_k both require the opposite reading.
   Resolution: earlier-greater counts positive. S+ = #{j < k : x_j > x_k},
   S- = #{j < k : x_j < x_k}. The null distribution is symmetric, so only
   the sign of individual scores is affected.

2. Eq. (18), one-step variance recurrence.
   Printed increment:   n(l-1)/l + n(n-3)/3 * (l^2-1)/l^2
   This contradicts the closed variance Eq. (4); at n = 2, l = 2 it gives 1/2
   while var(3) - var(2) = 2 - 1/2 = 3/2.
   Resolution: n(l-1)/l + n(n-1)/3 * (l^2-1)/l^2, which agrees with Eq. (4)
   for every n and l.

3. Eq. (15), two-step binary recursion.
   The printed second term P_{n-1}(t + i0 - 1; i0-1, i1-1) fails against
   exhaustive enumeration. Appending 1 then 0 moves S by i1 - i0 + 1, so the
   term is P_{n-1}(t + i0 - i1 - 1; i0-1, i1-1).
   Resolution: the corrected term is used; the printed one is kept only as a
   failing check.

4. Alphabet of the general recursion.
   The recursion is introduced with digits 0, 1, 2, ..., l (l + 1 symbols);
   everywhere else the alphabet is 0, ..., l-1.
   Resolution: digits 0, ..., l-1.

5. Eq. (6), limit of the standardised even moments.
   The product is printed as 1*2*5*...*(2k-1); the normal value is the double
   factorial (2k-1)!! = 1*3*5*...*(2k-1), consistent with mu4/sigma^4 -> 3.
   Resolution: (2k-1)!!.
";

/// The documented formula inconsistencies and their resolutions.
pub fn cmd_errata() -> &'static str {
    ERRATA
}

/// Exit status for an error: 2 for resource-cap refusals, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceCap { .. } => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn digit_parsing() {
        let s = parse_digits("0 1 1 2 0 2 1", 3).unwrap();
        assert_eq!(s.digits(), &[0, 1, 1, 2, 0, 2, 1]);
        let s = parse_digits("1,0,\n0", 2).unwrap();
        assert_eq!(s.digits(), &[1, 0, 0]);
        match parse_digits("0 1 x1", 2) {
            Err(Error::Parse { offset, token, .. }) => {
                assert_eq!(offset, 4);
                assert_eq!(token, "x1");
            }
            other => panic!("{other:?}"),
        }
        match parse_digits("0 1 3", 3) {
            Err(Error::Parse {
                offset: 4, token, ..
            }) => assert_eq!(token, "3"),
            other => panic!("{other:?}"),
        }
        assert!(parse_digits("  ", 2).is_err());
    }

    #[test]
    fn byte_mapping() {
        let s = digits_from_bytes(&[0, 1, 255, 10], 3).unwrap();
        assert_eq!(s.digits(), &[0, 1, 0, 1]);
    }

    #[test]
    fn probabilities() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(parse_probability("0.3").unwrap(), r(3, 10));
        assert_eq!(parse_probability("3/10").unwrap(), r(3, 10));
        assert_eq!(parse_probability(".25").unwrap(), r(1, 4));
        for bad in ["0", "1", "1.5", "-0.2", "abc", "1/0", "", "."] {
            assert!(parse_probability(bad).is_err(), "{bad}");
        }
        assert!(model_from_flags(3, Some("0.5")).is_err());
        assert!(model_from_flags(1, None).is_err());
    }

    #[test]
    fn score_reports() {
        let opts = ScoreOptions {
            model: NullModel::Uniform { alphabet: 3 },
            ..Default::default()
        };
        let seq = parse_digits("0 1 1 2 0 2 1", 3).unwrap();
        let r = cmd_score(&seq, &opts).unwrap();
        assert_eq!((r.s, r.s_plus, r.s_minus), (-6, 5, 11));
        assert_eq!(r.method, ApproxKind::Exact);
        assert_eq!(r.engine, Engine::Recursion);

        let zeros = parse_digits("0 0 0 0", 2).unwrap();
        let r = cmd_score(&zeros, &ScoreOptions::default()).unwrap();
        assert_eq!(r.s, 0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.p_value_exact.as_deref(), Some("1"));

        let r = cmd_score(&parse_digits("1 0 0", 2).unwrap(), &ScoreOptions::default()).unwrap();
        assert_eq!(r.s, 2);
        assert_eq!(r.p_value, 0.5);
        assert_eq!(r.p_value_exact.as_deref(), Some("1/2"));
        assert!(r.to_json().contains("\"schema_version\": 1"));
    }

    #[test]
    fn approximate_report_warns() {
        let opts = ScoreOptions {
            method: Method::Edgeworth,
            ..Default::default()
        };
        let r = cmd_score(&parse_digits("1 0 0 1 1 0", 2).unwrap(), &opts).unwrap();
        assert!(r
            .warnings
            .iter()
            .any(|w| w.contains("approximation regime")));
        assert!(r.to_text().contains("warning:"));
    }

    #[test]
    fn single_digit_report() {
        let r = cmd_score(&parse_digits("1", 2).unwrap(), &ScoreOptions::default()).unwrap();
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.z_score, None);
        assert_eq!(r.kurtosis_ratio, None);
    }

    #[test]
    fn tables() {
        let l = Limits::default();
        let uni2 = NullModel::Uniform { alphabet: 2 };
        let row = TableOptions {
            row: true,
            ..Default::default()
        };
        let t5 = cmd_table(5, &uni2, row, &l).unwrap();
        assert_eq!(t5.lines().nth(1).unwrap(), "2 0 4 0 6 0 8 0 6 0 4 0 2");
        let t1 = cmd_table(1, &uni2, TableOptions::default(), &l).unwrap();
        assert_eq!(t1.lines().nth(1).unwrap(), "0\t2");
        let t = cmd_table(
            6,
            &NullModel::Uniform { alphabet: 3 },
            TableOptions::default(),
            &l,
        )
        .unwrap();
        assert_eq!(
            sum_table_weights(&t).unwrap(),
            BigRational::from_integer(729.into())
        );
        let biased = model_from_flags(2, Some("3/10")).unwrap();
        let t = cmd_table(7, &biased, TableOptions::default(), &l).unwrap();
        assert_eq!(sum_table_weights(&t).unwrap(), BigRational::one());
        let counts = TableOptions {
            by_counts: true,
            ..Default::default()
        };
        let t = cmd_table(6, &uni2, counts, &l).unwrap();
        assert!(t.contains("# counts=3,3 total=20"));
        assert_eq!(
            sum_table_weights(&t).unwrap(),
            BigRational::from_integer(128.into())
        );
    }

    #[test]
    fn oracle_matches_table() {
        let l = Limits::default();
        let m = NullModel::Uniform { alphabet: 3 };
        let a = cmd_oracle(5, &m, &l).unwrap();
        let b = cmd_table(5, &m, TableOptions::default(), &l).unwrap();
        assert_eq!(
            a.lines().skip(1).collect::<Vec<_>>(),
            b.lines().skip(1).collect::<Vec<_>>()
        );
    }

    #[test]
    fn comparison_table() {
        let l = Limits::default();
        let opts = TableOptions {
            compare: true,
            ..Default::default()
        };
        let t = cmd_table(10, &NullModel::Uniform { alphabet: 2 }, opts, &l).unwrap();
        assert!(t.contains("# max |edgeworth - exact|"));
    }

    #[test]
    fn montecarlo_small() {
        let cfg = MonteCarloConfig {
            n: 3,
            model: NullModel::Uniform { alphabet: 2 },
            samples: 1,
            seed: 7,
            limits: Limits::default(),
        };
        let r = cmd_montecarlo(&cfg).unwrap();
        assert_eq!(r.samples, 1);
        assert_eq!(cmd_montecarlo(&cfg).unwrap(), r);
        assert!(cmd_montecarlo(&MonteCarloConfig { samples: 0, ..cfg }).is_err());
    }

    #[test]
    fn errata_text() {
        let e = cmd_errata();
        assert!(e.contains("Eq. (18)"));
        assert!(e.contains("earlier-greater counts positive"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::ResourceCap {
                estimate: 2,
                cap: 1
            }),
            2
        );
        assert_eq!(exit_code(&Error::EmptySequence), 1);
    }
}

use kendall_digits::approx::{p_value, ApproxKind, PValueOptions, Tail};
use kendall_digits::exact::{exact_distribution, Bias, Limits, NullModel};
use kendall_digits::moments::closed_moments;

/// Largest |exact - approximate| p-value over attainable scores with |s| ≤ width·σ.
fn worst_gap(n: usize, model: &NullModel, kinds: &[ApproxKind], width: f64) -> f64 {
    let opts = PValueOptions::default();
    let sigma = closed_moments(n, model).unwrap().sigma();
    let (dist, _) = exact_distribution(n, model, &Limits::default()).unwrap();
    let probs = dist.probabilities_f64();
    let tail = |pred: &dyn Fn(i64) -> bool| -> f64 {
        probs.iter().filter(|(t, _)| pred(*t)).map(|(_, p)| p).sum()
    };
    let mut worst: f64 = 0.0;
    for &(s, p) in &probs {
        if p == 0.0 || (s as f64).abs() > width * sigma {
            continue;
        }
        let exact = [
            (Tail::TwoSided, tail(&|t| t.abs() >= s.abs()).min(1.0)),
            (Tail::Left, tail(&|t| t <= s)),
            (Tail::Right, tail(&|t| t >= s)),
        ];
        for &kind in kinds {
            for (side, want) in exact {
                let got = p_value(s, n, model, kind, side, &opts).unwrap().value;
                worst = worst.max((got - want).abs());
            }
        }
    }
    worst
}

#[test]
fn edgeworth_tracks_exact_within_one_sigma() {
    let model = NullModel::Uniform { alphabet: 2 };
    let gap = worst_gap(50, &model, &[ApproxKind::Edgeworth], 1.0);
    assert!(gap < 0.01, "gap {gap}");
}

#[test]
fn approximations_track_exact_within_two_sigma() {
    let cases = [
        (50, NullModel::Uniform { alphabet: 2 }),
        (51, NullModel::Uniform { alphabet: 2 }),
        (120, NullModel::Uniform { alphabet: 2 }),
        (30, NullModel::Uniform { alphabet: 3 }),
        (
            50,
            NullModel::BiasedBinary {
                p: Bias::Float(0.3),
            },
        ),
        (
            51,
            NullModel::BiasedBinary {
                p: Bias::Float(0.3),
            },
        ),
    ];
    for (n, model) in &cases {
        let gap = worst_gap(*n, model, &[ApproxKind::Normal, ApproxKind::Edgeworth], 2.0);
        assert!(gap < 0.01, "n={n} {model:?} gap {gap}");
    }
}

#[test]
fn exact_two_sided_stays_in_unit_interval() {
    let model = NullModel::Uniform { alphabet: 4 };
    let opts = PValueOptions::default();
    for s in -15..=15 {
        let p = p_value(s, 6, &model, ApproxKind::Exact, Tail::TwoSided, &opts).unwrap();
        assert!((0.0..=1.0).contains(&p.value), "s={s} p={}", p.value);
    }
    // Six digits from four symbols cannot be strictly monotone.
    let top = p_value(15, 6, &model, ApproxKind::Exact, Tail::TwoSided, &opts).unwrap();
    assert_eq!(top.value, 0.0);
    let zero = p_value(0, 6, &model, ApproxKind::Exact, Tail::TwoSided, &opts).unwrap();
    assert_eq!(zero.value, 1.0);
}

//! Acceptance gate: nine end-to-end criteria, each printed as one
//! `ACCEPTANCE <n> <name>: PASS/FAIL` line. Every criterion runs even when an
//! earlier one fails; the test fails at the end if any line is FAIL.
//!
//! Run with `--nocapture` to see the lines on success.

use std::panic::AssertUnwindSafe;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use avckit::capacity::{
    composition_bound_trials, grid_networks, growth_function, lemma3_inequality_holds,
    lemma3_threshold, network_behavior_class, network_growth_bound, product_bound_trials,
};
use avckit::corruption::{
    corrupt_network_exact, corrupt_network_interval, corrupted_loss_of, Corrupted, Corruptible,
    TabulatedHypothesis,
};
use avckit::geometry::{ball_contains, dual_norm, FiniteNeighborMap, NormP};
use avckit::hypotheses::{Halfspace, Label, Layer, SignNetwork};
use avckit::risk::{
    adversarial_empirical_risk, aerm, classic_empirical_risk, halfspace_candidates, LabeledSample,
};
use avckit::Neighborhood64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ball(p: NormP, eps: f64) -> Neighborhood64 {
    Neighborhood64::ball(p, eps).unwrap()
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avckit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn bin_ok(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "command {args:?} failed\nstderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

#[test]
fn acceptance_criteria() {
    let mut failures: Vec<String> = Vec::new();
    let mut criterion = |no: usize, name: &str, f: Box<dyn FnOnce()>| {
        let result = std::panic::catch_unwind(AssertUnwindSafe(f));
        let pass = result.is_ok();
        println!("ACCEPTANCE {no} {name}: {}", if pass { "PASS" } else { "FAIL" });
        if let Err(payload) = result {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic without message".to_string());
            failures.push(format!("{no} {name}: {msg}"));
        }
    };

    criterion(1, "halfspace-avc-witness", Box::new(halfspace_avc_witness));
    criterion(2, "corruption-exactness", Box::new(corruption_exactness));
    criterion(3, "interval-soundness", Box::new(interval_soundness));
    criterion(4, "growth-bound-suites", Box::new(growth_bound_suites));
    criterion(5, "network-growth-chain", Box::new(network_growth_chain));
    criterion(6, "threshold-calculator", Box::new(threshold_calculator));
    criterion(7, "risk-identities", Box::new(risk_identities));
    criterion(8, "aerm-optimality", Box::new(aerm_optimality));
    criterion(9, "determinism", Box::new(determinism));

    assert!(
        failures.is_empty(),
        "{} acceptance criteria failed:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

/// Criterion 1: for d = 1, 2 under l_inf and l_2 at radius 0.1, the `avc`
/// command certifies best_n = d + 1 with a witness the `verify-witness`
/// command re-checks, and exhausts the (d+2)-level with nothing shattered.
/// Budget: 60 s per (d, p) pair.
fn halfspace_avc_witness() {
    let dir = tempfile::tempdir().unwrap();
    for d in [1usize, 2] {
        // 9 collinear points for the line, a 5x5 grid for the plane.
        let (lo, hi) = if d == 1 { ("-2", "2") } else { ("-1", "1") };
        for p in ["inf", "2"] {
            let witness = dir.path().join(format!("w_{d}_{p}.toml"));
            let start = Instant::now();
            let summary = bin_ok(&[
                "avc",
                "--dim",
                &d.to_string(),
                &format!("--grid-lo={lo}"),
                "--grid-hi",
                hi,
                "--grid-step",
                "0.5",
                "--p",
                p,
                "--epsilon",
                "0.1",
                "--witness-out",
                witness.to_str().unwrap(),
            ]);
            let elapsed = start.elapsed();
            assert!(
                summary.contains(&format!("best_n = {}", d + 1)),
                "d={d} p={p}: {summary}"
            );
            assert!(summary.contains(&format!("\n[frontier]\nn = {}\n", d + 2)));
            assert!(summary.contains("all_unshattered = true"));
            let check = bin_ok(&["verify-witness", "--witness", witness.to_str().unwrap()]);
            assert!(check.contains(&format!("witness OK: n={}", d + 1)), "{check}");
            assert!(
                elapsed <= Duration::from_secs(60),
                "d={d} p={p} took {elapsed:?}"
            );
        }
    }
}

/// Random single-hidden-layer network (1..=3 neurons) whose decision data is
/// regular around `(x, eps)`: first-layer margins stay 1e-6 away from the
/// ball boundary, hidden directions are non-parallel, and the output neuron
/// is 1e-6 away from zero on every hidden sign vector. Every quantity the
/// oracles compare is then far outside the 1e-9 float ambiguity band, and a
/// dense sampler is a reliable referee.
fn regular_net(rng: &mut ChaCha8Rng, d: usize, p: NormP, eps: f64, x: &[f64]) -> SignNetwork<f64> {
    'retry: loop {
        let hidden = rng.random_range(1..=3usize);
        let rows: Vec<Vec<f64>> = (0..hidden)
            .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let biases: Vec<f64> = (0..hidden).map(|_| rng.random_range(-0.6..0.6)).collect();
        let out_w: Vec<f64> = (0..hidden).map(|_| rng.random_range(-1.0..1.0)).collect();
        let out_b = rng.random_range(-0.6..0.6);
        let net = SignNetwork::new(
            d,
            vec![
                Layer::new(rows.clone(), biases.clone()).unwrap(),
                Layer::new(vec![out_w.clone()], vec![out_b]).unwrap(),
            ],
        )
        .unwrap();

        let mut dirs: Vec<Vec<f64>> = Vec::new();
        for i in 0..hidden {
            let h = Halfspace::new(rows[i].clone(), biases[i]).unwrap();
            let nrm: f64 = rows[i].iter().map(|w| w * w).sum::<f64>().sqrt();
            if nrm < 0.1 {
                continue 'retry;
            }
            let a = h.activation(x).unwrap();
            let r = eps * dual_norm(&rows[i], p);
            if (a - r).abs() < 1e-6 || (a + r).abs() < 1e-6 {
                continue 'retry;
            }
            let unit: Vec<f64> = rows[i].iter().map(|w| w / nrm).collect();
            if dirs
                .iter()
                .any(|u| u.iter().zip(&unit).map(|(a, b)| a * b).sum::<f64>().abs() > 0.999)
            {
                continue 'retry;
            }
            dirs.push(unit);
        }
        for mask in 0..(1u32 << hidden) {
            let acc: f64 = (0..hidden)
                .map(|i| if mask >> i & 1 == 1 { out_w[i] } else { -out_w[i] })
                .sum::<f64>()
                + out_b;
            if acc.abs() < 1e-6 {
                continue 'retry;
            }
        }
        return net;
    }
}

/// At least `min_count` points of the `l_p` ball around `x`: a full axis grid
/// filtered to the ball, then rejection-sampled uniform fill.
fn ball_samples(
    rng: &mut ChaCha8Rng,
    x: &[f64],
    p: NormP,
    eps: f64,
    min_count: usize,
) -> Vec<Vec<f64>> {
    let d = x.len();
    let steps = (min_count as f64).powf(1.0 / d as f64).ceil() as usize + 1;
    let mut pts = vec![x.to_vec()];
    let mut idx = vec![0usize; d];
    'grid: loop {
        let pt: Vec<f64> = idx
            .iter()
            .zip(x)
            .map(|(&i, &c)| c - eps + 2.0 * eps * i as f64 / (steps - 1) as f64)
            .collect();
        if ball_contains(x, p, eps, &pt).unwrap() {
            pts.push(pt);
        }
        let mut k = d;
        loop {
            if k == 0 {
                break 'grid;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < steps {
                break;
            }
            idx[k] = 0;
        }
    }
    while pts.len() < min_count + 1 {
        let pt: Vec<f64> = x.iter().map(|&c| c + rng.random_range(-eps..=eps)).collect();
        if ball_contains(x, p, eps, &pt).unwrap() {
            pts.push(pt);
        }
    }
    pts
}

fn random_corruption_case(rng: &mut ChaCha8Rng) -> (usize, NormP, f64, Vec<f64>, SignNetwork<f64>) {
    let d = rng.random_range(1..=3usize);
    let p = [NormP::One, NormP::Two, NormP::Inf][rng.random_range(0..3usize)];
    let eps = rng.random_range(0.2..0.6f64);
    let x: Vec<f64> = (0..d).map(|_| rng.random_range(-0.5..0.5)).collect();
    let net = regular_net(rng, d, p, eps, &x);
    (d, p, eps, x, net)
}

/// Criterion 2: the exact network oracle agrees with a dense sample of the
/// ball (>= 10^4 in-ball points) on 100 regular random networks with at most
/// 3 hidden neurons. Budget: 120 s total.
fn corruption_exactness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    for trial in 0..100 {
        let (_, p, eps, x, net) = random_corruption_case(&mut rng);
        let exact = corrupt_network_exact(&net, &x, &ball(p, eps)).unwrap();
        let mut seen = [false; 2];
        for pt in ball_samples(&mut rng, &x, p, eps, 10_000) {
            seen[match net.eval_binary(&pt).unwrap() {
                Label::Minus => 0,
                Label::Plus => 1,
            }] = true;
        }
        match (exact, seen) {
            (Corrupted::Known(Label::Minus), [true, false]) => {}
            (Corrupted::Known(Label::Plus), [false, true]) => {}
            (Corrupted::Bot, [true, true]) => {}
            (exact, seen) => panic!(
                "trial {trial}: exact oracle said {exact:?} but the sampler saw \
                 minus={} plus={}",
                seen[0], seen[1]
            ),
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(120), "suite took {elapsed:?}");
}

/// Criterion 3: interval propagation never contradicts the exact oracle on
/// the same 100-network suite, and a duplicated-neuron fixture shows the
/// expected incompleteness (interval Bot where the exact answer is known).
fn interval_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    let mut pinned = 0usize;
    for trial in 0..100 {
        let (_, p, eps, x, net) = random_corruption_case(&mut rng);
        let nb = ball(p, eps);
        let exact = corrupt_network_exact(&net, &x, &nb).unwrap();
        let interval = corrupt_network_interval(&net, &x, &nb).unwrap();
        if let Corrupted::Known(l) = interval {
            assert_eq!(
                exact,
                Corrupted::Known(l),
                "trial {trial}: interval pinned a label the exact oracle rejects"
            );
            pinned += 1;
        }
        // Burn the sampler draws so the suite shares criterion 2's cases.
        let _ = ball_samples(&mut rng, &x, p, eps, 10_000);
    }
    assert!(pinned > 0, "interval mode never decided anything");

    // Two copies of the same neuron cancel in the output layer, so the net is
    // constantly +1; intervals treat the copies as independent and give up.
    let net = SignNetwork::new(
        2,
        vec![
            Layer::new(vec![vec![1.0, 0.0], vec![1.0, 0.0]], vec![0.0, 0.0]).unwrap(),
            Layer::new(vec![vec![1.0, -1.0]], vec![0.3]).unwrap(),
        ],
    )
    .unwrap();
    let nb = ball(NormP::Inf, 0.1);
    assert_eq!(
        corrupt_network_exact(&net, &[0.0, 0.0], &nb).unwrap(),
        Corrupted::Known(Label::Plus)
    );
    assert_eq!(
        corrupt_network_interval(&net, &[0.0, 0.0], &nb).unwrap(),
        Corrupted::Bot
    );
}

/// Criterion 4: 1000 randomized finite-class trials for each of the
/// composition and product growth bounds, all holding under exact integer
/// comparison. Budget: 60 s.
fn growth_bound_suites() {
    let start = Instant::now();
    let comp = composition_bound_trials(1000, 41).unwrap();
    assert_eq!(comp.len(), 1000);
    assert!(comp.iter().all(|c| c.holds), "a composition trial failed");
    let prod = product_bound_trials(1000, 42).unwrap();
    assert_eq!(prod.len(), 1000);
    assert!(prod.iter().all(|c| c.holds), "a product trial failed");
    let elapsed = start.elapsed();
    assert!(elapsed <= Duration::from_secs(60), "suites took {elapsed:?}");
}

/// Criterion 5: on the 19683-network [2,2,1] grid class over a 6-point
/// domain, brute-force growth respects the per-neuron product and the
/// (em)^|E| bound for m = 1..6. The product is defined once m reaches the
/// max fan-in (3); below that only the loose bound applies.
fn network_growth_chain() {
    let nets = grid_networks(&[2, 2, 1], &[-1.0, 0.0, 1.0]).unwrap();
    assert_eq!(nets.len(), 19683);
    let domain: Vec<Vec<f64>> = vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        vec![1.0, 1.0],
        vec![-1.0, 0.5],
        vec![0.5, -1.0],
    ];
    let class = network_behavior_class(&nets, &domain).unwrap();
    for m in 1..=6usize {
        let tau = growth_function(&class, m).unwrap() as f64;
        let bounds = network_growth_bound(&nets[0], m).unwrap();
        match bounds.per_neuron {
            Some(tight) => {
                assert!(tau <= tight, "m={m}: tau {tau} above per-neuron {tight}");
                assert!(tight <= bounds.loose * (1.0 + 1e-12), "m={m}");
            }
            None => assert!(m < 3, "per-neuron bound missing at m={m}"),
        }
        assert!(tau <= bounds.loose, "m={m}: tau {tau} above loose");
    }
}

/// Criterion 6: for 1..=16 edges the crossover m_star satisfies the exact
/// chain 2^m_star <= (e m_star)^edges < 2^(m_star + 1) and the closed-form
/// ceiling, with the single-edge row equal to 3.
fn threshold_calculator() {
    for edges in 1..=16u32 {
        let row = lemma3_threshold(edges).unwrap();
        assert!(
            lemma3_inequality_holds(row.m_star, edges).unwrap(),
            "edges={edges}: chain lower leg fails at m_star={}",
            row.m_star
        );
        // Failure one step later gives 2^(m_star+1) > (e (m_star+1))^edges,
        // and (e m)^edges grows in m, so (e m_star)^edges < 2^(m_star+1)
        // exactly; no separate comparison is needed.
        assert!(
            !lemma3_inequality_holds(row.m_star + 1, edges).unwrap(),
            "edges={edges}: inequality still holds past the crossover"
        );
        assert!(
            (row.m_star as f64) <= row.closed_form.ceil(),
            "edges={edges}: m_star {} above ceil({})",
            row.m_star,
            row.closed_form
        );
    }
    assert_eq!(lemma3_threshold(1).unwrap().m_star, 3);
}

fn random_sample(rng: &mut ChaCha8Rng, d: usize, n: usize) -> LabeledSample {
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let labels: Vec<Label> = (0..n)
        .map(|_| if rng.random_bool(0.5) { Label::Plus } else { Label::Minus })
        .collect();
    LabeledSample::new(d, points, labels).unwrap()
}

fn random_halfspace(rng: &mut ChaCha8Rng, d: usize) -> Halfspace<f64> {
    loop {
        let w: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        if w.iter().any(|&v| v != 0.0) {
            return Halfspace::new(w, rng.random_range(-0.5..0.5)).unwrap();
        }
    }
}

/// Criterion 7: zero-radius adversarial risk equals classic risk exactly on
/// 1000 random instances; the corrupted loss equals the brute-force
/// worst-case neighborhood loss on finite-map trials; empirical risk is
/// monotone in the radius across sweeps.
fn risk_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(774);

    for _ in 0..1000 {
        let d = rng.random_range(1..=3usize);
        let n = rng.random_range(1..=6usize);
        let sample = random_sample(&mut rng, d, n);
        let p = [NormP::One, NormP::Two, NormP::Inf][rng.random_range(0..3usize)];
        let zero = ball(p, 0.0);
        if rng.random_bool(0.5) {
            let h = random_halfspace(&mut rng, d);
            assert_eq!(
                adversarial_empirical_risk(&h, &sample, &zero).unwrap(),
                classic_empirical_risk(&h, &sample).unwrap()
            );
        } else {
            let x0 = sample.points()[0].clone();
            let net = regular_net(&mut rng, d, p, 0.3, &x0);
            assert_eq!(
                adversarial_empirical_risk(&net, &sample, &zero).unwrap(),
                classic_empirical_risk(&net, &sample).unwrap()
            );
        }
    }

    // Pointwise identity on explicit finite neighborhoods: the corrupted
    // loss at (x, y) is exactly the worst plain loss over N(x).
    for _ in 0..200 {
        let k = rng.random_range(2..=5usize);
        let d = rng.random_range(1..=2usize);
        let points: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                let mut x = vec![0.0; d];
                x[0] = i as f64;
                if d > 1 {
                    x[1] = rng.random_range(0..3u8) as f64;
                }
                x
            })
            .collect();
        let outputs: Vec<Label> = (0..k)
            .map(|_| if rng.random_bool(0.5) { Label::Plus } else { Label::Minus })
            .collect();
        let h = TabulatedHypothesis::new(points.clone(), outputs).unwrap();
        let entries: Vec<(Vec<f64>, Vec<Vec<f64>>)> = points
            .iter()
            .map(|x| {
                let mut nbrs = vec![x.clone()];
                for other in &points {
                    if other != x && rng.random_bool(0.4) {
                        nbrs.push(other.clone());
                    }
                }
                (x.clone(), nbrs)
            })
            .collect();
        let map = FiniteNeighborMap::new(entries).unwrap();
        let nb = Neighborhood64::FiniteMap(map.clone());
        for x in &points {
            let corrupted = h.corrupt(x, &nb).unwrap();
            for y in [Label::Plus, Label::Minus] {
                let brute = map
                    .neighbors(x)
                    .unwrap()
                    .iter()
                    .map(|n| u8::from(h.plain(n).unwrap() != y))
                    .max()
                    .unwrap();
                assert_eq!(
                    corrupted_loss_of(&corrupted, &y),
                    brute,
                    "corrupted loss differs from the neighborhood worst case"
                );
            }
        }
    }

    // Radius monotonicity of the empirical risk for a fixed hypothesis.
    for _ in 0..100 {
        let d = rng.random_range(1..=2usize);
        let n = rng.random_range(2..=6usize);
        let sample = random_sample(&mut rng, d, n);
        let h = random_halfspace(&mut rng, d);
        for p in [NormP::One, NormP::Two, NormP::Inf] {
            let mut last = 0usize;
            for step in 0..=10 {
                let eps = step as f64 * 0.05;
                let r = adversarial_empirical_risk(&h, &sample, &ball(p, eps)).unwrap();
                assert!(r.mistakes >= last, "risk dropped as the radius grew");
                last = r.mistakes;
            }
        }
    }
}

/// Criterion 8: on 50 random instances the minimizer's risk equals the
/// exhaustive minimum over the candidate family, as an exact fraction.
fn aerm_optimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(608);
    for trial in 0..50 {
        let d = rng.random_range(1..=2usize);
        let n = rng.random_range(3..=7usize);
        let p = [NormP::One, NormP::Two, NormP::Inf][rng.random_range(0..3usize)];
        let eps = rng.random_range(0.05..0.4f64);
        let sample = random_sample(&mut rng, d, n);
        let nb = ball(p, eps);
        let class = halfspace_candidates(sample.points(), &nb).unwrap();
        let won = aerm(&class, &sample, &nb).unwrap();
        let best = class
            .iter()
            .map(|h| adversarial_empirical_risk(h, &sample, &nb).unwrap())
            .min_by(|a, b| a.cmp_value(b))
            .unwrap();
        assert_eq!(
            won.risk.cmp_value(&best),
            std::cmp::Ordering::Equal,
            "trial {trial}: minimizer risk {} vs exhaustive {}",
            won.risk,
            best
        );
    }
}

/// Criterion 9: rerunning every command with an identical config produces
/// byte-identical output files, including the parallel subset search.
fn determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    let sample = path("s.csv");
    bin_ok(&[
        "gen", "--kind", "margin-separated-halfspace", "--n", "10", "--dim", "2", "--seed", "5",
        "--margin", "0.3", "--out", &sample,
    ]);
    let hyp = path("h.toml");
    std::fs::write(
        &hyp,
        "kind = \"halfspace\"\nweights = [\"1\", \"-0.5\"]\nbias = \"0.1\"\n",
    )
    .unwrap();
    let dist = path("d.toml");
    std::fs::write(
        &dist,
        "kind = \"finite-distribution\"\n\n[[atoms]]\npoint = [\"0\", \"0\"]\nlabel = \"-1\"\nprobability = \"0.5\"\n\n[[atoms]]\npoint = [\"1\", \"1\"]\nlabel = \"+1\"\nprobability = \"0.5\"\n",
    )
    .unwrap();
    let pts = path("p.csv");
    std::fs::write(&pts, "x0,x1\n0,0\n0.4,0.4\n1,1\n").unwrap();

    let reruns: Vec<Vec<String>> = vec![
        vec![
            "gen".into(), "--kind".into(), "gaussian-mixture-2class".into(), "--n".into(),
            "30".into(), "--dim".into(), "3".into(), "--seed".into(), "8".into(),
        ],
        vec![
            "gen".into(), "--kind".into(), "grid-uniform".into(), "--dim".into(), "2".into(),
            "--grid-step".into(), "0.5".into(),
        ],
        vec![
            "corrupt".into(), "--hypothesis".into(), hyp.clone(), "--points".into(), pts.clone(),
            "--p".into(), "2".into(), "--epsilon".into(), "0.2".into(),
        ],
        vec![
            "risk".into(), "--hypothesis".into(), hyp.clone(), "--sample".into(), sample.clone(),
            "--p".into(), "inf".into(), "--epsilon".into(), "0.15".into(), "--dist".into(),
            dist.clone(), "--mc-trials".into(), "500".into(), "--seed".into(), "3".into(),
        ],
        vec![
            "aerm".into(), "--sample".into(), sample.clone(), "--p".into(), "inf".into(),
            "--sweep".into(), "0,0.1,0.2".into(),
        ],
        vec![
            "avc".into(), "--dim".into(), "2".into(), "--grid-lo=-1".into(), "--grid-hi".into(),
            "1".into(), "--grid-step".into(), "0.5".into(), "--p".into(), "2".into(),
            "--epsilon".into(), "0.1".into(),
        ],
        vec![
            "shatter".into(), "--points".into(), pts.clone(), "--p".into(), "inf".into(),
            "--epsilon".into(), "0.15".into(),
        ],
        vec![
            "bounds".into(), "--edges".into(), "1-8".into(), "--layers".into(), "2,2,1".into(),
            "--m".into(), "1-6".into(),
        ],
        vec!["verify-lemmas".into(), "--trials".into(), "5".into(), "--seed".into(), "2".into()],
    ];
    for (i, args) in reruns.iter().enumerate() {
        let first = dir.path().join(format!("out_{i}_a"));
        let second = dir.path().join(format!("out_{i}_b"));
        for out in [&first, &second] {
            let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
            full.push("--out");
            full.push(out.to_str().unwrap());
            bin_ok(&full);
        }
        let a = std::fs::read(&first).unwrap();
        let b = std::fs::read(&second).unwrap();
        assert_eq!(a, b, "command {:?} rerun differed", args[0]);
        assert!(!a.is_empty());
    }
    let _ = Path::new(&sample);
}

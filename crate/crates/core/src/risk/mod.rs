//! Adversarial risk: losses against corrupted outputs, exact risk fractions,
//! empirical risk minimization, and sample / distribution containers.
//!
//! The 0/1 loss against a corrupted output is 1 whenever the output is `Bot`
//! or a wrong label, so empirical risks are exact integer fractions
//! `mistakes / n` and comparisons between them are integer comparisons. The
//! minimizer (`aerm`) therefore never depends on float rounding: ties on the
//! exact fraction break toward the lowest enumeration index.

mod candidates;

pub use candidates::{enumerate_halfspace_candidates, halfspace_candidates};

use crate::corruption::{corrupted_loss_of, Corruptible, CorruptedLabel};
use crate::error::{Error, Result};
use crate::geometry::NeighborhoodRelation;
use crate::hypotheses::Label;
use crate::scalar::{format_f64, parse_f64, rat_from_f64, Rat};
use num_traits::Zero;
use rand::{RngCore, SeedableRng};

/// Labeled points with a fixed ambient dimension. Empty samples are legal
/// containers (a generator may emit a header-only file); risk computations
/// reject them.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    dim: usize,
    points: Vec<Vec<f64>>,
    labels: Vec<Label>,
}

impl LabeledSample {
    pub fn new(dim: usize, points: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("sample dimension must be at least 1"));
        }
        if points.len() != labels.len() {
            return Err(Error::invalid(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("sample coordinates must be finite"));
            }
        }
        Ok(LabeledSample {
            dim,
            points,
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], Label)> {
        self.points
            .iter()
            .map(Vec::as_slice)
            .zip(self.labels.iter().copied())
    }

    /// CSV with header `x0,...,x{d-1},label`; coordinates are shortest
    /// round-trip decimals, labels `-1` / `+1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for j in 0..self.dim {
            out.push_str(&format!("x{j},"));
        }
        out.push_str("label\n");
        for (x, y) in self.iter() {
            for v in x {
                out.push_str(&format_f64(*v));
                out.push(',');
            }
            out.push_str(&y.to_string());
            out.push('\n');
        }
        out
    }

    /// Parse the CSV form. Errors carry 1-based line numbers.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty file, expected a header row"))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.len() < 2 || cols.last() != Some(&"label") {
            return Err(Error::parse(
                1,
                format!("header must be x0,...,label; got {header:?}"),
            ));
        }
        let dim = cols.len() - 1;
        for (j, c) in cols[..dim].iter().enumerate() {
            if *c != format!("x{j}") {
                return Err(Error::parse(
                    1,
                    format!("column {} must be named x{j}, got {c:?}", j + 1),
                ));
            }
        }
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for (i, line) in lines {
            let lineno = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != dim + 1 {
                return Err(Error::parse(
                    lineno,
                    format!("expected {} fields, got {}", dim + 1, fields.len()),
                ));
            }
            let mut x = Vec::with_capacity(dim);
            for f in &fields[..dim] {
                x.push(
                    parse_f64(f)
                        .map_err(|e| Error::parse(lineno, e.to_string()))?,
                );
            }
            labels.push(
                fields[dim]
                    .parse::<Label>()
                    .map_err(|e| Error::parse(lineno, e.to_string()))?,
            );
            points.push(x);
        }
        LabeledSample::new(dim, points, labels)
    }
}

/// Discrete distribution over labeled points. Probabilities are nonnegative
/// and sum to 1 within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    dim: usize,
    atoms: Vec<(Vec<f64>, Label, f64)>,
}

impl FiniteDistribution {
    pub fn new(dim: usize, atoms: Vec<(Vec<f64>, Label, f64)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("distribution dimension must be at least 1"));
        }
        if atoms.is_empty() {
            return Err(Error::invalid("distribution needs at least one atom"));
        }
        let mut total = 0.0;
        for (x, _, p) in &atoms {
            if x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: x.len(),
                });
            }
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("atom coordinates must be finite"));
            }
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::invalid(format!("probability {p} must be >= 0")));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "probabilities sum to {total}, expected 1 within 1e-12"
            )));
        }
        Ok(FiniteDistribution { dim, atoms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(Vec<f64>, Label, f64)] {
        &self.atoms
    }

    pub fn to_toml(&self) -> String {
        use std::fmt::Write;
        let mut out = String::from("kind = \"finite-distribution\"\n");
        for (x, y, p) in &self.atoms {
            out.push_str("\n[[atoms]]\n");
            let coords: Vec<String> =
                x.iter().map(|v| format!("\"{}\"", format_f64(*v))).collect();
            writeln!(out, "point = [{}]", coords.join(", ")).unwrap();
            writeln!(out, "label = \"{y}\"").unwrap();
            writeln!(out, "probability = \"{}\"", format_f64(*p)).unwrap();
        }
        out
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Doc {
            kind: String,
            atoms: Vec<AtomDoc>,
        }
        #[derive(serde::Deserialize)]
        struct AtomDoc {
            point: Vec<String>,
            label: String,
            probability: String,
        }
        let doc: Doc = toml::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed distribution document: {e}")))?;
        if doc.kind != "finite-distribution" {
            return Err(Error::invalid(format!(
                "unknown distribution kind {:?}",
                doc.kind
            )));
        }
        if doc.atoms.is_empty() {
            return Err(Error::invalid("distribution needs at least one atom"));
        }
        let dim = doc.atoms[0].point.len();
        let mut atoms = Vec::with_capacity(doc.atoms.len());
        for a in &doc.atoms {
            let x: Result<Vec<f64>> = a.point.iter().map(|s| parse_f64(s)).collect();
            atoms.push((x?, a.label.parse()?, parse_f64(&a.probability)?));
        }
        FiniteDistribution::new(dim, atoms)
    }
}

/// 0/1 loss against a corrupted output: `Bot` and wrong labels both cost 1.
pub fn corrupted_loss(pred: &CorruptedLabel, y: Label) -> u8 {
    corrupted_loss_of(pred, &y)
}

/// Exact empirical risk `mistakes / total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Risk {
    pub mistakes: usize,
    pub total: usize,
}

impl Risk {
    pub fn value(&self) -> f64 {
        self.mistakes as f64 / self.total as f64
    }

    /// Exact comparison of the fractions by cross-multiplication.
    pub fn cmp_value(&self, other: &Risk) -> std::cmp::Ordering {
        let lhs = self.mistakes as u128 * other.total as u128;
        let rhs = other.mistakes as u128 * self.total as u128;
        lhs.cmp(&rhs)
    }

    pub fn as_rational(&self) -> Rat {
        Rat::new((self.mistakes as i64).into(), (self.total as i64).into())
    }
}

impl std::fmt::Display for Risk {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.mistakes, self.total)
    }
}

/// Adversarial empirical risk of `h` on the sample: the fraction of points
/// whose corrupted output fails to match the label.
pub fn adversarial_empirical_risk<H: Corruptible + ?Sized>(
    h: &H,
    sample: &LabeledSample,
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<Risk> {
    if sample.is_empty() {
        return Err(Error::invalid("empirical risk over an empty sample"));
    }
    let mut mistakes = 0;
    for (x, y) in sample.iter() {
        mistakes += usize::from(corrupted_loss(&h.corrupt(x, nbhd)?, y));
    }
    Ok(Risk {
        mistakes,
        total: sample.len(),
    })
}

/// Plain (non-adversarial) empirical risk, for the `epsilon = 0` identities.
pub fn classic_empirical_risk<H: Corruptible + ?Sized>(
    h: &H,
    sample: &LabeledSample,
) -> Result<Risk> {
    if sample.is_empty() {
        return Err(Error::invalid("empirical risk over an empty sample"));
    }
    let mut mistakes = 0;
    for (x, y) in sample.iter() {
        mistakes += usize::from(h.plain(x)? != y);
    }
    Ok(Risk {
        mistakes,
        total: sample.len(),
    })
}

/// Adversarial true risk over a finite distribution: the exact rational
/// `sum p_i * loss_i` with the stored `f64` probabilities converted
/// losslessly.
pub fn adversarial_true_risk<H: Corruptible + ?Sized>(
    h: &H,
    dist: &FiniteDistribution,
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<Rat> {
    let mut acc = Rat::zero();
    for (x, y, p) in dist.atoms() {
        if corrupted_loss(&h.corrupt(x, nbhd)?, *y) == 1 {
            acc += rat_from_f64(*p)?;
        }
    }
    Ok(acc)
}

/// Monte-Carlo estimate of the adversarial true risk with a Wilson 95%
/// interval. Identical seeds give identical estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskEstimate {
    pub trials: usize,
    pub failures: usize,
    pub mean: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

pub fn monte_carlo_true_risk<H: Corruptible + ?Sized>(
    h: &H,
    dist: &FiniteDistribution,
    nbhd: &NeighborhoodRelation<f64>,
    trials: usize,
    seed: u64,
) -> Result<RiskEstimate> {
    if trials == 0 {
        return Err(Error::invalid("monte carlo needs at least one trial"));
    }
    // Per-atom losses are deterministic; compute them once and let sampling
    // pick atoms by cumulative probability.
    let mut losses = Vec::with_capacity(dist.atoms().len());
    let mut cumulative = Vec::with_capacity(dist.atoms().len());
    let mut acc = 0.0;
    for (x, y, p) in dist.atoms() {
        losses.push(corrupted_loss(&h.corrupt(x, nbhd)?, *y));
        acc += p;
        cumulative.push(acc);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for _ in 0..trials {
        // 53-bit uniform draw in [0, 1).
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let idx = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(dist.atoms().len() - 1);
        failures += usize::from(losses[idx] == 1);
    }
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z = 1.959_963_984_540_054f64;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    Ok(RiskEstimate {
        trials,
        failures,
        mean: phat,
        wilson_lo: (center - half).max(0.0),
        wilson_hi: (center + half).min(1.0),
    })
}

/// Result of empirical risk minimization: the winning index and its exact
/// risk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AermOutcome {
    pub index: usize,
    pub risk: Risk,
}

/// Exact adversarial empirical risk minimizer over an enumerated class. Ties
/// break toward the lowest index, so the result is deterministic for a fixed
/// enumeration.
pub fn aerm<H: Corruptible>(
    class: &[H],
    sample: &LabeledSample,
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<AermOutcome> {
    if class.is_empty() {
        return Err(Error::invalid("empirical risk minimization over an empty class"));
    }
    let mut best: Option<AermOutcome> = None;
    for (index, h) in class.iter().enumerate() {
        let risk = adversarial_empirical_risk(h, sample, nbhd)?;
        let better = match &best {
            None => true,
            Some(b) => risk.cmp_value(&b.risk) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some(AermOutcome { index, risk });
            if risk.mistakes == 0 {
                break;
            }
        }
    }
    Ok(best.expect("nonempty class"))
}

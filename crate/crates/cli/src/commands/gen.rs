//! Synthetic labeled samples: a two-component Gaussian mixture, a uniform
//! box sample separated by a planted halfspace margin, and a labeled axis
//! grid. Identical configurations give identical bytes.

use std::path::PathBuf;

use avckit::error::Error;
use avckit::hypotheses::{sign_label, Halfspace, Label};
use avckit::risk::LabeledSample;
use avckit::scalar::format_f64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::args::{GenArgs, GenKind};
use crate::support::{axis_grid, config_digest, emit, load_config, parse_f64_list, Result};

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    kind: Option<String>,
    n: Option<usize>,
    dim: Option<usize>,
    seed: Option<u64>,
    sep: Option<f64>,
    noise: Option<f64>,
    w: Option<String>,
    b: Option<f64>,
    margin: Option<f64>,
    grid_lo: Option<f64>,
    grid_hi: Option<f64>,
    grid_step: Option<f64>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    kind: &'static str,
    n: usize,
    dim: usize,
    seed: u64,
    sep: String,
    noise: String,
    w: String,
    b: String,
    margin: String,
    grid_lo: String,
    grid_hi: String,
    grid_step: String,
}

fn kind_str(k: GenKind) -> &'static str {
    match k {
        GenKind::GaussianMixture2class => "gaussian-mixture-2class",
        GenKind::MarginSeparatedHalfspace => "margin-separated-halfspace",
        GenKind::GridUniform => "grid-uniform",
    }
}

fn kind_from_str(s: &str) -> Result<GenKind> {
    match s {
        "gaussian-mixture-2class" => Ok(GenKind::GaussianMixture2class),
        "margin-separated-halfspace" => Ok(GenKind::MarginSeparatedHalfspace),
        "grid-uniform" => Ok(GenKind::GridUniform),
        other => Err(Error::invalid(format!("unknown generator kind {other:?}"))),
    }
}

/// Standard normal draw via Box-Muller; `1 - random()` keeps the log finite.
fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn run(a: GenArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let kind = match (a.kind, &cfg.kind) {
        (Some(k), _) => k,
        (None, Some(s)) => kind_from_str(s)?,
        (None, None) => return Err(Error::invalid("--kind is required (flag or config)")),
    };
    let n = a.n.or(cfg.n).unwrap_or(20);
    let dim = a.dim.or(cfg.dim).unwrap_or(2);
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let sep = a.sep.or(cfg.sep).unwrap_or(2.0);
    let noise = a.noise.or(cfg.noise).unwrap_or(0.5);
    let w_text = a.w.clone().or(cfg.w);
    let b = a.b.or(cfg.b).unwrap_or(0.0);
    let margin = a.margin.or(cfg.margin).unwrap_or(0.1);
    let grid_lo = a.grid_lo.or(cfg.grid_lo).unwrap_or(-1.0);
    let grid_hi = a.grid_hi.or(cfg.grid_hi).unwrap_or(1.0);
    let grid_step = a.grid_step.or(cfg.grid_step).unwrap_or(0.5);
    let out = a.out.clone().or(cfg.out);
    if dim == 0 {
        return Err(Error::invalid("sample dimension must be at least 1"));
    }
    let w = match &w_text {
        Some(list) => {
            let w = parse_f64_list(list)?;
            if w.len() != dim {
                return Err(Error::invalid(format!(
                    "planted weight vector has {} entries for dimension {dim}",
                    w.len()
                )));
            }
            w
        }
        None => {
            let mut w = vec![0.0; dim];
            w[0] = 1.0;
            w
        }
    };

    let resolved = Resolved {
        command: "gen",
        kind: kind_str(kind),
        n,
        dim,
        seed,
        sep: format_f64(sep),
        noise: format_f64(noise),
        w: w.iter().map(|&v| format_f64(v)).collect::<Vec<_>>().join(","),
        b: format_f64(b),
        margin: format_f64(margin),
        grid_lo: format_f64(grid_lo),
        grid_hi: format_f64(grid_hi),
        grid_step: format_f64(grid_step),
    };
    let digest = config_digest(&resolved);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = match kind {
        GenKind::GaussianMixture2class => {
            if !(sep.is_finite() && noise.is_finite() && noise > 0.0) {
                return Err(Error::invalid("gaussian mixture needs finite sep and noise > 0"));
            }
            let mut points = Vec::with_capacity(n);
            let mut labels = Vec::with_capacity(n);
            for _ in 0..n {
                let plus = rng.random_bool(0.5);
                let center = if plus { sep / 2.0 } else { -sep / 2.0 };
                let mut x: Vec<f64> = (0..dim).map(|_| noise * normal(&mut rng)).collect();
                x[0] += center;
                points.push(x);
                labels.push(if plus { Label::Plus } else { Label::Minus });
            }
            LabeledSample::new(dim, points, labels)?
        }
        GenKind::MarginSeparatedHalfspace => {
            if !(margin.is_finite() && margin >= 0.0) {
                return Err(Error::invalid("planted margin must be finite and nonnegative"));
            }
            let planted = Halfspace::new(w.clone(), b)?;
            let mut points = Vec::with_capacity(n);
            let mut labels = Vec::with_capacity(n);
            // Rejection sampling with a hard cap so an infeasible margin
            // fails loudly instead of spinning.
            let budget = 1000 * n.max(1);
            let mut attempts = 0usize;
            while points.len() < n {
                attempts += 1;
                if attempts > budget {
                    return Err(Error::invalid(format!(
                        "margin {margin} rejected {budget} draws; widen the box or shrink it"
                    )));
                }
                let x: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
                let a = planted.activation(&x)?;
                if a.abs() >= margin && a != 0.0 {
                    labels.push(sign_label(a));
                    points.push(x);
                }
            }
            LabeledSample::new(dim, points, labels)?
        }
        GenKind::GridUniform => {
            let planted = Halfspace::new(w.clone(), b)?;
            let points = axis_grid(dim, grid_lo, grid_hi, grid_step)?;
            let mut labels = Vec::with_capacity(points.len());
            for x in &points {
                labels.push(sign_label(planted.activation(x)?));
            }
            LabeledSample::new(dim, points, labels)?
        }
    };
    emit(&out, &sample.to_csv())?;
    Ok(digest)
}

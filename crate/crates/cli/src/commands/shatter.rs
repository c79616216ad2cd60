//! Shattering report for one point tuple: loss-vector census against the
//! reference labels and the full robust-shattering check.

use std::fmt::Write as _;
use std::path::PathBuf;

use avckit::capacity::{is_adversarially_shattered, shattering_coefficient};
use avckit::hypotheses::Label;
use avckit::scalar::format_f64;
use serde::{Deserialize, Serialize};

use crate::args::ShatterArgs;
use crate::support::{
    config_digest, emit, load_config, parse_ball, parse_label_list, read_points, write_atomic,
    Result,
};

use super::family::{require_path, FamilySpec};

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    points: Option<PathBuf>,
    labels: Option<String>,
    p: Option<String>,
    epsilon: Option<f64>,
    family: Option<String>,
    weights: Option<String>,
    biases: Option<String>,
    out: Option<PathBuf>,
    witness_out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    points: String,
    labels: String,
    p: String,
    epsilon: String,
    family: &'static str,
    weights: String,
    biases: String,
}

pub fn run(a: ShatterArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let points_path = require_path(&a.points, cfg.points, "points")?;
    let labels_text = a.labels.clone().or(cfg.labels);
    let p = a.ball.p.clone().or(cfg.p);
    let epsilon = a.ball.epsilon.or(cfg.epsilon);
    let spec = FamilySpec::resolve(&a.family, cfg.family.as_deref(), &cfg.weights, &cfg.biases)?;
    let out = a.out.clone().or(cfg.out);
    let witness_out = a.witness_out.clone().or(cfg.witness_out);
    let nbhd = parse_ball(&p, epsilon)?;

    let (wtxt, btxt) = spec.digest_lists();
    let resolved = Resolved {
        command: "shatter",
        points: points_path.display().to_string(),
        labels: labels_text.clone().unwrap_or_default(),
        p: p.unwrap_or_else(|| "inf".to_string()),
        epsilon: format_f64(epsilon.unwrap_or(0.0)),
        family: spec.kind_str(),
        weights: wtxt,
        biases: btxt,
    };
    let digest = config_digest(&resolved);

    let (points, csv_labels) = read_points(&points_path)?;
    let labels = match &labels_text {
        Some(list) => parse_label_list(list)?,
        None => csv_labels.unwrap_or_else(|| vec![Label::Plus; points.len()]),
    };
    let class = spec.enumerate(&points, &nbhd)?;
    let census = shattering_coefficient(&class, &nbhd, &points, &labels)?;
    let (shattered, witness) = is_adversarially_shattered(&class, &nbhd, &points)?;

    let mut report = format!(
        "command = \"shatter\"\nconfig_digest = \"{digest}\"\nn = {}\nfamily_size = {}\nsigma = {}\ncomplete = {}\nshattered = {shattered}\n",
        census.n(),
        class.len(),
        census.sigma(),
        census.is_complete()
    );
    let vectors: Vec<String> = census
        .iter()
        .map(|v| {
            let digits: String = v.iter().map(|&b| char::from(b'0' + b)).collect();
            format!("\"{digits}\"")
        })
        .collect();
    let _ = writeln!(report, "loss_vectors = [{}]", vectors.join(", "));
    if let (Some(w), Some(path)) = (&witness, &witness_out) {
        w.verify()?;
        write_atomic(path, &w.to_toml()?)?;
        let _ = writeln!(report, "witness_file = \"{}\"", path.display());
    }
    emit(&out, &report)?;
    Ok(digest)
}

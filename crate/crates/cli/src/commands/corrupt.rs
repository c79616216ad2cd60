//! Per-point corrupted predictions.

use std::path::PathBuf;

use avckit::corruption::{corrupt_network_interval, Corruptible};
use avckit::error::Error;
use avckit::hypotheses::HypothesisDoc;
use avckit::scalar::format_f64;
use serde::{Deserialize, Serialize};

use crate::args::{CorruptArgs, Mode};
use crate::support::{
    config_digest, emit, format_point, load_config, parse_ball, read_hypothesis, read_points,
    Result,
};

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    hypothesis: Option<PathBuf>,
    points: Option<PathBuf>,
    p: Option<String>,
    epsilon: Option<f64>,
    mode: Option<String>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    hypothesis: String,
    points: String,
    p: String,
    epsilon: String,
    mode: &'static str,
}

pub fn run(a: CorruptArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let hyp_path = super::family::require_path(&a.hypothesis, cfg.hypothesis, "hypothesis")?;
    let pts_path = super::family::require_path(&a.points, cfg.points, "points")?;
    let p = a.ball.p.clone().or(cfg.p);
    let epsilon = a.ball.epsilon.or(cfg.epsilon);
    let mode = match (&a.mode, cfg.mode.as_deref()) {
        (Some(m), _) => *m,
        (None, Some("interval")) => Mode::Interval,
        (None, Some("exact")) | (None, None) => Mode::Exact,
        (None, Some(other)) => {
            return Err(Error::invalid(format!(
                "mode must be exact or interval, got {other:?}"
            )))
        }
    };
    let out = a.out.clone().or(cfg.out);
    let nbhd = parse_ball(&p, epsilon)?;

    let resolved = Resolved {
        command: "corrupt",
        hypothesis: hyp_path.display().to_string(),
        points: pts_path.display().to_string(),
        p: p.unwrap_or_else(|| "inf".to_string()),
        epsilon: format_f64(epsilon.unwrap_or(0.0)),
        mode: mode.as_str(),
    };
    let digest = config_digest(&resolved);

    let doc = read_hypothesis(&hyp_path)?;
    let (points, _) = read_points(&pts_path)?;
    if mode == Mode::Interval && matches!(doc, HypothesisDoc::Halfspace(_)) {
        return Err(Error::invalid(
            "interval mode applies to network hypotheses; halfspaces are exact",
        ));
    }

    let dim = points.first().map_or(0, |x| x.len());
    let mut csv = (0..dim)
        .map(|i| format!("x{i}"))
        .collect::<Vec<_>>()
        .join(",");
    csv.push_str(",output,mode\n");
    for x in &points {
        let label = match (mode, &doc) {
            (Mode::Interval, HypothesisDoc::Network(net)) => {
                corrupt_network_interval(net, x, &nbhd)?
            }
            _ => doc.corrupt(x, &nbhd)?,
        };
        csv.push_str(&format_point(x));
        csv.push_str(&format!(",{label},{}\n", mode.as_str()));
    }
    emit(&out, &csv)?;
    Ok(digest)
}

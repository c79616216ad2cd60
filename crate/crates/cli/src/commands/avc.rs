//! Grid-restricted adversarial-VC search: scan subset sizes upward, report
//! the best shattered size, and emit a re-checkable witness document.

use std::fmt::Write as _;
use std::path::PathBuf;

use avckit::capacity::avc_lower_bound;
use avckit::scalar::format_f64;
use serde::{Deserialize, Serialize};

use crate::args::AvcArgs;
use crate::support::{
    axis_grid, config_digest, emit, load_config, parse_ball, read_points, write_atomic, Result,
};

use super::family::FamilySpec;

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    points: Option<PathBuf>,
    dim: Option<usize>,
    grid_lo: Option<f64>,
    grid_hi: Option<f64>,
    grid_step: Option<f64>,
    p: Option<String>,
    epsilon: Option<f64>,
    family: Option<String>,
    weights: Option<String>,
    biases: Option<String>,
    max_n: Option<usize>,
    out: Option<PathBuf>,
    witness_out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    points: String,
    dim: usize,
    grid_lo: String,
    grid_hi: String,
    grid_step: String,
    p: String,
    epsilon: String,
    family: &'static str,
    weights: String,
    biases: String,
    max_n: usize,
}

pub fn run(a: AvcArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let points_path = a.points.clone().or(cfg.points);
    let dim = a.dim.or(cfg.dim).unwrap_or(0);
    let grid_lo = a.grid_lo.or(cfg.grid_lo).unwrap_or(-1.0);
    let grid_hi = a.grid_hi.or(cfg.grid_hi).unwrap_or(1.0);
    let grid_step = a.grid_step.or(cfg.grid_step).unwrap_or(0.5);
    let p = a.ball.p.clone().or(cfg.p);
    let epsilon = a.ball.epsilon.or(cfg.epsilon);
    let spec = FamilySpec::resolve(&a.family, cfg.family.as_deref(), &cfg.weights, &cfg.biases)?;
    let max_n = a.max_n.or(cfg.max_n).unwrap_or(6);
    let out = a.out.clone().or(cfg.out);
    let witness_out = a.witness_out.clone().or(cfg.witness_out);
    let nbhd = parse_ball(&p, epsilon)?;

    let (wtxt, btxt) = spec.digest_lists();
    let resolved = Resolved {
        command: "avc",
        points: points_path
            .as_ref()
            .map_or(String::new(), |p| p.display().to_string()),
        dim,
        grid_lo: format_f64(grid_lo),
        grid_hi: format_f64(grid_hi),
        grid_step: format_f64(grid_step),
        p: p.unwrap_or_else(|| "inf".to_string()),
        epsilon: format_f64(epsilon.unwrap_or(0.0)),
        family: spec.kind_str(),
        weights: wtxt,
        biases: btxt,
        max_n,
    };
    let digest = config_digest(&resolved);

    let grid = match &points_path {
        Some(path) => read_points(path)?.0,
        None => axis_grid(dim, grid_lo, grid_hi, grid_step)?,
    };
    let report = avc_lower_bound(&spec.search_family(), &nbhd, &grid, max_n)?;

    let mut summary = format!(
        "command = \"avc\"\nconfig_digest = \"{digest}\"\ngrid_points = {}\nbest_n = {}\n",
        grid.len(),
        report.best_n
    );
    let mut witness_file = String::new();
    if let Some(w) = &report.witness {
        let rows: Vec<String> = w
            .points
            .iter()
            .map(|x| {
                let coords: Vec<String> =
                    x.iter().map(|&v| format!("\"{}\"", format_f64(v))).collect();
                format!("[{}]", coords.join(", "))
            })
            .collect();
        let _ = writeln!(summary, "witness_points = [{}]", rows.join(", "));
        if let Some(path) = &witness_out {
            w.verify()?;
            write_atomic(path, &w.to_toml()?)?;
            witness_file = path.display().to_string();
        }
    }
    let _ = writeln!(summary, "witness_written = {}", !witness_file.is_empty());
    if !witness_file.is_empty() {
        let _ = writeln!(summary, "witness_file = \"{witness_file}\"");
    }
    if let Some(fr) = report.frontier_n {
        let _ = write!(
            summary,
            "\n[frontier]\nn = {fr}\nsubsets_checked = {}\nall_unshattered = true\n",
            report.frontier_subsets
        );
    }
    emit(&out, &summary)?;
    Ok(digest)
}

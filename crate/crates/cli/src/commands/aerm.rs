//! Adversarial empirical risk minimization over an enumerated halfspace
//! family, with an optional epsilon sweep table.

use std::fmt::Write as _;
use std::path::PathBuf;

use avckit::geometry::NeighborhoodRelation;
use avckit::hypotheses::write_halfspace;
use avckit::risk::{aerm, LabeledSample};
use avckit::scalar::format_f64;
use serde::{Deserialize, Serialize};

use crate::args::AermArgs;
use crate::support::{
    config_digest, emit, load_config, parse_ball, parse_f64_list, Result,
};

use super::family::{require_path, FamilySpec};

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    sample: Option<PathBuf>,
    p: Option<String>,
    epsilon: Option<f64>,
    family: Option<String>,
    weights: Option<String>,
    biases: Option<String>,
    sweep: Option<String>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    sample: String,
    p: String,
    epsilon: String,
    family: &'static str,
    weights: String,
    biases: String,
    sweep: String,
}

pub fn run(a: AermArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let sample_path = require_path(&a.sample, cfg.sample, "sample")?;
    let p = a.ball.p.clone().or(cfg.p);
    let epsilon = a.ball.epsilon.or(cfg.epsilon);
    let spec = FamilySpec::resolve(&a.family, cfg.family.as_deref(), &cfg.weights, &cfg.biases)?;
    let sweep_text = a.sweep.clone().or(cfg.sweep);
    let out = a.out.clone().or(cfg.out);

    let (wtxt, btxt) = spec.digest_lists();
    let resolved = Resolved {
        command: "aerm",
        sample: sample_path.display().to_string(),
        p: p.clone().unwrap_or_else(|| "inf".to_string()),
        epsilon: format_f64(epsilon.unwrap_or(0.0)),
        family: spec.kind_str(),
        weights: wtxt,
        biases: btxt,
        sweep: sweep_text.clone().unwrap_or_default(),
    };
    let digest = config_digest(&resolved);

    let sample = LabeledSample::from_csv(&std::fs::read_to_string(&sample_path)?)?;
    let report = match &sweep_text {
        None => {
            let nbhd = parse_ball(&p, epsilon)?;
            single_report(&digest, &spec, &sample, &nbhd)?
        }
        Some(list) => {
            let norm = p.as_deref().unwrap_or("inf").parse()?;
            let mut table = String::from("epsilon,index,mistakes,total,risk\n");
            for eps in parse_f64_list(list)? {
                let nbhd = NeighborhoodRelation::ball(norm, eps)?;
                // Candidate families are rebuilt per radius so each row
                // minimizes over a class complete for that radius.
                let class = spec.enumerate(sample.points(), &nbhd)?;
                let won = aerm(&class, &sample, &nbhd)?;
                let _ = writeln!(
                    table,
                    "{},{},{},{},{}",
                    format_f64(eps),
                    won.index,
                    won.risk.mistakes,
                    won.risk.total,
                    format_f64(won.risk.value())
                );
            }
            table
        }
    };
    emit(&out, &report)?;
    Ok(digest)
}

fn single_report(
    digest: &str,
    spec: &FamilySpec,
    sample: &LabeledSample,
    nbhd: &NeighborhoodRelation<f64>,
) -> Result<String> {
    let class = spec.enumerate(sample.points(), nbhd)?;
    let won = aerm(&class, sample, nbhd)?;
    let r = &won.risk;
    let mut report = format!(
        "command = \"aerm\"\nconfig_digest = \"{digest}\"\nfamily_size = {}\nchosen_index = {}\n",
        class.len(),
        won.index
    );
    let _ = write!(
        report,
        "\n[risk]\nmistakes = {}\ntotal = {}\nfraction = \"{r}\"\ndecimal = \"{}\"\n",
        r.mistakes,
        r.total,
        format_f64(r.value())
    );
    report.push_str("\n[hypothesis]\n");
    report.push_str(&write_halfspace(&class[won.index]));
    Ok(report)
}

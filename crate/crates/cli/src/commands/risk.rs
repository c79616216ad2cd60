//! Risk report for one hypothesis: adversarial and classic empirical risk,
//! plus exact and Monte-Carlo true risk when a distribution is supplied.

use std::fmt::Write as _;
use std::path::PathBuf;

use avckit::capacity::rat_to_f64;
use avckit::risk::{
    adversarial_empirical_risk, adversarial_true_risk, classic_empirical_risk,
    monte_carlo_true_risk, FiniteDistribution, LabeledSample, Risk,
};
use avckit::scalar::format_f64;
use serde::{Deserialize, Serialize};

use crate::args::RiskArgs;
use crate::support::{config_digest, emit, load_config, parse_ball, read_hypothesis, Result};

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    hypothesis: Option<PathBuf>,
    sample: Option<PathBuf>,
    p: Option<String>,
    epsilon: Option<f64>,
    dist: Option<PathBuf>,
    mc_trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    hypothesis: String,
    sample: String,
    p: String,
    epsilon: String,
    dist: String,
    mc_trials: usize,
    seed: u64,
}

fn risk_section(out: &mut String, name: &str, r: &Risk) {
    let _ = write!(
        out,
        "\n[{name}]\nmistakes = {}\ntotal = {}\nfraction = \"{r}\"\ndecimal = \"{}\"\n",
        r.mistakes,
        r.total,
        format_f64(r.value())
    );
}

pub fn run(a: RiskArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let hyp_path = super::family::require_path(&a.hypothesis, cfg.hypothesis, "hypothesis")?;
    let sample_path = super::family::require_path(&a.sample, cfg.sample, "sample")?;
    let p = a.ball.p.clone().or(cfg.p);
    let epsilon = a.ball.epsilon.or(cfg.epsilon);
    let dist_path = a.dist.clone().or(cfg.dist);
    let mc_trials = a.mc_trials.or(cfg.mc_trials).unwrap_or(0);
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let out = a.out.clone().or(cfg.out);
    let nbhd = parse_ball(&p, epsilon)?;

    let resolved = Resolved {
        command: "risk",
        hypothesis: hyp_path.display().to_string(),
        sample: sample_path.display().to_string(),
        p: p.unwrap_or_else(|| "inf".to_string()),
        epsilon: format_f64(epsilon.unwrap_or(0.0)),
        dist: dist_path
            .as_ref()
            .map_or(String::new(), |d| d.display().to_string()),
        mc_trials,
        seed,
    };
    let digest = config_digest(&resolved);

    let doc = read_hypothesis(&hyp_path)?;
    let sample = LabeledSample::from_csv(&std::fs::read_to_string(&sample_path)?)?;

    let mut report = format!("command = \"risk\"\nconfig_digest = \"{digest}\"\n");
    let adv = adversarial_empirical_risk(&doc, &sample, &nbhd)?;
    risk_section(&mut report, "adversarial", &adv);
    let classic = classic_empirical_risk(&doc, &sample)?;
    risk_section(&mut report, "classic", &classic);

    if let Some(dp) = &dist_path {
        let dist = FiniteDistribution::from_toml(&std::fs::read_to_string(dp)?)?;
        let exact = adversarial_true_risk(&doc, &dist, &nbhd)?;
        let _ = write!(
            report,
            "\n[true_risk]\nfraction = \"{exact}\"\ndecimal = \"{}\"\n",
            format_f64(rat_to_f64(&exact))
        );
        if mc_trials > 0 {
            let est = monte_carlo_true_risk(&doc, &dist, &nbhd, mc_trials, seed)?;
            let _ = write!(
                report,
                "\n[monte_carlo]\ntrials = {}\nfailures = {}\nmean = \"{}\"\nwilson_low = \"{}\"\nwilson_high = \"{}\"\nseed = {seed}\n",
                est.trials,
                est.failures,
                format_f64(est.mean),
                format_f64(est.wilson_lo),
                format_f64(est.wilson_hi)
            );
        }
    }
    emit(&out, &report)?;
    Ok(digest)
}

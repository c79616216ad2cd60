//! Randomized exhaustive suites for the composition and product growth
//! bounds, with a deterministic line-per-trial report.

use std::fmt::Write as _;
use std::path::PathBuf;

use avckit::capacity::{composition_bound_trials, product_bound_trials};
use avckit::error::Error;
use serde::{Deserialize, Serialize};

use crate::args::VerifyLemmasArgs;
use crate::support::{config_digest, emit, load_config, Result};

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCfg {
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    trials: usize,
    seed: u64,
}

pub fn run(a: VerifyLemmasArgs) -> Result<String> {
    let cfg: FileCfg = load_config(&a.config)?;
    let trials = a.trials.or(cfg.trials).unwrap_or(1000);
    let seed = a.seed.or(cfg.seed).unwrap_or(7);
    let out = a.out.clone().or(cfg.out);

    let resolved = Resolved {
        command: "verify-lemmas",
        trials,
        seed,
    };
    let digest = config_digest(&resolved);

    if trials == 0 {
        eprintln!("avckit: verify-lemmas ran zero trials; the pass is vacuous");
    }
    let comp = composition_bound_trials(trials, seed)?;
    let prod = product_bound_trials(trials, seed.wrapping_add(1))?;

    let mut report = format!("lemma-suite trials={trials} seed={seed}\n");
    for (i, c) in comp.iter().enumerate() {
        let _ = writeln!(
            report,
            "composition trial={i} m={} tau_h={} tau_f1={} tau_f2={} holds={}",
            c.m, c.tau_h, c.tau_f1, c.tau_f2, c.holds
        );
    }
    for (i, c) in prod.iter().enumerate() {
        let _ = writeln!(
            report,
            "product trial={i} m={} tau_h={} tau_f1={} tau_f2={} holds={} equality={}",
            c.m, c.tau_h, c.tau_f1, c.tau_f2, c.holds, c.restriction_equality
        );
    }
    let comp_ok = comp.iter().filter(|c| c.holds).count();
    let prod_ok = prod.iter().filter(|c| c.holds).count();
    let _ = writeln!(report, "composition holds: {comp_ok}/{}", comp.len());
    let _ = writeln!(report, "product holds: {prod_ok}/{}", prod.len());
    let pass = comp_ok == comp.len() && prod_ok == prod.len();
    let _ = writeln!(report, "RESULT {}", if pass { "PASS" } else { "FAIL" });
    emit(&out, &report)?;
    if !pass {
        return Err(Error::VerificationFailed(format!(
            "{} of {} growth-bound trials failed",
            (comp.len() - comp_ok) + (prod.len() - prod_ok),
            comp.len() + prod.len()
        )));
    }
    Ok(digest)
}

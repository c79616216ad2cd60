//! Independent re-check of a shattering witness document: parse it and
//! replay every entry through the corruption oracle.

use avckit::capacity::ShatterWitness;
use serde::Serialize;

use crate::args::VerifyWitnessArgs;
use crate::support::{config_digest, Result};

#[derive(Serialize)]
struct Resolved {
    command: &'static str,
    witness: String,
}

pub fn run(a: VerifyWitnessArgs) -> Result<String> {
    let resolved = Resolved {
        command: "verify-witness",
        witness: a.witness.display().to_string(),
    };
    let digest = config_digest(&resolved);
    let text = std::fs::read_to_string(&a.witness)?;
    let witness = ShatterWitness::from_toml(&text)?;
    witness.verify()?;
    println!(
        "witness OK: n={} entries={}",
        witness.len(),
        witness.entries.len()
    );
    Ok(digest)
}

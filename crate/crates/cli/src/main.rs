//! `avckit`: config-driven front end for the corruption, risk, and capacity
//! toolkit.
//!
//! Every command is deterministic given its resolved config: randomized work
//! carries an explicit seed, parallel searches reduce in a fixed order, and
//! result files never contain wall-clock data (the run record with the
//! duration goes to stderr instead).
//!
//! Exit codes: 0 success, 2 invalid input, 3 guard exceeded, 4 property
//! verification failed.

mod args;
mod commands;
mod support;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    let name = cli.command.name();
    let start = std::time::Instant::now();
    match commands::run(cli.command) {
        Ok(digest) => {
            eprintln!(
                "avckit: command={name} digest={} duration_ms={}",
                &digest[..12.min(digest.len())],
                start.elapsed().as_millis()
            );
        }
        Err(e) => {
            eprintln!("avckit: {name}: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &avckit::Error) -> i32 {
    match e {
        avckit::Error::GuardExceeded { .. } => 3,
        avckit::Error::VerificationFailed(_) => 4,
        _ => 2,
    }
}

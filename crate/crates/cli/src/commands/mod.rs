//! One module per subcommand. Each `run` returns the config digest of the
//! resolved experiment for the stderr run record.

mod aerm;
mod avc;
mod bounds;
mod corrupt;
mod family;
mod gen;
mod risk;
mod shatter;
mod verify_lemmas;
mod verify_witness;

use crate::args::Command;
use crate::support::Result;

pub fn run(command: Command) -> Result<String> {
    match command {
        Command::Corrupt(a) => corrupt::run(a),
        Command::Risk(a) => risk::run(a),
        Command::Aerm(a) => aerm::run(a),
        Command::Avc(a) => avc::run(a),
        Command::Shatter(a) => shatter::run(a),
        Command::Bounds(a) => bounds::run(a),
        Command::VerifyLemmas(a) => verify_lemmas::run(a),
        Command::VerifyWitness(a) => verify_witness::run(a),
        Command::Gen(a) => gen::run(a),
    }
}

//! `qswitch`: figure data as CSV and protocol sessions from flags.

mod args;
mod format;
mod protocol_cmd;
mod sweep_cmd;

use clap::Parser;

fn main() -> anyhow::Result<()> {
    match args::Cli::parse().command {
        args::Command::SweepKey(a) => sweep_cmd::sweep_key(&a),
        args::Command::SweepPsi(a) => sweep_cmd::sweep_psi(&a),
        args::Command::SweepSqueezing(a) => sweep_cmd::sweep_squeezing(&a),
        args::Command::SweepRt(a) => sweep_cmd::sweep_rt(&a),
        args::Command::Protocol(a) => protocol_cmd::run(&a),
    }
}

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qswitch", version, about = "Quantum cryptographic switch simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Holevo quantity against key information c (noiseless by default).
    SweepKey(SweepKeyArgs),
    /// Holevo quantity against the Werner angle psi, with and without noise.
    SweepPsi(SweepPsiArgs),
    /// Holevo quantity against bath squeezing r for several key levels.
    SweepSqueezing(SweepSqueezingArgs),
    /// Holevo quantity over a squeezing x time grid.
    SweepRt(SweepRtArgs),
    /// Run one protocol session (or a Monte-Carlo collusion attack).
    Protocol(ProtocolArgs),
}

/// Bath settings shared by the noisy sweeps.
#[derive(Args, Debug, Clone)]
pub struct BathArgs {
    /// Bath temperature.
    #[arg(long = "T", default_value_t = 0.1)]
    pub temperature: f64,
    /// Spontaneous decay rate.
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,
}

#[derive(Args, Debug)]
pub struct SweepKeyArgs {
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    #[arg(long, default_value_t = 2.0)]
    pub to: f64,
    /// Also send Alice's qubit through the bath channel.
    #[arg(long)]
    pub noise: bool,
    #[command(flatten)]
    pub bath: BathArgs,
    /// Evolution time (with --noise).
    #[arg(long = "t", default_value_t = 0.5)]
    pub time: f64,
    /// Bath squeezing (with --noise).
    #[arg(long = "r", default_value_t = 0.0, allow_negative_numbers = true)]
    pub squeezing: f64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepPsiArgs {
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.0)]
    pub from: f64,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub to: f64,
    /// Squeezing values, comma separated.
    #[arg(long = "r", value_delimiter = ',', default_value = "0,-0.2,0.3", allow_hyphen_values = true)]
    pub squeezing: Vec<f64>,
    #[arg(long = "t", default_value_t = 0.5)]
    pub time: f64,
    #[command(flatten)]
    pub bath: BathArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepSqueezingArgs {
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub to: f64,
    /// Key information levels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,1.5,2")]
    pub c: Vec<f64>,
    #[arg(long = "t", default_value_t = 0.5)]
    pub time: f64,
    #[command(flatten)]
    pub bath: BathArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepRtArgs {
    /// Number of time points.
    #[arg(long, default_value_t = 61)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.0)]
    pub t_from: f64,
    #[arg(long, default_value_t = 3.0)]
    pub t_to: f64,
    #[arg(long, default_value_t = 21)]
    pub r_steps: usize,
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    pub r_from: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub r_to: f64,
    /// Key information revealed by Charlie.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[command(flatten)]
    pub bath: BathArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attack {
    Collusion,
}

#[derive(Args, Debug)]
pub struct ProtocolArgs {
    /// Number of Bell pairs.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `random`, or hex digits read MSB first, two bits (a, b) per pair.
    #[arg(long, default_value = "random")]
    pub messages: String,
    /// Share Werner pairs at this angle instead of pure Bell pairs.
    #[arg(long)]
    pub psi: Option<f64>,
    /// Bath temperature; any bath flag switches the channel on.
    #[arg(long = "T")]
    pub temperature: Option<f64>,
    #[arg(long = "t")]
    pub time: Option<f64>,
    #[arg(long = "r", allow_negative_numbers = true)]
    pub squeezing: Option<f64>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    /// Charlie scrambles the order of Bob's qubits.
    #[arg(long)]
    pub scramble: bool,
    /// Charlie discloses the true order (default when scrambled, unless
    /// attacking).
    #[arg(long, overrides_with = "no_reveal_perm")]
    pub reveal_perm: bool,
    #[arg(long, overrides_with = "reveal_perm")]
    pub no_reveal_perm: bool,
    #[arg(long, value_enum)]
    pub attack: Option<Attack>,
    /// Monte-Carlo sessions for --attack.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Transcript file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

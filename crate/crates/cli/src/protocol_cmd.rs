use std::fs;

use anyhow::{bail, Context, Result};
use qswitch::channels::{sgad_kraus, sgad_params_from_bath, BathConfig, SqueezedThermalBath};
use qswitch::protocol::{collusion_trials, random_messages, run_session, PairSource, SessionConfig};
use qswitch::states::{PauliCode, WernerParam};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::ProtocolArgs;

pub fn run(a: &ProtocolArgs) -> Result<()> {
    let config = session_config(a)?;

    let outcome = run_session(&config)?;
    if let Some(path) = &a.out {
        fs::write(path, outcome.transcript.to_string())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }

    let mut summary = format!(
        "n={} scrambled={} revealed={} accuracy={:.6}",
        config.n, config.scrambled, config.reveal_perm, outcome.decoding.accuracy
    );
    if a.attack.is_some() {
        let trials = a.trials.unwrap_or(1).max(1);
        if trials > 1 {
            // a separate stream so the session above stays reproducible
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
            let (mean, se) = collusion_trials(config.n, trials, &mut rng)?;
            summary.push_str(&format!(
                " attack=collusion trials={trials} mean_accuracy={mean:.6} stderr={se:.6} expected={:.6}",
                0.25 + 0.75 / config.n as f64
            ));
        } else {
            summary.push_str(" attack=collusion trials=1");
        }
    }
    println!("{summary}");
    Ok(())
}

fn session_config(a: &ProtocolArgs) -> Result<SessionConfig> {
    if a.n < 2 {
        bail!("--n must be at least 2");
    }
    if a.reveal_perm && !a.scramble {
        bail!("--reveal-perm requires --scramble");
    }
    if a.no_reveal_perm && !a.scramble {
        bail!("--no-reveal-perm requires --scramble");
    }
    if a.attack.is_some() && !a.scramble {
        bail!("--attack requires --scramble");
    }
    if a.trials.is_some() && a.attack.is_none() {
        bail!("--trials only applies with --attack");
    }
    if a.attack.is_some() && a.reveal_perm {
        bail!("--attack needs the permutation withheld; drop --reveal-perm");
    }
    // collusion only makes sense against a withheld order
    let reveal_perm = a.reveal_perm || (a.scramble && !a.no_reveal_perm && a.attack.is_none());

    let messages = match a.messages.as_str() {
        "random" => random_messages(a.n, &mut ChaCha8Rng::seed_from_u64(a.seed ^ 0x6d65_7373_6167_6573)),
        hex => parse_hex_messages(hex, a.n)?,
    };

    let source = match a.psi {
        Some(psi) => PairSource::Werner(WernerParam::new(psi).context("--psi")?),
        None => PairSource::Pure,
    };

    let noisy = a.temperature.is_some() || a.time.is_some() || a.squeezing.is_some() || a.gamma0.is_some();
    let channel = if noisy {
        let cfg = BathConfig::new(
            a.squeezing.unwrap_or(0.0),
            a.temperature.unwrap_or(0.1),
            a.time.unwrap_or(0.5),
            a.gamma0.unwrap_or(1.0),
        )?;
        Some(sgad_kraus(&sgad_params_from_bath(&cfg, &SqueezedThermalBath::default())?)?)
    } else {
        None
    };

    Ok(SessionConfig {
        n: a.n,
        source,
        channel,
        scrambled: a.scramble,
        reveal_perm,
        messages,
        seed: a.seed,
    })
}

/// Hex digits, most significant bit first; each digit carries two codes
/// `(a, b)`. Exactly `ceil(n/2)` digits; padding bits must be zero.
pub fn parse_hex_messages(hex: &str, n: usize) -> Result<Vec<PauliCode>> {
    let want = n.div_ceil(2);
    if hex.chars().count() != want {
        bail!("--messages needs exactly {want} hex digits for n={n}, got {}", hex.len());
    }
    let mut codes = Vec::with_capacity(2 * want);
    for ch in hex.chars() {
        let d = ch
            .to_digit(16)
            .with_context(|| format!("--messages: {ch:?} is not a hex digit"))? as u8;
        codes.push(PauliCode::new(d >> 3 & 1, d >> 2 & 1)?);
        codes.push(PauliCode::new(d >> 1 & 1, d & 1)?);
    }
    if codes.len() > n {
        if codes[n] != PauliCode::I {
            bail!("--messages: padding bits after pair {n} must be zero");
        }
        codes.truncate(n);
    }
    Ok(codes)
}

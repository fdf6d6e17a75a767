use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use qswitch::information::{werner_param_for_key_info, KeyInfo};
use qswitch::sweep::{Axis, FixedParams, SweepSpec, SweepVariable};

use crate::args::{SweepKeyArgs, SweepPsiArgs, SweepRtArgs, SweepSqueezingArgs};
use crate::format::sig12;

pub fn sweep_key(a: &SweepKeyArgs) -> Result<()> {
    let spec = SweepSpec::new(
        vec![Axis::range(SweepVariable::KeyInfo, a.from, a.to, a.steps)?],
        FixedParams {
            temperature: a.bath.temperature,
            gamma0: a.bath.gamma0,
            time: a.time,
            squeezing: a.squeezing,
            ..FixedParams::default()
        },
        a.noise,
    )?;
    write_sweep(&spec, a.out.as_deref())
}

pub fn sweep_psi(a: &SweepPsiArgs) -> Result<()> {
    let spec = SweepSpec::new(
        vec![
            Axis::list(SweepVariable::Squeezing, a.squeezing.clone())?,
            Axis::range(SweepVariable::Psi, a.from, a.to, a.steps)?,
        ],
        FixedParams {
            temperature: a.bath.temperature,
            gamma0: a.bath.gamma0,
            time: a.time,
            ..FixedParams::default()
        },
        true,
    )?;
    write_sweep(&spec, a.out.as_deref())
}

pub fn sweep_squeezing(a: &SweepSqueezingArgs) -> Result<()> {
    let spec = SweepSpec::new(
        vec![
            Axis::list(SweepVariable::KeyInfo, a.c.clone())?,
            Axis::range(SweepVariable::Squeezing, a.from, a.to, a.steps)?,
        ],
        FixedParams {
            temperature: a.bath.temperature,
            gamma0: a.bath.gamma0,
            time: a.time,
            ..FixedParams::default()
        },
        true,
    )?;
    write_sweep(&spec, a.out.as_deref())
}

pub fn sweep_rt(a: &SweepRtArgs) -> Result<()> {
    let c = KeyInfo::new(a.c).map_err(|e| anyhow::anyhow!("--c: {e}"))?;
    let spec = SweepSpec::new(
        vec![
            Axis::range(SweepVariable::Squeezing, a.r_from, a.r_to, a.r_steps)?,
            Axis::range(SweepVariable::Time, a.t_from, a.t_to, a.steps)?,
        ],
        FixedParams {
            temperature: a.bath.temperature,
            gamma0: a.bath.gamma0,
            psi: werner_param_for_key_info(c).psi(),
            ..FixedParams::default()
        },
        true,
    )?;
    write_sweep(&spec, a.out.as_deref())
}

/// Writes the grid as CSV. Rows whose noisy channel cannot be built keep an
/// empty `chi_noisy` cell and get a warning on stderr.
fn write_sweep(spec: &SweepSpec, out: Option<&Path>) -> Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("cannot write {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(spec.header())?;
    let names: Vec<&str> = spec.axes().iter().map(|a| a.variable().column()).collect();
    let has_c_axis = spec.axes().iter().any(|a| a.variable() == SweepVariable::KeyInfo);

    for row in spec.evaluate() {
        let mut record: Vec<String> = row.coords.iter().map(|&v| sig12(v)).collect();
        if !has_c_axis {
            record.push(sig12(row.key_info));
        }
        let at = || {
            names
                .iter()
                .zip(&row.coords)
                .map(|(n, v)| format!("{n}={}", sig12(*v)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        record.push(match &row.chi_noiseless {
            Ok(v) => sig12(*v),
            Err(e) => {
                eprintln!("warning: {}: {e}", at());
                String::new()
            }
        });
        match &row.chi_noisy {
            Some(Ok(v)) => record.push(sig12(*v)),
            Some(Err(e)) => {
                eprintln!("warning: {}: {e}", at());
                record.push(String::new());
            }
            None => {}
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

//! Parameter grids for the Holevo quantity.
//!
//! A [`SweepSpec`] lists one or more axes; the first axis varies slowest.
//! Every grid point yields the key information `c`, the noiseless Holevo
//! quantity and, when a bath is configured, the Holevo quantity after Alice's
//! qubit passes the squeezed generalized amplitude damping channel.
//!
//! ```
//! use qswitch::sweep::{Axis, FixedParams, SweepSpec, SweepVariable};
//!
//! let spec = SweepSpec::new(
//!     vec![Axis::range(SweepVariable::KeyInfo, 0.0, 2.0, 5)?],
//!     FixedParams::default(),
//!     false,
//! )?;
//! for row in spec.evaluate() {
//!     assert!((row.chi_noiseless? - row.key_info).abs() < 1e-9);
//! }
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

use std::fmt;
use std::thread;

use thiserror::Error;

use crate::channels::{sgad_kraus, sgad_params_from_bath, BathConfig, ParameterProvider, SqueezedThermalBath};
use crate::information::{
    holevo, key_information, signal_ensemble, werner_param_for_key_info, InfoError, KeyInfo,
};
use crate::states::WernerParam;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("{0} needs at least 2 steps")]
    TooFewSteps(SweepVariable),
    #[error("{variable} range must have min < max, got [{min}, {max}]")]
    EmptyRange { variable: SweepVariable, min: f64, max: f64 },
    #[error("{variable} value {value} is outside its domain")]
    OutOfDomain { variable: SweepVariable, value: f64 },
    #[error("{0} appears on more than one axis")]
    DuplicateAxis(SweepVariable),
    #[error("a sweep needs at least one axis")]
    NoAxes,
    #[error("{0} only affects the noisy channel; enable noise to sweep it")]
    NeedsNoise(SweepVariable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Psi,
    KeyInfo,
    Squeezing,
    Time,
}

impl SweepVariable {
    /// CSV column name.
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Psi => "psi",
            SweepVariable::KeyInfo => "c",
            SweepVariable::Squeezing => "r",
            SweepVariable::Time => "t",
        }
    }

    fn check(self, value: f64) -> Result<(), SweepError> {
        let ok = match self {
            SweepVariable::Psi => (0.0..=std::f64::consts::FRAC_PI_2).contains(&value),
            SweepVariable::KeyInfo => (0.0..=2.0).contains(&value),
            SweepVariable::Squeezing => value.is_finite(),
            SweepVariable::Time => value.is_finite() && value >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(SweepError::OutOfDomain {
                variable: self,
                value,
            })
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    variable: SweepVariable,
    values: Vec<f64>,
}

impl Axis {
    /// `steps` evenly spaced points from `min` to `max` inclusive.
    pub fn range(variable: SweepVariable, min: f64, max: f64, steps: usize) -> Result<Self, SweepError> {
        if steps < 2 {
            return Err(SweepError::TooFewSteps(variable));
        }
        if min.is_nan() || max.is_nan() || min >= max {
            return Err(SweepError::EmptyRange { variable, min, max });
        }
        let h = (max - min) / (steps - 1) as f64;
        // pin the last point so rounding never pushes it past `max`
        let values = (0..steps)
            .map(|i| if i + 1 == steps { max } else { min + h * i as f64 })
            .collect();
        Self::list(variable, values)
    }

    /// Explicit values, kept in the given order.
    pub fn list(variable: SweepVariable, values: Vec<f64>) -> Result<Self, SweepError> {
        if values.is_empty() {
            return Err(SweepError::TooFewSteps(variable));
        }
        for &v in &values {
            variable.check(v)?;
        }
        Ok(Self { variable, values })
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Values held constant where no axis overrides them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams {
    pub psi: f64,
    pub temperature: f64,
    pub time: f64,
    pub squeezing: f64,
    pub gamma0: f64,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            psi: std::f64::consts::FRAC_PI_2,
            temperature: 0.1,
            time: 0.5,
            squeezing: 0.0,
            gamma0: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    axes: Vec<Axis>,
    fixed: FixedParams,
    noisy: bool,
    bath: SqueezedThermalBath,
}

/// One grid point. `coords` follows the axis order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    pub psi: f64,
    pub key_info: f64,
    pub chi_noiseless: Result<f64, InfoError>,
    /// `None` when the sweep is noiseless.
    pub chi_noisy: Option<Result<f64, InfoError>>,
}

impl SweepSpec {
    pub fn new(axes: Vec<Axis>, fixed: FixedParams, noisy: bool) -> Result<Self, SweepError> {
        if axes.is_empty() {
            return Err(SweepError::NoAxes);
        }
        for (i, a) in axes.iter().enumerate() {
            if axes[..i].iter().any(|b| b.variable == a.variable)
                || (a.variable == SweepVariable::Psi
                    && axes.iter().any(|b| b.variable == SweepVariable::KeyInfo))
            {
                return Err(SweepError::DuplicateAxis(a.variable));
            }
            if !noisy && matches!(a.variable, SweepVariable::Squeezing | SweepVariable::Time) {
                return Err(SweepError::NeedsNoise(a.variable));
            }
        }
        SweepVariable::Psi.check(fixed.psi)?;
        SweepVariable::Squeezing.check(fixed.squeezing)?;
        SweepVariable::Time.check(fixed.time)?;
        Ok(Self {
            axes,
            fixed,
            noisy,
            bath: SqueezedThermalBath::default(),
        })
    }

    /// Replaces the default bath model.
    pub fn with_bath(mut self, bath: SqueezedThermalBath) -> Self {
        self.bath = bath;
        self
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn is_noisy(&self) -> bool {
        self.noisy
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// CSV header matching [`SweepRow`] fields.
    pub fn header(&self) -> Vec<&'static str> {
        let mut h: Vec<&'static str> = self.axes.iter().map(|a| a.variable.column()).collect();
        if !self.axes.iter().any(|a| a.variable == SweepVariable::KeyInfo) {
            h.push("c");
        }
        h.push("chi_noiseless");
        if self.noisy {
            h.push("chi_noisy");
        }
        h
    }

    /// Grid point `i` in row-major order.
    pub fn point(&self, mut i: usize) -> Vec<f64> {
        let mut coords = vec![0.0; self.axes.len()];
        for (k, a) in self.axes.iter().enumerate().rev() {
            coords[k] = a.values[i % a.values.len()];
            i /= a.values.len();
        }
        coords
    }

    pub fn evaluate_point(&self, coords: &[f64]) -> SweepRow {
        let mut p = self.fixed;
        let mut c_axis = None;
        for (a, &v) in self.axes.iter().zip(coords) {
            match a.variable {
                SweepVariable::Psi => p.psi = v,
                SweepVariable::KeyInfo => c_axis = Some(v),
                SweepVariable::Squeezing => p.squeezing = v,
                SweepVariable::Time => p.time = v,
            }
        }
        let param = match c_axis {
            Some(c) => werner_param_for_key_info(KeyInfo::new(c).expect("axis values are checked")),
            None => WernerParam::new(p.psi).expect("psi is checked"),
        };
        let chi_noiseless = signal_ensemble(param, None).and_then(|e| holevo(&e));
        let chi_noisy = self.noisy.then(|| noisy_holevo(&self.bath, param, &p));
        SweepRow {
            coords: coords.to_vec(),
            psi: param.psi(),
            key_info: c_axis.unwrap_or_else(|| key_information(param).bits()),
            chi_noiseless,
            chi_noisy,
        }
    }

    /// All rows in grid order, evaluated on the available cores.
    pub fn evaluate(&self) -> Vec<SweepRow> {
        let total = self.len();
        let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(total.max(1));
        let chunk = total.div_ceil(workers);
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    s.spawn(move || {
                        (w * chunk..((w + 1) * chunk).min(total))
                            .map(|i| self.evaluate_point(&self.point(i)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    }
}

fn noisy_holevo(
    provider: &dyn ParameterProvider,
    param: WernerParam,
    p: &FixedParams,
) -> Result<f64, InfoError> {
    let cfg = BathConfig::new(p.squeezing, p.temperature, p.time, p.gamma0)?;
    let ks = sgad_kraus(&sgad_params_from_bath(&cfg, provider)?)?;
    holevo(&signal_ensemble(param, Some(&ks))?)
}

//! Kraus-operator channels and the squeezed generalized amplitude damping
//! (SGAD) channel acting on Alice's qubit in transit.
//!
//! The SGAD channel is written with four operators, two weighted by `sqrt(p1)`
//! and two by `sqrt(p2)`:
//!
//! ```text
//! E0 = sqrt(p1) [[sqrt(1-alpha), 0], [0, sqrt(1-beta)]]
//! E1 = sqrt(p1) [[0, sqrt(beta)], [sqrt(alpha) e^{-i phi}, 0]]
//! E2 = sqrt(p2) [[sqrt(1-mu), 0], [0, sqrt(1-nu)]]
//! E3 = sqrt(p2) [[0, sqrt(nu)], [sqrt(mu) e^{-i theta}, 0]]
//! ```
//!
//! In this layout `|0>` is the excited level: `alpha` and `mu` move population
//! from `|0>` to `|1>`, `beta` and `nu` move it back. The operators are
//! complete exactly when `p1 + p2 = 1`.
//!
//! [`SgadParams`] is the canonical input. Physical bath settings
//! ([`BathConfig`]) are turned into parameters by a [`ParameterProvider`];
//! [`SqueezedThermalBath`] is the provider shipped with the crate.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{tensor_product, ComplexMatrix, DensityMatrix, Subsystem};

/// Largest tolerated `max |sum E^dagger E - I|` for a channel to be applied.
pub const COMPLETENESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("Kraus operators are not complete: max |sum E^dagger E - I| = {residual:e}")]
    CompletenessViolation {
        residual: f64,
        /// `sum E^dagger E - I`.
        deviation: ComplexMatrix,
    },
    #[error("parameter {name} = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("Kraus set is empty or mixes dimensions")]
    MalformedKrausSet,
    #[error("channel acts on dimension {kraus}, state has dimension {state}")]
    DimensionMismatch { kraus: usize, state: usize },
    #[error("bath configuration outside the provider's domain: {0}")]
    ProviderDomain(String),
}

/// A list of Kraus operators of a common dimension.
///
/// Construction does not enforce completeness; [`apply_channel`] does.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self, ChannelError> {
        let dim = operators.first().ok_or(ChannelError::MalformedKrausSet)?.dim();
        if operators.iter().any(|op| op.dim() != dim) {
            return Err(ChannelError::MalformedKrausSet);
        }
        Ok(Self { operators })
    }

    /// The single-operator identity channel on one qubit.
    pub fn identity() -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(2)],
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    /// `sum E^dagger E - I`.
    pub fn completeness_deviation(&self) -> ComplexMatrix {
        let sum = self
            .operators
            .iter()
            .fold(ComplexMatrix::zeros(self.dim()), |acc, e| {
                &acc + &(&e.adjoint() * e)
            });
        &sum - &ComplexMatrix::identity(self.dim())
    }

    /// Kraus set of "apply `self`, then `next`": `{F_i E_j}`.
    pub fn then(&self, next: &KrausSet) -> KrausSet {
        let operators = next
            .operators
            .iter()
            .flat_map(|f| self.operators.iter().map(move |e| f * e))
            .collect();
        KrausSet { operators }
    }

    /// Applies the channel to a single-qubit (or same-dimension) matrix
    /// without any completeness check.
    pub fn apply_raw(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(rho.dim()), |acc, e| {
                &acc + &rho.conjugate_by(e)
            })
    }
}

/// `max |sum E^dagger E - I|`. Callers compare against their own tolerance.
pub fn verify_completeness(ks: &KrausSet) -> f64 {
    ks.completeness_deviation()
        .entries()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Parameters of the four SGAD Kraus operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgadParams {
    pub p1: f64,
    pub p2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub nu: f64,
    pub phi: f64,
    pub theta: f64,
}

impl SgadParams {
    /// No damping, all weight on the first pair: the identity channel.
    pub const IDENTITY: SgadParams = SgadParams {
        p1: 1.0,
        p2: 0.0,
        alpha: 0.0,
        beta: 0.0,
        mu: 0.0,
        nu: 0.0,
        phi: 0.0,
        theta: 0.0,
    };

    /// Checks that every probability-like parameter lies in `[0, 1]` and the
    /// angles are finite. Completeness is checked separately.
    pub fn validate(&self) -> Result<(), ChannelError> {
        let unit = [
            ("p1", self.p1),
            ("p2", self.p2),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("mu", self.mu),
            ("nu", self.nu),
        ];
        for (name, value) in unit {
            if !(0.0..=1.0).contains(&value) {
                return Err(ChannelError::ParameterOutOfRange { name, value });
            }
        }
        for (name, value) in [("phi", self.phi), ("theta", self.theta)] {
            if !value.is_finite() {
                return Err(ChannelError::ParameterOutOfRange { name, value });
            }
        }
        Ok(())
    }
}

/// The four operators exactly as parametrized, with no checks at all.
pub fn sgad_operators(params: &SgadParams) -> KrausSet {
    let re = |x: f64| Complex64::new(x, 0.0);
    let o = re(0.0);
    let (s1, s2) = (params.p1.max(0.0).sqrt(), params.p2.max(0.0).sqrt());
    let root = |x: f64| x.max(0.0).sqrt();
    let e0 = vec![re(s1 * root(1.0 - params.alpha)), o, o, re(s1 * root(1.0 - params.beta))];
    let e1 = vec![
        o,
        re(s1 * root(params.beta)),
        Complex64::from_polar(s1 * root(params.alpha), -params.phi),
        o,
    ];
    let e2 = vec![re(s2 * root(1.0 - params.mu)), o, o, re(s2 * root(1.0 - params.nu))];
    let e3 = vec![
        o,
        re(s2 * root(params.nu)),
        Complex64::from_polar(s2 * root(params.mu), -params.theta),
        o,
    ];
    let operators = [e0, e1, e2, e3]
        .into_iter()
        .map(|entries| ComplexMatrix::from_entries(2, entries).expect("2x2"))
        .collect();
    KrausSet { operators }
}

/// Validated SGAD Kraus set.
///
/// Fails with [`ChannelError::CompletenessViolation`] when the operators are
/// not complete to [`COMPLETENESS_TOL`], which for in-range parameters means
/// `p1 + p2 != 1`.
pub fn sgad_kraus(params: &SgadParams) -> Result<KrausSet, ChannelError> {
    params.validate()?;
    let ks = sgad_operators(params);
    check_complete(&ks)?;
    Ok(ks)
}

fn check_complete(ks: &KrausSet) -> Result<(), ChannelError> {
    let deviation = ks.completeness_deviation();
    let residual = deviation
        .entries()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if residual > COMPLETENESS_TOL {
        return Err(ChannelError::CompletenessViolation {
            residual,
            deviation,
        });
    }
    Ok(())
}

/// Applies a single-qubit channel to one qubit of a two-qubit state:
/// `sum_j (E_j ⊗ I) rho (E_j ⊗ I)^dagger` for [`Subsystem::First`], or with
/// the factors swapped for [`Subsystem::Second`].
///
/// The output is never renormalized. An incomplete Kraus set is an error.
pub fn apply_channel(
    rho: &DensityMatrix,
    ks: &KrausSet,
    target: Subsystem,
) -> Result<DensityMatrix, ChannelError> {
    if ks.dim() != 2 || rho.dim() != 4 {
        return Err(ChannelError::DimensionMismatch {
            kraus: ks.dim(),
            state: rho.dim(),
        });
    }
    check_complete(ks)?;
    let id = ComplexMatrix::identity(2);
    let out = ks
        .operators
        .iter()
        .map(|e| match target {
            Subsystem::First => tensor_product(e, &id),
            Subsystem::Second => tensor_product(&id, e),
        })
        .fold(ComplexMatrix::zeros(4), |acc, lifted| {
            &acc + &rho.matrix().conjugate_by(&lifted)
        });
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Physical settings of the squeezed thermal bath.
///
/// Natural units throughout (`hbar = k_B = 1`); `time` is measured in the same
/// units as `1 / gamma0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathConfig {
    /// Bath squeezing parameter `r`.
    pub squeezing: f64,
    /// Bath temperature `T >= 0`.
    pub temperature: f64,
    /// Evolution time `t >= 0`.
    pub time: f64,
    /// Spontaneous decay rate `gamma0 > 0`.
    pub gamma0: f64,
}

impl BathConfig {
    pub fn new(squeezing: f64, temperature: f64, time: f64, gamma0: f64) -> Result<Self, ChannelError> {
        let cfg = Self {
            squeezing,
            temperature,
            time,
            gamma0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        if !self.squeezing.is_finite() {
            return Err(ChannelError::ParameterOutOfRange {
                name: "r",
                value: self.squeezing,
            });
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(ChannelError::ParameterOutOfRange {
                name: "T",
                value: self.temperature,
            });
        }
        if !(self.time >= 0.0 && self.time.is_finite()) {
            return Err(ChannelError::ParameterOutOfRange {
                name: "t",
                value: self.time,
            });
        }
        if !(self.gamma0 > 0.0 && self.gamma0.is_finite()) {
            return Err(ChannelError::ParameterOutOfRange {
                name: "gamma0",
                value: self.gamma0,
            });
        }
        Ok(())
    }
}

/// Source of SGAD parameters for a bath configuration. Implementations must
/// be stateless so sweeps can share one provider across threads.
pub trait ParameterProvider: Sync {
    fn sgad_params(&self, cfg: &BathConfig) -> Result<SgadParams, ChannelError>;
}

/// Resolves `cfg` through `provider`.
pub fn sgad_params_from_bath(
    cfg: &BathConfig,
    provider: &dyn ParameterProvider,
) -> Result<SgadParams, ChannelError> {
    cfg.validate()?;
    let params = provider.sgad_params(cfg)?;
    params.validate()?;
    Ok(params)
}

/// Action of the SGAD channel on a qubit density matrix, in the `|0>`-excited
/// convention of [`sgad_operators`]:
///
/// ```text
/// rho00' = (1 - decay) rho00 + excitation rho11
/// rho01' = coherence rho01 + cross rho10
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgadMap {
    pub decay: f64,
    pub excitation: f64,
    pub coherence: f64,
    pub cross: Complex64,
}

/// Qubit coupled to a squeezed thermal bath in the Born-Markov limit.
///
/// The bath has mean excitation `N = N_th cosh(2r) + sinh^2(r)`, with
/// `N_th = 1/(exp(omega/T) - 1)`, and squeezing strength
/// `a = sinh(2r) (2 N_th + 1)`. Populations relax at rate
/// `gamma0 (2N + 1)` towards `N/(2N + 1)` excited; the two coherence
/// quadratures decay at `gamma0 ((2N + 1) -/+ a)/2`.
///
/// The resulting map is split into the four-operator form with mirrored
/// pairs, `(alpha, beta) = (nu, mu)`; see [`ParameterProvider`] for the
/// contract. Any decomposition that reproduces the map gives the same
/// channel, so downstream quantities do not depend on this choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedThermalBath {
    /// Qubit transition frequency.
    pub omega: f64,
    /// Bath squeezing angle.
    pub squeezing_angle: f64,
}

impl Default for SqueezedThermalBath {
    fn default() -> Self {
        Self {
            omega: 1.0,
            squeezing_angle: 0.0,
        }
    }
}

// Once a parameter sits next to 1, sqrt(1 - alpha) only resolves steps of
// about sqrt(f64::EPSILON / 2), so coherences below that are unreachable.
const MAP_TOL: f64 = 1e-8;

impl SqueezedThermalBath {
    pub fn thermal_occupation(&self, temperature: f64) -> f64 {
        if temperature == 0.0 {
            0.0
        } else {
            1.0 / (self.omega / temperature).exp_m1()
        }
    }

    pub fn map(&self, cfg: &BathConfig) -> Result<SgadMap, ChannelError> {
        cfg.validate()?;
        let r = cfg.squeezing;
        let n_th = self.thermal_occupation(cfg.temperature);
        let n = n_th * (2.0 * r).cosh() + r.sinh().powi(2);
        let a = (2.0 * r).sinh() * (2.0 * n_th + 1.0);
        let rate = cfg.gamma0 * (2.0 * n + 1.0);
        let relaxed = -(-rate * cfg.time).exp_m1();
        let decay = (n + 1.0) / (2.0 * n + 1.0) * relaxed;
        let excitation = n / (2.0 * n + 1.0) * relaxed;
        // e^{-x} cosh(y) and e^{-x} sinh(y) without overflowing cosh
        let x = 0.5 * rate * cfg.time;
        let y = 0.5 * cfg.gamma0 * a * cfg.time;
        let (up, down) = ((y - x).exp(), (-y - x).exp());
        let coherence = 0.5 * (up + down);
        let cross = Complex64::from_polar(0.5 * (up - down), self.squeezing_angle);
        let map = SgadMap {
            decay,
            excitation,
            coherence,
            cross,
        };
        let finite = [decay, excitation, coherence, cross.re, cross.im]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(ChannelError::ProviderDomain(format!(
                "non-finite channel coefficients for {cfg:?}"
            )));
        }
        Ok(map)
    }
}

impl ParameterProvider for SqueezedThermalBath {
    fn sgad_params(&self, cfg: &BathConfig) -> Result<SgadParams, ChannelError> {
        let map = self.map(cfg)?;
        let params = decompose(&map, self.squeezing_angle).ok_or_else(|| {
            ChannelError::ProviderDomain(format!(
                "no four-operator decomposition found for {cfg:?}"
            ))
        })?;
        let err = map_error(&params, &map);
        if err > MAP_TOL {
            return Err(ChannelError::ProviderDomain(format!(
                "decomposition misses the channel by {err:e} for {cfg:?}"
            )));
        }
        Ok(params)
    }
}

fn map_error(params: &SgadParams, map: &SgadMap) -> f64 {
    let rebuilt = map_of(params);
    [
        (rebuilt.decay - map.decay).abs(),
        (rebuilt.excitation - map.excitation).abs(),
        (rebuilt.coherence - map.coherence).abs(),
        (rebuilt.cross - map.cross).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Channel coefficients implied by a parameter set.
pub fn map_of(p: &SgadParams) -> SgadMap {
    SgadMap {
        decay: p.p1 * p.alpha + p.p2 * p.mu,
        excitation: p.p1 * p.beta + p.p2 * p.nu,
        coherence: p.p1 * ((1.0 - p.alpha) * (1.0 - p.beta)).sqrt()
            + p.p2 * ((1.0 - p.mu) * (1.0 - p.nu)).sqrt(),
        cross: Complex64::from_polar(p.p1 * (p.alpha * p.beta).sqrt(), p.phi)
            + Complex64::from_polar(p.p2 * (p.mu * p.nu).sqrt(), p.theta),
    }
}

/// Splits the map into two operator pairs sitting at mirrored points
/// `(z+, z-)` and `(z-, z+)` of the unit square, where `z+-` solve
/// `z^2 - (decay + excitation) z + |cross|^2 = 0`. Each pair then carries
/// coherence `sqrt(1 - decay - excitation + |cross|^2)`, which is the bath's
/// coherence because `coherence^2 - |cross|^2 = 1 - decay - excitation`
/// there. The weight `p1` is fixed by the decay; it lies in `[0, 1]` exactly
/// when `|cross|^2 <= decay * excitation`, i.e. when the map is completely
/// positive.
fn decompose(map: &SgadMap, default_angle: f64) -> Option<SgadParams> {
    let (decay, excitation) = (map.decay, map.excitation);
    let cross = map.cross.norm();
    let angle = if cross > 0.0 { map.cross.arg() } else { default_angle };
    let sum = decay + excitation;
    let disc = (sum * sum - 4.0 * cross * cross).max(0.0).sqrt();
    let hi = 0.5 * (sum + disc);
    let lo = if hi > 0.0 { cross * cross / hi } else { 0.0 };
    // (1 - hi)(1 - lo) = coherence^2 keeps 1 - hi accurate near full damping
    let hi = 1.0 - map.coherence * map.coherence / (1.0 - lo);
    let p1 = if hi - lo > 1e-12 { (decay - lo) / (hi - lo) } else { 1.0 };
    if !(-1e-12..=1.0 + 1e-12).contains(&p1) || hi > 1.0 + 1e-12 {
        return None;
    }
    let p1 = p1.clamp(0.0, 1.0);
    let (hi, lo) = (hi.min(1.0), lo.clamp(0.0, 1.0));
    Some(SgadParams {
        p1,
        p2: 1.0 - p1,
        alpha: hi,
        beta: lo,
        mu: lo,
        nu: hi,
        phi: angle,
        theta: angle,
    })
}

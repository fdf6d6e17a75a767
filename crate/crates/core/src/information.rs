//! Entropies, Charlie's key information and the Holevo quantity of Alice's
//! signal ensemble. All quantities are in bits.

use thiserror::Error;

use crate::channels::{apply_channel, ChannelError, KrausSet};
use crate::linalg::{ComplexMatrix, DensityMatrix, LinalgError, Subsystem, NEGATIVE_CLAMP};
use crate::states::{
    bell_measure, dense_encode, werner_state_centered, BellIndex, PauliCode, StateError, WernerParam,
};

/// Allowed deviation of a probability vector's sum from 1.
pub const DISTRIBUTION_TOL: f64 = 1e-9;
/// Allowed deviation of ensemble priors' sum from 1.
pub const PRIOR_TOL: f64 = 1e-12;

/// Largest amount of key information Charlie can hand out.
pub const MAX_KEY_INFO: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InfoError {
    #[error("not a probability distribution (sum {sum}, min {min})")]
    NotADistribution { sum: f64, min: f64 },
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("ensemble members have different dimensions")]
    MixedDimensions,
    #[error("key information {0} is outside [0, 2]")]
    KeyInfoOutOfRange(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

/// `-sum p log2 p`, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64, InfoError> {
    let sum: f64 = p.iter().sum();
    let min = p.iter().copied().fold(f64::INFINITY, f64::min);
    if p.is_empty() || min < 0.0 || (sum - 1.0).abs() > DISTRIBUTION_TOL || !sum.is_finite() {
        return Err(InfoError::NotADistribution { sum, min });
    }
    Ok(entropy_bits(p))
}

fn entropy_bits(p: &[f64]) -> f64 {
    let h: f64 = p
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    // -0.0 from an all-certain distribution
    h.max(0.0)
}

/// Shannon entropy of the spectrum of `rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64, InfoError> {
    let spectrum: Vec<f64> = rho
        .eigenvalues()?
        .into_iter()
        .map(|l| if (-NEGATIVE_CLAMP..0.0).contains(&l) { 0.0 } else { l })
        .collect();
    Ok(entropy_bits(&spectrum))
}

/// Bits of information Charlie reveals about the prepared Bell state,
/// `0 <= c <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct KeyInfo(f64);

impl KeyInfo {
    pub fn new(bits: f64) -> Result<Self, InfoError> {
        if !(0.0..=MAX_KEY_INFO).contains(&bits) {
            return Err(InfoError::KeyInfoOutOfRange(bits));
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

/// `c = 2 - H(w_a, w_b, w_b, w_b)`.
pub fn key_information(param: WernerParam) -> KeyInfo {
    let h = entropy_bits(&param.weights());
    KeyInfo((MAX_KEY_INFO - h).clamp(0.0, MAX_KEY_INFO))
}

/// Werner angle giving key information `c`.
///
/// `c` grows strictly with `psi` on `[0, pi/2]`, so plain bisection is enough.
pub fn werner_param_for_key_info(c: KeyInfo) -> WernerParam {
    let (mut lo, mut hi) = (0.0, std::f64::consts::FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let at_mid = key_information(WernerParam::new(mid).expect("in range")).bits();
        if at_mid < c.bits() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    WernerParam::new(0.5 * (lo + hi)).expect("in range")
}

/// Finite list of `(prior, state)` pairs.
#[derive(Debug, Clone)]
pub struct Ensemble {
    members: Vec<(f64, DensityMatrix)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, DensityMatrix)>) -> Result<Self, InfoError> {
        let dim = members.first().ok_or(InfoError::EmptyEnsemble)?.1.dim();
        if members.iter().any(|(_, s)| s.dim() != dim) {
            return Err(InfoError::MixedDimensions);
        }
        let sum: f64 = members.iter().map(|(p, _)| p).sum();
        let min = members.iter().map(|(p, _)| *p).fold(f64::INFINITY, f64::min);
        if min < 0.0 || (sum - 1.0).abs() > PRIOR_TOL {
            return Err(InfoError::NotADistribution { sum, min });
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, DensityMatrix)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `sum p_i rho_i`.
    pub fn average_state(&self) -> DensityMatrix {
        let dim = self.members[0].1.dim();
        let sum = self
            .members
            .iter()
            .fold(ComplexMatrix::zeros(dim), |acc, (p, s)| {
                &acc + &s.matrix().scale_real(*p)
            });
        DensityMatrix::from_matrix_unchecked(sum)
    }
}

/// Alice's four dense-coded signals, each with prior 1/4, prepared from the
/// Werner state centered on `B(0,0)` and optionally sent through `channel`
/// on her qubit.
pub fn signal_ensemble(param: WernerParam, channel: Option<&KrausSet>) -> Result<Ensemble, InfoError> {
    signal_ensemble_centered(param, BellIndex::PHI_PLUS, channel)
}

/// As [`signal_ensemble`], for a Werner state centered on `center`.
pub fn signal_ensemble_centered(
    param: WernerParam,
    center: BellIndex,
    channel: Option<&KrausSet>,
) -> Result<Ensemble, InfoError> {
    let shared = werner_state_centered(param, center);
    let members = PauliCode::ALL
        .iter()
        .map(|&code| {
            let encoded = dense_encode(&shared, code)?;
            let received = match channel {
                Some(ks) => apply_channel(&encoded, ks, Subsystem::First)?,
                None => encoded,
            };
            Ok((0.25, received))
        })
        .collect::<Result<Vec<_>, InfoError>>()?;
    Ensemble::new(members)
}

/// `chi = S(sum p_i rho_i) - sum p_i S(rho_i)`, clamped at zero.
pub fn holevo(e: &Ensemble) -> Result<f64, InfoError> {
    let mut chi = von_neumann_entropy(&e.average_state())?;
    for (p, s) in &e.members {
        chi -= p * von_neumann_entropy(s)?;
    }
    Ok(chi.max(0.0))
}

/// Mutual information between Alice's code and Bob's Bell-measurement
/// outcome for an ensemble whose members are indexed by [`PauliCode`]
/// ordinal (as produced by [`signal_ensemble`]).
///
/// Bounded above by [`holevo`]; equality holds in the noiseless case.
pub fn bell_mutual_information(e: &Ensemble) -> Result<f64, InfoError> {
    let mut joint = Vec::with_capacity(4 * e.len());
    let mut outcome_marginal = [0.0; 4];
    for (p, s) in &e.members {
        let dist = bell_measure(s)?.probabilities();
        for (o, q) in dist.iter().enumerate() {
            let pq = (p * q).max(0.0);
            joint.push(pq);
            outcome_marginal[o] += pq;
        }
    }
    let priors: Vec<f64> = e.members.iter().map(|(p, _)| *p).collect();
    let mi = entropy_bits(&priors) + entropy_bits(&outcome_marginal) - entropy_bits(&joint);
    Ok(mi.max(0.0))
}

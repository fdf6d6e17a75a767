//! Bell states, Pauli encoders, Werner mixtures and Bell-basis measurement.
//!
//! Two-qubit states use the computational ordering `|00>, |01>, |10>, |11>`
//! with Alice's qubit as the leading tensor factor. The Bell basis is
//!
//! ```text
//! B(0,k) = (|00> + (-1)^k |11>) / sqrt(2)
//! B(1,k) = (|01> + (-1)^k |10>) / sqrt(2)
//! ```
//!
//! so `j` is the parity bit and `k` the phase bit. Applying the Pauli
//! `P(a,b)` (I, Z, X, Y for `(0,0), (0,1), (1,0), (1,1)`) to Alice's qubit
//! sends `B(j,k)` to `B(j^a, k^b)` up to a global phase.

use std::fmt;
use std::ops::BitXor;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{tensor_product, ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("Werner angle {0} is outside [0, pi/2]")]
    PsiOutOfRange(f64),
    #[error("bit value {0} is not 0 or 1")]
    NotABit(u8),
    #[error("state has dimension {0}, expected a two-qubit state")]
    NotTwoQubit(usize),
}

fn check_bit(v: u8) -> Result<bool, StateError> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        other => Err(StateError::NotABit(other)),
    }
}

/// Label `(j, k)` of a Bell state: parity bit `j`, phase bit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellIndex {
    j: bool,
    k: bool,
}

impl BellIndex {
    pub const PHI_PLUS: BellIndex = BellIndex { j: false, k: false };
    pub const PHI_MINUS: BellIndex = BellIndex { j: false, k: true };
    pub const PSI_PLUS: BellIndex = BellIndex { j: true, k: false };
    pub const PSI_MINUS: BellIndex = BellIndex { j: true, k: true };

    /// All four labels in `(0,0), (0,1), (1,0), (1,1)` order.
    pub const ALL: [BellIndex; 4] = [
        Self::PHI_PLUS,
        Self::PHI_MINUS,
        Self::PSI_PLUS,
        Self::PSI_MINUS,
    ];

    pub fn new(j: u8, k: u8) -> Result<Self, StateError> {
        Ok(Self {
            j: check_bit(j)?,
            k: check_bit(k)?,
        })
    }

    pub fn j(self) -> u8 {
        self.j as u8
    }

    pub fn k(self) -> u8 {
        self.k as u8
    }

    /// Position `2j + k` in [`BellIndex::ALL`].
    pub fn ordinal(self) -> usize {
        2 * self.j as usize + self.k as usize
    }

    pub fn from_ordinal(i: usize) -> Self {
        Self::ALL[i & 3]
    }

    /// Normalized state vector in the computational basis.
    pub fn ket(self) -> [Complex64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let sign = if self.k { -s } else { s };
        let (zero, plus, minus) = (Complex64::new(0.0, 0.0), Complex64::new(s, 0.0), Complex64::new(sign, 0.0));
        if self.j {
            [zero, plus, minus, zero]
        } else {
            [plus, zero, zero, minus]
        }
    }

    /// Label reached after Alice applies `code`.
    pub fn encoded_with(self, code: PauliCode) -> BellIndex {
        BellIndex {
            j: self.j ^ code.a,
            k: self.k ^ code.b,
        }
    }
}

impl fmt::Display for BellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.j(), self.k())
    }
}

/// Two classical bits `(a, b)` selecting Alice's Pauli encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliCode {
    a: bool,
    b: bool,
}

impl PauliCode {
    pub const I: PauliCode = PauliCode { a: false, b: false };
    pub const Z: PauliCode = PauliCode { a: false, b: true };
    pub const X: PauliCode = PauliCode { a: true, b: false };
    pub const Y: PauliCode = PauliCode { a: true, b: true };

    pub const ALL: [PauliCode; 4] = [Self::I, Self::Z, Self::X, Self::Y];

    pub fn new(a: u8, b: u8) -> Result<Self, StateError> {
        Ok(Self {
            a: check_bit(a)?,
            b: check_bit(b)?,
        })
    }

    pub fn a(self) -> u8 {
        self.a as u8
    }

    pub fn b(self) -> u8 {
        self.b as u8
    }

    /// `2a + b`, i.e. the two message bits read as a number.
    pub fn ordinal(self) -> usize {
        2 * self.a as usize + self.b as usize
    }

    pub fn from_ordinal(i: usize) -> Self {
        Self::ALL[i & 3]
    }
}

impl BitXor for BellIndex {
    type Output = PauliCode;

    /// Componentwise XOR of two labels, read as the code that maps one onto
    /// the other.
    fn bitxor(self, rhs: BellIndex) -> PauliCode {
        PauliCode {
            a: self.j ^ rhs.j,
            b: self.k ^ rhs.k,
        }
    }
}

impl fmt::Display for PauliCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.a(), self.b())
    }
}

/// Angle `psi` in `[0, pi/2]` parametrizing the Werner mixture Charlie
/// hands out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam {
    psi: f64,
}

impl WernerParam {
    pub const PURE: WernerParam = WernerParam {
        psi: std::f64::consts::FRAC_PI_2,
    };

    pub fn new(psi: f64) -> Result<Self, StateError> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&psi) {
            return Err(StateError::PsiOutOfRange(psi));
        }
        Ok(Self { psi })
    }

    pub fn psi(self) -> f64 {
        self.psi
    }

    /// Weight of the central Bell projector, `0.25 + 0.75 sin(psi)`.
    pub fn dominant_weight(self) -> f64 {
        0.25 + 0.75 * self.psi.sin()
    }

    /// Weight shared by the other three projectors, `(1 - w_a)/3`.
    pub fn minor_weight(self) -> f64 {
        (1.0 - self.dominant_weight()) / 3.0
    }

    /// `[w_a, w_b, w_b, w_b]`.
    pub fn weights(self) -> [f64; 4] {
        let wb = self.minor_weight();
        [self.dominant_weight(), wb, wb, wb]
    }
}

/// Rank-one projector onto `B(j,k)`.
pub fn bell_projector(idx: BellIndex) -> DensityMatrix {
    DensityMatrix::from_matrix_unchecked(ComplexMatrix::projector(&idx.ket()))
}

/// The 2x2 Pauli matrix for `code`, with `Y = [[0, -i], [i, 0]]`.
pub fn pauli_matrix(code: PauliCode) -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let entries = match (code.a, code.b) {
        (false, false) => vec![l, o, o, l],
        (false, true) => vec![l, o, o, -l],
        (true, false) => vec![o, l, l, o],
        (true, true) => vec![o, -i, i, o],
    };
    ComplexMatrix::from_entries(2, entries).expect("2x2 entries")
}

/// `(P ⊗ I) rho (P ⊗ I)^dagger` with `P` acting on Alice's (first) qubit.
pub fn dense_encode(rho: &DensityMatrix, code: PauliCode) -> Result<DensityMatrix, StateError> {
    if rho.dim() != 4 {
        return Err(StateError::NotTwoQubit(rho.dim()));
    }
    if code == PauliCode::I {
        return Ok(rho.clone());
    }
    let op = tensor_product(&pauli_matrix(code), &ComplexMatrix::identity(2));
    Ok(DensityMatrix::from_matrix_unchecked(
        rho.matrix().conjugate_by(&op),
    ))
}

/// Werner mixture centered on `B(0,0)`.
pub fn werner_state(param: WernerParam) -> DensityMatrix {
    werner_state_centered(param, BellIndex::PHI_PLUS)
}

/// Bell-diagonal mixture with weight `w_a` on `center` and `w_b` on the other
/// three Bell projectors.
pub fn werner_state_centered(param: WernerParam, center: BellIndex) -> DensityMatrix {
    let (wa, wb) = (param.dominant_weight(), param.minor_weight());
    let mut m = ComplexMatrix::zeros(4);
    for idx in BellIndex::ALL {
        let w = if idx == center { wa } else { wb };
        m = &m + &bell_projector(idx).matrix().scale_real(w);
    }
    DensityMatrix::from_matrix_unchecked(m)
}

/// Outcome distribution of a Bell-basis measurement, indexed by
/// [`BellIndex::ordinal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDistribution {
    probs: [f64; 4],
}

impl BellDistribution {
    pub fn probabilities(&self) -> [f64; 4] {
        self.probs
    }

    pub fn prob(&self, idx: BellIndex) -> f64 {
        self.probs[idx.ordinal()]
    }

    /// Most likely outcome; ties resolve to the lowest ordinal.
    pub fn most_likely(&self) -> BellIndex {
        let mut best = 0;
        for i in 1..4 {
            if self.probs[i] > self.probs[best] {
                best = i;
            }
        }
        BellIndex::from_ordinal(best)
    }

    /// Inverse-CDF draw using one uniform variate from `rng`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BellIndex {
        let u: f64 = rng.random();
        let total: f64 = self.probs.iter().map(|p| p.max(0.0)).sum();
        let target = u * total;
        let mut acc = 0.0;
        for (i, p) in self.probs.iter().enumerate() {
            acc += p.max(0.0);
            if target < acc {
                return BellIndex::from_ordinal(i);
            }
        }
        // u * total can round up to total; fall back to the last nonzero bin
        let last = self.probs.iter().rposition(|p| *p > 0.0).unwrap_or(3);
        BellIndex::from_ordinal(last)
    }
}

/// `p(j,k) = <B(j,k)| rho |B(j,k)>`.
pub fn bell_measure(rho: &DensityMatrix) -> Result<BellDistribution, StateError> {
    if rho.dim() != 4 {
        return Err(StateError::NotTwoQubit(rho.dim()));
    }
    let m = rho.matrix();
    let mut probs = [0.0; 4];
    for idx in BellIndex::ALL {
        let v = idx.ket();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..4 {
            if v[r].re == 0.0 {
                continue;
            }
            for c in 0..4 {
                acc += v[r].conj() * m[(r, c)] * v[c];
            }
        }
        probs[idx.ordinal()] = acc.re;
    }
    Ok(BellDistribution { probs })
}

/// Recovers Alice's code from Bob's outcome and the label Charlie revealed.
pub fn decode_message(measured: BellIndex, revealed_initial: BellIndex) -> PauliCode {
    measured ^ revealed_initial
}

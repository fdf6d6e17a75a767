//! Three-party protocol runs: Charlie prepares Bell pairs, optionally
//! scrambles the order of Bob's halves, Alice dense-codes her messages, and
//! Charlie later reveals the prepared states (and, if he scrambled, the true
//! order) so Bob can decode.
//!
//! The quantum channel between Alice and Bob is one-way. There is no
//! operation that moves a qubit from Bob to Alice, so Bob can never hand his
//! half back for a Bell measurement that would expose Charlie's choice:
//!
//! ```compile_fail
//! use qswitch::protocol::{charlie_prepare, PairRegister};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
//! let mut reg: PairRegister = charlie_prepare(4, &mut rng).unwrap();
//! reg.bob_send_to_alice(0);
//! ```
//!
//! Sessions are driven by a caller-owned RNG; [`run_session`] seeds a
//! ChaCha8 generator from the configured seed, so a config always replays to
//! the same [`SessionTranscript`].

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::channels::{apply_channel, ChannelError, KrausSet};
use crate::linalg::{partial_trace, DensityMatrix, Subsystem};
use crate::states::{
    bell_measure, bell_projector, decode_message, dense_encode, werner_state_centered, BellIndex,
    PauliCode, StateError, WernerParam,
};

/// Schema tag on the first line of every transcript.
pub const TRANSCRIPT_SCHEMA: &str = "qswitch-transcript/1";

/// Event tag set aside for decoy-photon checks. Readers skip such lines.
pub const RESERVED_DECOY_TAG: &str = "DECOY";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error("at least 2 pairs are needed, got {0}")]
    TooFewPairs(usize),
    #[error("{expected} messages expected, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{action} is not allowed in phase {phase:?}")]
    PhaseViolation { action: &'static str, phase: Phase },
    #[error("the pairs were scrambled but the permutation was not revealed")]
    MissingPermutation,
    #[error("collusion needs a scrambled register")]
    NotScrambled,
    #[error("invalid session config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

/// Where a register is in the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Prepared,
    Encoded,
    Revealed,
}

/// What Charlie hands out for each prepared label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairSource {
    /// The Bell state itself.
    Pure,
    /// A Werner mixture centered on the label.
    Werner(WernerParam),
}

/// One entangled pair as tracked by the simulator.
#[derive(Debug, Clone)]
pub struct PairSlot {
    /// Bell label chosen by Charlie.
    pub index: BellIndex,
    /// Joint state of (Alice's qubit, Bob's qubit).
    pub joint_state: DensityMatrix,
    /// Position of this pair's first qubit in Alice's sequence.
    pub alice_slot: usize,
    /// Position of this pair's second qubit in the sequence Bob receives.
    pub bob_slot: usize,
    /// Code Alice applied, kept only to score decoding.
    encoded: Option<PauliCode>,
}

impl PairSlot {
    pub fn encoded(&self) -> Option<PauliCode> {
        self.encoded
    }
}

/// Permutation of Bob's received sequence: `perm[received_slot] = pair`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationKey {
    perm: Vec<usize>,
}

impl PermutationKey {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    /// Checks that `perm` is a bijection on `0..perm.len()`.
    pub fn new(perm: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(Self { perm })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// Pair whose second qubit sits in received slot `slot`.
    pub fn pair_at(&self, slot: usize) -> usize {
        self.perm[slot]
    }

    /// `inverse()[pair]` is the received slot holding that pair's qubit.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (slot, &pair) in self.perm.iter().enumerate() {
            inv[pair] = slot;
        }
        inv
    }

    pub fn fixed_points(&self) -> usize {
        self.perm.iter().enumerate().filter(|(s, p)| s == *p).count()
    }
}

/// All pairs of one session plus Charlie's private scrambling.
#[derive(Debug, Clone)]
pub struct PairRegister {
    pairs: Vec<PairSlot>,
    scrambling: Option<PermutationKey>,
    phase: Phase,
}

impl PairRegister {
    pub fn pairs(&self) -> &[PairSlot] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn is_scrambled(&self) -> bool {
        self.scrambling.is_some()
    }

    fn actual_order(&self) -> PermutationKey {
        self.scrambling
            .clone()
            .unwrap_or_else(|| PermutationKey::identity(self.pairs.len()))
    }
}

/// Charlie's disclosure.
#[derive(Debug, Clone, PartialEq)]
pub struct Reveal {
    /// Prepared labels in pair (Alice) order.
    pub indices: Vec<BellIndex>,
    pub permutation: Option<PermutationKey>,
}

/// Bob's decoded codes and how many matched Alice's.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoding {
    pub outcomes: Vec<BellIndex>,
    pub codes: Vec<PauliCode>,
    pub accuracy: f64,
}

/// Charlie prepares `n` Bell pairs with labels drawn uniformly, redrawing
/// the whole batch while all labels coincide.
pub fn charlie_prepare<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PairRegister, ProtocolError> {
    charlie_prepare_from(n, PairSource::Pure, rng)
}

/// As [`charlie_prepare`], with the joint states drawn from `source`.
pub fn charlie_prepare_from<R: Rng + ?Sized>(
    n: usize,
    source: PairSource,
    rng: &mut R,
) -> Result<PairRegister, ProtocolError> {
    if n < 2 {
        return Err(ProtocolError::TooFewPairs(n));
    }
    let labels = loop {
        let labels: Vec<BellIndex> = (0..n)
            .map(|_| BellIndex::from_ordinal(rng.random_range(0..4)))
            .collect();
        if labels.iter().any(|l| *l != labels[0]) {
            break labels;
        }
    };
    Ok(register_from_labels(&labels, source))
}

fn register_from_labels(labels: &[BellIndex], source: PairSource) -> PairRegister {
    let mut cache: [Option<DensityMatrix>; 4] = Default::default();
    let pairs = labels
        .iter()
        .enumerate()
        .map(|(i, &index)| {
            let state = cache[index.ordinal()]
                .get_or_insert_with(|| match source {
                    PairSource::Pure => bell_projector(index),
                    PairSource::Werner(p) => werner_state_centered(p, index),
                })
                .clone();
            PairSlot {
                index,
                joint_state: state,
                alice_slot: i,
                bob_slot: i,
                encoded: None,
            }
        })
        .collect();
    PairRegister {
        pairs,
        scrambling: None,
        phase: Phase::Prepared,
    }
}

/// Charlie shuffles Bob's halves (Fisher-Yates). The identity permutation is
/// a legitimate outcome.
pub fn scramble<R: Rng + ?Sized>(reg: &mut PairRegister, rng: &mut R) -> Result<PermutationKey, ProtocolError> {
    if reg.phase != Phase::Prepared || reg.scrambling.is_some() {
        return Err(ProtocolError::PhaseViolation {
            action: "scramble",
            phase: reg.phase,
        });
    }
    let mut perm: Vec<usize> = (0..reg.pairs.len()).collect();
    perm.shuffle(rng);
    let key = PermutationKey { perm };
    for (slot, &pair) in key.perm.iter().enumerate() {
        reg.pairs[pair].bob_slot = slot;
    }
    reg.scrambling = Some(key.clone());
    Ok(key)
}

/// Alice applies one Pauli per pair and sends her qubits through `channel`.
/// Returns the `Encoded` (and `ChannelApplied`) events.
pub fn alice_encode(
    reg: &mut PairRegister,
    messages: &[PauliCode],
    channel: Option<&KrausSet>,
) -> Result<Vec<Event>, ProtocolError> {
    if reg.phase != Phase::Prepared {
        return Err(ProtocolError::PhaseViolation {
            action: "encode",
            phase: reg.phase,
        });
    }
    if messages.len() != reg.pairs.len() {
        return Err(ProtocolError::LengthMismatch {
            expected: reg.pairs.len(),
            found: messages.len(),
        });
    }
    let digest = channel.map(kraus_digest);
    let mut events = Vec::with_capacity(2 * messages.len());
    for (slot, (pair, &code)) in reg.pairs.iter_mut().zip(messages).enumerate() {
        let encoded = dense_encode(&pair.joint_state, code)?;
        pair.joint_state = match channel {
            Some(ks) => apply_channel(&encoded, ks, Subsystem::First)?,
            None => encoded,
        };
        pair.encoded = Some(code);
        events.push(Event::Encoded { slot, code });
        if let Some(d) = &digest {
            events.push(Event::ChannelApplied {
                slot,
                digest: d.clone(),
            });
        }
    }
    reg.phase = Phase::Encoded;
    Ok(events)
}

/// Charlie discloses the prepared labels and, if asked, the true order.
pub fn charlie_reveal(reg: &mut PairRegister, include_perm: bool) -> Result<Reveal, ProtocolError> {
    if reg.phase == Phase::Prepared {
        return Err(ProtocolError::PhaseViolation {
            action: "reveal",
            phase: reg.phase,
        });
    }
    reg.phase = Phase::Revealed;
    Ok(Reveal {
        indices: reg.pairs.iter().map(|p| p.index).collect(),
        permutation: if include_perm { reg.scrambling.clone() } else { None },
    })
}

/// Bob measures each (Alice qubit, matching Bob qubit) pair in the Bell basis
/// and decodes against the revealed label.
pub fn bob_decode<R: Rng + ?Sized>(
    reg: &PairRegister,
    reveal: &Reveal,
    rng: &mut R,
) -> Result<Decoding, ProtocolError> {
    if reg.phase != Phase::Revealed {
        return Err(ProtocolError::PhaseViolation {
            action: "decode",
            phase: reg.phase,
        });
    }
    let believed = match (&reg.scrambling, &reveal.permutation) {
        (Some(_), None) => return Err(ProtocolError::MissingPermutation),
        (_, Some(key)) => key.clone(),
        (None, None) => PermutationKey::identity(reg.pairs.len()),
    };
    let choice = believed.inverse();
    decode_with_pairing(reg, &reveal.indices, &choice, rng)
}

/// Alice and Bob, holding both sequences but not Charlie's order, pair Alice
/// slot `i` with Bob's received slot `i` and decode against the labels
/// Charlie revealed. Halves of different Bell pairs are uncorrelated, so a
/// mispaired Bell measurement is a fair coin over the four outcomes.
pub fn collusion_attack<R: Rng + ?Sized>(reg: &PairRegister, rng: &mut R) -> Result<Decoding, ProtocolError> {
    if reg.scrambling.is_none() {
        return Err(ProtocolError::NotScrambled);
    }
    if reg.phase == Phase::Prepared {
        return Err(ProtocolError::PhaseViolation {
            action: "collusion",
            phase: reg.phase,
        });
    }
    let labels: Vec<BellIndex> = reg.pairs.iter().map(|p| p.index).collect();
    let choice: Vec<usize> = (0..reg.pairs.len()).collect();
    decode_with_pairing(reg, &labels, &choice, rng)
}

/// `choice[i]` is the received Bob slot paired with Alice's qubit `i`.
fn decode_with_pairing<R: Rng + ?Sized>(
    reg: &PairRegister,
    labels: &[BellIndex],
    choice: &[usize],
    rng: &mut R,
) -> Result<Decoding, ProtocolError> {
    let actual = reg.actual_order();
    let n = reg.pairs.len();
    let mut outcomes = Vec::with_capacity(n);
    let mut codes = Vec::with_capacity(n);
    let mut hits = 0usize;
    for (i, pair) in reg.pairs.iter().enumerate() {
        let partner = actual.pair_at(choice[i]);
        let dist = if partner == i {
            bell_measure(&pair.joint_state)?
        } else {
            let alice = partial_trace(&pair.joint_state, Subsystem::First).expect("two-qubit state");
            let bob = partial_trace(&reg.pairs[partner].joint_state, Subsystem::Second)
                .expect("two-qubit state");
            bell_measure(&alice.tensor(&bob))?
        };
        let outcome = dist.sample(rng);
        let code = decode_message(outcome, labels[i]);
        if pair.encoded == Some(code) {
            hits += 1;
        }
        outcomes.push(outcome);
        codes.push(code);
    }
    Ok(Decoding {
        outcomes,
        codes,
        accuracy: hits as f64 / n as f64,
    })
}

/// First 16 hex digits of SHA-256 over the Kraus entries (little-endian
/// `re, im` pairs, row-major, operator by operator).
pub fn kraus_digest(ks: &KrausSet) -> String {
    let mut hasher = Sha256::new();
    for op in ks.operators() {
        for z in op.entries() {
            hasher.update(z.re.to_le_bytes());
            hasher.update(z.im.to_le_bytes());
        }
    }
    let digest = hasher.finalize();
    digest[..8].iter().fold(String::with_capacity(16), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// `n` uniformly random codes.
pub fn random_messages<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<PauliCode> {
    (0..n)
        .map(|_| PauliCode::from_ordinal(rng.random_range(0..4)))
        .collect()
}

/// One line of a transcript.
#[derive(Debug, Clone, PartialEq)]
pub enum Event {
    Prepared { n: usize },
    Scrambled(bool),
    Encoded { slot: usize, code: PauliCode },
    ChannelApplied { slot: usize, digest: String },
    Revealed {
        indices: Vec<BellIndex>,
        permutation: Option<Vec<usize>>,
    },
    Measured { slot: usize, outcome: BellIndex },
    Decoded { slot: usize, code: PauliCode },
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Prepared { n } => write!(f, "PREPARED\t{n}"),
            Event::Scrambled(flag) => write!(f, "SCRAMBLED\t{}", *flag as u8),
            Event::Encoded { slot, code } => write!(f, "ENCODED\t{slot}\t{code}"),
            Event::ChannelApplied { slot, digest } => write!(f, "CHANNEL\t{slot}\t{digest}"),
            Event::Revealed {
                indices,
                permutation,
            } => {
                let labels: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
                write!(f, "REVEALED\t{}\t", labels.join(","))?;
                match permutation {
                    Some(p) => {
                        let p: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                        write!(f, "{}", p.join(","))
                    }
                    None => write!(f, "-"),
                }
            }
            Event::Measured { slot, outcome } => write!(f, "MEASURED\t{slot}\t{outcome}"),
            Event::Decoded { slot, code } => write!(f, "DECODED\t{slot}\t{code}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TranscriptError {
    #[error("missing or unknown schema header")]
    BadHeader,
    #[error("line {line}: {reason}")]
    BadLine { line: usize, reason: String },
    #[error("event {event} breaks the protocol phase order: {reason}")]
    OutOfOrder { event: usize, reason: String },
}

/// Ordered event log of one session.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionTranscript {
    pub seed: u64,
    pub events: Vec<Event>,
}

impl SessionTranscript {
    /// Checks the per-slot ordering prepare < encode < reveal < decode.
    pub fn validate(&self) -> Result<(), TranscriptError> {
        let fail = |event: usize, reason: &str| TranscriptError::OutOfOrder {
            event,
            reason: reason.to_string(),
        };
        let mut n = None;
        let mut encoded: Vec<bool> = Vec::new();
        let mut revealed = false;
        for (i, e) in self.events.iter().enumerate() {
            match e {
                Event::Prepared { n: count } => {
                    if n.is_some() {
                        return Err(fail(i, "prepared twice"));
                    }
                    n = Some(*count);
                    encoded = vec![false; *count];
                }
                Event::Scrambled(_) if n.is_none() || encoded.iter().any(|&x| x) => {
                    return Err(fail(i, "scrambling must follow preparation and precede encoding"));
                }
                Event::Scrambled(_) => {}
                Event::Encoded { slot, .. } | Event::ChannelApplied { slot, .. } => {
                    if n.is_none() || revealed {
                        return Err(fail(i, "encoding outside the encoding phase"));
                    }
                    let flag = encoded.get_mut(*slot).ok_or_else(|| fail(i, "slot out of range"))?;
                    if matches!(e, Event::Encoded { .. }) {
                        *flag = true;
                    } else if !*flag {
                        return Err(fail(i, "channel before encoding"));
                    }
                }
                Event::Revealed { .. } => {
                    if !encoded.iter().all(|&x| x) || n.is_none() {
                        return Err(fail(i, "reveal before every slot is encoded"));
                    }
                    revealed = true;
                }
                Event::Measured { slot, .. } | Event::Decoded { slot, .. } => {
                    if !revealed {
                        return Err(fail(i, "decoding before the reveal"));
                    }
                    if *slot >= encoded.len() {
                        return Err(fail(i, "slot out of range"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, TranscriptError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(TranscriptError::BadHeader)?;
        let mut head = header.split('\t');
        if head.next() != Some(TRANSCRIPT_SCHEMA) {
            return Err(TranscriptError::BadHeader);
        }
        let seed = head
            .next()
            .and_then(|s| s.strip_prefix("seed="))
            .and_then(|s| s.parse().ok())
            .ok_or(TranscriptError::BadHeader)?;
        let mut events = Vec::new();
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| TranscriptError::BadLine {
                line: i + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split('\t').collect();
            let num = |k: usize| -> Result<usize, TranscriptError> {
                fields
                    .get(k)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("expected a slot number"))
            };
            let bits = |k: usize| -> Result<(u8, u8), TranscriptError> {
                let s = fields.get(k).ok_or_else(|| bad("missing bits"))?;
                parse_bits(s).ok_or_else(|| bad("expected two bits"))
            };
            let event = match fields[0] {
                RESERVED_DECOY_TAG => continue,
                "PREPARED" => Event::Prepared { n: num(1)? },
                "SCRAMBLED" => match fields.get(1) {
                    Some(&"0") => Event::Scrambled(false),
                    Some(&"1") => Event::Scrambled(true),
                    _ => return Err(bad("expected 0 or 1")),
                },
                "ENCODED" => {
                    let (a, b) = bits(2)?;
                    Event::Encoded {
                        slot: num(1)?,
                        code: PauliCode::new(a, b).expect("bits"),
                    }
                }
                "CHANNEL" => Event::ChannelApplied {
                    slot: num(1)?,
                    digest: fields.get(2).ok_or_else(|| bad("missing digest"))?.to_string(),
                },
                "REVEALED" => {
                    let labels = fields.get(1).ok_or_else(|| bad("missing labels"))?;
                    let indices = labels
                        .split(',')
                        .map(|s| parse_bits(s).map(|(j, k)| BellIndex::new(j, k).expect("bits")))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| bad("bad label list"))?;
                    let permutation = match fields.get(2) {
                        Some(&"-") => None,
                        Some(p) => Some(
                            p.split(',')
                                .map(|x| x.parse().ok())
                                .collect::<Option<Vec<usize>>>()
                                .ok_or_else(|| bad("bad permutation"))?,
                        ),
                        None => return Err(bad("missing permutation field")),
                    };
                    Event::Revealed {
                        indices,
                        permutation,
                    }
                }
                "MEASURED" => {
                    let (j, k) = bits(2)?;
                    Event::Measured {
                        slot: num(1)?,
                        outcome: BellIndex::new(j, k).expect("bits"),
                    }
                }
                "DECODED" => {
                    let (a, b) = bits(2)?;
                    Event::Decoded {
                        slot: num(1)?,
                        code: PauliCode::new(a, b).expect("bits"),
                    }
                }
                other => return Err(bad(&format!("unknown event tag {other:?}"))),
            };
            events.push(event);
        }
        Ok(Self { seed, events })
    }
}

fn parse_bits(s: &str) -> Option<(u8, u8)> {
    let mut chars = s.chars();
    let bit = |c: Option<char>| match c {
        Some('0') => Some(0),
        Some('1') => Some(1),
        _ => None,
    };
    let pair = (bit(chars.next())?, bit(chars.next())?);
    chars.next().is_none().then_some(pair)
}

impl fmt::Display for SessionTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{TRANSCRIPT_SCHEMA}\tseed={}", self.seed)?;
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for SessionTranscript {
    type Err = TranscriptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Everything needed to replay a session.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub n: usize,
    pub source: PairSource,
    pub channel: Option<KrausSet>,
    pub scrambled: bool,
    pub reveal_perm: bool,
    pub messages: Vec<PauliCode>,
    pub seed: u64,
}

impl SessionConfig {
    /// Noiseless, unscrambled session with pure Bell pairs.
    pub fn ideal(messages: Vec<PauliCode>, seed: u64) -> Self {
        Self {
            n: messages.len(),
            source: PairSource::Pure,
            channel: None,
            scrambled: false,
            reveal_perm: false,
            messages,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ProtocolError> {
        if self.reveal_perm && !self.scrambled {
            return Err(ProtocolError::InvalidConfig(
                "revealing the permutation requires scrambling".into(),
            ));
        }
        if self.n < 2 {
            return Err(ProtocolError::TooFewPairs(self.n));
        }
        if self.messages.len() != self.n {
            return Err(ProtocolError::LengthMismatch {
                expected: self.n,
                found: self.messages.len(),
            });
        }
        Ok(())
    }
}

/// How Bob's codes in a [`SessionOutcome`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeRoute {
    /// Charlie's full reveal, honest pairing.
    Revealed,
    /// Permutation withheld; Alice and Bob fell back to blind pairing.
    Collusion,
}

#[derive(Debug, Clone)]
pub struct SessionOutcome {
    pub transcript: SessionTranscript,
    pub decoding: Decoding,
    pub route: DecodeRoute,
}

/// Runs prepare, (scramble), encode, reveal and decode from one seed.
///
/// When the session is scrambled and the permutation is withheld, Bob cannot
/// decode honestly; the outcome then holds the blind-pairing attempt of
/// [`collusion_attack`].
pub fn run_session(config: &SessionConfig) -> Result<SessionOutcome, ProtocolError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut events = Vec::new();

    let mut reg = charlie_prepare_from(config.n, config.source, &mut rng)?;
    events.push(Event::Prepared { n: config.n });
    if config.scrambled {
        scramble(&mut reg, &mut rng)?;
    }
    events.push(Event::Scrambled(config.scrambled));

    events.extend(alice_encode(&mut reg, &config.messages, config.channel.as_ref())?);

    let reveal = charlie_reveal(&mut reg, config.reveal_perm)?;
    events.push(Event::Revealed {
        indices: reveal.indices.clone(),
        permutation: reveal.permutation.as_ref().map(|p| p.as_slice().to_vec()),
    });

    let (decoding, route) = match bob_decode(&reg, &reveal, &mut rng) {
        Ok(d) => (d, DecodeRoute::Revealed),
        Err(ProtocolError::MissingPermutation) => (collusion_attack(&reg, &mut rng)?, DecodeRoute::Collusion),
        Err(e) => return Err(e),
    };
    for (slot, (&outcome, &code)) in decoding.outcomes.iter().zip(&decoding.codes).enumerate() {
        events.push(Event::Measured { slot, outcome });
        events.push(Event::Decoded { slot, code });
    }

    Ok(SessionOutcome {
        transcript: SessionTranscript {
            seed: config.seed,
            events,
        },
        decoding,
        route,
    })
}

/// Mean and standard error of the collusion accuracy over `trials`
/// independent scrambled sessions of `n` pure pairs with random messages.
pub fn collusion_trials<R: Rng + ?Sized>(
    n: usize,
    trials: usize,
    rng: &mut R,
) -> Result<(f64, f64), ProtocolError> {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let mut reg = charlie_prepare(n, rng)?;
        scramble(&mut reg, rng)?;
        let messages = random_messages(n, rng);
        alice_encode(&mut reg, &messages, None)?;
        charlie_reveal(&mut reg, false)?;
        let acc = collusion_attack(&reg, rng)?.accuracy;
        sum += acc;
        sum_sq += acc * acc;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = (sum_sq / t - mean * mean).max(0.0) * t / (t - 1.0).max(1.0);
    Ok((mean, (var / t).sqrt()))
}

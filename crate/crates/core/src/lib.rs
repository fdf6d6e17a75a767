//! Simulator for a quantum cryptographic switch.
//!
//! Charlie hands out Bell pairs, Alice dense-codes two bits per pair onto her
//! half and ships it to Bob, and Bob can only read the message once Charlie
//! discloses which Bell states he prepared. Revealing partial knowledge (a
//! Werner mixture parametrized by an angle `psi`) meters how much Bob
//! recovers, quantified by the Holevo quantity of Alice's signal ensemble.
//!
//! * [`linalg`]: small complex matrices, Kronecker products, partial trace,
//!   Hermitian eigenvalues.
//! * [`states`]: Bell states, Pauli encoders, Werner states, Bell measurement.
//! * [`channels`]: Kraus channels and the squeezed generalized amplitude
//!   damping channel.
//! * [`information`]: Shannon/von Neumann entropy, key information, Holevo
//!   quantity.
//! * [`protocol`]: the three-party state machine, order scrambling and the
//!   collusion attack, with a line-oriented transcript format.
//! * [`sweep`]: grids over `psi`, key information, squeezing and time.
//!
//! ```
//! use qswitch::information::{holevo, key_information, signal_ensemble};
//! use qswitch::states::WernerParam;
//!
//! let psi = WernerParam::new(std::f64::consts::FRAC_PI_6)?;
//! let chi = holevo(&signal_ensemble(psi, None)?)?;
//! assert!((chi - key_information(psi).bits()).abs() < 1e-9);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod channels;
pub mod information;
pub mod linalg;
pub mod protocol;
pub mod states;
pub mod sweep;

pub use num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/bell-states.md")]
    mod bell_states {}
    #[doc = include_str!("../../../book/src/werner.md")]
    mod werner {}
    #[doc = include_str!("../../../book/src/holevo.md")]
    mod holevo {}
    #[doc = include_str!("../../../book/src/sgad-channel.md")]
    mod sgad_channel {}
    #[doc = include_str!("../../../book/src/protocol.md")]
    mod protocol {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

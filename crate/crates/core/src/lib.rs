//! Parity-dependent entanglement between the internal levels and the 2D
//! vibrational motion of a trapped ion.
//!
//! The crate provides the closed-form dynamics of the two-phonon coupling
//! `g(â b̂ σ̂₊ + h.c.)`, decoherence averaging over a fluctuating pulse area,
//! imperfect Fock-state preparation, and independent numerical propagators
//! used to check all of them. The [`sweep`] module drives the `vibronic`
//! binary and produces CSV/JSON tables.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod decoherence;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod params;
pub mod preparation;
pub mod sweep;
pub mod validation;

pub use error::{Error, Result};
pub use fock::{inner_product, make_fock_pair, Cutoffs, Level, TwoModeState, VibronicState};
pub use params::{LaserDrive, PhysicalParams};

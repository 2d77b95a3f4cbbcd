//! Independent numerical routes used to check the closed forms.

pub mod effective;
pub mod lamb_dicke;
pub mod sampling;

pub use effective::{propagate_effective, EffectiveHamiltonian};
pub use lamb_dicke::{propagate_lamb_dicke, LambDickeHamiltonian, DEFAULT_EXPANSION_ORDER};
pub use sampling::{sample_pulse_area, sample_pulse_area_with, seeded_rng, PulseAreaSamples};

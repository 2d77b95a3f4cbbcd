//! Exact propagation under the effective two-phonon Hamiltonian.
//!
//! With `σ̂± = σ̂x ± iσ̂y`, `H = g(â b̂ σ̂₊ + h.c.)` only couples
//! `|n_a, n_b⟩|−⟩ ↔ |n_a−1, n_b−1⟩|+⟩` with element `2g√(n_a n_b)`, so the
//! propagator is a direct sum of 2×2 rotations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Cutoffs, TwoModeState, VibronicState, NORM_TOLERANCE};

/// `g(â b̂ σ̂₊ + h.c.)` restricted to a truncated vibronic basis, `ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveHamiltonian {
    pub g: f64,
    pub cutoffs: Cutoffs,
}

impl EffectiveHamiltonian {
    pub fn new(g: f64, cutoffs: Cutoffs) -> Result<Self> {
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::param(format!(
                "coupling g must be finite and >= 0, got {g}"
            )));
        }
        Ok(Self { g, cutoffs })
    }

    /// `⟨n_a−1, n_b−1, +|H|n_a, n_b, −⟩`.
    pub fn block_coupling(&self, n_a: usize, n_b: usize) -> f64 {
        2.0 * self.g * ((n_a * n_b) as f64).sqrt()
    }

    /// Dimension of the vibronic basis (`|−⟩` block first, then `|+⟩`).
    pub fn dim(&self) -> usize {
        2 * self.cutoffs.dim()
    }

    /// Dense row-major matrix over the vibronic basis.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let d = self.cutoffs.dim();
        let n = 2 * d;
        let mut h = vec![Complex64::new(0.0, 0.0); n * n];
        for n_a in 1..=self.cutoffs.a {
            for n_b in 1..=self.cutoffs.b {
                let lower = self.cutoffs.index(n_a, n_b);
                let upper = d + self.cutoffs.index(n_a - 1, n_b - 1);
                let v = Complex64::new(self.block_coupling(n_a, n_b), 0.0);
                h[upper * n + lower] = v;
                h[lower * n + upper] = v;
            }
        }
        h
    }

    /// Population in `|+⟩` states whose partner lies beyond the cutoffs.
    fn orphaned_population(&self, plus: &TwoModeState) -> f64 {
        plus.iter()
            .filter(|&(n_a, n_b, _)| n_a == self.cutoffs.a || n_b == self.cutoffs.b)
            .map(|(_, _, z)| z.norm_sqr())
            .sum()
    }

    /// Applies the exact block propagator for a time step `dt`.
    fn step(&self, minus: &mut [Complex64], plus: &mut [Complex64], dt: f64) {
        let cut = self.cutoffs;
        for n_a in 1..=cut.a {
            for n_b in 1..=cut.b {
                let (s, c) = (self.block_coupling(n_a, n_b) * dt).sin_cos();
                let i_lo = cut.index(n_a, n_b);
                let i_up = cut.index(n_a - 1, n_b - 1);
                let x = minus[i_lo];
                let y = plus[i_up];
                let mis = Complex64::new(0.0, -s);
                minus[i_lo] = x * c + y * mis;
                plus[i_up] = x * mis + y * c;
            }
        }
    }

    /// Propagates `initial` to time `t` in steps no longer than `dt_max`.
    pub fn propagate(&self, initial: &VibronicState, t: f64, dt_max: f64) -> Result<VibronicState> {
        if initial.cutoffs() != self.cutoffs {
            let c = initial.cutoffs();
            return Err(Error::Shape {
                left: (c.a, c.b),
                right: (self.cutoffs.a, self.cutoffs.b),
            });
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::param(format!(
                "time must be finite and >= 0, got {t}"
            )));
        }
        if !(dt_max > 0.0) {
            return Err(Error::param(format!("dt_max must be > 0, got {dt_max}")));
        }
        let orphan = self.orphaned_population(initial.plus());
        if orphan > NORM_TOLERANCE {
            return Err(Error::Truncation { population: orphan });
        }

        let steps = ((t / dt_max).ceil() as usize).max(1);
        let dt = t / steps as f64;
        let (minus, plus) = initial.clone().into_components();
        let mut minus = minus.into_amplitudes();
        let mut plus = plus.into_amplitudes();
        for _ in 0..steps {
            self.step(&mut minus, &mut plus, dt);
        }
        VibronicState::new(
            TwoModeState::from_amplitudes(self.cutoffs, minus)?,
            TwoModeState::from_amplitudes(self.cutoffs, plus)?,
        )
    }
}

/// Numerically propagates a normalized vibronic state under the effective
/// Hamiltonian with coupling `g`.
pub fn propagate_effective(
    initial: &VibronicState,
    g: f64,
    t: f64,
    dt_max: f64,
) -> Result<VibronicState> {
    if !initial.is_normalized() {
        return Err(Error::param(format!(
            "initial state must be normalized, norm^2 = {}",
            initial.norm_sqr()
        )));
    }
    EffectiveHamiltonian::new(g, initial.cutoffs())?.propagate(initial, t, dt_max)
}

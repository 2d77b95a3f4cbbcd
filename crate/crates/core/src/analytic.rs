//! Closed-form dynamics of the two-phonon coupling `g(â b̂ σ̂₊ + h.c.)`.
//!
//! Starting from `|N⟩` along the rotated axis (the τ = 1 SU(2) coherent
//! state) with the ion in `|−⟩`, each component `|N−k, k⟩|−⟩` performs a Rabi
//! flop with `|N−k−1, k−1⟩|+⟩` at frequency `f_k = 2g√((N−k)k)`. The ground
//! probability `c(t)` fixes both the measured signal and the vibrational
//! entropy, which is the binary entropy of `c`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{Cutoffs, TwoModeState, VibronicState};

/// `|P_k|² = 2^{−N} C(N, k)` for `k = 0..=N`.
///
/// Evaluated as cumulative sums of log ratios so large `N` neither overflows
/// nor underflows in the intermediate binomials.
pub fn binomial_weights(n: u32) -> Vec<f64> {
    let n_f = n as f64;
    let mut ln_binom = 0.0f64;
    let mut out = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        out.push((ln_binom - n_f * LN_2).exp());
        if k < n {
            ln_binom += ((n - k) as f64 / (k + 1) as f64).ln();
        }
    }
    let total: f64 = out.iter().sum();
    out.iter_mut().for_each(|w| *w /= total);
    out
}

/// `√((N−k)k)`; the Rabi frequency is `2g` times this factor.
#[inline]
fn sector_factor(n: u32, k: u32) -> f64 {
    (((n - k) as u64 * k as u64) as f64).sqrt()
}

/// Two-mode SU(2) coherent state `|τ, j⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2CoherentSpec {
    pub tau: Complex64,
    /// `2j`, the total number of quanta.
    pub two_j: u32,
}

impl Su2CoherentSpec {
    pub fn new(tau: Complex64, two_j: u32) -> Self {
        Self { tau, two_j }
    }

    /// Accepts `j` as a real number; `2j` must be a non-negative integer.
    pub fn from_j(tau: Complex64, j: f64) -> Result<Self> {
        let two_j = 2.0 * j;
        if !(two_j >= 0.0) || two_j.fract() != 0.0 || two_j > u32::MAX as f64 {
            return Err(Error::param(format!(
                "2j must be a non-negative integer, got j = {j}"
            )));
        }
        Ok(Self {
            tau,
            two_j: two_j as u32,
        })
    }
}

/// `|τ, j⟩ = (1+|τ|²)^{−j} Σ_k C(2j,k)^{1/2} τ^k |2j−k, k⟩`.
pub fn build_su2_state(spec: Su2CoherentSpec, cutoffs: Cutoffs) -> Result<TwoModeState> {
    let n = spec.two_j;
    let n_us = n as usize;
    if cutoffs.a < n_us || cutoffs.b < n_us {
        // |2j, 0⟩ and |0, 2j⟩ must both fit
        return Err(Error::Bounds {
            n_a: n_us,
            n_b: n_us,
            cutoff_a: cutoffs.a,
            cutoff_b: cutoffs.b,
        });
    }
    if !(spec.tau.re.is_finite() && spec.tau.im.is_finite()) {
        return Err(Error::param("tau must be finite"));
    }

    let mut amps = vec![Complex64::new(0.0, 0.0); cutoffs.dim()];
    let r = spec.tau.norm();
    if r == 0.0 {
        amps[cutoffs.index(n_us, 0)] = Complex64::new(1.0, 0.0);
        return TwoModeState::from_amplitudes(cutoffs, amps);
    }

    let ln_r = r.ln();
    let phase = spec.tau.arg();
    let ln_norm = 0.5 * n as f64 * (r * r).ln_1p();
    let mut ln_binom = 0.0f64;
    for k in 0..=n {
        let ln_mag = 0.5 * ln_binom + k as f64 * ln_r - ln_norm;
        amps[cutoffs.index(n_us - k as usize, k as usize)] =
            Complex64::from_polar(ln_mag.exp(), k as f64 * phase);
        if k < n {
            ln_binom += ((n - k) as f64 / (k + 1) as f64).ln();
        }
    }
    TwoModeState::from_amplitudes(cutoffs, amps)
}

/// The τ = 1 initial vibrational state with `n` quanta on a square grid of
/// cutoff `n`.
pub fn initial_vibrational_state(n: u32) -> TwoModeState {
    build_su2_state(
        Su2CoherentSpec::new(Complex64::new(1.0, 0.0), n),
        Cutoffs::square(n as usize),
    )
    .expect("cutoffs sized to fit")
}

/// Rabi frequencies `f_k = 2g√((N−k)k)` and initial weights `|P_k|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RabiSpectrum {
    pub n_total: u32,
    pub frequencies: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RabiSpectrum {
    pub fn new(n_total: u32, g: f64) -> Self {
        let frequencies = (0..=n_total)
            .map(|k| 2.0 * g * sector_factor(n_total, k))
            .collect();
        Self {
            n_total,
            frequencies,
            weights: binomial_weights(n_total),
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::param(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    Ok(())
}

fn check_coupling(g: f64) -> Result<()> {
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::param(format!("coupling g must be > 0, got {g}")));
    }
    Ok(())
}

/// Exact state at time `t`:
/// `|φ₋⟩ = Σ_k P_k cos(f_k t)|N−k,k⟩`, `|φ₊⟩ = −i Σ_{k=1}^{N−1} P_k sin(f_k t)|N−k−1,k−1⟩`.
pub fn evolve_closed_form(n: u32, g: f64, t: f64) -> Result<VibronicState> {
    if n < 1 {
        return Err(Error::param("total quanta N must be >= 1"));
    }
    check_coupling(g)?;
    check_time(t)?;

    let cut = Cutoffs::square(n as usize);
    let spec = RabiSpectrum::new(n, g);
    let mut minus = vec![Complex64::new(0.0, 0.0); cut.dim()];
    let mut plus = vec![Complex64::new(0.0, 0.0); cut.dim()];
    for k in 0..=n {
        let p = spec.weights[k as usize].sqrt();
        let (s, c) = (spec.frequencies[k as usize] * t).sin_cos();
        let (na, nb) = ((n - k) as usize, k as usize);
        minus[cut.index(na, nb)] = Complex64::new(p * c, 0.0);
        if k >= 1 && k < n {
            plus[cut.index(na - 1, nb - 1)] = Complex64::new(0.0, -p * s);
        }
    }
    VibronicState::new(
        TwoModeState::from_amplitudes(cut, minus)?,
        TwoModeState::from_amplitudes(cut, plus)?,
    )
}

/// `c` as a function of the dimensionless pulse area `A = g t`:
/// `½[1 + Σ_k |P_k|² cos(4√((N−k)k) A)]`.
pub fn ground_probability_at_area(n: u32, area: f64) -> f64 {
    let weights = binomial_weights(n);
    ground_probability_with_weights(n, &weights, area)
}

pub(crate) fn ground_probability_with_weights(n: u32, weights: &[f64], area: f64) -> f64 {
    let s: f64 = (0..=n)
        .map(|k| weights[k as usize] * (4.0 * sector_factor(n, k) * area).cos())
        .sum();
    // dividing by Σ w makes c(0) = 1 exactly
    let total: f64 = weights.iter().sum();
    (0.5 * (1.0 + s / total)).clamp(0.0, 1.0)
}

/// Probability `c(t)` of finding the ion in `|−⟩`. `N = 0` has no dynamics
/// and returns 1.
pub fn ground_probability(n: u32, g: f64, t: f64) -> f64 {
    ground_probability_at_area(n, g * t)
}

/// `−c ln c − (1−c) ln(1−c)`, with the limits at 0 and 1 returned as exactly 0.
pub fn binary_entropy(c: f64) -> f64 {
    if c <= 0.0 || c >= 1.0 {
        return 0.0;
    }
    -(c * c.ln() + (1.0 - c) * (1.0 - c).ln())
}

/// Von Neumann entropy of the reduced vibrational state, in nats.
pub fn vibrational_entropy(n: u32, g: f64, t: f64) -> f64 {
    binary_entropy(ground_probability(n, g, t))
}

/// Characteristic instants of the parity effect for `N` total quanta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParityTimes {
    pub n_total: u32,
    /// `π(N−1)/(4g)`: disentangling instant, odd `N` only.
    pub t_odd: Option<f64>,
    /// `πN/(4g)`.
    pub t_even: f64,
    /// `π(N+1)/(4g)`: maximal-entanglement instant of the `N+1` partner, odd
    /// `N` only.
    pub t_even_partner: Option<f64>,
    /// Comparison instant: `(t_odd + t_even)/2 = π(2N−1)/(8g)` for odd `N`,
    /// `t_even` for even `N`.
    pub t_bar: f64,
}

pub fn parity_times(n: u32, g: f64) -> Result<ParityTimes> {
    if n < 2 {
        return Err(Error::param(format!("parity times need N >= 2, got {n}")));
    }
    check_coupling(g)?;
    let quarter = PI / (4.0 * g);
    let t_even = n as f64 * quarter;
    if n % 2 == 1 {
        let t_odd = (n - 1) as f64 * quarter;
        Ok(ParityTimes {
            n_total: n,
            t_odd: Some(t_odd),
            t_even,
            t_even_partner: Some((n + 1) as f64 * quarter),
            t_bar: 0.5 * (t_odd + t_even),
        })
    } else {
        Ok(ParityTimes {
            n_total: n,
            t_odd: None,
            t_even,
            t_even_partner: None,
            t_bar: t_even,
        })
    }
}

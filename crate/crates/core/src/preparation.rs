//! Imperfect Fock-state preparation.
//!
//! The initial vibrational state is a Gaussian-weighted classical mixture of
//! Fock states `|m⟩` along the rotated axis, centred on the target `N` with
//! width `Δ`. Each `m` evolves exactly like a pure run with `m` quanta, so the
//! averaged ground probability is the convex combination of the pure ones.

use serde::{Deserialize, Serialize};

use crate::analytic::{binomial_weights, ground_probability_with_weights};
use crate::decoherence::{
    averaged_ground_probability, sample_mean, Estimate, FluctuationModel, KernelMode,
};
use crate::error::{Error, Result};
use crate::oracle::sampling::sample_pulse_area;

/// Tail cut of the mixture in units of `Δ`.
pub const TAIL_WIDTHS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreparationWidth {
    /// `Δ → 0`: the pure Fock state `|N⟩`.
    Exact,
    Gaussian(f64),
}

/// `η_prep = 1 − p_{N+1}/p_N = 1 − e^{−1/(2Δ²)}`.
pub fn efficiency(width: PreparationWidth) -> Result<f64> {
    match width {
        PreparationWidth::Exact => Ok(1.0),
        PreparationWidth::Gaussian(delta) => {
            if !(delta > 0.0) {
                return Err(Error::param(format!("width must be > 0, got {delta}")));
            }
            Ok(-(-0.5 / (delta * delta)).exp_m1())
        }
    }
}

/// Inverse of [`efficiency`] on `0 < η_prep < 1`.
pub fn delta_from_efficiency(eta_prep: f64) -> Result<f64> {
    if !(eta_prep > 0.0 && eta_prep < 1.0) {
        return Err(Error::param(format!(
            "preparation efficiency must lie in (0, 1), got {eta_prep}"
        )));
    }
    Ok((-0.5 / (-eta_prep).ln_1p()).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreparationModel {
    pub n_target: u32,
    pub width: PreparationWidth,
    /// `(m, w_m)` with `Σ w_m = 1`.
    pub weights: Vec<(u32, f64)>,
}

impl PreparationModel {
    /// Truncates the mixture at `m_max = N + ⌈8Δ⌉`.
    pub fn new(n_target: u32, width: PreparationWidth) -> Result<Self> {
        let m_max = match width {
            PreparationWidth::Exact => n_target,
            PreparationWidth::Gaussian(delta) => {
                efficiency(width)?;
                let tail = (TAIL_WIDTHS * delta).ceil();
                if tail > (u32::MAX - n_target) as f64 {
                    return Err(Error::param(format!("width {delta} too large")));
                }
                n_target + tail as u32
            }
        };
        Self::with_m_max(n_target, width, m_max)
    }

    /// Mixture over `m = 0..=m_max`, renormalized.
    pub fn with_m_max(n_target: u32, width: PreparationWidth, m_max: u32) -> Result<Self> {
        let weights = match width {
            PreparationWidth::Exact => vec![(n_target, 1.0)],
            PreparationWidth::Gaussian(delta) => {
                efficiency(width)?;
                if m_max < n_target {
                    return Err(Error::param("m_max must be >= N"));
                }
                let raw: Vec<(u32, f64)> = (0..=m_max)
                    .map(|m| {
                        let x = m as f64 - n_target as f64;
                        (m, (-x * x / (2.0 * delta * delta)).exp())
                    })
                    .filter(|&(_, w)| w > 0.0)
                    .collect();
                let total: f64 = raw.iter().map(|&(_, w)| w).sum();
                raw.into_iter().map(|(m, w)| (m, w / total)).collect()
            }
        };
        Ok(Self {
            n_target,
            width,
            weights,
        })
    }

    /// Model for a target efficiency; `η_prep = 1` is the exact state.
    pub fn from_efficiency(n_target: u32, eta_prep: f64) -> Result<Self> {
        if eta_prep == 1.0 {
            return Self::new(n_target, PreparationWidth::Exact);
        }
        Self::new(
            n_target,
            PreparationWidth::Gaussian(delta_from_efficiency(eta_prep)?),
        )
    }

    pub fn efficiency(&self) -> f64 {
        efficiency(self.width).expect("validated at construction")
    }

    /// Same width, different target.
    pub fn retarget(&self, n_target: u32) -> Result<Self> {
        Self::new(n_target, self.width)
    }
}

/// `Σ_m w_m P̄₋(m)`, where `m = 0` contributes 1 (the coupling annihilates
/// `|0,0⟩|−⟩`).
pub fn averaged_ground_probability_mixed(
    prep: &PreparationModel,
    model: &FluctuationModel,
    t: f64,
) -> Result<Estimate> {
    if model.mode == KernelMode::MonteCarlo && model.tau > 0.0 {
        // one set of draws shared by every component: the mixture is
        // averaged per draw, so the standard error is that of the mixture
        averaged_ground_probability(0, model, t)?;
        let s = sample_pulse_area(model.g_mean, model.tau, t, model.seed, model.samples)?;
        let tables: Vec<(u32, f64, Vec<f64>)> = prep
            .weights
            .iter()
            .map(|&(m, w)| (m, w, binomial_weights(m)))
            .collect();
        let est = sample_mean(s.draws.iter().map(|&a| {
            tables
                .iter()
                .map(|(m, w, bw)| {
                    w * if *m == 0 {
                        1.0
                    } else {
                        ground_probability_with_weights(*m, bw, a)
                    }
                })
                .sum::<f64>()
        }));
        return Ok(Estimate {
            value: est.value.clamp(0.0, 1.0),
            std_error: est.std_error,
        });
    }
    let mut value = 0.0;
    let mut var = 0.0;
    for &(m, w) in &prep.weights {
        let p = if m == 0 {
            // still validate t and model
            averaged_ground_probability(0, model, t)?;
            Estimate::exact(1.0)
        } else {
            averaged_ground_probability(m, model, t)?
        };
        value += w * p.value;
        var += (w * p.std_error).powi(2);
    }
    Ok(Estimate {
        value: value.clamp(0.0, 1.0),
        std_error: var.sqrt(),
    })
}

/// Parity contrast between targets `N` (odd) and `N + 1` prepared with the
/// same width.
pub fn parity_delta_mixed(
    n_odd: u32,
    width: PreparationWidth,
    model: &FluctuationModel,
    t_bar: f64,
) -> Result<Estimate> {
    if n_odd < 3 || n_odd.is_multiple_of(2) {
        return Err(Error::param(format!(
            "parity contrast needs odd N >= 3, got {n_odd}"
        )));
    }
    let odd =
        averaged_ground_probability_mixed(&PreparationModel::new(n_odd, width)?, model, t_bar)?;
    let even =
        averaged_ground_probability_mixed(&PreparationModel::new(n_odd + 1, width)?, model, t_bar)?;
    Ok(Estimate {
        value: odd.value - even.value,
        std_error: odd.std_error.hypot(even.std_error),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn efficiency_limits() {
        assert_eq!(efficiency(PreparationWidth::Exact).unwrap(), 1.0);
        assert!(efficiency(PreparationWidth::Gaussian(1e-3)).unwrap() == 1.0);
        let wide = efficiency(PreparationWidth::Gaussian(1e4)).unwrap();
        assert!(wide > 0.0 && wide < 1e-8);
        assert!(efficiency(PreparationWidth::Gaussian(0.0)).is_err());
        assert!(efficiency(PreparationWidth::Gaussian(-1.0)).is_err());
    }

    #[test]
    fn ninety_percent_width() {
        let d = delta_from_efficiency(0.9).unwrap();
        let expect = 1.0 / (2.0 * 10f64.ln()).sqrt();
        assert_abs_diff_eq!(d, expect, epsilon = 1e-15);
        assert_abs_diff_eq!(d, 0.466, epsilon = 1e-3);
        assert_abs_diff_eq!(
            efficiency(PreparationWidth::Gaussian(d)).unwrap(),
            0.9,
            epsilon = 1e-12
        );
    }

    #[test]
    fn inverse_examples() {
        let x = -(-0.5f64).exp_m1();
        assert_abs_diff_eq!(delta_from_efficiency(x).unwrap(), 1.0, epsilon = 1e-14);
        assert!(delta_from_efficiency(1.0 - 1e-12).unwrap() < 0.2);
        assert!(delta_from_efficiency(1.0).is_err());
        assert!(delta_from_efficiency(0.0).is_err());
        assert!(delta_from_efficiency(1.5).is_err());
    }

    #[test]
    fn weights_are_normalized_and_truncated() {
        let p = PreparationModel::new(9, PreparationWidth::Gaussian(1.3)).unwrap();
        assert_abs_diff_eq!(
            p.weights.iter().map(|w| w.1).sum::<f64>(),
            1.0,
            epsilon = 1e-12
        );
        assert_eq!(p.weights.last().unwrap().0, 9 + 11);
        assert_eq!(p.weights[0].0, 0);

        let exact = PreparationModel::new(9, PreparationWidth::Exact).unwrap();
        assert_eq!(exact.weights, vec![(9, 1.0)]);
        assert_eq!(exact.efficiency(), 1.0);
    }

    #[test]
    fn vacuum_term_contributes_one() {
        let p = PreparationModel::with_m_max(0, PreparationWidth::Gaussian(1e-3), 0).unwrap();
        let model = FluctuationModel::gaussian(1.0, 0.1);
        assert_eq!(
            averaged_ground_probability_mixed(&p, &model, 3.0)
                .unwrap()
                .value,
            1.0
        );
    }

    #[test]
    fn monte_carlo_mixture_matches_gamma() {
        let prep = PreparationModel::new(9, PreparationWidth::Gaussian(0.8)).unwrap();
        let exact =
            averaged_ground_probability_mixed(&prep, &FluctuationModel::gamma(1.0, 0.01), 2.0)
                .unwrap();
        let mc = averaged_ground_probability_mixed(
            &prep,
            &FluctuationModel::monte_carlo(1.0, 0.01, 9, 50_000),
            2.0,
        )
        .unwrap();
        assert!(mc.std_error > 0.0);
        assert!(
            (mc.value - exact.value).abs() < 4.0 * mc.std_error,
            "{mc:?} vs {exact:?}"
        );
    }

    #[test]
    fn rejects_even_target() {
        let model = FluctuationModel::gaussian(1.0, 0.0);
        assert!(parity_delta_mixed(8, PreparationWidth::Exact, &model, 1.0).is_err());
    }
}

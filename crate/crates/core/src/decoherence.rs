//! Non-dissipative decoherence from a fluctuating pulse area.
//!
//! Any quantity `O(A)` that depends on the coupling only through the pulse
//! area `A = ∫₀ᵗ g(ξ) dξ` is replaced by its average over the Gamma law of `A`
//! (shape `t/τ`, scale `gτ`). For the ground probability this reduces to
//! averaging `cos(ωA)` once per Rabi sector.

use serde::{Deserialize, Serialize};

use crate::analytic::{binomial_weights, ground_probability_with_weights};
use crate::error::{Error, Result};
use crate::oracle::sampling::sample_pulse_area;

/// Fluctuation strength fitted to observed Rabi-oscillation decay, seconds.
pub const EXPERIMENTAL_TAU: f64 = 1.5e-8;

/// Default number of Monte-Carlo draws.
pub const DEFAULT_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMode {
    /// Characteristic function of the Gamma law.
    #[serde(alias = "gamma")]
    GammaExact,
    /// Gaussian approximation valid for `t ≫ τ`.
    #[default]
    #[serde(alias = "gaussian")]
    GaussianApprox,
    /// Seeded sample mean over Gamma draws.
    #[serde(alias = "mc")]
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluctuationModel {
    /// Mean coupling, rad/s.
    pub g_mean: f64,
    /// Fluctuation strength, s. Zero means deterministic evolution.
    pub tau: f64,
    pub mode: KernelMode,
    pub seed: u64,
    pub samples: usize,
}

impl FluctuationModel {
    pub fn new(g_mean: f64, tau: f64, mode: KernelMode) -> Self {
        Self {
            g_mean,
            tau,
            mode,
            seed: 0,
            samples: DEFAULT_SAMPLES,
        }
    }

    pub fn gaussian(g_mean: f64, tau: f64) -> Self {
        Self::new(g_mean, tau, KernelMode::GaussianApprox)
    }

    pub fn gamma(g_mean: f64, tau: f64) -> Self {
        Self::new(g_mean, tau, KernelMode::GammaExact)
    }

    pub fn monte_carlo(g_mean: f64, tau: f64, seed: u64, samples: usize) -> Self {
        Self {
            g_mean,
            tau,
            mode: KernelMode::MonteCarlo,
            seed,
            samples,
        }
    }

    pub fn with_tau(self, tau: f64) -> Self {
        Self { tau, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    fn validate(&self, t: f64) -> Result<()> {
        if !(self.g_mean > 0.0 && self.g_mean.is_finite()) {
            return Err(Error::param(format!(
                "mean coupling must be > 0, got {}",
                self.g_mean
            )));
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(Error::param(format!("tau must be >= 0, got {}", self.tau)));
        }
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("averaging needs t > 0, got {t}")));
        }
        if self.mode == KernelMode::MonteCarlo && self.samples == 0 {
            return Err(Error::param("Monte-Carlo mode needs at least one sample"));
        }
        Ok(())
    }
}

/// Averaged value and its standard error (zero for closed-form kernels).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
        }
    }
}

pub(crate) fn sample_mean(values: impl ExactSizeIterator<Item = f64>) -> Estimate {
    let n = values.len() as f64;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for v in values {
        sum += v;
        sum_sq += v * v;
    }
    let mean = sum / n;
    let var = if n > 1.0 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Estimate {
        value: mean,
        std_error: (var / n).sqrt(),
    }
}

/// `E[cos(ωA)]` in the closed-form modes.
fn closed_kernel(omega: f64, t: f64, g: f64, tau: f64, mode: KernelMode) -> f64 {
    if tau == 0.0 {
        return (omega * g * t).cos();
    }
    match mode {
        KernelMode::GaussianApprox => {
            (omega * g * t).cos() * (-0.5 * omega * omega * g * g * t * tau).exp()
        }
        KernelMode::GammaExact | KernelMode::MonteCarlo => {
            // Re[(1 − iωgτ)^{−t/τ}] on the principal branch, split into
            // modulus and phase so that t/τ ≫ 1 stays accurate
            let x = omega * g * tau;
            let shape = t / tau;
            let modulus = (-0.5 * shape * (x * x).ln_1p()).exp();
            modulus * (shape * x.atan()).cos()
        }
    }
}

/// `E[cos(ωA)]` over the pulse-area distribution at time `t`.
pub fn averaged_cosine(omega: f64, t: f64, model: &FluctuationModel) -> Result<Estimate> {
    model.validate(t)?;
    if !omega.is_finite() {
        return Err(Error::param("omega must be finite"));
    }
    match model.mode {
        KernelMode::MonteCarlo if model.tau > 0.0 => {
            let s = sample_pulse_area(model.g_mean, model.tau, t, model.seed, model.samples)?;
            Ok(sample_mean(s.draws.iter().map(|a| (omega * a).cos())))
        }
        mode => Ok(Estimate::exact(closed_kernel(
            omega,
            t,
            model.g_mean,
            model.tau,
            mode,
        ))),
    }
}

/// Averaged probability of finding the ion in `|−⟩`:
/// `½[1 + Σ_k |P_k|² E[cos(4√((N−k)k) A)]]`. In Gaussian mode this is
/// `½[1 + Σ_k |P_k|² e^{−8g²τ(N−k)k t} cos(4√((N−k)k) g t)]`.
pub fn averaged_ground_probability(n: u32, model: &FluctuationModel, t: f64) -> Result<Estimate> {
    model.validate(t)?;
    let weights = binomial_weights(n);
    match model.mode {
        KernelMode::MonteCarlo if model.tau > 0.0 => {
            let s = sample_pulse_area(model.g_mean, model.tau, t, model.seed, model.samples)?;
            Ok(sample_mean(
                s.draws
                    .iter()
                    .map(|&a| ground_probability_with_weights(n, &weights, a)),
            ))
        }
        mode => {
            let s: f64 = (0..=n)
                .map(|k| {
                    let omega = 4.0 * (((n - k) as u64 * k as u64) as f64).sqrt();
                    weights[k as usize] * closed_kernel(omega, t, model.g_mean, model.tau, mode)
                })
                .sum();
            Ok(Estimate::exact((0.5 * (1.0 + s)).clamp(0.0, 1.0)))
        }
    }
}

/// `ΔPᴺ = P̄₋(N) − P̄₋(N+1)` at `t_bar` for odd `N ≥ 3`.
pub fn parity_delta(n_odd: u32, model: &FluctuationModel, t_bar: f64) -> Result<Estimate> {
    if n_odd < 3 || n_odd.is_multiple_of(2) {
        return Err(Error::param(format!(
            "parity contrast needs odd N >= 3, got {n_odd}"
        )));
    }
    let odd = averaged_ground_probability(n_odd, model, t_bar)?;
    let even = averaged_ground_probability(n_odd + 1, model, t_bar)?;
    Ok(Estimate {
        value: odd.value - even.value,
        std_error: odd.std_error.hypot(even.std_error),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::ground_probability;
    use approx::assert_abs_diff_eq;

    #[test]
    fn deterministic_limit_in_every_mode() {
        for mode in [
            KernelMode::GammaExact,
            KernelMode::GaussianApprox,
            KernelMode::MonteCarlo,
        ] {
            let m = FluctuationModel::new(1.3, 0.0, mode);
            let v = averaged_cosine(2.0, 0.7, &m).unwrap();
            assert_abs_diff_eq!(v.value, (2.0f64 * 1.3 * 0.7).cos(), epsilon = 1e-15);
            let p = averaged_ground_probability(7, &m, 0.7).unwrap().value;
            assert_abs_diff_eq!(p, ground_probability(7, 1.3, 0.7), epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_frequency() {
        for mode in [
            KernelMode::GammaExact,
            KernelMode::GaussianApprox,
            KernelMode::MonteCarlo,
        ] {
            let m = FluctuationModel::new(1.0, 0.05, mode);
            assert_abs_diff_eq!(
                averaged_cosine(0.0, 1.0, &m).unwrap().value,
                1.0,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn gaussian_substitution() {
        let m = FluctuationModel::gaussian(1.0, 0.01);
        let v = averaged_cosine(4.0, 1.0, &m).unwrap();
        assert_abs_diff_eq!(v.value, 4.0f64.cos() * (-0.08f64).exp(), epsilon = 1e-15);
        assert_eq!(v.std_error, 0.0);
    }

    #[test]
    fn gaussian_substitution_against_monte_carlo() {
        let mc = averaged_cosine(
            4.0,
            1.0,
            &FluctuationModel::monte_carlo(1.0, 0.01, 5, 200_000),
        )
        .unwrap();
        let expect = 4.0f64.cos() * (-0.08f64).exp();
        // Gamma vs Gaussian differ by ~(ωgτ)^3 t/τ here, far below the MC noise
        assert!(
            (mc.value - expect).abs() < 3.0 * mc.std_error + 2e-3,
            "{mc:?} vs {expect}"
        );
    }

    #[test]
    fn long_time_limit() {
        // only the k = 0 and k = N sectors survive
        let m = FluctuationModel::gaussian(1.0, 0.5);
        let p = averaged_ground_probability(9, &m, 1e4).unwrap().value;
        assert_abs_diff_eq!(p, 0.5 * (1.0 + 2.0 / 512.0), epsilon = 1e-12);
        let m = FluctuationModel::gamma(1.0, 0.5);
        let p = averaged_ground_probability(9, &m, 1e4).unwrap().value;
        assert_abs_diff_eq!(p, 0.5 * (1.0 + 2.0 / 512.0), epsilon = 1e-12);
    }

    #[test]
    fn gamma_large_shape_is_stable() {
        let m = FluctuationModel::gamma(1.0, 1e-14);
        let v = averaged_cosine(3.0, 2.0, &m).unwrap().value;
        assert_abs_diff_eq!(v, 6.0f64.cos(), epsilon = 1e-9);
    }

    #[test]
    fn domain_and_parameter_errors() {
        let m = FluctuationModel::gaussian(1.0, 0.1);
        assert!(matches!(
            averaged_cosine(1.0, 0.0, &m),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            averaged_cosine(1.0, -1.0, &m),
            Err(Error::Domain(_))
        ));
        assert!(averaged_ground_probability(3, &m.with_tau(-1.0), 1.0).is_err());
        assert!(parity_delta(10, &m, 1.0).is_err());
        assert!(parity_delta(1, &m, 1.0).is_err());
    }

    #[test]
    fn parity_delta_combines_errors() {
        let m = FluctuationModel::monte_carlo(1.0, 0.01, 3, 10_000);
        let d = parity_delta(9, &m, 2.0).unwrap();
        assert!(d.std_error > 0.0);
        let a = averaged_ground_probability(9, &m, 2.0).unwrap();
        let b = averaged_ground_probability(10, &m, 2.0).unwrap();
        assert_eq!(d.value, a.value - b.value);
    }
}

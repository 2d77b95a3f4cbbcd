use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};

/// Seeded generator used for every Monte-Carlo path in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws of the pulse area `A` together with their sample moments.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseAreaSamples {
    pub draws: Vec<f64>,
    pub mean: f64,
    /// Unbiased sample variance (0 for a single draw).
    pub variance: f64,
}

impl PulseAreaSamples {
    fn from_draws(draws: Vec<f64>) -> Self {
        let n = draws.len() as f64;
        let mean = draws.iter().sum::<f64>() / n;
        let variance = if draws.len() > 1 {
            draws.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Self {
            draws,
            mean,
            variance,
        }
    }

    /// Standard error of the sample mean.
    pub fn std_error(&self) -> f64 {
        (self.variance / self.draws.len() as f64).sqrt()
    }
}

/// Gamma law of the pulse area at time `t`: shape `t/τ`, scale `gτ`, so that
/// `⟨A⟩ = gt` and `σ²(A) = g²tτ`.
pub fn pulse_area_distribution(g_mean: f64, tau: f64, t: f64) -> Result<Gamma<f64>> {
    if !(g_mean > 0.0 && g_mean.is_finite()) {
        return Err(Error::param(format!(
            "mean coupling must be > 0, got {g_mean}"
        )));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::param(format!(
            "tau must be > 0 to sample, got {tau}"
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!(
            "Gamma shape t/tau needs t > 0, got t = {t}"
        )));
    }
    Gamma::new(t / tau, g_mean * tau).map_err(|e| Error::param(e.to_string()))
}

/// Draws `n_samples` pulse areas from an explicitly passed generator.
pub fn sample_pulse_area_with<R: Rng + ?Sized>(
    g_mean: f64,
    tau: f64,
    t: f64,
    n_samples: usize,
    rng: &mut R,
) -> Result<PulseAreaSamples> {
    if n_samples == 0 {
        return Err(Error::param("n_samples must be >= 1"));
    }
    let dist = pulse_area_distribution(g_mean, tau, t)?;
    let draws = (0..n_samples).map(|_| dist.sample(rng)).collect();
    Ok(PulseAreaSamples::from_draws(draws))
}

/// Seeded variant; identical seeds give bit-identical draws.
pub fn sample_pulse_area(
    g_mean: f64,
    tau: f64,
    t: f64,
    seed: u64,
    n_samples: usize,
) -> Result<PulseAreaSamples> {
    sample_pulse_area_with(g_mean, tau, t, n_samples, &mut seeded_rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_match_mean_and_variance() {
        let (g, tau, t) = (1.0, 0.01, 1.0);
        let n = 1_000_000;
        let s = sample_pulse_area(g, tau, t, 11, n).unwrap();
        // mean g t, within 3 standard errors
        assert!(
            (s.mean - g * t).abs() <= 3.0 * s.std_error(),
            "mean {}",
            s.mean
        );
        // variance g^2 t tau; standard error of the sample variance for a
        // Gamma law: sqrt((mu4 - sigma^4 (n-3)/(n-1)) / n), mu4 = 3 sigma^4 (1 + 2/shape)
        let var = g * g * t * tau;
        let shape = t / tau;
        let mu4 = 3.0 * var * var * (1.0 + 2.0 / shape);
        let se_var = ((mu4 - var * var * (n as f64 - 3.0) / (n as f64 - 1.0)) / n as f64).sqrt();
        assert!(
            (s.variance - var).abs() <= 3.0 * se_var,
            "var {}",
            s.variance
        );
    }

    #[test]
    fn seeded_draws_repeat() {
        let a = sample_pulse_area(2.0, 0.1, 0.5, 42, 1000).unwrap();
        let b = sample_pulse_area(2.0, 0.1, 0.5, 42, 1000).unwrap();
        assert!(a
            .draws
            .iter()
            .zip(&b.draws)
            .all(|(x, y)| x.to_bits() == y.to_bits()));
        let c = sample_pulse_area(2.0, 0.1, 0.5, 43, 1000).unwrap();
        assert_ne!(a.draws, c.draws);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(matches!(
            sample_pulse_area(1.0, 0.1, 0.0, 0, 10),
            Err(Error::Domain(_))
        ));
        assert!(sample_pulse_area(1.0, 0.0, 1.0, 0, 10).is_err());
        assert!(sample_pulse_area(-1.0, 0.1, 1.0, 0, 10).is_err());
        assert!(sample_pulse_area(1.0, 0.1, 1.0, 0, 0).is_err());
    }
}

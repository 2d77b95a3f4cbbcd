use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for `g = Ω η² e^{−η²/2}`.
pub const COUPLING_CONSISTENCY_TOLERANCE: f64 = 1e-9;

/// Laser drive in the interaction picture: Rabi frequency, Lamb-Dicke
/// parameter and trap frequency (rad/s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaserDrive {
    pub omega: f64,
    pub eta_ld: f64,
    pub nu: f64,
}

impl LaserDrive {
    /// Resonant two-phonon coupling `Ω η² e^{−η²/2}`.
    pub fn effective_coupling(&self) -> f64 {
        let eta2 = self.eta_ld * self.eta_ld;
        self.omega * eta2 * (-0.5 * eta2).exp()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return Err(Error::param(format!(
                "Rabi frequency must be >= 0, got {}",
                self.omega
            )));
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::param(format!(
                "trap frequency must be > 0, got {}",
                self.nu
            )));
        }
        if !(0.0..1.0).contains(&self.eta_ld) {
            return Err(Error::param(format!(
                "Lamb-Dicke parameter must lie in [0, 1), got {}",
                self.eta_ld
            )));
        }
        Ok(())
    }
}

/// Physical parameters of a run. `g` is the mean two-phonon coupling (rad/s)
/// and `tau` the pulse-area fluctuation strength (s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub g: f64,
    pub tau: f64,
    pub drive: Option<LaserDrive>,
}

impl PhysicalParams {
    pub fn new(g: f64, tau: f64) -> Self {
        Self {
            g,
            tau,
            drive: None,
        }
    }

    /// Parameters whose coupling is derived from the drive.
    pub fn from_drive(drive: LaserDrive, tau: f64) -> Self {
        Self {
            g: drive.effective_coupling(),
            tau,
            drive: Some(drive),
        }
    }

    /// Checks signs and, when a drive is attached, the coupling relation.
    pub fn validate(&self) -> Result<()> {
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err(Error::param(format!(
                "coupling g must be > 0, got {}",
                self.g
            )));
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(Error::param(format!("tau must be >= 0, got {}", self.tau)));
        }
        if let Some(drive) = &self.drive {
            drive.validate()?;
            let expected = drive.effective_coupling();
            let rel = (self.g - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
            if rel > COUPLING_CONSISTENCY_TOLERANCE {
                return Err(Error::param(format!(
                    "g = {} inconsistent with Omega*eta^2*exp(-eta^2/2) = {}",
                    self.g, expected
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_coupling_is_consistent() {
        let drive = LaserDrive {
            omega: 2.0e6,
            eta_ld: 0.05,
            nu: 2.0e8,
        };
        let p = PhysicalParams::from_drive(drive, 1.5e-8);
        assert!(p.validate().is_ok());
        let expected = 2.0e6 * 0.0025 * (-0.00125f64).exp();
        assert!((p.g - expected).abs() < 1e-9);
    }

    #[test]
    fn inconsistent_coupling_is_rejected() {
        let drive = LaserDrive {
            omega: 1.0,
            eta_ld: 0.1,
            nu: 100.0,
        };
        let p = PhysicalParams {
            g: 1.0,
            tau: 0.0,
            drive: Some(drive),
        };
        assert!(matches!(p.validate(), Err(Error::Parameter(_))));
    }

    #[test]
    fn sign_checks() {
        assert!(PhysicalParams::new(0.0, 0.0).validate().is_err());
        assert!(PhysicalParams::new(1.0, -1e-9).validate().is_err());
        let bad = LaserDrive {
            omega: 1.0,
            eta_ld: 1.0,
            nu: 1.0,
        };
        assert!(bad.validate().is_err());
    }
}

//! Two-mode Fock-space containers.
//!
//! A [`TwoModeState`] is a dense `(cutoff_a + 1) × (cutoff_b + 1)` grid of
//! complex amplitudes over `|n_a, n_b⟩`. A [`VibronicState`] attaches one such
//! grid to each internal level `|−⟩` and `|+⟩`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalization tolerance for states flagged as physical.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Inclusive maximum occupation of each vibrational mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cutoffs {
    pub a: usize,
    pub b: usize,
}

impl Cutoffs {
    pub fn new(a: usize, b: usize) -> Self {
        Self { a, b }
    }

    /// Same cutoff on both modes.
    pub fn square(n: usize) -> Self {
        Self { a: n, b: n }
    }

    /// Number of `|n_a, n_b⟩` basis states.
    pub fn dim(&self) -> usize {
        (self.a + 1) * (self.b + 1)
    }

    pub fn contains(&self, n_a: usize, n_b: usize) -> bool {
        n_a <= self.a && n_b <= self.b
    }

    #[inline]
    pub fn index(&self, n_a: usize, n_b: usize) -> usize {
        n_a * (self.b + 1) + n_b
    }

    #[inline]
    pub fn occupations(&self, index: usize) -> (usize, usize) {
        (index / (self.b + 1), index % (self.b + 1))
    }

    fn check(&self, n_a: usize, n_b: usize) -> Result<()> {
        if self.contains(n_a, n_b) {
            Ok(())
        } else {
            Err(Error::Bounds {
                n_a,
                n_b,
                cutoff_a: self.a,
                cutoff_b: self.b,
            })
        }
    }
}

/// Pure state of the two vibrational modes on a truncated Fock grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    cutoffs: Cutoffs,
    amplitudes: Vec<Complex64>,
}

impl TwoModeState {
    pub fn zeros(cutoffs: Cutoffs) -> Self {
        Self {
            cutoffs,
            amplitudes: vec![Complex64::new(0.0, 0.0); cutoffs.dim()],
        }
    }

    /// Basis state `|n_a, n_b⟩`.
    pub fn fock(n_a: usize, n_b: usize, cutoffs: Cutoffs) -> Result<Self> {
        cutoffs.check(n_a, n_b)?;
        let mut state = Self::zeros(cutoffs);
        state.amplitudes[cutoffs.index(n_a, n_b)] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Wraps a row-major amplitude grid (`n_a` major, `n_b` minor).
    pub fn from_amplitudes(cutoffs: Cutoffs, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != cutoffs.dim() {
            return Err(Error::param(format!(
                "expected {} amplitudes for cutoffs ({}, {}), got {}",
                cutoffs.dim(),
                cutoffs.a,
                cutoffs.b,
                amplitudes.len()
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::param("amplitudes must be finite"));
        }
        Ok(Self {
            cutoffs,
            amplitudes,
        })
    }

    /// Builds a state from sparse `(n_a, n_b, amplitude)` entries; repeated
    /// entries accumulate.
    pub fn from_entries<I>(cutoffs: Cutoffs, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut state = Self::zeros(cutoffs);
        for (n_a, n_b, amp) in entries {
            cutoffs.check(n_a, n_b)?;
            state.amplitudes[cutoffs.index(n_a, n_b)] += amp;
        }
        Ok(state)
    }

    pub fn cutoffs(&self) -> Cutoffs {
        self.cutoffs
    }

    /// Amplitude at `|n_a, n_b⟩`; zero outside the cutoffs.
    pub fn amplitude(&self, n_a: usize, n_b: usize) -> Complex64 {
        if self.cutoffs.contains(n_a, n_b) {
            self.amplitudes[self.cutoffs.index(n_a, n_b)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Iterates `(n_a, n_b, amplitude)` over the whole grid.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.amplitudes.iter().enumerate().map(move |(i, &z)| {
            let (n_a, n_b) = self.cutoffs.occupations(i);
            (n_a, n_b, z)
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &TwoModeState) -> Result<Complex64> {
        if self.cutoffs != other.cutoffs {
            return Err(Error::Shape {
                left: (self.cutoffs.a, self.cutoffs.b),
                right: (other.cutoffs.a, other.cutoffs.b),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// Population on the outermost row and column of the grid.
    pub fn boundary_population(&self) -> f64 {
        self.iter()
            .filter(|&(n_a, n_b, _)| n_a == self.cutoffs.a || n_b == self.cutoffs.b)
            .map(|(_, _, z)| z.norm_sqr())
            .sum()
    }

    /// Largest componentwise modulus difference.
    pub fn max_abs_diff(&self, other: &TwoModeState) -> Result<f64> {
        if self.cutoffs != other.cutoffs {
            return Err(Error::Shape {
                left: (self.cutoffs.a, self.cutoffs.b),
                right: (other.cutoffs.a, other.cutoffs.b),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// Copies the state onto another grid. Fails if any amplitude above
    /// `1e-12` in modulus would be dropped.
    pub fn resized(&self, cutoffs: Cutoffs) -> Result<Self> {
        let mut out = Self::zeros(cutoffs);
        for (n_a, n_b, z) in self.iter() {
            if cutoffs.contains(n_a, n_b) {
                out.amplitudes[cutoffs.index(n_a, n_b)] = z;
            } else if z.norm() > NORM_TOLERANCE {
                return Err(Error::Bounds {
                    n_a,
                    n_b,
                    cutoff_a: cutoffs.a,
                    cutoff_b: cutoffs.b,
                });
            }
        }
        Ok(out)
    }
}

/// Basis state `|n_a, n_b⟩` on the given grid.
pub fn make_fock_pair(n_a: usize, n_b: usize, cutoffs: Cutoffs) -> Result<TwoModeState> {
    TwoModeState::fock(n_a, n_b, cutoffs)
}

/// `⟨s1|s2⟩`.
pub fn inner_product(s1: &TwoModeState, s2: &TwoModeState) -> Result<Complex64> {
    s1.inner(s2)
}

/// Internal level of the ion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Minus,
    Plus,
}

/// `|φ₋⟩|−⟩ + |φ₊⟩|+⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct VibronicState {
    minus: TwoModeState,
    plus: TwoModeState,
}

impl VibronicState {
    pub fn new(minus: TwoModeState, plus: TwoModeState) -> Result<Self> {
        if minus.cutoffs != plus.cutoffs {
            return Err(Error::Shape {
                left: (minus.cutoffs.a, minus.cutoffs.b),
                right: (plus.cutoffs.a, plus.cutoffs.b),
            });
        }
        Ok(Self { minus, plus })
    }

    /// Vibrational state attached to the ground level `|−⟩`.
    pub fn with_ground(minus: TwoModeState) -> Self {
        let plus = TwoModeState::zeros(minus.cutoffs);
        Self { minus, plus }
    }

    pub fn minus(&self) -> &TwoModeState {
        &self.minus
    }

    pub fn plus(&self) -> &TwoModeState {
        &self.plus
    }

    pub fn component(&self, level: Level) -> &TwoModeState {
        match level {
            Level::Minus => &self.minus,
            Level::Plus => &self.plus,
        }
    }

    pub fn into_components(self) -> (TwoModeState, TwoModeState) {
        (self.minus, self.plus)
    }

    pub fn cutoffs(&self) -> Cutoffs {
        self.minus.cutoffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.minus.norm_sqr() + self.plus.norm_sqr()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE
    }

    /// Probability of finding the ion in `|−⟩`.
    pub fn ground_population(&self) -> f64 {
        self.minus.norm_sqr()
    }

    /// Reduced density matrix of the internal two-level system in the
    /// `(|−⟩, |+⟩)` basis, traced over both vibrational modes.
    pub fn internal_density_matrix(&self) -> [[Complex64; 2]; 2] {
        let pm = self
            .plus
            .inner(&self.minus)
            .expect("components share cutoffs");
        [
            [Complex64::new(self.minus.norm_sqr(), 0.0), pm],
            [pm.conj(), Complex64::new(self.plus.norm_sqr(), 0.0)],
        ]
    }

    /// Von Neumann entropy (natural log) of the internal reduced state. For a
    /// pure global state this equals the entropy of the vibrational reduced
    /// state.
    pub fn entanglement_entropy(&self) -> f64 {
        let rho = self.internal_density_matrix();
        let trace = rho[0][0].re + rho[1][1].re;
        let gap = ((rho[0][0].re - rho[1][1].re).powi(2) + 4.0 * rho[0][1].norm_sqr()).sqrt();
        let eigs = [0.5 * (trace + gap), 0.5 * (trace - gap)];
        eigs.iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum()
    }

    pub fn max_abs_diff(&self, other: &VibronicState) -> Result<f64> {
        Ok(self
            .minus
            .max_abs_diff(&other.minus)?
            .max(self.plus.max_abs_diff(&other.plus)?))
    }
}

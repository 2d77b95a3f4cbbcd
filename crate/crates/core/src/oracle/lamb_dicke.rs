//! Time-dependent interaction Hamiltonian before the rotating-wave step.
//!
//! Two π-out-of-phase beams along the rotated axes `Â = (â+b̂)/√2` and
//! `B̂ = (b̂−â)/√2` give, in the interaction picture and at the resonance
//! `δ = 2ν`,
//!
//! ```text
//! H(t) = Ω e^{−η²/2} Σ_{j,k} (−iη)^{j+k}/(j! k!) [Â†ᵏ Âʲ − B̂†ᵏ B̂ʲ] e^{iνt(k−j−2)} σ̂₋ + h.c.
//! ```
//!
//! truncated at `j + k ≤ order`. The only non-rotating term up to third order
//! is `(j, k) = (0, 2)`, which reproduces the effective model with
//! `g = Ω η² e^{−η²/2}` (up to the overall sign of the coupling).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{Cutoffs, TwoModeState, VibronicState};
use crate::params::{LaserDrive, PhysicalParams};

/// Steps per period of the fastest retained harmonic.
pub const STEPS_PER_FASTEST_PERIOD: f64 = 20.0;

/// Maximum norm drift accepted from the integrator.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;

/// Population allowed on the outermost Fock row/column after a run.
pub const BOUNDARY_POPULATION_LIMIT: f64 = 1e-8;

/// Default expansion order: resonant `η²` terms plus the leading rotating
/// corrections.
pub const DEFAULT_EXPANSION_ORDER: usize = 3;

type Dense = Vec<Complex64>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn matmul(a: &Dense, b: &Dense, n: usize) -> Dense {
    let mut out = vec![zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn adjoint(a: &Dense, n: usize) -> Dense {
    let mut out = vec![zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j].conj();
        }
    }
    out
}

fn identity(n: usize) -> Dense {
    let mut out = vec![zero(); n * n];
    for i in 0..n {
        out[i * n + i] = Complex64::new(1.0, 0.0);
    }
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// Lowering operators of both modes on the truncated grid.
fn mode_lowering(cut: Cutoffs) -> (Dense, Dense) {
    let n = cut.dim();
    let mut a = vec![zero(); n * n];
    let mut b = vec![zero(); n * n];
    for n_a in 0..=cut.a {
        for n_b in 0..=cut.b {
            let col = cut.index(n_a, n_b);
            if n_a > 0 {
                a[cut.index(n_a - 1, n_b) * n + col] = Complex64::new((n_a as f64).sqrt(), 0.0);
            }
            if n_b > 0 {
                b[cut.index(n_a, n_b - 1) * n + col] = Complex64::new((n_b as f64).sqrt(), 0.0);
            }
        }
    }
    (a, b)
}

/// Sparse triplets `(row, col, value)` of the vibrational operator multiplying
/// one harmonic `e^{iνmt}`.
#[derive(Debug, Clone)]
struct Harmonic {
    m: i32,
    entries: Vec<(usize, usize, Complex64)>,
}

/// Truncated Lamb-Dicke expansion of the two-beam interaction Hamiltonian.
#[derive(Debug, Clone)]
pub struct LambDickeHamiltonian {
    drive: LaserDrive,
    order: usize,
    cutoffs: Cutoffs,
    harmonics: Vec<Harmonic>,
}

impl LambDickeHamiltonian {
    pub fn new(drive: LaserDrive, order: usize, cutoffs: Cutoffs) -> Result<Self> {
        drive.validate()?;
        if order < 2 {
            return Err(Error::param(format!(
                "expansion order {order} cannot represent the two-phonon process (need >= 2)"
            )));
        }
        let n = cutoffs.dim();
        let (a, b) = mode_lowering(cutoffs);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let big_a: Dense = a.iter().zip(&b).map(|(x, y)| (x + y) * s).collect();
        let big_b: Dense = a.iter().zip(&b).map(|(x, y)| (y - x) * s).collect();

        let pows = |op: &Dense| {
            let mut out = vec![identity(n)];
            for p in 1..=order {
                out.push(matmul(&out[p - 1], op, n));
            }
            out
        };
        let a_pow = pows(&big_a);
        let b_pow = pows(&big_b);
        let a_dag_pow: Vec<Dense> = a_pow.iter().map(|m| adjoint(m, n)).collect();
        let b_dag_pow: Vec<Dense> = b_pow.iter().map(|m| adjoint(m, n)).collect();

        let eta = drive.eta_ld;
        let prefactor = drive.omega * (-0.5 * eta * eta).exp();
        let mut grouped: BTreeMap<i32, Dense> = BTreeMap::new();
        for total in 1..=order {
            let scale = Complex64::new(0.0, -eta).powu(total as u32) * prefactor;
            for k in 0..=total {
                let j = total - k;
                let coeff = scale / (factorial(j) * factorial(k));
                let op_a = matmul(&a_dag_pow[k], &a_pow[j], n);
                let op_b = matmul(&b_dag_pow[k], &b_pow[j], n);
                let slot = grouped
                    .entry(k as i32 - j as i32 - 2)
                    .or_insert_with(|| vec![zero(); n * n]);
                for ((acc, x), y) in slot.iter_mut().zip(&op_a).zip(&op_b) {
                    *acc += coeff * (x - y);
                }
            }
        }

        let harmonics = grouped
            .into_iter()
            .map(|(m, dense)| Harmonic {
                m,
                entries: dense
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| z.norm() > 1e-300)
                    .map(|(idx, &z)| (idx / n, idx % n, z))
                    .collect(),
            })
            .collect();

        Ok(Self {
            drive,
            order,
            cutoffs,
            harmonics,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cutoffs(&self) -> Cutoffs {
        self.cutoffs
    }

    /// Largest `|k − j − 2|` among retained terms.
    pub fn max_harmonic(&self) -> u32 {
        self.harmonics
            .iter()
            .map(|h| h.m.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Largest step resolving the fastest retained oscillation with
    /// [`STEPS_PER_FASTEST_PERIOD`] points.
    pub fn max_step(&self) -> f64 {
        let m = self.max_harmonic().max(1) as f64;
        2.0 * PI / (STEPS_PER_FASTEST_PERIOD * self.drive.nu * m)
    }

    /// Vibrational operator `V(t)` multiplying `σ̂₋`, dense row-major.
    fn coupling_dense(&self, t: f64, resonant_only: bool) -> Dense {
        let n = self.cutoffs.dim();
        let mut v = vec![zero(); n * n];
        for h in &self.harmonics {
            if resonant_only && h.m != 0 {
                continue;
            }
            let phase = Complex64::from_polar(1.0, self.drive.nu * h.m as f64 * t);
            for &(r, c, z) in &h.entries {
                v[r * n + c] += z * phase;
            }
        }
        v
    }

    fn assemble(&self, v: &Dense) -> Dense {
        // σ̂₋ = 2|−⟩⟨+|, basis ordered (|−⟩ block, |+⟩ block)
        let d = self.cutoffs.dim();
        let n = 2 * d;
        let mut h = vec![zero(); n * n];
        for r in 0..d {
            for c in 0..d {
                let z = 2.0 * v[r * d + c];
                h[r * n + d + c] = z;
                h[(d + c) * n + r] = z.conj();
            }
        }
        h
    }

    /// Full vibronic Hamiltonian at time `t`, dense row-major.
    pub fn to_dense(&self, t: f64) -> Vec<Complex64> {
        self.assemble(&self.coupling_dense(t, false))
    }

    /// Time-independent part, i.e. what survives the rotating-wave step.
    pub fn resonant_dense(&self) -> Vec<Complex64> {
        self.assemble(&self.coupling_dense(0.0, true))
    }

    /// `dψ/dt = −i H(t) ψ` written into `out`.
    fn derivative(&self, t: f64, psi: &[Complex64], out: &mut [Complex64]) {
        let d = self.cutoffs.dim();
        let (minus, plus) = psi.split_at(d);
        out.iter_mut().for_each(|z| *z = zero());
        let (out_minus, out_plus) = out.split_at_mut(d);
        for h in &self.harmonics {
            let phase = Complex64::from_polar(1.0, self.drive.nu * h.m as f64 * t);
            for &(r, c, z) in &h.entries {
                let w = z * phase;
                out_minus[r] += w * plus[c];
                out_plus[c] += w.conj() * minus[r];
            }
        }
        // −i · 2
        let factor = Complex64::new(0.0, -2.0);
        out.iter_mut().for_each(|z| *z *= factor);
    }

    /// Fixed-step classical Runge-Kutta from 0 to `t` with steps `<= dt`.
    pub fn propagate(&self, initial: &VibronicState, t: f64, dt: f64) -> Result<VibronicState> {
        self.propagate_from(initial, 0.0, t, dt)
    }

    /// States at each of the increasing `times`, starting from `initial` at 0.
    pub fn trajectory(
        &self,
        initial: &VibronicState,
        times: &[f64],
        dt: f64,
    ) -> Result<Vec<VibronicState>> {
        let mut out = Vec::with_capacity(times.len());
        let mut state = initial.clone();
        let mut t_prev = 0.0;
        for &t in times {
            state = self.propagate_from(&state, t_prev, t, dt)?;
            t_prev = t;
            out.push(state.clone());
        }
        Ok(out)
    }

    /// Integrates from `t_start` to `t_end`; the Hamiltonian is explicitly
    /// time dependent, so the absolute start time matters.
    pub fn propagate_from(
        &self,
        initial: &VibronicState,
        t_start: f64,
        t_end: f64,
        dt: f64,
    ) -> Result<VibronicState> {
        if initial.cutoffs() != self.cutoffs {
            let c = initial.cutoffs();
            return Err(Error::Shape {
                left: (c.a, c.b),
                right: (self.cutoffs.a, self.cutoffs.b),
            });
        }
        if !(t_start >= 0.0 && t_end >= t_start && t_end.is_finite()) {
            return Err(Error::param(format!(
                "need 0 <= t_start <= t_end, got [{t_start}, {t_end}]"
            )));
        }
        let limit = self.max_step();
        if !(dt > 0.0) || dt > limit {
            return Err(Error::Stability(format!(
                "step {dt:e} outside (0, {limit:e}] for nu = {} and harmonic {}",
                self.drive.nu,
                self.max_harmonic()
            )));
        }

        let d = self.cutoffs.dim();
        let mut psi: Vec<Complex64> = initial
            .minus()
            .amplitudes()
            .iter()
            .chain(initial.plus().amplitudes())
            .copied()
            .collect();
        let norm0: f64 = psi.iter().map(|z| z.norm_sqr()).sum();

        let span = t_end - t_start;
        let steps = ((span / dt).ceil() as usize).max(1);
        let h = span / steps as f64;
        let len = psi.len();
        let mut k1 = vec![zero(); len];
        let mut k2 = vec![zero(); len];
        let mut k3 = vec![zero(); len];
        let mut k4 = vec![zero(); len];
        let mut tmp = vec![zero(); len];
        for step in 0..steps {
            let t0 = t_start + step as f64 * h;
            self.derivative(t0, &psi, &mut k1);
            for i in 0..len {
                tmp[i] = psi[i] + k1[i] * (0.5 * h);
            }
            self.derivative(t0 + 0.5 * h, &tmp, &mut k2);
            for i in 0..len {
                tmp[i] = psi[i] + k2[i] * (0.5 * h);
            }
            self.derivative(t0 + 0.5 * h, &tmp, &mut k3);
            for i in 0..len {
                tmp[i] = psi[i] + k3[i] * h;
            }
            self.derivative(t0 + h, &tmp, &mut k4);
            for i in 0..len {
                psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
            }
        }

        let norm1: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm1 - norm0).abs() > NORM_DRIFT_LIMIT {
            return Err(Error::Stability(format!(
                "norm drifted by {:e} over {steps} steps",
                norm1 - norm0
            )));
        }
        let plus = psi.split_off(d);
        let out = VibronicState::new(
            TwoModeState::from_amplitudes(self.cutoffs, psi)?,
            TwoModeState::from_amplitudes(self.cutoffs, plus)?,
        )?;
        let edge = out.minus().boundary_population() + out.plus().boundary_population();
        if edge > BOUNDARY_POPULATION_LIMIT {
            return Err(Error::Truncation { population: edge });
        }
        Ok(out)
    }
}

/// Integrates the truncated time-dependent Hamiltonian built from
/// `params.drive`.
pub fn propagate_lamb_dicke(
    initial: &VibronicState,
    params: &PhysicalParams,
    expansion_order: usize,
    t: f64,
    dt: f64,
) -> Result<VibronicState> {
    let drive = params
        .drive
        .ok_or_else(|| Error::param("Lamb-Dicke propagation needs omega, eta_ld and nu"))?;
    LambDickeHamiltonian::new(drive, expansion_order, initial.cutoffs())?.propagate(initial, t, dt)
}

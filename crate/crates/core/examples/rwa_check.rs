//! Compares the truncated Lamb-Dicke propagator against the effective model
//! for increasing trap frequency.
//!
//! cargo run --release --example rwa_check -- [substeps]

use std::f64::consts::PI;
use std::time::Instant;

use vibronic::analytic::{ground_probability, initial_vibrational_state};
use vibronic::oracle::LambDickeHamiltonian;
use vibronic::{Cutoffs, LaserDrive, VibronicState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let substeps: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(2.0);
    let (omega, eta_ld, n) = (1.0, 0.05, 2u32);
    let cut = Cutoffs::square(n as usize + 3);
    let init = VibronicState::with_ground(initial_vibrational_state(n).resized(cut)?);

    for ratio in [50.0, 100.0, 200.0] {
        let drive = LaserDrive {
            omega,
            eta_ld,
            nu: ratio * omega,
        };
        let g = drive.effective_coupling();
        let h = LambDickeHamiltonian::new(drive, 3, cut)?;
        let dt = h.max_step() / substeps;
        let start = Instant::now();
        let mut state = init.clone();
        let mut t_prev = 0.0;
        let mut worst = 0.0f64;
        for i in 1..=8 {
            let t = i as f64 * PI / (32.0 * g);
            state = h.propagate_from(&state, t_prev, t, dt)?;
            t_prev = t;
            let dev = (state.ground_population() - ground_probability(n, g, t)).abs();
            worst = worst.max(dev);
        }
        println!(
            "nu/Omega = {ratio:>5}: max |dP| = {worst:.3e}, norm drift = {:.1e}, {:.1?}",
            state.norm_sqr() - 1.0,
            start.elapsed()
        );
    }
    Ok(())
}

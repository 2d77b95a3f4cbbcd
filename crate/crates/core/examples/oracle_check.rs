//! Closed-form evolution against the block-exact effective propagator.

use vibronic::analytic::{evolve_closed_form, initial_vibrational_state};
use vibronic::oracle::propagate_effective;
use vibronic::VibronicState;

fn main() -> vibronic::Result<()> {
    let g = 1.0;
    for n in 1..=8 {
        let init = VibronicState::with_ground(initial_vibrational_state(n));
        let mut worst = 0.0f64;
        for i in 1..=40 {
            let t = 0.25 * i as f64;
            let numeric = propagate_effective(&init, g, t, 0.05)?;
            worst = worst.max(numeric.max_abs_diff(&evolve_closed_form(n, g, t)?)?);
        }
        println!("N = {n}: max amplitude error {worst:.2e}");
    }
    Ok(())
}

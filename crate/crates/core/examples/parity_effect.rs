//! Characteristic instants and the ideal parity contrast.
//!
//! cargo run --release --example parity_effect -- [N]

use std::f64::consts::{LN_2, PI};

use vibronic::analytic::{ground_probability, parity_times, vibrational_entropy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(9);
    let g = 1e5;
    let times = parity_times(n, g)?;
    let show = |label: &str, t: f64| {
        println!(
            "{label:<14} gt = {:.4} pi   P-(N) = {:.4}  S(N)/ln2 = {:.4}   P-(N+1) = {:.4}  S(N+1)/ln2 = {:.4}",
            g * t / PI,
            ground_probability(n, g, t),
            vibrational_entropy(n, g, t) / LN_2,
            ground_probability(n + 1, g, t),
            vibrational_entropy(n + 1, g, t) / LN_2,
        )
    };
    if let Some(t) = times.t_odd {
        show("disentangled", t);
    }
    show("entangled", times.t_even);
    show("comparison", times.t_bar);
    if n % 2 == 1 {
        let t = times.t_bar;
        println!(
            "Delta P = {:.4}",
            ground_probability(n, g, t) - ground_probability(n + 1, g, t)
        );
    }
    Ok(())
}

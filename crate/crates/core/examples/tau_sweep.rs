//! Parity contrast versus fluctuation strength at the experimental coupling.
//!
//! cargo run --release --example tau_sweep

use vibronic::analytic::parity_times;
use vibronic::decoherence::{parity_delta, FluctuationModel};

fn main() -> vibronic::Result<()> {
    let (g, n) = (1e5, 9);
    let t_bar = parity_times(n, g)?.t_bar;
    let ideal = parity_delta(n, &FluctuationModel::gaussian(g, 0.0), t_bar)?.value;
    println!("ideal Delta P = {ideal:.4}");
    let mut crossing = None;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=20 {
        let tau = 1e-9 * 10f64.powf(i as f64 / 10.0);
        let d = parity_delta(n, &FluctuationModel::gaussian(g, tau), t_bar)?.value;
        println!(
            "tau = {tau:.3e} s   Delta P = {d:.4}   ({:5.1}% of ideal)",
            100.0 * d / ideal
        );
        if let Some((tp, dp)) = prev {
            if crossing.is_none() && dp >= ideal / 2.0 && d < ideal / 2.0 {
                // log-linear interpolation
                let f = (dp - ideal / 2.0) / (dp - d);
                crossing = Some((tp.ln() + f * (tau.ln() - tp.ln())).exp());
            }
        }
        prev = Some((tau, d));
    }
    if let Some(tc) = crossing {
        println!("half-contrast crossing at tau = {tc:.2e} s");
    }
    Ok(())
}

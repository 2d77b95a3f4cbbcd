//! Seeded Gamma draws of the pulse area and their first two moments.

use vibronic::oracle::sample_pulse_area;

fn main() -> vibronic::Result<()> {
    let (g, tau) = (1.0, 0.01);
    for t in [0.1, 1.0, 10.0] {
        let s = sample_pulse_area(g, tau, t, 42, 1_000_000)?;
        println!(
            "t = {t:>5}: mean {:.5} (g t = {:.5}), variance {:.6} (g^2 t tau = {:.6})",
            s.mean,
            g * t,
            s.variance,
            g * g * t * tau
        );
    }
    Ok(())
}

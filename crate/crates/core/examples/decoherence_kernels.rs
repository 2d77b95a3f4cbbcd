//! The three averaging kernels side by side for E[cos(omega A)] and for the
//! averaged ground probability.

use vibronic::decoherence::{averaged_cosine, averaged_ground_probability, FluctuationModel};

fn main() -> vibronic::Result<()> {
    let (g, tau) = (1.0, 0.02);
    println!("E[cos(omega A)], g = {g}, tau = {tau}");
    println!(
        "{:>6} {:>6} {:>12} {:>12} {:>20}",
        "omega", "t", "gamma", "gaussian", "monte carlo"
    );
    for omega in [1.0, 4.0, 12.0] {
        for t in [0.5, 2.0, 8.0] {
            let gamma = averaged_cosine(omega, t, &FluctuationModel::gamma(g, tau))?.value;
            let gauss = averaged_cosine(omega, t, &FluctuationModel::gaussian(g, tau))?.value;
            let mc = averaged_cosine(omega, t, &FluctuationModel::monte_carlo(g, tau, 7, 100_000))?;
            println!(
                "{omega:>6} {t:>6} {gamma:>12.6} {gauss:>12.6} {:>10.6} +- {:.1e}",
                mc.value, mc.std_error
            );
        }
    }

    let (g, tau) = (1e5, 1.5e-8);
    println!("\naveraged P-, N = 9, g = {g:e}, tau = {tau:e}");
    for gt in [1.0, 2.0, 5.0, 10.0] {
        let t = gt / g;
        let a = averaged_ground_probability(9, &FluctuationModel::gamma(g, tau), t)?.value;
        let b = averaged_ground_probability(9, &FluctuationModel::gaussian(g, tau), t)?.value;
        println!("gt = {gt:>4}: gamma {a:.6}  gaussian {b:.6}");
    }
    Ok(())
}

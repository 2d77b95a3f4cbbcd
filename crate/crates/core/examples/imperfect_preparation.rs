//! Parity contrast versus preparation efficiency for three fluctuation
//! strengths.

use vibronic::analytic::parity_times;
use vibronic::decoherence::FluctuationModel;
use vibronic::preparation::{delta_from_efficiency, parity_delta_mixed, PreparationWidth};

fn main() -> vibronic::Result<()> {
    let (g, n) = (1e5, 9);
    let t_bar = parity_times(n, g)?.t_bar;
    let ideal = parity_delta_mixed(
        n,
        PreparationWidth::Exact,
        &FluctuationModel::gaussian(g, 0.0),
        t_bar,
    )?
    .value;
    println!(
        "{:>6} {:>10} {:>10} {:>10}",
        "eta", "1e-9 s", "1e-8 s", "1e-7 s"
    );
    for i in 1..=10 {
        let eta = i as f64 / 10.0;
        let width = if eta == 1.0 {
            PreparationWidth::Exact
        } else {
            PreparationWidth::Gaussian(delta_from_efficiency(eta)?)
        };
        let mut row = format!("{eta:>6.2}");
        for tau in [1e-9, 1e-8, 1e-7] {
            let d = parity_delta_mixed(n, width, &FluctuationModel::gaussian(g, tau), t_bar)?.value;
            row.push_str(&format!(" {d:>10.4}"));
        }
        println!("{row}");
    }
    let d = parity_delta_mixed(
        n,
        PreparationWidth::Gaussian(delta_from_efficiency(0.9)?),
        &FluctuationModel::gaussian(g, 1e-8),
        t_bar,
    )?
    .value;
    println!(
        "eta = 0.9, tau = 1e-8: attenuation {:.1}% relative to the ideal {ideal:.4}",
        100.0 * (1.0 - d / ideal)
    );
    Ok(())
}

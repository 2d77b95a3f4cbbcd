//! Two-mode Fock states, inner products, and the initial state with all
//! quanta along the rotated axis.

use vibronic::analytic::initial_vibrational_state;
use vibronic::{inner_product, make_fock_pair, Cutoffs};

fn main() -> vibronic::Result<()> {
    let cut = Cutoffs::square(3);
    let a = make_fock_pair(1, 2, cut)?;
    let b = make_fock_pair(2, 1, cut)?;
    println!("<1,2|1,2> = {}", inner_product(&a, &a)?);
    println!("<1,2|2,1> = {}", inner_product(&a, &b)?);

    let psi = initial_vibrational_state(4);
    println!("initial state, N = 4 (norm^2 = {:.15}):", psi.norm_sqr());
    for (n_a, n_b, z) in psi.iter().filter(|(_, _, z)| z.norm() > 0.0) {
        println!("  |{n_a},{n_b}>  {:+.6}", z.re);
    }
    Ok(())
}

//! Ground-state probability and vibrational entropy for N = 9 and N = 10.
//!
//! cargo run --release --example dynamics

use std::f64::consts::{LN_2, PI};

use vibronic::analytic::{ground_probability, vibrational_entropy};

fn main() {
    let g = 1e5;
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "gt/pi", "P-(9)", "S(9)/ln2", "P-(10)", "S(10)/ln2"
    );
    for i in 0..=24 {
        let gt = i as f64 * PI / 8.0;
        let t = gt / g;
        println!(
            "{:>8.3} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            gt / PI,
            ground_probability(9, g, t),
            vibrational_entropy(9, g, t) / LN_2,
            ground_probability(10, g, t),
            vibrational_entropy(10, g, t) / LN_2,
        );
    }
}

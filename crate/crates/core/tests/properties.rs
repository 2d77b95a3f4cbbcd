use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use vibronic::analytic::{
    evolve_closed_form, ground_probability, initial_vibrational_state, parity_times,
};
use vibronic::decoherence::{averaged_ground_probability, parity_delta, FluctuationModel};
use vibronic::oracle::propagate_effective;
use vibronic::preparation::{
    averaged_ground_probability_mixed, parity_delta_mixed, PreparationModel, PreparationWidth,
};
use vibronic::{inner_product, Cutoffs, TwoModeState, VibronicState};

fn state(cut: Cutoffs) -> impl Strategy<Value = TwoModeState> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), cut.dim()).prop_map(move |v| {
        let amps = v
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        TwoModeState::from_amplitudes(cut, amps).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_conjugate_symmetric(a in state(Cutoffs::new(3, 2)), b in state(Cutoffs::new(3, 2))) {
        let ab = inner_product(&a, &b).unwrap();
        let ba = inner_product(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
        prop_assert!(inner_product(&a, &a).unwrap().im.abs() < 1e-15);
    }

    #[test]
    fn closed_form_conserves_norm(n in 1u32..=20, gt in 0.0f64..50.0) {
        let s = evolve_closed_form(n, 1.0, gt).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn propagator_matches_closed_form(n in 1u32..=6, gt in 0.0f64..10.0, g in 0.1f64..1e5) {
        let t = gt / g;
        let init = VibronicState::with_ground(initial_vibrational_state(n));
        let numeric = propagate_effective(&init, g, t, 0.1 / g).unwrap();
        prop_assert!(numeric.max_abs_diff(&evolve_closed_form(n, g, t).unwrap()).unwrap() <= 1e-8);
        prop_assert!((numeric.ground_population() - ground_probability(n, g, t)).abs() <= 1e-8);
    }

    #[test]
    fn two_quanta_are_periodic(gt in 0.0f64..20.0) {
        let a = ground_probability(2, 1.0, gt);
        let b = ground_probability(2, 1.0, gt + PI / 2.0);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn contrast_falls_with_fluctuation_strength(lo in -9.0f64..-7.0, step in 0.01f64..1.0) {
        let g = 1e5;
        let t = parity_times(9, g).unwrap().t_bar;
        let (t1, t2) = (10f64.powf(lo), 10f64.powf(lo + step));
        let d1 = parity_delta(9, &FluctuationModel::gaussian(g, t1), t).unwrap().value;
        let d2 = parity_delta(9, &FluctuationModel::gaussian(g, t2), t).unwrap().value;
        prop_assert!(d2 <= d1);
    }

    #[test]
    fn averaged_probability_is_a_probability(n in 0u32..=20, gt in 0.01f64..30.0, tau in 0.0f64..1.0) {
        for model in [FluctuationModel::gaussian(1.0, tau), FluctuationModel::gamma(1.0, tau)] {
            let p = averaged_ground_probability(n, &model, gt).unwrap().value;
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn mixture_truncation_is_safe(delta in 0.1f64..5.0, tau in 0.0f64..3e-8) {
        let g = 1e5;
        let t = parity_times(9, g).unwrap().t_bar;
        let model = FluctuationModel::gaussian(g, tau);
        let width = PreparationWidth::Gaussian(delta);
        let base = PreparationModel::new(9, width).unwrap();
        let m_max = base.weights.last().unwrap().0;
        let wider = PreparationModel::with_m_max(9, width, m_max + 20).unwrap();
        let a = averaged_ground_probability_mixed(&base, &model, t).unwrap().value;
        let b = averaged_ground_probability_mixed(&wider, &model, t).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn narrow_mixture_recovers_pure_state(tau in 0.0f64..1e-7, gt in 0.1f64..10.0) {
        let g = 1e5;
        let model = FluctuationModel::gaussian(g, tau);
        let narrow = PreparationModel::new(9, PreparationWidth::Gaussian(1e-3)).unwrap();
        let a = averaged_ground_probability_mixed(&narrow, &model, gt / g).unwrap().value;
        let b = averaged_ground_probability(9, &model, gt / g).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-6);
    }
}

#[test]
fn two_point_mixture_halves_the_contrast() {
    let g = 1e5;
    let t = parity_times(9, g).unwrap().t_bar;
    let model = FluctuationModel::gaussian(g, 0.0);
    let half = PreparationModel {
        n_target: 9,
        width: PreparationWidth::Exact,
        weights: vec![(9, 0.5), (10, 0.5)],
    };
    let mixed = averaged_ground_probability_mixed(&half, &model, t)
        .unwrap()
        .value;
    let p10 = averaged_ground_probability(10, &model, t).unwrap().value;
    let full = parity_delta(9, &model, t).unwrap().value;
    assert!((mixed - p10 - full / 2.0).abs() < 1e-12);
}

#[test]
fn exact_preparation_matches_pure_contrast() {
    let g = 1e5;
    let t = parity_times(9, g).unwrap().t_bar;
    for tau in [0.0, 1e-9, 1e-8, 1e-7] {
        let model = FluctuationModel::gaussian(g, tau);
        let a = parity_delta_mixed(9, PreparationWidth::Exact, &model, t)
            .unwrap()
            .value;
        let b = parity_delta(9, &model, t).unwrap().value;
        assert_eq!(a, b);
    }
}

#[test]
fn sign_flipped_kernel_fails_the_monte_carlo_check() {
    use vibronic::analytic::binomial_weights;
    use vibronic::validation::{analytic_vs_monte_carlo, shipped_ground_probability};

    // exponent with the wrong sign: growth instead of decay
    let mutant = |n: u32, m: &FluctuationModel, t: f64| -> vibronic::Result<f64> {
        let w = binomial_weights(n);
        let g = m.g_mean;
        let s: f64 = (0..=n)
            .map(|k| {
                let nk = ((n - k) * k) as f64;
                w[k as usize]
                    * (8.0 * g * g * m.tau * nk * t).exp()
                    * (4.0 * nk.sqrt() * g * t).cos()
            })
            .sum();
        Ok(0.5 * (1.0 + s))
    };
    let good = analytic_vs_monte_carlo(&shipped_ground_probability, 2003, 100_000).unwrap();
    let bad = analytic_vs_monte_carlo(&mutant, 2003, 100_000).unwrap();
    assert!(good <= 3.0, "{good}");
    assert!(bad > 3.0, "{bad}");
}

#[test]
fn vacuum_and_single_quantum_are_stationary() {
    let cut = Cutoffs::square(2);
    for (a, b) in [(0, 0), (2, 0), (0, 2)] {
        let init = VibronicState::with_ground(TwoModeState::fock(a, b, cut).unwrap());
        let s = propagate_effective(&init, 1.0, 7.3, 0.1).unwrap();
        assert!(s.max_abs_diff(&init).unwrap() < 1e-15);
    }
}

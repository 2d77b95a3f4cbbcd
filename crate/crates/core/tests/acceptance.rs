//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::Command;
use std::time::Instant;

use vibronic::analytic::parity_times;
use vibronic::decoherence::{parity_delta, FluctuationModel};
use vibronic::sweep::{eta_sweep, tau_sweep, RunConfig};
use vibronic::validation::{
    closed_form_vs_effective, entropy_identity, gamma_vs_gaussian, ideal_parity,
    monte_carlo_vs_gamma, norm_drift, rwa_deviation,
};

const G: f64 = 1e5;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn oracle_equivalence() -> vibronic::Result<Outcome> {
    let worst = closed_form_vs_effective(6, 50, 17)?;
    Ok(outcome(
        worst <= 1e-8,
        format!(
            "N=1..6, 50 random times: max |P- error|, |amplitude error| = {worst:.2e} (bound 1e-8)"
        ),
    ))
}

fn invariants() -> vibronic::Result<Outcome> {
    let norm = norm_drift(20, 200)?;
    let entropy = entropy_identity(20, 200)?;
    Ok(outcome(
        norm <= 1e-12 && entropy <= 1e-10,
        format!("max |norm - 1| = {norm:.2e} (bound 1e-12), max entropy mismatch = {entropy:.2e} (bound 1e-10)"),
    ))
}

fn ideal_parity_bands() -> vibronic::Result<Outcome> {
    // computed from the closed form, which ideal_parity cross-checks against
    // the effective propagator to 1e-8
    let [c9, s9, d10, s10, delta] = ideal_parity(G)?;
    let ok = c9 >= 0.9 && s9 <= 0.2 && d10 <= 0.05 && s10 >= 0.95 && (0.4..=0.5).contains(&delta);
    Ok(outcome(
        ok,
        format!(
            "P-(9) = {c9:.4}, S(9) = {s9:.4} ln2, |P-(10) - 1/2| = {d10:.4}, S(10) = {s10:.4} ln2, Delta P = {delta:.4}"
        ),
    ))
}

fn ideal_delta(n: u32) -> vibronic::Result<f64> {
    let t_bar = parity_times(n, G)?.t_bar;
    Ok(parity_delta(n, &FluctuationModel::gaussian(G, 0.0), t_bar)?.value)
}

fn fig4() -> vibronic::Result<Outcome> {
    let table = tau_sweep(&RunConfig::default())?;
    let taus = table.column("tau_s").unwrap();
    let d = table.column("delta_p").unwrap();
    let ideal = ideal_delta(9)?;
    let monotone = d.windows(2).all(|w| w[1] <= w[0]);
    let first = d[0] / ideal;
    let last = d[d.len() - 1] / ideal;
    let crossing = taus
        .windows(2)
        .zip(d.windows(2))
        .find(|(_, dw)| dw[0] >= ideal / 2.0 && dw[1] < ideal / 2.0)
        .map(|(tw, dw)| {
            let f = (dw[0] - ideal / 2.0) / (dw[0] - dw[1]);
            (tw[0].ln() + f * (tw[1].ln() - tw[0].ln())).exp()
        });
    let crossing_ok = crossing.is_some_and(|c| (1.5e-8..=6e-8).contains(&c));
    Ok(outcome(
        monotone && first >= 0.8 && last <= 0.1 && crossing_ok,
        format!(
            "monotone = {monotone}, Delta P(1e-9) = {:.1}% of ideal (>= 80%), Delta P(1e-7) = {:.1}% (<= 10%), \
             half-contrast crossing at {} (required within [1.5e-8, 6e-8])",
            100.0 * first,
            100.0 * last,
            crossing.map_or("none".to_string(), |c| format!("{c:.2e} s")),
        ),
    ))
}

fn fig5_attenuation() -> vibronic::Result<Outcome> {
    let cfg = RunConfig {
        taus: vec![1e-8],
        eta_min: 0.9,
        eta_max: 1.0,
        eta_points: 2,
        ..Default::default()
    };
    let table = eta_sweep(&cfg)?;
    let d = table.column("delta_p").unwrap();
    let ideal = ideal_delta(9)?;
    let attenuation = 1.0 - d[0] / ideal;
    let vs_same_tau = 1.0 - d[0] / d[1];
    Ok(outcome(
        (0.3..=0.5).contains(&attenuation),
        format!(
            "eta_prep = 0.9, tau = 1e-8: attenuation {:.1}% vs ideal (required 40 +- 10%); \
             {:.1}% relative to eta_prep = 1 at the same tau",
            100.0 * attenuation,
            100.0 * vs_same_tau
        ),
    ))
}

fn fig5_monotone() -> vibronic::Result<Outcome> {
    let table = eta_sweep(&RunConfig::default())?;
    let tau = table.column("tau_s").unwrap();
    let eta = table.column("eta_prep").unwrap();
    let d = table.column("delta_p").unwrap();
    let mut violations = Vec::new();
    for i in 1..d.len() {
        if tau[i] == tau[i - 1] && d[i] < d[i - 1] {
            violations.push((tau[i], eta[i - 1], eta[i], d[i - 1] - d[i]));
        }
    }
    let detail = if violations.is_empty() {
        "Delta P non-decreasing in eta_prep on [0.05, 1] for tau = 1e-9, 1e-8, 1e-7".to_string()
    } else {
        let worst_eta = violations.iter().map(|v| v.2).fold(0.0, f64::max);
        let (t, a, b, drop) = violations[0];
        format!(
            "{} decreasing steps; first at tau = {t:.0e}, eta {a:.2} -> {b:.2} (drop {drop:.2e}); \
             largest eta with a decrease: {worst_eta:.2}",
            violations.len()
        )
    };
    Ok(outcome(violations.is_empty(), detail))
}

fn kernels() -> vibronic::Result<Outcome> {
    let rel = gamma_vs_gaussian()?;
    let z = monte_carlo_vs_gamma(2003, 100_000)?;
    Ok(outcome(
        rel <= 0.01 && z <= 3.0,
        format!("gamma vs gaussian max relative error {rel:.2e} (t/tau >= 1e3), MC vs gamma max {z:.2} sigma on 5x5 grid"),
    ))
}

fn rwa() -> vibronic::Result<Outcome> {
    let devs = [50.0, 100.0, 200.0]
        .iter()
        .map(|&r| rwa_deviation(r, 2, 0.05, 3, 16, 2.0))
        .collect::<vibronic::Result<Vec<_>>>()?;
    let decreasing = devs
        .windows(2)
        .all(|w| w[1].max_deviation < w[0].max_deviation);
    let drift = devs.iter().map(|d| d.norm_drift).fold(0.0, f64::max);
    let list: Vec<String> = devs
        .iter()
        .map(|d| format!("{}: {:.2e}", d.nu_over_omega, d.max_deviation))
        .collect();
    Ok(outcome(
        decreasing && drift <= 1e-8,
        format!(
            "max |dP-| by nu/Omega {{{}}}, norm drift {drift:.1e}",
            list.join(", ")
        ),
    ))
}

fn run_bin(args: &[&str], out: &std::path::Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_vibronic"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    if !status.success() {
        return Err(format!("{args:?} exited with {status}"));
    }
    std::fs::read(out).map_err(|e| e.to_string())
}

fn determinism() -> vibronic::Result<Outcome> {
    let dir = tempfile::tempdir().map_err(|e| vibronic::Error::Parameter(e.to_string()))?;
    let cases: [&[&str]; 6] = [
        &["dynamics", "--n", "10", "--t-steps", "201", "--seconds"],
        &["tau-sweep", "--mode", "mc", "--samples", "20000"],
        &["tau-sweep", "--mode", "gamma", "--format", "json"],
        &["eta-sweep", "--eta-points", "6"],
        &[
            "eta-sweep",
            "--mode",
            "mc",
            "--samples",
            "5000",
            "--eta-points",
            "3",
            "--format",
            "json",
        ],
        &["validate", "--skip-rwa", "--samples", "20000"],
    ];
    let mut bad = Vec::new();
    for (i, args) in cases.iter().enumerate() {
        let a = run_bin(args, &dir.path().join(format!("{i}a")));
        let b = run_bin(args, &dir.path().join(format!("{i}b")));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => bad.push(format!("{} differs", args[0])),
            (Err(e), _) | (_, Err(e)) => bad.push(e),
        }
    }
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} subcommand runs reproduced byte for byte", cases.len())
        } else {
            bad.join("; ")
        },
    ))
}

type Criterion = fn() -> vibronic::Result<Outcome>;

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 norm and entropy invariants", invariants),
        ("3 ideal parity effect", ideal_parity_bands),
        ("4 contrast vs fluctuation strength", fig4),
        ("5 attenuation at eta_prep = 0.9", fig5_attenuation),
        ("5 monotone in eta_prep", fig5_monotone),
        ("6 decoherence kernels", kernels),
        ("7 RWA convergence", rwa),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let (passed, detail) = match check() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "[PRIMARY] criterion {name}: {} ({:.1?}) {detail}",
            if passed { "PASS" } else { "FAIL" },
            start.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} lines passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

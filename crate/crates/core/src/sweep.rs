//! Run configuration, sweep drivers and tabular output for the `vibronic`
//! binary.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::analytic::{ground_probability, parity_times, vibrational_entropy};
use crate::decoherence::{FluctuationModel, KernelMode, DEFAULT_SAMPLES, EXPERIMENTAL_TAU};
use crate::error::{Error, Result};
use crate::params::{LaserDrive, PhysicalParams};
use crate::preparation::{delta_from_efficiency, parity_delta_mixed, PreparationWidth};
use crate::validation::{run_all, Check, ValidationOptions};

pub const DEFAULT_G: f64 = 1.0e5;
pub const DEFAULT_N: u32 = 9;
pub const DEFAULT_SEED: u64 = 2003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Everything needed to reproduce a run. Unset optional fields fall back to
/// the defaults listed on [`RunConfig::default`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Total vibrational quanta (odd for the sweeps).
    pub n: u32,
    /// Mean coupling, rad/s. Derived from the drive when unset and
    /// `omega`, `eta_ld`, `nu` are all given.
    pub g: Option<f64>,
    pub nu: Option<f64>,
    pub omega: Option<f64>,
    pub eta_ld: Option<f64>,
    /// Fluctuation strength, s.
    pub tau: f64,
    pub eta_prep: Option<f64>,
    pub delta: Option<f64>,
    /// End of the time axis in units of `1/g`.
    pub t_max: f64,
    pub t_steps: usize,
    /// Adds a column with the time in seconds.
    pub seconds: bool,
    pub mode: KernelMode,
    pub seed: u64,
    pub samples: usize,
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_points: usize,
    /// Fluctuation strengths for the efficiency sweep.
    pub taus: Vec<f64>,
    pub eta_min: f64,
    pub eta_max: f64,
    pub eta_points: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: DEFAULT_N,
            g: None,
            nu: None,
            omega: None,
            eta_ld: None,
            tau: EXPERIMENTAL_TAU,
            eta_prep: None,
            delta: None,
            t_max: 10.0,
            t_steps: 1001,
            seconds: false,
            mode: KernelMode::GaussianApprox,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            tau_min: 1e-9,
            tau_max: 1e-7,
            tau_points: 41,
            taus: vec![1e-9, 1e-8, 1e-7],
            eta_min: 0.05,
            eta_max: 1.0,
            eta_points: 20,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    /// Parses a config document: JSON when `json`, TOML otherwise. Unknown
    /// keys are rejected.
    pub fn parse(text: &str, json: bool) -> Result<Self> {
        if json {
            serde_json::from_str(text).map_err(|e| Error::param(format!("config: {e}")))
        } else {
            toml::from_str(text).map_err(|e| Error::param(format!("config: {e}")))
        }
    }

    fn drive(&self) -> Result<Option<LaserDrive>> {
        match (self.omega, self.eta_ld, self.nu) {
            (Some(omega), Some(eta_ld), Some(nu)) => {
                let d = LaserDrive { omega, eta_ld, nu };
                d.validate()?;
                Ok(Some(d))
            }
            (None, None, None) => Ok(None),
            _ => Err(Error::param("omega, eta_ld and nu must be given together")),
        }
    }

    /// Fills `g` and checks every parameter the subcommands rely on.
    pub fn resolve(mut self) -> Result<Self> {
        let drive = self.drive()?;
        let g = match (self.g, drive) {
            (Some(g), _) => g,
            (None, Some(d)) => d.effective_coupling(),
            (None, None) => DEFAULT_G,
        };
        PhysicalParams {
            g,
            tau: self.tau,
            drive,
        }
        .validate()?;
        self.g = Some(g);

        if self.eta_prep.is_some() && self.delta.is_some() {
            return Err(Error::param("give either eta_prep or delta, not both"));
        }
        self.width()?;
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(Error::param(format!(
                "t_max must be >= 0, got {}",
                self.t_max
            )));
        }
        if self.t_steps == 0 {
            return Err(Error::param("t_steps must be >= 1"));
        }
        if self.mode == KernelMode::MonteCarlo && self.samples == 0 {
            return Err(Error::param("samples must be >= 1"));
        }
        Ok(self)
    }

    pub fn coupling(&self) -> f64 {
        self.g.unwrap_or(DEFAULT_G)
    }

    /// Preparation width implied by `delta` or `eta_prep` (exact when neither).
    pub fn width(&self) -> Result<PreparationWidth> {
        match (self.delta, self.eta_prep) {
            (Some(d), _) => {
                if !(d > 0.0 && d.is_finite()) {
                    return Err(Error::param(format!("delta must be > 0, got {d}")));
                }
                Ok(PreparationWidth::Gaussian(d))
            }
            (None, Some(1.0)) => Ok(PreparationWidth::Exact),
            (None, Some(e)) => Ok(PreparationWidth::Gaussian(delta_from_efficiency(e)?)),
            (None, None) => Ok(PreparationWidth::Exact),
        }
    }

    fn model(&self, tau: f64, point: usize) -> FluctuationModel {
        FluctuationModel {
            g_mean: self.coupling(),
            tau,
            mode: self.mode,
            // distinct, reproducible stream per grid point
            seed: self.seed.wrapping_add(point as u64),
            samples: self.samples,
        }
    }
}

/// Columns of `f64` with the resolved config attached.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub meta: Value,
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Header row plus one record per line, preceded by a `# config:` line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# config: {}", self.meta).unwrap();
        writeln!(s, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
            writeln!(s, "{}", cells.join(",")).unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, &x) in self.columns.iter().zip(row) {
                    m.insert(c.clone(), json!(x));
                }
                Value::Object(m)
            })
            .collect();
        let doc = json!({
            "config": self.meta,
            "columns": self.columns,
            "records": records,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("finite values");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

fn meta(cfg: &RunConfig, command: &str, extra: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert(
        "run".into(),
        serde_json::to_value(cfg).expect("config serializes"),
    );
    if let Value::Object(extra) = extra {
        m.extend(extra);
    }
    Value::Object(m)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    // endpoints pinned exactly so that e.g. η_prep = 1 stays exact
    (0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => lo + (hi - lo) * i as f64 / (n - 1) as f64,
        })
        .collect()
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = linspace(lo.ln(), hi.ln(), n)
        .into_iter()
        .map(f64::exp)
        .collect();
    v[0] = lo;
    if let Some(last) = v.last_mut() {
        *last = hi;
    }
    v
}

/// `(gt, [t], P₋, S_v)` on a uniform grid `gt ∈ [0, t_max]`.
pub fn dynamics(cfg: &RunConfig) -> Result<Table> {
    let cfg = cfg.clone().resolve()?;
    let g = cfg.coupling();
    let n = cfg.n;
    let mut columns = vec!["gt".to_string()];
    if cfg.seconds {
        columns.push("t_s".into());
    }
    columns.extend(["p_minus".to_string(), "entropy".to_string()]);
    let rows = linspace(0.0, cfg.t_max, cfg.t_steps)
        .into_par_iter()
        .map(|gt| {
            let t = gt / g;
            let mut row = vec![gt];
            if cfg.seconds {
                row.push(t);
            }
            row.push(ground_probability(n, g, t));
            row.push(vibrational_entropy(n, g, t));
            row
        })
        .collect();
    Ok(Table {
        columns,
        rows,
        meta: meta(&cfg, "dynamics", json!({})),
    })
}

fn check_odd(n: u32) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::param(format!(
            "parity sweeps need odd N >= 3, got {n}"
        )));
    }
    Ok(())
}

fn check_tau_grid(lo: f64, hi: f64, points: usize) -> Result<()> {
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || points == 0 {
        return Err(Error::param(format!(
            "tau grid needs 0 < tau_min <= tau_max and points >= 1, got [{lo}, {hi}] x {points}"
        )));
    }
    Ok(())
}

/// `(τ, ΔPᴺ)` at the comparison instant on a log-spaced τ grid.
pub fn tau_sweep(cfg: &RunConfig) -> Result<Table> {
    let cfg = cfg.clone().resolve()?;
    check_odd(cfg.n)?;
    check_tau_grid(cfg.tau_min, cfg.tau_max, cfg.tau_points)?;
    let g = cfg.coupling();
    let times = parity_times(cfg.n, g)?;
    let width = cfg.width()?;
    let taus = logspace(cfg.tau_min, cfg.tau_max, cfg.tau_points);
    let rows = taus
        .par_iter()
        .enumerate()
        .map(|(i, &tau)| {
            let d = parity_delta_mixed(cfg.n, width, &cfg.model(tau, i), times.t_bar)?;
            Ok(vec![tau, d.value, d.std_error])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        columns: vec!["tau_s".into(), "delta_p".into(), "std_error".into()],
        rows,
        meta: meta(
            &cfg,
            "tau-sweep",
            json!({ "t_bar_s": times.t_bar, "g_t_bar": g * times.t_bar }),
        ),
    })
}

/// `(τ, η_prep, ΔPᴺ)`, one curve per τ in `taus`.
pub fn eta_sweep(cfg: &RunConfig) -> Result<Table> {
    let cfg = cfg.clone().resolve()?;
    check_odd(cfg.n)?;
    if cfg.taus.is_empty() || cfg.taus.iter().any(|&t| !(t >= 0.0 && t.is_finite())) {
        return Err(Error::param("taus must be a non-empty list of values >= 0"));
    }
    if !(cfg.eta_min > 0.0 && cfg.eta_max <= 1.0 && cfg.eta_min <= cfg.eta_max)
        || cfg.eta_points == 0
    {
        return Err(Error::param(format!(
            "efficiency grid must lie in (0, 1], got [{}, {}] x {}",
            cfg.eta_min, cfg.eta_max, cfg.eta_points
        )));
    }
    let g = cfg.coupling();
    let times = parity_times(cfg.n, g)?;
    let etas = linspace(cfg.eta_min, cfg.eta_max, cfg.eta_points);
    let grid: Vec<(f64, f64)> = cfg
        .taus
        .iter()
        .flat_map(|&tau| etas.iter().map(move |&e| (tau, e)))
        .collect();
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(tau, eta))| {
            let width = if eta >= 1.0 {
                PreparationWidth::Exact
            } else {
                PreparationWidth::Gaussian(delta_from_efficiency(eta)?)
            };
            let d = parity_delta_mixed(cfg.n, width, &cfg.model(tau, i), times.t_bar)?;
            Ok(vec![tau, eta, d.value, d.std_error])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        columns: vec![
            "tau_s".into(),
            "eta_prep".into(),
            "delta_p".into(),
            "std_error".into(),
        ],
        rows,
        meta: meta(
            &cfg,
            "eta-sweep",
            json!({ "t_bar_s": times.t_bar, "g_t_bar": g * times.t_bar }),
        ),
    })
}

/// Result of `validate`: every check plus the overall verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub meta: Value,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut s = String::new();
                writeln!(s, "# config: {}", self.meta).unwrap();
                writeln!(s, "name,measured,bound,verdict").unwrap();
                for c in &self.checks {
                    let verdict = if c.passed { "pass" } else { "fail" };
                    writeln!(
                        s,
                        "{},{},{},{verdict}",
                        c.name,
                        fmt_f64(c.measured),
                        fmt_f64(c.bound)
                    )
                    .unwrap();
                }
                s
            }
            OutputFormat::Json => {
                let doc = json!({
                    "config": self.meta,
                    "passed": self.passed(),
                    "checks": self.checks,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable report");
                s.push('\n');
                s
            }
        }
    }
}

/// Runs the validation suite with the config's seed and sample count.
pub fn validate(cfg: &RunConfig, include_rwa: bool) -> Result<Report> {
    if cfg.samples < 2 {
        return Err(Error::param("validation needs samples >= 2"));
    }
    let opts = ValidationOptions {
        seed: cfg.seed,
        samples: cfg.samples,
        include_rwa,
    };
    Ok(Report {
        checks: run_all(&opts),
        meta: meta(cfg, "validate", json!({ "include_rwa": include_rwa })),
    })
}

//! `vibronic`: dynamics runs, parity sweeps and self-checks.
//!
//! Exit status: 0 success, 1 parameter error, 2 validation failure,
//! 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vibronic::decoherence::KernelMode;
use vibronic::sweep::{self, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "vibronic",
    version,
    about = "Parity-dependent vibronic entanglement of a trapped ion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// P₋ and vibrational entropy over a gt grid.
    Dynamics {
        #[command(flatten)]
        common: Common,
        /// Also emit the time in seconds.
        #[arg(long)]
        seconds: bool,
    },
    /// Parity contrast versus fluctuation strength.
    TauSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        tau_min: Option<f64>,
        #[arg(long)]
        tau_max: Option<f64>,
        #[arg(long)]
        tau_points: Option<usize>,
    },
    /// Parity contrast versus preparation efficiency, one curve per τ.
    EtaSweep {
        #[command(flatten)]
        common: Common,
        /// Comma-separated fluctuation strengths, s.
        #[arg(long, value_delimiter = ',')]
        taus: Option<Vec<f64>>,
        #[arg(long)]
        eta_min: Option<f64>,
        #[arg(long)]
        eta_max: Option<f64>,
        #[arg(long)]
        eta_points: Option<usize>,
    },
    /// Runs every oracle and invariant check; exit 2 if any fails.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Skips the Lamb-Dicke propagation check.
        #[arg(long)]
        skip_rwa: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Gamma,
    Gaussian,
    Mc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Total vibrational quanta N.
    #[arg(long)]
    n: Option<u32>,
    /// Mean coupling g, rad/s.
    #[arg(long)]
    g: Option<f64>,
    /// Trap frequency ν, rad/s.
    #[arg(long)]
    nu: Option<f64>,
    /// Rabi frequency Ω, rad/s.
    #[arg(long)]
    omega: Option<f64>,
    /// Lamb-Dicke parameter.
    #[arg(long)]
    eta_ld: Option<f64>,
    /// Fluctuation strength τ, s.
    #[arg(long)]
    tau: Option<f64>,
    /// Preparation efficiency in (0, 1].
    #[arg(long)]
    eta_prep: Option<f64>,
    /// Width of the Fock-state mixture.
    #[arg(long)]
    delta: Option<f64>,
    /// End of the time axis, units of 1/g.
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_steps: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte-Carlo draws per point.
    #[arg(long)]
    samples: Option<usize>,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// TOML (or .json) file with defaults; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

enum Failure {
    Param(String),
    Validation,
    Io(String),
}

impl From<vibronic::Error> for Failure {
    fn from(e: vibronic::Error) -> Self {
        Failure::Param(e.to_string())
    }
}

impl Common {
    fn load(&self) -> Result<RunConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                RunConfig::parse(&text, path.extension().is_some_and(|e| e == "json"))?
            }
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { cfg.$f = v; })* };
        }
        macro_rules! set_opt {
            ($($f:ident),*) => { $(if self.$f.is_some() { cfg.$f = self.$f; })* };
        }
        set!(n, tau, t_max, t_steps, seed, samples);
        set_opt!(g, nu, omega, eta_ld);
        // the two preparation parameters are alternatives
        if self.eta_prep.is_some() {
            cfg.eta_prep = self.eta_prep;
            cfg.delta = None;
        }
        if self.delta.is_some() {
            cfg.delta = self.delta;
            cfg.eta_prep = None;
        }
        if let Some(m) = self.mode {
            cfg.mode = match m {
                Mode::Gamma => KernelMode::GammaExact,
                Mode::Gaussian => KernelMode::GaussianApprox,
                Mode::Mc => KernelMode::MonteCarlo,
            };
        }
        if let Some(f) = self.format {
            cfg.format = match f {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
        }
        Ok(cfg)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
            None => {
                use std::io::Write;
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Io(e.to_string()))
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Dynamics { common, seconds } => {
            let mut cfg = common.load()?;
            cfg.seconds |= seconds;
            let table = sweep::dynamics(&cfg)?;
            common.emit(&table.render(cfg.format))
        }
        Command::TauSweep {
            common,
            tau_min,
            tau_max,
            tau_points,
        } => {
            let mut cfg = common.load()?;
            if let Some(v) = tau_min {
                cfg.tau_min = v;
            }
            if let Some(v) = tau_max {
                cfg.tau_max = v;
            }
            if let Some(v) = tau_points {
                cfg.tau_points = v;
            }
            let table = sweep::tau_sweep(&cfg)?;
            common.emit(&table.render(cfg.format))
        }
        Command::EtaSweep {
            common,
            taus,
            eta_min,
            eta_max,
            eta_points,
        } => {
            let mut cfg = common.load()?;
            if let Some(v) = taus {
                cfg.taus = v;
            }
            if let Some(v) = eta_min {
                cfg.eta_min = v;
            }
            if let Some(v) = eta_max {
                cfg.eta_max = v;
            }
            if let Some(v) = eta_points {
                cfg.eta_points = v;
            }
            let table = sweep::eta_sweep(&cfg)?;
            common.emit(&table.render(cfg.format))
        }
        Command::Validate { common, skip_rwa } => {
            let cfg = common.load()?;
            let report = sweep::validate(&cfg, !skip_rwa)?;
            common.emit(&report.render(cfg.format))?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!(
                    "FAIL {}: measured {:e} > bound {:e}",
                    c.name, c.measured, c.bound
                );
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Validation)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Param(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Validation) => ExitCode::from(2),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tripleslit::commands::{execute, verify, Command};
use tripleslit::{CliError, Result, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "tripleslit", version, about = "Gaussian matter waves through a triple slit: intensities, Gouy phases and the Sorkin parameter")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path (default `<command>.csv`); the plot script goes next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Sub {
    /// Classical and full intensity over x.
    Intensity,
    /// Sorkin parameter over x, with and/or without the Gouy phase.
    Kappa,
    /// |kappa| over the (x, tau) grid.
    Surface,
    /// Gouy phases, |kappa(0)| and the ablation error over tau.
    Gouy,
    /// Oracle and invariant checks on reduced grids.
    Verify,
}

/// Per-key overrides of the config file. Lengths take nm/um/mm/m, times
/// ns/us/s; bare numbers are SI.
#[derive(Args, Debug)]
struct Overrides {
    #[arg(long, global = true, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    hbar: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    sigma0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau: Option<String>,
    /// `auto` or a time.
    #[arg(long, global = true, allow_hyphen_values = true)]
    epsilon: Option<String>,
    /// 1 or 3.
    #[arg(long, global = true)]
    slits: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x_min: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x_max: Option<String>,
    #[arg(long, global = true)]
    x_points: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau_min: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    tau_max: Option<String>,
    #[arg(long, global = true)]
    tau_points: Option<String>,
    /// `combined` or `per-hop`.
    #[arg(long, global = true)]
    hop_prefactor: Option<String>,
    /// `gouy-only` or `all-constant-phases`.
    #[arg(long, global = true)]
    ablation: Option<String>,
    #[arg(long, global = true, value_parser = ["on", "off", "both"])]
    gouy: Option<String>,
    #[arg(long, global = true, value_parser = ["on", "off"])]
    mirror_loop: Option<String>,
}

impl Overrides {
    fn pairs(&self) -> [(&'static str, &Option<String>); 19] {
        [
            ("m", &self.m),
            ("hbar", &self.hbar),
            ("sigma0", &self.sigma0),
            ("beta", &self.beta),
            ("d", &self.d),
            ("t", &self.t),
            ("tau", &self.tau),
            ("epsilon", &self.epsilon),
            ("slits", &self.slits),
            ("x-min", &self.x_min),
            ("x-max", &self.x_max),
            ("x-points", &self.x_points),
            ("tau-min", &self.tau_min),
            ("tau-max", &self.tau_max),
            ("tau-points", &self.tau_points),
            ("hop-prefactor", &self.hop_prefactor),
            ("ablation", &self.ablation),
            ("gouy", &self.gouy),
            ("mirror-loop", &self.mirror_loop),
        ]
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    for (key, value) in cli.overrides.pairs() {
        if let Some(value) = value {
            cfg.set(key, value)?;
        }
    }
    cfg.validate()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let command = match cli.command {
        Sub::Intensity => Command::Intensity,
        Sub::Kappa => Command::Kappa,
        Sub::Surface => Command::Surface,
        Sub::Gouy => Command::Gouy,
        Sub::Verify => Command::Verify,
    };
    pool.install(|| {
        if command == Command::Verify {
            let checks = verify(&cfg)?;
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::Verify {
                    failed,
                    total: checks.len(),
                });
            }
            return Ok(());
        }
        for path in execute(command, &cfg, cli.out.as_deref())? {
            println!("wrote {}", path.display());
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

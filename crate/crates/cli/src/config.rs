//! Run configuration: physical parameters, scan grids and model switches.
//!
//! A config file holds `key = value` lines; `#` starts a comment. Every key
//! can also be given as a command-line flag of the same name, which wins
//! over the file.

use std::path::Path;

use tripleslit_core::nonclassical::HopPrefactor;
use tripleslit_core::sorkin::{linspace, Ablation, Slits, SorkinOptions};
use tripleslit_core::{EpsilonPolicy, ExperimentConfig};

use crate::error::{CliError, Result};
use crate::units::{parse_quantity, Dimension};

/// Every recognised key, in manifest order.
pub const KEYS: &[&str] = &[
    "m",
    "hbar",
    "sigma0",
    "beta",
    "d",
    "t",
    "tau",
    "epsilon",
    "slits",
    "x-min",
    "x-max",
    "x-points",
    "tau-min",
    "tau-max",
    "tau-points",
    "hop-prefactor",
    "ablation",
    "gouy",
    "mirror-loop",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GouyMode {
    #[default]
    On,
    Off,
    Both,
}

impl GouyMode {
    /// The `use_gouy` settings to evaluate, in column order.
    pub fn variants(self) -> &'static [bool] {
        match self {
            GouyMode::On => &[true],
            GouyMode::Off => &[false],
            GouyMode::Both => &[true, false],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.points)
    }

    fn check(&self, name: &str) -> Result<()> {
        if self.points == 0 {
            return Err(CliError::Config(format!("{name}-points must be at least 1")));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(CliError::Config(format!("{name}-min must not exceed {name}-max")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub experiment: ExperimentConfig,
    pub slits: Slits,
    pub x: Grid,
    pub tau: Grid,
    pub hop_prefactor: HopPrefactor,
    pub ablation: Ablation,
    pub gouy: GouyMode,
    pub mirror_loop: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            experiment: ExperimentConfig::electron(),
            slits: Slits::Three,
            x: Grid {
                min: -1e-3,
                max: 1e-3,
                points: 2001,
            },
            tau: Grid {
                min: 0.5e-9,
                max: 20e-9,
                points: 200,
            },
            hop_prefactor: HopPrefactor::Combined,
            ablation: Ablation::GouyOnly,
            gouy: GouyMode::On,
            mirror_loop: false,
        }
    }
}

fn choice<T: Copy>(key: &str, value: &str, options: &[(&str, T)]) -> Result<T> {
    options
        .iter()
        .find(|(name, _)| *name == value)
        .map(|&(_, v)| v)
        .ok_or_else(|| {
            let names: Vec<_> = options.iter().map(|(n, _)| *n).collect();
            CliError::Config(format!("`{key}` must be one of {}, got `{value}`", names.join(", ")))
        })
}

fn count(key: &str, value: &str) -> Result<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("`{key}` must be a whole number, got `{value}`")))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let length = || parse_quantity(value, Dimension::Length);
        let time = || parse_quantity(value, Dimension::Time);
        let e = &mut self.experiment;
        match key {
            "m" => e.mass = parse_quantity(value, Dimension::Plain)?,
            "hbar" => e.hbar = parse_quantity(value, Dimension::Plain)?,
            "sigma0" => e.sigma0 = length()?,
            "beta" => e.beta = length()?,
            "d" => e.d = length()?,
            "t" => e.t = time()?,
            "tau" => e.tau = time()?,
            "epsilon" => {
                e.epsilon = match value {
                    "auto" => EpsilonPolicy::Auto,
                    _ => EpsilonPolicy::Explicit(time()?),
                }
            }
            "slits" => self.slits = choice(key, value, &[("1", Slits::One), ("3", Slits::Three)])?,
            "x-min" => self.x.min = length()?,
            "x-max" => self.x.max = length()?,
            "x-points" => self.x.points = count(key, value)?,
            "tau-min" => self.tau.min = time()?,
            "tau-max" => self.tau.max = time()?,
            "tau-points" => self.tau.points = count(key, value)?,
            "hop-prefactor" => {
                self.hop_prefactor = choice(
                    key,
                    value,
                    &[("combined", HopPrefactor::Combined), ("per-hop", HopPrefactor::PerHop)],
                )?
            }
            "ablation" => {
                self.ablation = choice(
                    key,
                    value,
                    &[
                        ("gouy-only", Ablation::GouyOnly),
                        ("all-constant-phases", Ablation::AllConstantPhases),
                    ],
                )?
            }
            "gouy" => {
                self.gouy = choice(
                    key,
                    value,
                    &[("on", GouyMode::On), ("off", GouyMode::Off), ("both", GouyMode::Both)],
                )?
            }
            "mirror-loop" => self.mirror_loop = choice(key, value, &[("on", true), ("off", false)])?,
            _ => return Err(CliError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Apply `key = value` lines.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(key.trim(), value).map_err(|e| match e {
                CliError::Config(msg) => CliError::Config(format!("line {}: {msg}", n + 1)),
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.experiment.validate()?;
        self.x.check("x")?;
        self.tau.check("tau")?;
        if self.tau.min.is_nan() || self.tau.min <= 0.0 {
            return Err(CliError::Config("tau-min must be strictly positive".into()));
        }
        Ok(())
    }

    pub fn options(&self) -> SorkinOptions {
        SorkinOptions {
            use_gouy: self.gouy != GouyMode::Off,
            ablation: self.ablation,
            mirror_loop: self.mirror_loop,
            hop_prefactor: self.hop_prefactor,
            slits: self.slits,
        }
    }

    /// Resolved values in SI, for the manifest.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let e = &self.experiment;
        let num = |v: f64| format!("{v:e}");
        let epsilon = match e.epsilon {
            EpsilonPolicy::Auto => "auto".to_string(),
            EpsilonPolicy::Explicit(v) => num(v),
        };
        let on_off = |b: bool| if b { "on" } else { "off" }.to_string();
        vec![
            ("m", num(e.mass)),
            ("hbar", num(e.hbar)),
            ("sigma0", num(e.sigma0)),
            ("beta", num(e.beta)),
            ("d", num(e.d)),
            ("t", num(e.t)),
            ("tau", num(e.tau)),
            ("epsilon", epsilon),
            ("slits", if self.slits == Slits::One { "1" } else { "3" }.to_string()),
            ("x-min", num(self.x.min)),
            ("x-max", num(self.x.max)),
            ("x-points", self.x.points.to_string()),
            ("tau-min", num(self.tau.min)),
            ("tau-max", num(self.tau.max)),
            ("tau-points", self.tau.points.to_string()),
            (
                "hop-prefactor",
                match self.hop_prefactor {
                    HopPrefactor::Combined => "combined",
                    HopPrefactor::PerHop => "per-hop",
                }
                .to_string(),
            ),
            (
                "ablation",
                match self.ablation {
                    Ablation::GouyOnly => "gouy-only",
                    Ablation::AllConstantPhases => "all-constant-phases",
                }
                .to_string(),
            ),
            (
                "gouy",
                match self.gouy {
                    GouyMode::On => "on",
                    GouyMode::Off => "off",
                    GouyMode::Both => "both",
                }
                .to_string(),
            ),
            ("mirror-loop", on_off(self.mirror_loop)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_lines_and_comments() {
        let mut run = RunConfig::default();
        run.apply_text("# electron\nd = 1um  # wider\n\ntau=2ns\nepsilon = 0.5ns\ngouy = both\n")
            .unwrap();
        assert_eq!(run.experiment.d, 1e-6);
        assert_eq!(run.experiment.tau, 2e-9);
        assert_eq!(run.experiment.epsilon, EpsilonPolicy::Explicit(0.5e-9));
        assert_eq!(run.gouy, GouyMode::Both);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let mut run = RunConfig::default();
        let err = run.apply_text("d = 1um\nwidth = 3nm\n").unwrap_err();
        assert_eq!(err.to_string(), "config: line 2: unknown key `width`");
        assert!(run.apply_text("no equals sign").is_err());
        assert!(run.apply_text("slits = 2").is_err());
    }

    #[test]
    fn entries_cover_every_key() {
        let keys: Vec<_> = RunConfig::default().entries().iter().map(|(k, _)| *k).collect();
        assert_eq!(keys, KEYS);
    }

    #[test]
    fn entries_round_trip() {
        let mut run = RunConfig::default();
        run.set("epsilon", "0.7ns").unwrap();
        run.set("mirror-loop", "on").unwrap();
        run.set("hop-prefactor", "per-hop").unwrap();
        let mut back = RunConfig::default();
        for (k, v) in run.entries() {
            back.set(k, &v).unwrap();
        }
        assert_eq!(back, run);
    }

    #[test]
    fn validation() {
        let mut run = RunConfig::default();
        run.set("beta", "0").unwrap();
        let err = run.validate().unwrap_err();
        assert!(matches!(err, CliError::Model(_)));
        assert_eq!(err.exit_code(), 2);
        let mut run = RunConfig::default();
        run.x.min = 1.0;
        assert_eq!(run.validate().unwrap_err().exit_code(), 2);
    }
}

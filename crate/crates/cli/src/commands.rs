//! The five subcommands. Each computes a [`Table`]; [`execute`] writes it.

use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use tripleslit_core::classical::{build_classical_paths, classical_chain};
use tripleslit_core::gchain::propagate;
use tripleslit_core::nonclassical::{build_nonclassical_path, build_zchain, chain_gouy_nc, gouy_nc, HopPrefactor};
use tripleslit_core::oracle::{quad_classical, quad_nonclassical, QuadratureSpec};
use tripleslit_core::params::{derived_scales, estimate_epsilon};
use tripleslit_core::phase::wrap;
use tripleslit_core::sorkin::{gouy_row, linspace, PathSet};
use tripleslit_core::Complex;

use crate::config::{GouyMode, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{gnuplot_script, script_path, write_csv, write_text, Cell, Manifest, PlotStyle, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Intensity,
    Kappa,
    Surface,
    Gouy,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Intensity => "intensity",
            Command::Kappa => "kappa",
            Command::Surface => "surface",
            Command::Gouy => "gouy",
            Command::Verify => "verify",
        }
    }
}

/// `x, I_c_normalized, I_nc_normalized`, both divided by the largest `I_c`
/// on the grid.
pub fn intensity(run: &RunConfig) -> Result<Table> {
    let set = PathSet::build(&run.experiment, run.options())?;
    let xs = run.x.values();
    let values: Vec<(f64, f64)> = xs
        .par_iter()
        .map(|&x| {
            let i_c = set.intensity_classical(x);
            (i_c, i_c + set.excess_intensity(x))
        })
        .collect();
    let peak = values.iter().map(|v| v.0).fold(0.0, f64::max);
    let norm = if peak > 0.0 { peak } else { set.i0() };
    let mut table = Table::new(vec!["x", "I_c_normalized", "I_nc_normalized"]);
    for (x, (i_c, i_nc)) in xs.iter().zip(values) {
        table.rows.push(vec![Cell::Num(*x), Cell::Num(i_c / norm), Cell::Num(i_nc / norm)]);
    }
    Ok(table)
}

fn kappa_column(use_gouy: bool, prefix: &'static str) -> &'static str {
    match (prefix, use_gouy) {
        ("kappa", true) => "kappa_gouy",
        ("kappa", false) => "kappa_no_gouy",
        (_, true) => "abs_kappa",
        (_, false) => "abs_kappa_no_gouy",
    }
}

/// `x` plus one κ column per requested Gouy setting.
pub fn kappa(run: &RunConfig) -> Result<Table> {
    let set = PathSet::build(&run.experiment, run.options())?;
    let xs = run.x.values();
    let variants = run.gouy.variants();
    let mut columns = vec!["x"];
    columns.extend(variants.iter().map(|&g| kappa_column(g, "kappa")));
    let sets: Vec<PathSet> = variants.iter().map(|&g| set.with_options(g, run.ablation)).collect();
    let mut table = Table::new(columns);
    table.rows = xs
        .par_iter()
        .map(|&x| {
            let mut row = vec![Cell::Num(x)];
            row.extend(sets.iter().map(|s| Cell::Num(s.kappa(x))));
            row
        })
        .collect();
    Ok(table)
}

/// Long format `x, tau, |κ|`, τ-major.
pub fn surface(run: &RunConfig) -> Result<Table> {
    let xs = run.x.values();
    let taus = run.tau.values();
    let variants = run.gouy.variants();
    let mut columns = vec!["x", "tau"];
    columns.extend(variants.iter().map(|&g| kappa_column(g, "abs_kappa")));
    let blocks: Vec<Vec<Vec<Cell>>> = taus
        .par_iter()
        .map(|&tau| {
            let set = PathSet::build(&run.experiment.with_tau(tau), run.options())?;
            let sets: Vec<PathSet> = variants.iter().map(|&g| set.with_options(g, run.ablation)).collect();
            Ok(xs
                .iter()
                .map(|&x| {
                    let mut row = vec![Cell::Num(x), Cell::Num(tau)];
                    row.extend(sets.iter().map(|s| Cell::Num(s.kappa(x).abs())));
                    row
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(columns);
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}

/// `tau, mu_c, mu_nc, abs_kappa0, percent_error` over the τ grid.
pub fn gouy(run: &RunConfig) -> Result<Table> {
    let taus = run.tau.values();
    let options = run.options();
    let rows = taus
        .par_iter()
        .map(|&tau| gouy_row(&run.experiment.with_tau(tau), options))
        .collect::<tripleslit_core::Result<Vec<_>>>()?;
    let mut table = Table::new(vec!["tau", "mu_c", "mu_nc", "abs_kappa0", "percent_error"]);
    for r in rows {
        table.rows.push(vec![
            Cell::Num(r.tau),
            Cell::Num(r.mu_c),
            Cell::Num(r.mu_nc),
            Cell::Num(r.abs_kappa0),
            r.percent_error.map_or(Cell::Undefined, Cell::Num),
        ]);
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, value: f64, limit: f64) -> Self {
        Self {
            name,
            passed: value <= limit,
            detail: format!("{value:.3e} (limit {limit:.0e})"),
        }
    }
}

fn max_rel(a: &[Complex], b: &[Complex]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q).norm() / q.norm())
        .fold(0.0, f64::max)
}

/// Oracle equivalence and the model invariants, on reduced grids.
pub fn verify(run: &RunConfig) -> Result<Vec<Check>> {
    let cfg = run.experiment;
    let eps = estimate_epsilon(&cfg)?;
    let spec = QuadratureSpec {
        nodes: 257,
        ..QuadratureSpec::default()
    };
    let [p1, p2, p3] = build_classical_paths(&cfg)?;
    let looping = build_nonclassical_path(&cfg, eps, HopPrefactor::Combined)?.wave;
    let mut checks = Vec::new();

    let xs = linspace(-3.0 * p3.screen_width(), 3.0 * p3.screen_width(), 11);
    let exact: Vec<_> = xs.iter().map(|&x| p3.evaluate_state(x)).collect();
    let quad = quad_classical(&cfg, cfg.d, &xs, &spec)?;
    checks.push(Check::new("oracle, direct path", max_rel(&quad, &exact), 1e-5));

    let xs = linspace(-3.0 * looping.screen_width(), 3.0 * looping.screen_width(), 11);
    let exact: Vec<_> = xs.iter().map(|&x| looping.evaluate_state(x)).collect();
    let quad = quad_nonclassical(&cfg, eps, HopPrefactor::Combined, &xs, &spec)?;
    checks.push(Check::new("oracle, looping path", max_rel(&quad, &exact), 1e-5));

    let xs = linspace(-3.0 * p2.screen_width(), 3.0 * p2.screen_width(), 41);
    let parity = xs
        .iter()
        .map(|&x| (p3.evaluate_state(x) - p1.evaluate_state(-x)).norm())
        .fold(0.0, f64::max);
    checks.push(Check::new("parity psi3(x) = psi1(-x)", parity, 0.0));

    let at_slit = classical_chain(&cfg.with_tau(1e-15), cfg.d)?.state().norm();
    let mut drift: f64 = 0.0;
    for tau in run.tau.values().iter().step_by((run.tau.points / 20).max(1)) {
        let n = classical_chain(&cfg.with_tau(*tau), cfg.d)?.state().norm();
        drift = drift.max((n / at_slit - 1.0).abs());
    }
    checks.push(Check::new("norm under flight time", drift, 1e-10));

    let mh = cfg.mass_over_hbar();
    let s = *classical_chain(&cfg.with_tau(1e-15), cfg.d)?.state();
    let (a, _) = propagate(&s, 0.3 * cfg.tau, mh)?;
    let (ab, _) = propagate(&a, 0.7 * cfg.tau, mh)?;
    let (one, _) = propagate(&s, cfg.tau, mh)?;
    let semigroup = [(ab.a, one.a), (ab.b, one.b)]
        .iter()
        .map(|(p, q)| (p - q).norm() / q.norm())
        .fold(0.0, f64::max);
    checks.push(Check::new("propagation semigroup", semigroup, 1e-12));

    let set = PathSet::build(&cfg, run.options())?.with_options(true, run.ablation);
    let scale = set.excess_intensity(0.0).abs();
    let expansion = xs
        .iter()
        .map(|&x| {
            let d = set.excess_intensity_direct(x);
            (set.excess_intensity(x) - d).abs() / d.abs().max(scale)
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("cross-term expansion", expansion, 1e-10));

    let mut gouy_gap: f64 = 0.0;
    for tau in run.tau.values() {
        let c = cfg.with_tau(tau);
        let z = gouy_nc(&build_zchain(&c, eps)?);
        let g = chain_gouy_nc(&c, eps, HopPrefactor::Combined)?;
        // the arctangent only fixes μ_nc modulo π/2
        gouy_gap = gouy_gap.max(wrap(z - g, FRAC_PI_2).abs());
    }
    checks.push(Check::new("z-chain vs chain Gouy phase", gouy_gap, 1e-8));
    Ok(checks)
}

fn notes(run: &RunConfig, command: Command) -> Vec<String> {
    let mut notes = vec![
        "looping path hops 2*epsilon between adjacent slits and reaches the last slit at t + 4*epsilon".to_string(),
        match run.hop_prefactor {
            HopPrefactor::Combined => "hop prefactor combined: one sqrt(m/(4 pi i hbar epsilon)) for both hops",
            HopPrefactor::PerHop => "hop prefactor per hop: sqrt(m/(2 pi i hbar 2 epsilon)) for each hop",
        }
        .to_string(),
        "Gouy phases are measured from the two sqrt(1/i) kernel prefactors of a direct path (-pi/2)".to_string(),
        "kappa = (I_nc - I_c) / I0 with I0 = I_c(0)".to_string(),
    ];
    if command == Command::Intensity {
        notes.push("both intensities divided by the largest I_c on the grid".to_string());
    }
    if run.gouy != GouyMode::On || command == Command::Gouy {
        notes.push("without Gouy: (mu_c - mu_nc) deleted from the cross-term phases, per `ablation`".to_string());
    }
    notes
}

/// Table, manifest and gnuplot script for one command. Returns the files
/// written.
pub fn execute(command: Command, run: &RunConfig, out: Option<&Path>) -> Result<Vec<PathBuf>> {
    run.validate()?;
    let (table, style, title) = match command {
        Command::Intensity => (intensity(run)?, PlotStyle::Lines, "Normalized intensity"),
        Command::Kappa => (kappa(run)?, PlotStyle::Lines, "Sorkin parameter"),
        Command::Surface => (surface(run)?, PlotStyle::Surface, "|kappa| over x and tau"),
        Command::Gouy => (gouy(run)?, PlotStyle::Lines, "Gouy phases and |kappa(0)|"),
        Command::Verify => return Err(CliError::Config("verify writes no table".into())),
    };
    let csv = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", command.name())));
    let script = script_path(&csv);
    let file_name = |p: &Path| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let manifest = Manifest {
        command: command.name().to_string(),
        version: env!("CARGO_PKG_VERSION"),
        config: run.entries(),
        epsilon: estimate_epsilon(&run.experiment)?,
        tau0: derived_scales(&run.experiment)?.tau0,
        notes: notes(run, command),
        outputs: vec![file_name(&csv), file_name(&script)],
    };
    write_csv(&csv, &manifest, &table)?;
    write_text(&script, &gnuplot_script(&file_name(&csv), &table, style, title))?;
    Ok(vec![csv, script])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        let mut run = RunConfig::default();
        run.x.points = 41;
        run.x.min = -1e-4;
        run.x.max = 1e-4;
        run.tau.points = 5;
        run
    }

    #[test]
    fn intensity_peaks_on_axis() {
        let t = intensity(&small()).unwrap();
        let ic = t.column("I_c_normalized").unwrap();
        assert_eq!(ic[20], Some(1.0));
        assert_eq!(t.rows[20][0], Cell::Num(0.0));
    }

    #[test]
    fn kappa_columns_follow_gouy_mode() {
        let mut run = small();
        run.gouy = GouyMode::Both;
        let t = kappa(&run).unwrap();
        assert_eq!(t.columns, ["x", "kappa_gouy", "kappa_no_gouy"]);
        run.gouy = GouyMode::Off;
        assert_eq!(kappa(&run).unwrap().columns, ["x", "kappa_no_gouy"]);
    }

    #[test]
    fn surface_is_tau_major() {
        let run = small();
        let t = surface(&run).unwrap();
        assert_eq!(t.rows.len(), 41 * 5);
        assert_eq!(t.rows[41][1], Cell::Num(run.tau.values()[1]));
    }

    #[test]
    fn verify_passes_on_reference_setup() {
        let checks = verify(&small()).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}

//! Intensities and the Sorkin parameter κ.
//!
//! With the classical paths `ψ₁, ψ₂, ψ₃` and the looping path `ψ_nc`,
//!
//! ```text
//! κ I₀ = I_nc - I_c = |ψ_nc|² + 2 Σₖ |ψₖ| |ψ_nc| cos φₖ
//! φₖ = (αₖ - α_nc) x² + (γₖ - γ_nc) x - (θₖ - θ_nc) + (μ_c - μ_nc)
//! ```
//!
//! where `I₀ = I_c(0)`. The `γ` coefficients are signed, so `φ₁` carries
//! `-(|γ| + γ_nc) x`. Switching the Gouy phase off deletes `μ_c - μ_nc`
//! from every `φₖ` and leaves everything else alone.

use alloc::vec::Vec;

// Float math for no_std builds; shadowed by inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::classical::{build_classical_path, build_classical_paths, PathWavefunction};
use crate::nonclassical::{build_mirror_path, build_nonclassical_path, HopPrefactor};
use crate::params::{estimate_epsilon, ExperimentConfig};
use crate::{Complex, Error, Result};

/// What "without the Gouy phase" removes from the cross-term phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ablation {
    /// Delete `μ_c - μ_nc` only.
    #[default]
    GouyOnly,
    /// Delete `μ_c - μ_nc` and the looping path's displacement phase `θ_nc`.
    AllConstantPhases,
}

/// Number of open slits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Slits {
    /// Only the centre slit; no loop is possible.
    One,
    #[default]
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SorkinOptions {
    pub use_gouy: bool,
    pub ablation: Ablation,
    /// Add the reverse loop −d → 0 → +d next to the modelled one.
    pub mirror_loop: bool,
    pub hop_prefactor: HopPrefactor,
    pub slits: Slits,
}

impl Default for SorkinOptions {
    fn default() -> Self {
        Self {
            use_gouy: true,
            ablation: Ablation::GouyOnly,
            mirror_loop: false,
            hop_prefactor: HopPrefactor::Combined,
            slits: Slits::Three,
        }
    }
}

impl SorkinOptions {
    pub fn without_gouy(self) -> Self {
        Self {
            use_gouy: false,
            ..self
        }
    }
}

/// One detector point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SorkinResult {
    pub x: f64,
    pub tau: f64,
    pub i_c: f64,
    pub i_nc: f64,
    pub kappa: f64,
    /// Relative phases of `ψ₁, ψ₂, ψ₃` against the (first) loop, as used in κ.
    pub phi1nc: f64,
    pub phi2nc: f64,
    pub phi3nc: f64,
}

/// All path amplitudes of one configuration, with `I₀` fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    tau: f64,
    classical: Vec<PathWavefunction>,
    loops: Vec<PathWavefunction>,
    i0: f64,
    options: SorkinOptions,
}

impl PathSet {
    pub fn build(cfg: &ExperimentConfig, options: SorkinOptions) -> Result<Self> {
        let (classical, loops) = match options.slits {
            Slits::One => (alloc::vec![build_classical_path(cfg, 0.0)?], Vec::new()),
            Slits::Three => {
                let eps = estimate_epsilon(cfg)?;
                let mut loops = alloc::vec![build_nonclassical_path(cfg, eps, options.hop_prefactor)?.wave];
                if options.mirror_loop {
                    loops.push(build_mirror_path(cfg, eps, options.hop_prefactor)?.wave);
                }
                (build_classical_paths(cfg)?.to_vec(), loops)
            }
        };
        Self::from_paths(cfg.tau, classical, loops, options)
    }

    /// Assemble from prebuilt paths. `I₀` is the classical intensity at `x = 0`.
    pub fn from_paths(
        tau: f64,
        classical: Vec<PathWavefunction>,
        loops: Vec<PathWavefunction>,
        options: SorkinOptions,
    ) -> Result<Self> {
        let i0 = intensity(&classical, 0.0);
        if !(i0 > 0.0) || !i0.is_finite() {
            return Err(Error::ZeroCentralIntensity);
        }
        Ok(Self {
            tau,
            classical,
            loops,
            i0,
            options,
        })
    }

    pub fn classical(&self) -> &[PathWavefunction] {
        &self.classical
    }

    pub fn loops(&self) -> &[PathWavefunction] {
        &self.loops
    }

    pub fn i0(&self) -> f64 {
        self.i0
    }

    pub fn options(&self) -> SorkinOptions {
        self.options
    }

    /// Same paths evaluated under different switches (the paths themselves
    /// must not depend on the change).
    pub fn with_options(&self, use_gouy: bool, ablation: Ablation) -> Self {
        let mut out = self.clone();
        out.options.use_gouy = use_gouy;
        out.options.ablation = ablation;
        out
    }

    /// Every looping amplitude multiplied by `factor`; `I₀` is unchanged.
    pub fn with_loops_scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for p in &mut out.loops {
            *p = p.scaled(factor);
        }
        out
    }

    /// Every amplitude multiplied by `factor`, `I₀` included.
    pub fn with_all_scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for p in out.classical.iter_mut().chain(out.loops.iter_mut()) {
            *p = p.scaled(factor);
        }
        out.i0 = intensity(&out.classical, 0.0);
        out
    }

    /// Phase removed from the classical–loop cross terms.
    fn ablated_phase(&self, looping: &PathWavefunction) -> f64 {
        if self.options.use_gouy {
            return 0.0;
        }
        let gouy = self.classical[0].mu - looping.mu;
        match self.options.ablation {
            Ablation::GouyOnly => gouy,
            Ablation::AllConstantPhases => gouy + looping.theta,
        }
    }

    /// `φ` of a classical path against a loop, after any ablation.
    pub fn relative_phase(&self, path: &PathWavefunction, looping: &PathWavefunction, x: f64) -> f64 {
        relative_phase(path, looping, x) - self.ablated_phase(looping)
    }

    /// `I_nc - I_c` from the cross-term expansion.
    pub fn excess_intensity(&self, x: f64) -> f64 {
        let mut total = 0.0;
        for (j, lj) in self.loops.iter().enumerate() {
            let mj = lj.magnitude(x);
            total += mj * mj;
            for lk in &self.loops[j + 1..] {
                total += 2.0 * mj * lk.magnitude(x) * (lj.phase(x) - lk.phase(x)).cos();
            }
            for p in &self.classical {
                total += 2.0 * p.magnitude(x) * mj * self.relative_phase(p, lj, x).cos();
            }
        }
        total
    }

    /// `I_nc - I_c` by complex arithmetic on the chain states, as
    /// `|L|² + 2 Re(C̄ L)` (the same as `|C + L|² - |C|²` without the
    /// cancellation). Only meaningful with the Gouy phase kept.
    pub fn excess_intensity_direct(&self, x: f64) -> f64 {
        let classical: Complex = self.classical.iter().map(|p| p.evaluate_state(x)).sum();
        let loops: Complex = self.loops.iter().map(|p| p.evaluate_state(x)).sum();
        loops.norm_sqr() + 2.0 * (classical.conj() * loops).re
    }

    pub fn intensity_classical(&self, x: f64) -> f64 {
        intensity(&self.classical, x)
    }

    pub fn kappa(&self, x: f64) -> f64 {
        self.excess_intensity(x) / self.i0
    }

    pub fn result(&self, x: f64) -> SorkinResult {
        let i_c = self.intensity_classical(x);
        let excess = self.excess_intensity(x);
        let mut phi = [0.0; 3];
        if let Some(first) = self.loops.first() {
            for (slot, p) in phi.iter_mut().zip(&self.classical) {
                *slot = self.relative_phase(p, first, x);
            }
        }
        SorkinResult {
            x,
            tau: self.tau,
            i_c,
            i_nc: i_c + excess,
            kappa: excess / self.i0,
            phi1nc: phi[0],
            phi2nc: phi[1],
            phi3nc: phi[2],
        }
    }
}

/// `|Σ ψ(x)|²` from the decomposed amplitudes.
pub fn intensity(paths: &[PathWavefunction], x: f64) -> f64 {
    paths.iter().map(|p| p.evaluate(x)).sum::<Complex>().norm_sqr()
}

/// `φ = arg ψ_path - arg ψ_loop`, unwrapped, from the phase coefficients.
pub fn relative_phase(path: &PathWavefunction, looping: &PathWavefunction, x: f64) -> f64 {
    (path.alpha_quad - looping.alpha_quad) * x * x + (path.gamma - looping.gamma) * x
        - (path.theta - looping.theta)
        + (path.mu - looping.mu)
}

/// `(φ₁nc, φ₂nc, φ₃nc)` for three classical paths and the loop.
pub fn relative_phases(classical: &[PathWavefunction; 3], looping: &PathWavefunction, x: f64) -> [f64; 3] {
    [
        relative_phase(&classical[0], looping, x),
        relative_phase(&classical[1], looping, x),
        relative_phase(&classical[2], looping, x),
    ]
}

/// κ over a `τ × x` grid, row-major in `τ`.
pub fn kappa_scan(
    cfg: &ExperimentConfig,
    xs: &[f64],
    taus: &[f64],
    options: SorkinOptions,
) -> Result<Vec<SorkinResult>> {
    if xs.is_empty() {
        return Err(Error::EmptyGrid("x"));
    }
    if taus.is_empty() {
        return Err(Error::EmptyGrid("tau"));
    }
    let mut out = Vec::with_capacity(xs.len() * taus.len());
    for &tau in taus {
        let set = PathSet::build(&cfg.with_tau(tau), options)?;
        out.extend(xs.iter().map(|&x| set.result(x)));
    }
    Ok(out)
}

/// `(||κ| - |κ′|| / |κ|) × 100` at `x = 0`, with `κ′` the ablated κ.
pub fn percentage_error(set: &PathSet) -> Result<f64> {
    let with = set.with_options(true, set.options().ablation).kappa(0.0).abs();
    let without = set.with_options(false, set.options().ablation).kappa(0.0).abs();
    if !(with > 0.0) {
        return Err(Error::UndefinedPercentError);
    }
    Ok((with - without).abs() / with * 100.0)
}

pub fn gouy_percentage_error(cfg: &ExperimentConfig, options: SorkinOptions) -> Result<f64> {
    percentage_error(&PathSet::build(cfg, options)?)
}

/// One row of a Gouy scan over `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GouyRow {
    pub tau: f64,
    pub mu_c: f64,
    pub mu_nc: f64,
    pub abs_kappa0: f64,
    /// `None` when `κ(0) = 0`.
    pub percent_error: Option<f64>,
}

pub fn gouy_row(cfg: &ExperimentConfig, options: SorkinOptions) -> Result<GouyRow> {
    let set = PathSet::build(cfg, SorkinOptions { slits: Slits::Three, ..options })?;
    let percent_error = match percentage_error(&set) {
        Ok(p) => Some(p),
        Err(Error::UndefinedPercentError) => None,
        Err(e) => return Err(e),
    };
    Ok(GouyRow {
        tau: cfg.tau,
        mu_c: set.classical[0].mu,
        mu_nc: set.loops[0].mu,
        abs_kappa0: set.kappa(0.0).abs(),
        percent_error,
    })
}

pub fn gouy_scan(cfg: &ExperimentConfig, taus: &[f64], options: SorkinOptions) -> Result<Vec<GouyRow>> {
    if taus.is_empty() {
        return Err(Error::EmptyGrid("tau"));
    }
    taus.iter().map(|&tau| gouy_row(&cfg.with_tau(tau), options)).collect()
}

/// `n` evenly spaced points from `lo` to `hi`; `n = 1` gives `[lo]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + h * i as f64 })
                .collect()
        }
    }
}

/// Default detector grid: ±1 mm, 2001 points.
pub fn default_x_grid() -> Vec<f64> {
    linspace(-1e-3, 1e-3, 2001)
}

/// Default flight-time grid: 0.5 to 20 ns, 200 points.
pub fn default_tau_grid() -> Vec<f64> {
    linspace(0.5e-9, 20e-9, 200)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::congruent;
    use core::f64::consts::PI;

    fn reference_set(tau: f64) -> PathSet {
        PathSet::build(&ExperimentConfig::electron().with_tau(tau), SorkinOptions::default()).unwrap()
    }

    #[test]
    fn expansion_matches_direct_difference() {
        for tau in [2e-9, 15e-9] {
            let set = reference_set(tau);
            let scale = set.excess_intensity(0.0).abs();
            for x in linspace(-1e-3, 1e-3, 41) {
                let e = set.excess_intensity(x);
                let d = set.excess_intensity_direct(x);
                assert!((e - d).abs() <= 1e-10 * scale.max(d.abs()), "x = {x:e}: {e:e} vs {d:e}");
            }
        }
    }

    #[test]
    fn expansion_matches_direct_with_mirror_loop() {
        let cfg = ExperimentConfig::electron().with_tau(4e-9);
        let opts = SorkinOptions {
            mirror_loop: true,
            ..SorkinOptions::default()
        };
        let set = PathSet::build(&cfg, opts).unwrap();
        assert_eq!(set.loops().len(), 2);
        for x in [-3e-4, 0.0, 1e-4, 5e-4] {
            let e = set.excess_intensity(x);
            let d = set.excess_intensity_direct(x);
            assert!((e - d).abs() <= 1e-10 * d.abs().max(set.excess_intensity(0.0).abs()));
        }
        // the two loops mirror each other, so the pattern is parity-even again
        assert!((set.kappa(2e-4) - set.kappa(-2e-4)).abs() < 1e-8 * set.kappa(2e-4).abs());
    }

    #[test]
    fn single_path_intensity() {
        let set = reference_set(15e-9);
        let psi2 = &set.classical()[1];
        for x in [-4e-4, 0.0, 1e-5] {
            let i = intensity(core::slice::from_ref(psi2), x);
            assert!((i / psi2.evaluate_state(x).norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_intensity_has_parity() {
        let set = reference_set(15e-9);
        for x in linspace(0.0, 1e-3, 21) {
            let a = set.intensity_classical(x);
            let b = set.intensity_classical(-x);
            assert!((a - b).abs() <= 1e-12 * a.max(b).max(1e-300));
        }
    }

    #[test]
    fn loop_breaks_parity() {
        let set = reference_set(15e-9);
        assert!((set.kappa(1e-4) - set.kappa(-1e-4)).abs() > 1e-3 * set.kappa(1e-4).abs());
    }

    #[test]
    fn kappa_is_excess_over_i0() {
        let set = reference_set(6e-9);
        for x in [-4e-5, 0.0, 3e-5] {
            let r = set.result(x);
            assert!(r.i_c >= 0.0 && r.i_nc >= 0.0);
            // I_nc - I_c cancels about eight digits
            assert!((r.kappa * set.i0() - (r.i_nc - r.i_c)).abs() <= 4.0 * f64::EPSILON * r.i_nc);
        }
    }

    #[test]
    fn kappa_vanishes_with_loop_amplitude() {
        let set = reference_set(15e-9);
        let xs = linspace(-1e-3, 1e-3, 101);
        let max = |s: &PathSet| xs.iter().map(|&x| s.kappa(x).abs()).fold(0.0, f64::max);
        let full = max(&set);
        let mut last = full;
        for f in [1e-1, 1e-2, 1e-3] {
            let m = max(&set.with_loops_scaled(f));
            assert!(m < last);
            // linear in the amplitude once the |ψ_nc|² term is negligible
            assert!((m / (f * full) - 1.0).abs() < 1e-3, "f = {f}: {m:e}");
            last = m;
        }
        assert_eq!(max(&set.with_loops_scaled(0.0)), 0.0);
    }

    #[test]
    fn outer_phase_difference_is_linear_in_x() {
        let set = reference_set(15e-9);
        let (c, l) = (set.classical(), &set.loops()[0]);
        let gamma = c[2].gamma;
        for x in linspace(-1e-3, 1e-3, 11) {
            let [p1, _, p3] = relative_phases(c.try_into().unwrap(), l, x);
            assert!(((p1 - p3) - (-2.0 * gamma * x)).abs() < 1e-9 * (1.0 + (gamma * x).abs()));
        }
    }

    #[test]
    fn phases_at_origin_reduce_to_constants() {
        let set = reference_set(2e-9);
        let (c, l) = (set.classical(), &set.loops()[0]);
        let [p1, p2, p3] = relative_phases(c.try_into().unwrap(), l, 0.0);
        let dmu = c[0].mu - l.mu;
        assert!((p1 - (-(c[0].theta - l.theta) + dmu)).abs() < 1e-12);
        assert!((p2 - (l.theta + dmu)).abs() < 1e-12);
        assert_eq!(p1, p3);
    }

    #[test]
    fn relative_phase_is_argument_of_product() {
        let set = reference_set(15e-9);
        let (c, l) = (set.classical(), &set.loops()[0]);
        // stay where both amplitudes are representable
        let half = 6.0 * c[1].screen_width();
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        for _ in 0..50 {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let x = ((seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 2.0 * half;
            let [p1, _, _] = relative_phases(c.try_into().unwrap(), l, x);
            let direct = (c[0].evaluate_state(x) * l.evaluate_state(x).conj()).arg();
            assert!(congruent(p1, direct, 2.0 * PI, 1e-6), "x = {x:e}");
        }
    }

    #[test]
    fn gouy_switch_moves_kappa_at_origin() {
        let set = reference_set(15e-9);
        let on = set.kappa(0.0);
        let off = set.with_options(false, Ablation::GouyOnly).kappa(0.0);
        assert!((on - off).abs() > 1e-3 * on.abs());
        let all = set.with_options(false, Ablation::AllConstantPhases).kappa(0.0);
        assert!((all - off).abs() > 0.0);
    }

    #[test]
    fn equal_gouy_phases_give_zero_error() {
        let set = reference_set(2e-9);
        let mut classical = set.classical().to_vec();
        let mut loops = set.loops().to_vec();
        for p in &mut classical {
            p.mu = 0.3;
        }
        loops[0].mu = 0.3;
        let tweaked = PathSet::from_paths(2e-9, classical, loops, SorkinOptions::default()).unwrap();
        assert_eq!(percentage_error(&tweaked).unwrap(), 0.0);
    }

    #[test]
    fn error_is_invariant_under_overall_scale() {
        let set = reference_set(2e-9);
        let base = percentage_error(&set).unwrap();
        for s in [1e-3, 7.0, 1e4] {
            let scaled = percentage_error(&set.with_all_scaled(s)).unwrap();
            assert!((scaled - base).abs() < 1e-9 * base);
        }
    }

    #[test]
    fn zero_kappa_is_undefined_error() {
        let set = reference_set(2e-9).with_loops_scaled(0.0);
        assert_eq!(percentage_error(&set), Err(Error::UndefinedPercentError));
    }

    #[test]
    fn zero_central_intensity_is_rejected() {
        let set = reference_set(2e-9);
        let mut c = set.classical().to_vec();
        c[0] = c[0].scaled(0.0);
        c[1] = c[1].scaled(0.0);
        c[2] = c[2].scaled(0.0);
        assert_eq!(
            PathSet::from_paths(2e-9, c, Vec::new(), SorkinOptions::default()),
            Err(Error::ZeroCentralIntensity)
        );
    }

    #[test]
    fn scan_layout_is_tau_major() {
        let cfg = ExperimentConfig::electron();
        let xs = [-1e-4, 0.0, 1e-4];
        let taus = [2e-9, 5e-9];
        let grid = kappa_scan(&cfg, &xs, &taus, SorkinOptions::default()).unwrap();
        assert_eq!(grid.len(), 6);
        assert_eq!((grid[4].tau, grid[4].x), (5e-9, 0.0));
        assert_eq!(kappa_scan(&cfg, &[], &taus, SorkinOptions::default()), Err(Error::EmptyGrid("x")));
    }

    #[test]
    fn single_slit_has_no_loop() {
        let opts = SorkinOptions {
            slits: Slits::One,
            ..SorkinOptions::default()
        };
        let set = PathSet::build(&ExperimentConfig::electron(), opts).unwrap();
        assert!(set.loops().is_empty());
        assert_eq!(set.kappa(1e-4), 0.0);
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-1.0, 1.0, 5);
        assert_eq!(g, [-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(linspace(3.0, 4.0, 1), [3.0]);
        assert_eq!(default_x_grid().len(), 2001);
        assert_eq!(default_tau_grid().len(), 200);
    }
}

//! Brute-force evaluation of the path integrals.
//!
//! Each amplitude is the nested integral over every intermediate plane,
//! e.g. for the loop
//!
//! ```text
//! ψ(x) = ∫ K_τ(x - x₃) F₃(x₃) K_2ε(x₃ - x₂) F₂(x₂) K_2ε(x₂ - x₁) F₁(x₁) K_t(x₁ - x₀) ψ₀(x₀)
//! ```
//!
//! integrated plane by plane: the values on the nodes of one plane are
//! pushed through the kernel onto the nodes of the next, so the cost is
//! `O(n²)` per plane rather than `O(n⁴)`. Kernels, apertures and the source
//! are evaluated pointwise. [`crate::gchain`] is used only to place each
//! window on the envelope of the integrand at that plane.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

// Float math for no_std builds; shadowed by inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::gchain::{Chain, GaussianState};
use crate::nonclassical::HopPrefactor;
use crate::params::ExperimentConfig;
use crate::{Complex, Error, Result};

/// Largest node count accepted per dimension.
pub const MAX_NODES: usize = 1025;

/// Relative change under node doubling above which a result is rejected.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rule {
    #[default]
    Trapezoid,
    GaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Window half-width per plane, in envelope widths.
    pub half_width: f64,
    /// Nodes per plane (odd, so the window centre is a node).
    pub nodes: usize,
    pub rule: Rule,
    /// Re-run with `2n - 1` nodes and fail if the result moves by more than
    /// [`CONVERGENCE_TOLERANCE`].
    pub check_convergence: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            half_width: 8.0,
            nodes: 513,
            rule: Rule::Trapezoid,
            check_convergence: true,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 3 || self.nodes.is_multiple_of(2) {
            return Err(Error::InvalidConfig {
                field: "nodes",
                reason: "must be odd and at least 3",
            });
        }
        if !(self.half_width >= 6.0) || !self.half_width.is_finite() {
            return Err(Error::InvalidConfig {
                field: "half_width",
                reason: "must be at least 6 envelope widths",
            });
        }
        let needed = if self.check_convergence {
            2 * self.nodes - 1
        } else {
            self.nodes
        };
        if needed > MAX_NODES {
            return Err(Error::QuadratureTooLarge {
                nodes: needed,
                max: MAX_NODES,
            });
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn rule_nodes(rule: Rule, lo: f64, hi: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    match rule {
        Rule::Trapezoid => {
            let h = (hi - lo) / (n - 1) as f64;
            let nodes = (0..n).map(|i| lo + h * i as f64).collect();
            let weights = (0..n)
                .map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h })
                .collect();
            (nodes, weights)
        }
        Rule::GaussLegendre => {
            let (x, w) = gauss_legendre(n);
            let (mid, half) = (0.5 * (hi + lo), 0.5 * (hi - lo));
            (
                x.iter().map(|t| mid + half * t).collect(),
                w.iter().map(|v| half * v).collect(),
            )
        }
    }
}

/// `√(m / 2πiħT)`, with `√(1/i) = e^{-iπ/4}`.
fn kernel_prefactor(mass_over_hbar: f64, duration: f64) -> Complex {
    let k = 0.5 * mass_over_hbar / duration;
    Complex::from_polar((k / PI).sqrt(), -FRAC_PI_4)
}

/// One free flight followed by an aperture (or, for the last flight, the
/// detector).
#[derive(Debug, Clone, Copy)]
struct Leg {
    duration: f64,
    with_prefactor: bool,
    /// Centre of the aperture at the end of the leg; `None` for the detector.
    slit: Option<f64>,
}

/// Samples of the integrand at one plane, already multiplied by the
/// quadrature weights.
struct Plane {
    nodes: Vec<f64>,
    values: Vec<Complex>,
}

fn source_plane(cfg: &ExperimentConfig, rule: Rule, half_width: f64, n: usize) -> Plane {
    let s = cfg.sigma0;
    let (nodes, weights) = rule_nodes(rule, -half_width * s, half_width * s, n);
    let norm = 1.0 / (s * PI.sqrt()).sqrt();
    let values = nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| Complex::new(w * norm * (-0.5 * x * x / (s * s)).exp(), 0.0))
        .collect();
    Plane { nodes, values }
}

/// `Σᵢ K_T(x - xᵢ) vᵢ` without the prefactor.
fn push(plane: &Plane, k: f64, x: f64) -> Complex {
    plane
        .nodes
        .iter()
        .zip(&plane.values)
        .map(|(&xi, &v)| {
            let dx = x - xi;
            v * Complex::from_polar(1.0, k * dx * dx)
        })
        .sum()
}

fn run(cfg: &ExperimentConfig, legs: &[Leg], xs: &[f64], spec: &QuadratureSpec, n: usize) -> Result<Vec<Complex>> {
    let mh = cfg.mass_over_hbar();
    let mut envelope = Chain::new(GaussianState::source(cfg.sigma0), mh);
    let mut plane = source_plane(cfg, spec.rule, spec.half_width, n);
    let mut out = Vec::with_capacity(xs.len());
    for leg in legs {
        let k = 0.5 * mh / leg.duration;
        let pref = if leg.with_prefactor {
            kernel_prefactor(mh, leg.duration)
        } else {
            Complex::new(1.0, 0.0)
        };
        match leg.slit {
            Some(center) => {
                envelope = envelope.propagate(leg.duration)?.slit(center, cfg.beta);
                let (mid, width) = envelope.state().envelope();
                let half = spec.half_width * width;
                let (nodes, weights) = rule_nodes(spec.rule, mid - half, mid + half, n);
                let inv = 0.5 / (cfg.beta * cfg.beta);
                let values = nodes
                    .iter()
                    .zip(&weights)
                    .map(|(&x, &w)| {
                        let aperture = (-(x - center) * (x - center) * inv).exp();
                        pref * push(&plane, k, x) * (w * aperture)
                    })
                    .collect();
                plane = Plane { nodes, values };
            }
            None => out.extend(xs.iter().map(|&x| pref * push(&plane, k, x))),
        }
    }
    Ok(out)
}

fn evaluate(cfg: &ExperimentConfig, legs: &[Leg], xs: &[f64], spec: &QuadratureSpec) -> Result<Vec<Complex>> {
    cfg.validate()?;
    spec.validate()?;
    let coarse = run(cfg, legs, xs, spec, spec.nodes)?;
    if !spec.check_convergence {
        return Ok(coarse);
    }
    let fine = run(cfg, legs, xs, spec, 2 * spec.nodes - 1)?;
    let scale = fine.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let change = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let relative = if scale > 0.0 { change / scale } else { change };
    if !(relative <= CONVERGENCE_TOLERANCE) {
        return Err(Error::NonConvergence {
            relative_change: relative,
            tolerance: CONVERGENCE_TOLERANCE,
        });
    }
    Ok(fine)
}

/// Direct path `source → slit(center) → detector` at each `x`.
pub fn quad_classical(
    cfg: &ExperimentConfig,
    slit_center: f64,
    xs: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<Complex>> {
    let legs = [
        Leg {
            duration: cfg.t,
            with_prefactor: true,
            slit: Some(slit_center),
        },
        Leg {
            duration: cfg.tau,
            with_prefactor: true,
            slit: None,
        },
    ];
    evaluate(cfg, &legs, xs, spec)
}

/// Looping path through `centers` in order, with hops of `2ε`.
pub fn quad_loop(
    cfg: &ExperimentConfig,
    epsilon: f64,
    centers: [f64; 3],
    prefactor: HopPrefactor,
    xs: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<Complex>> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidConfig {
            field: "epsilon",
            reason: "must be strictly positive",
        });
    }
    let hop = 2.0 * epsilon;
    let legs = [
        Leg {
            duration: cfg.t,
            with_prefactor: true,
            slit: Some(centers[0]),
        },
        Leg {
            duration: hop,
            with_prefactor: true,
            slit: Some(centers[1]),
        },
        Leg {
            duration: hop,
            with_prefactor: prefactor == HopPrefactor::PerHop,
            slit: Some(centers[2]),
        },
        Leg {
            duration: cfg.tau,
            with_prefactor: true,
            slit: None,
        },
    ];
    evaluate(cfg, &legs, xs, spec)
}

/// The loop +d → 0 → −d.
pub fn quad_nonclassical(
    cfg: &ExperimentConfig,
    epsilon: f64,
    prefactor: HopPrefactor,
    xs: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<Complex>> {
    quad_loop(cfg, epsilon, [cfg.d, 0.0, -cfg.d], prefactor, xs, spec)
}

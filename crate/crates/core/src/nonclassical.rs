//! The looping path source → slit 1 (+d) → slit 2 (0) → slit 3 (−d) → detector.
//!
//! Each hop between adjacent slits is free flight of duration `2ε`, which is
//! what the hop exponent `i m Δx² / 4ħε` corresponds to; the path therefore
//! reaches the last slit at `t̃ = t + 4ε`.
//!
//! Two independent routes give the Gouy phase of this path:
//!
//! * the chain built with [`crate::gchain`], and
//! * the explicit recursion `z₀ → z₆` ([`build_zchain`]), whose `z₀..z₃` are
//!   the propagation denominators of the four flights and whose
//!   `z_R + i z_I = i · conj(z₀ z₁ z₂ z₃)`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

// Float math for no_std builds; shadowed by inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::classical::{PathWavefunction, Printed, REFERENCE_PHASE};
use crate::gchain::{Chain, GaussianState};
use crate::params::ExperimentConfig;
use crate::phase::Unwrapper;
use crate::{Complex, Error, Result};

/// Normalization of the two-hop kernel between the slits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HopPrefactor {
    /// One factor `√(m / 4πiħε)` for the slit 1 → 2 → 3 kernel as a whole.
    #[default]
    Combined,
    /// A full free-particle prefactor `√(m / 2πiħ·2ε)` for each hop.
    PerHop,
}

/// The recursion `z₀ … z₆` and the composite `(z_R, z_I)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZChain {
    pub z: [Complex; 7],
    pub z_r: f64,
    pub z_i: f64,
    pub epsilon: f64,
}

fn checked_modsq(z: Complex, index: usize) -> Result<f64> {
    let m = z.norm_sqr();
    if m > 0.0 && m.is_finite() {
        Ok(m)
    } else {
        Err(Error::DegenerateZChain { index })
    }
}

/// Evaluate the z-recursion as written, component by component.
pub fn build_zchain(cfg: &ExperimentConfig, epsilon: f64) -> Result<ZChain> {
    cfg.validate()?;
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidConfig {
            field: "epsilon",
            reason: "must be strictly positive",
        });
    }
    let (m, h, t, tau, eps) = (cfg.mass, cfg.hbar, cfg.t, cfg.tau, epsilon);
    let inv_beta = 0.5 / (cfg.beta * cfg.beta);
    let hop = m * m / (16.0 * h * h * eps * eps);

    let z0 = Complex::new(0.5 / (cfg.sigma0 * cfg.sigma0), -m / (2.0 * h * t));
    let n0 = checked_modsq(z0, 0)?;
    let src = m * m / (4.0 * h * h * t * t * n0);
    let z1 = Complex::new(
        inv_beta + src * z0.re,
        -(m / (4.0 * h * eps) + m / (2.0 * h * t) + src * z0.im),
    );
    let n1 = checked_modsq(z1, 1)?;
    let z2 = Complex::new(
        inv_beta + hop * z1.re / n1,
        -(m / (2.0 * h * eps) + hop * z1.im / n1),
    );
    let n2 = checked_modsq(z2, 2)?;
    let z3 = Complex::new(
        inv_beta + hop * z2.re / n2,
        -(m / (2.0 * h * tau) + m / (4.0 * h * eps) + hop * z2.im / n2),
    );
    checked_modsq(z3, 3)?;

    let (r1, i1, r2, i2, r3, i3) = (z1.re, z1.im, z2.re, z2.im, z3.re, z3.im);
    let z4 = Complex::new(
        r1 * r1 * r2 - i1 * i1 * r2 - 2.0 * r1 * i1 * i2,
        r1 * r1 * i2 - i1 * i1 * i2 + 2.0 * r1 * i1 * r2,
    );
    let even = r1 * r1 * r2 * r2 - r1 * r1 * i2 * i2 - i1 * i1 * r2 * r2 + i1 * i1 * i2 * i2
        - 4.0 * r1 * i1 * r2 * i2;
    let odd = r1 * r1 * r2 * i2 - i1 * i1 * r2 * i2 + r1 * i1 * r2 * r2 - r1 * i1 * i2 * i2;
    let z5 = Complex::new(r3 * even - 2.0 * i3 * odd, i3 * even + 2.0 * r3 * odd);
    let z6 = Complex::new(
        r1 * r2 * r3 - r1 * i2 * i3 - i1 * r2 * i3 - i1 * i2 * r3,
        r1 * r2 * i3 + r1 * i2 * r3 + i1 * r2 * r3 - i1 * i2 * i3,
    );
    for (index, z) in [(4, z4), (5, z5), (6, z6)] {
        checked_modsq(z, index)?;
    }

    let (r0, i0) = (z0.re, z0.im);
    let left_r = r0 * r1 - i0 * i1;
    let left_i = r0 * i1 + i0 * r1;
    let right_r = r2 * r3 - i2 * i3;
    let right_i = r2 * i3 + i2 * r3;
    let z_r = left_r * right_i + left_i * right_r;
    let z_i = left_r * right_r - left_i * right_i;
    if !(z_r * z_r + z_i * z_i > 0.0) {
        return Err(Error::DegenerateZChain { index: 7 });
    }

    Ok(ZChain {
        z: [z0, z1, z2, z3, z4, z5, z6],
        z_r,
        z_i,
        epsilon,
    })
}

/// `μ_nc = ½ arctan(z_I / z_R)`, principal branch `(−π/4, π/4]`.
pub fn gouy_nc(z: &ZChain) -> f64 {
    if z.z_r == 0.0 {
        return FRAC_PI_4.copysign(z.z_i);
    }
    0.5 * (z.z_i / z.z_r).atan()
}

/// z-chain Gouy phase along a τ scan, unwrapped in τ order.
#[derive(Debug, Clone, PartialEq)]
pub struct GouyScan {
    pub values: Vec<f64>,
    /// Indices where `z_R` changed sign, i.e. where the principal
    /// arctangent jumped.
    pub branch_warnings: Vec<usize>,
}

pub fn zchain_gouy_scan(cfg: &ExperimentConfig, epsilon: f64, taus: &[f64]) -> Result<GouyScan> {
    if taus.is_empty() {
        return Err(Error::EmptyGrid("tau"));
    }
    let mut unwrap = Unwrapper::half_angle();
    let mut values = Vec::with_capacity(taus.len());
    let mut branch_warnings = Vec::new();
    let mut last_sign: Option<bool> = None;
    for (i, &tau) in taus.iter().enumerate() {
        let z = build_zchain(&cfg.with_tau(tau), epsilon)?;
        let sign = z.z_r >= 0.0;
        if last_sign.is_some_and(|s| s != sign) {
            branch_warnings.push(i);
        }
        last_sign = Some(sign);
        values.push(unwrap.update(gouy_nc(&z)));
    }
    Ok(GouyScan {
        values,
        branch_warnings,
    })
}

/// Decomposed looping-path amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcPathWavefunction {
    pub wave: PathWavefunction,
    pub epsilon: f64,
    /// Arrival time at the last slit, `t̃ = t + 4ε`.
    pub elapsed: f64,
    /// Slit centres in visiting order.
    pub centers: [f64; 3],
    pub prefactor: HopPrefactor,
}

impl NcPathWavefunction {
    pub fn evaluate(&self, x: f64) -> Complex {
        self.wave.evaluate(x)
    }

    pub fn evaluate_state(&self, x: f64) -> Complex {
        self.wave.evaluate_state(x)
    }

    pub fn mu(&self) -> f64 {
        self.wave.mu
    }
}

/// `propagate(t) → slit(c₁) → propagate(2ε) → slit(c₂) → propagate(2ε) →
/// slit(c₃) → propagate(τ)`.
pub fn nonclassical_chain(
    cfg: &ExperimentConfig,
    epsilon: f64,
    centers: [f64; 3],
    prefactor: HopPrefactor,
) -> Result<Chain> {
    cfg.validate()?;
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidConfig {
            field: "epsilon",
            reason: "must be strictly positive",
        });
    }
    let hop = 2.0 * epsilon;
    let mut chain = Chain::new(GaussianState::source(cfg.sigma0), cfg.mass_over_hbar())
        .propagate(cfg.t)?
        .slit(centers[0], cfg.beta)
        .propagate(hop)?
        .slit(centers[1], cfg.beta)
        .propagate(hop)?;
    if prefactor == HopPrefactor::Combined {
        // remove one hop's √(m/4πiħε)
        let k = 0.5 * cfg.mass_over_hbar() / hop;
        chain = chain.scale(Complex::new(-0.5 * (k / PI).ln(), FRAC_PI_4))?;
    }
    chain.slit(centers[2], cfg.beta).propagate(cfg.tau)
}

fn build_loop(
    cfg: &ExperimentConfig,
    epsilon: f64,
    centers: [f64; 3],
    prefactor: HopPrefactor,
) -> Result<NcPathWavefunction> {
    let displaced = nonclassical_chain(cfg, epsilon, centers, prefactor)?;
    let centred = nonclassical_chain(cfg, epsilon, [0.0; 3], prefactor)?;
    Ok(NcPathWavefunction {
        wave: PathWavefunction::from_chains(&displaced, &centred, centers[0])?,
        epsilon,
        elapsed: cfg.t + 4.0 * epsilon,
        centers,
        prefactor,
    })
}

/// The loop +d → 0 → −d.
pub fn build_nonclassical_path(
    cfg: &ExperimentConfig,
    epsilon: f64,
    prefactor: HopPrefactor,
) -> Result<NcPathWavefunction> {
    build_loop(cfg, epsilon, [cfg.d, 0.0, -cfg.d], prefactor)
}

/// The reverse loop −d → 0 → +d.
pub fn build_mirror_path(
    cfg: &ExperimentConfig,
    epsilon: f64,
    prefactor: HopPrefactor,
) -> Result<NcPathWavefunction> {
    build_loop(cfg, epsilon, [-cfg.d, 0.0, cfg.d], prefactor)
}

/// Published closed forms for the looping path, evaluated literally from
/// the z-chain. The printed quadratic phase carries a spurious `x²` and is
/// exposed through [`AppendixNc::alpha_literal`] only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppendixNc {
    pub amp: Printed,
    pub c1: Printed,
    pub c2: Printed,
    pub c3: Printed,
    pub gamma: Printed,
    pub theta: Printed,
    pub mu: Printed,
    z3: Complex,
}

impl AppendixNc {
    pub fn alpha_literal(&self, cfg: &ExperimentConfig, x: f64) -> Printed {
        let (m, h, tau) = (cfg.mass, cfg.hbar, cfg.tau);
        let z3 = self.z3;
        Printed {
            value: m * x * x / (2.0 * h * tau) + m * m * z3.im / (4.0 * h * h * tau * tau * z3.norm_sqr()),
            reliable: false,
        }
    }
}

pub fn appendix_nc_coefficients(cfg: &ExperimentConfig, epsilon: f64) -> Result<AppendixNc> {
    let zc = build_zchain(cfg, epsilon)?;
    let [_, z1, _, z3, z4, z5, z6] = zc.z;
    let (m, h, b, d, t, tau, eps) = (cfg.mass, cfg.hbar, cfg.beta, cfg.d, cfg.t, cfg.tau, epsilon);
    let (b2, b4) = (b * b, b * b * b * b);
    let over = |z: Complex| z / z.norm_sqr();
    let (w1, w3, w4, w5, w6) = (over(z1), over(z3), over(z4), over(z5), over(z6));

    let amp = (m * m * m * PI.sqrt()
        / (16.0 * h * h * h * tau * t * eps * cfg.sigma0 * zc.z_r.hypot(zc.z_i)))
    .sqrt();
    let c1 = m * m * w3.re / (4.0 * h * h * tau * tau);
    let lin = |w6c: f64, w3c: f64| {
        m * m * m * d * w6c / (32.0 * h * h * h * b2 * tau * eps * eps) + m * d * w3c / (2.0 * h * tau * b2)
    };
    let offset = |w1c: f64, w4c: f64, w5c: f64, w6c: f64, w3c: f64| {
        let dd = d * d / b4;
        dd * w1c / 4.0 - m * m * dd * w4c / (64.0 * h * h * eps * eps)
            + m.powi(4) * dd * w5c / (1024.0 * h.powi(4) * eps.powi(4))
            + m * m * dd * w6c / (32.0 * eps * eps * h * h)
            + dd * w3c / 4.0
    };

    Ok(AppendixNc {
        amp: Printed {
            value: amp,
            reliable: true,
        },
        c1: Printed {
            value: c1,
            reliable: true,
        },
        c2: Printed {
            value: lin(w6.im, w3.im),
            reliable: true,
        },
        c3: Printed {
            value: offset(w1.re, w4.re, w5.re, w6.re, w3.re) - d * d / b2,
            reliable: true,
        },
        gamma: Printed {
            value: lin(w6.re, w3.re),
            reliable: true,
        },
        theta: Printed {
            value: offset(w1.im, w4.im, w5.im, w6.im, w3.im),
            reliable: true,
        },
        mu: Printed {
            value: gouy_nc(&zc),
            reliable: true,
        },
        z3,
    })
}

/// Gouy phase of the looping path measured from the chain, on the same
/// reference as the direct paths.
pub fn chain_gouy_nc(cfg: &ExperimentConfig, epsilon: f64, prefactor: HopPrefactor) -> Result<f64> {
    nonclassical_chain(cfg, epsilon, [cfg.d, 0.0, -cfg.d], prefactor)?
        .log()
        .gouy_relative(REFERENCE_PHASE)
}

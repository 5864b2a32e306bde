//! The three direct paths source → slit → detector.
//!
//! Each path is the chain `propagate(t) → slit(center, β) → propagate(τ)`.
//! Its final Gaussian is decomposed as
//!
//! ```text
//! ψ(x) = A exp(-C₁x² + C₂x + C₃) · exp(i(αx² + γx - θ + μ + φ_ref))
//! ```
//!
//! with signed `C₂`, `γ` (so the slit at `-d` carries negative values), a
//! displacement phase `θ` that vanishes for the centred slit, and the Gouy
//! phase `μ`. `φ_ref` = [`REFERENCE_PHASE`] is the common phase of two
//! `√(1/i)` kernel prefactors; measuring every path's Gouy phase against it
//! leaves the centred path with phase `μ` alone.

use core::f64::consts::{FRAC_PI_2, PI};

// Float math for no_std builds; shadowed by inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::gchain::{Chain, GaussianState};
use crate::params::{derived_scales, ExperimentConfig};
use crate::{Complex, Result};

/// Phase of the two kernel prefactors `√(1/i)²` of a direct path.
pub const REFERENCE_PHASE: f64 = -FRAC_PI_2;

/// Decomposed closed form of one path amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathWavefunction {
    /// Normalization A (amplitude of the same chain with undisplaced slits).
    pub amp: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub alpha_quad: f64,
    pub gamma: f64,
    pub theta: f64,
    /// Gouy phase relative to [`REFERENCE_PHASE`].
    pub mu: f64,
    /// Centre of the (first) slit the path goes through.
    pub slit_center: f64,
    /// The chain-built Gaussian the coefficients were read from.
    pub state: GaussianState,
}

impl PathWavefunction {
    /// Decompose `displaced` using `centred`, the same chain with every slit
    /// centre set to zero.
    pub(crate) fn from_chains(displaced: &Chain, centred: &Chain, slit_center: f64) -> Result<Self> {
        let s = displaced.state();
        let s0 = centred.state();
        let mu = displaced.log().gouy_relative(REFERENCE_PHASE)?;
        Ok(Self {
            amp: s0.c.re.exp(),
            c1: s.a.re,
            c2: s.b.re,
            c3: s.c.re - s0.c.re,
            alpha_quad: -s.a.im,
            gamma: s.b.im,
            theta: s0.c.im - s.c.im,
            mu,
            slit_center,
            state: *s,
        })
    }

    /// `|ψ(x)|` from the magnitude coefficients.
    pub fn magnitude(&self, x: f64) -> f64 {
        self.amp * (-self.c1 * x * x + self.c2 * x + self.c3).exp()
    }

    /// Unwrapped phase of `ψ(x)` from the phase coefficients.
    pub fn phase(&self, x: f64) -> f64 {
        self.alpha_quad * x * x + self.gamma * x - self.theta + self.mu + REFERENCE_PHASE
    }

    /// `ψ(x)` reassembled from the coefficients.
    pub fn evaluate(&self, x: f64) -> Complex {
        Complex::from_polar(self.magnitude(x), self.phase(x))
    }

    /// `ψ(x)` straight from the chain state.
    pub fn evaluate_state(&self, x: f64) -> Complex {
        self.state.evaluate(x)
    }

    /// Width of the `|ψ|` envelope on the screen.
    pub fn screen_width(&self) -> f64 {
        self.state.envelope().1
    }

    /// The path reflected through `x = 0`.
    pub fn mirrored(&self) -> Self {
        Self {
            c2: -self.c2,
            gamma: -self.gamma,
            slit_center: -self.slit_center,
            state: self.state.mirrored(),
            ..*self
        }
    }

    /// Same path with every amplitude multiplied by `factor` (used for
    /// scaling studies).
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = *self;
        out.amp *= factor;
        out.state.c.re += factor.ln();
        out
    }
}

/// `propagate(t) → slit(center, β) → propagate(τ)` from the source packet.
pub fn classical_chain(cfg: &ExperimentConfig, slit_center: f64) -> Result<Chain> {
    cfg.validate()?;
    Chain::new(GaussianState::source(cfg.sigma0), cfg.mass_over_hbar())
        .propagate(cfg.t)?
        .slit(slit_center, cfg.beta)
        .propagate(cfg.tau)
}

pub fn build_classical_path(cfg: &ExperimentConfig, slit_center: f64) -> Result<PathWavefunction> {
    let displaced = classical_chain(cfg, slit_center)?;
    let centred = classical_chain(cfg, 0.0)?;
    PathWavefunction::from_chains(&displaced, &centred, slit_center)
}

/// ψ₁, ψ₂, ψ₃ for slits at `-d`, `0`, `+d`.
pub fn build_classical_paths(cfg: &ExperimentConfig) -> Result<[PathWavefunction; 3]> {
    let centred = classical_chain(cfg, 0.0)?;
    let minus = classical_chain(cfg, -cfg.d)?;
    let plus = classical_chain(cfg, cfg.d)?;
    Ok([
        PathWavefunction::from_chains(&minus, &centred, -cfg.d)?,
        PathWavefunction::from_chains(&centred, &centred, 0.0)?,
        PathWavefunction::from_chains(&plus, &centred, cfg.d)?,
    ])
}

/// A coefficient evaluated from a printed closed form, with a flag for
/// formulas that are dimensionally inconsistent as printed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Printed {
    pub value: f64,
    pub reliable: bool,
}

impl Printed {
    fn ok(value: f64) -> Self {
        Self {
            value,
            reliable: true,
        }
    }

    fn flagged(value: f64) -> Self {
        Self {
            value,
            reliable: false,
        }
    }
}

/// The published closed forms for the direct paths, evaluated literally.
///
/// `c2` follows the sign of the `-d` slit's linear coefficient. `c3` carries
/// `β²` where dimensional consistency needs `β⁴` and is flagged. The printed
/// quadratic phase contains an `x²` inside a coefficient of `x²`; see
/// [`Appendix1::alpha_literal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Appendix1 {
    pub amp: Printed,
    pub c1: Printed,
    pub c2: Printed,
    pub c3: Printed,
    pub gamma: Printed,
    pub theta: Printed,
    pub mu: Printed,
    /// 𝒜 (1/m²).
    pub script_a: f64,
    /// ℬ (1/m²).
    pub script_b: f64,
    /// Denominator of the μ_c arctangent; a sign change across a scan means
    /// the principal arctangent jumped by π.
    pub mu_denominator: f64,
}

impl Appendix1 {
    /// Printed `α = m x²/2ħτ + m β² C₂/2ħτ` at detector position `x`.
    pub fn alpha_literal(cfg: &ExperimentConfig, c2: f64, x: f64) -> Printed {
        let r = cfg.mass / (2.0 * cfg.hbar * cfg.tau);
        Printed::flagged(r * x * x + r * cfg.beta * cfg.beta * c2)
    }
}

pub fn appendix1_coefficients(cfg: &ExperimentConfig) -> Result<Appendix1> {
    let tau0 = derived_scales(cfg)?.tau0;
    let &ExperimentConfig {
        mass: m,
        hbar: h,
        sigma0: s0,
        beta: b,
        d,
        t,
        tau,
        ..
    } = cfg;
    let (s2, b2) = (s0 * s0, b * b);

    let bracket = {
        let first = m * m / (4.0 * h * h * t * tau) - 1.0 / (4.0 * b2 * s2);
        let inner = 1.0 / (b2 * t) + 1.0 / (s2 * t) + 1.0 / (s2 * tau);
        first * first + m * m / (16.0 * h * h) * inner * inner
    };
    let amp = m / (2.0 * h * (PI.sqrt() * t * tau * s0).sqrt()) * bracket.powf(-0.25);

    let spread = h * h * t * t + m * m * s2 * s2;
    let script_a = 0.5 / b2 + m * m * s2 / (2.0 * spread);
    let script_b = m * m * m * s2 * s2 / (2.0 * h * t * spread) - m / (2.0 * h * t) - m / (2.0 * h * tau);
    let modsq = script_a * script_a + script_b * script_b;

    let c1 = m * m / (h * h * tau * tau) * script_a / (4.0 * modsq);
    let c2 = 2.0 * m * d / (h * tau * b2) * script_b / (4.0 * modsq);
    let c3 = -d * d / (2.0 * b2) + h * h * tau * tau * d * d / (m * m * b2) * c1;
    let gamma = 2.0 * d * h * tau / (m * b2) * c1;
    let theta = h * tau * d / (2.0 * m * b2) * c2;

    let numerator = t + tau * (1.0 + s2 / b2);
    let mu_denominator = tau0 * (1.0 - t * tau * s2 / (tau0 * tau0 * b2));
    let mu = -0.5 * (numerator / mu_denominator).atan();

    Ok(Appendix1 {
        amp: Printed::ok(amp),
        c1: Printed::ok(c1),
        c2: Printed::ok(c2),
        c3: Printed::flagged(c3),
        gamma: Printed::ok(gamma),
        theta: Printed::ok(theta),
        mu: Printed::ok(mu),
        script_a,
        script_b,
        mu_denominator,
    })
}

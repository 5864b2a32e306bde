//! Exact algebra of complex Gaussians under free propagation and Gaussian
//! apertures.
//!
//! A state `ψ(x) = exp(-a x² + b x + c)` with `Re a > 0` stays Gaussian
//! when it is
//!
//! * propagated freely for a time `T` with the kernel
//!   `K(x, x') = √(m / 2πiħT) exp(i m (x - x')² / 2ħT)`, or
//! * multiplied by a slit transmission `exp(-(x - x_s)² / 2β²)`.
//!
//! Propagation completes the square in the integration variable. With
//! `k = m / 2ħT` and `p = a - i k`,
//!
//! ```text
//! a' = -i k a / p,   b' = -i k b / p,   c' = c + b² / 4p + ln(e^{-iπ/4} √(k/p))
//! ```
//!
//! The prefactor's phase `-π/4 - arg(p)/2` lies in `(-π/2, 0)` because
//! `Re p = Re a > 0`, so summing it step by step tracks the Gouy phase
//! without branch jumps. Each step is recorded in a [`ChainLog`].

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI};

// Float math for no_std builds; shadowed by inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Complex, Error, Result};

/// Smallest modulus accepted for the propagation denominator `p`.
pub const MIN_DENOMINATOR: f64 = 1e-300;

/// `ψ(x) = exp(-a x² + b x + c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    /// Complex curvature (1/m²).
    pub a: Complex,
    /// Complex linear coefficient (1/m).
    pub b: Complex,
    /// Complex log-amplitude.
    pub c: Complex,
}

impl GaussianState {
    pub fn new(a: Complex, b: Complex, c: Complex) -> Result<Self> {
        let state = Self { a, b, c };
        state.check()?;
        Ok(state)
    }

    /// The normalized source packet `(σ₀√π)^{-1/2} exp(-x²/2σ₀²)`.
    pub fn source(sigma0: f64) -> Self {
        Self {
            a: Complex::new(0.5 / (sigma0 * sigma0), 0.0),
            b: Complex::new(0.0, 0.0),
            c: Complex::new(-0.5 * (sigma0 * PI.sqrt()).ln(), 0.0),
        }
    }

    fn check(&self) -> Result<()> {
        if self.a.re > 0.0 && self.a.re.is_finite() {
            Ok(())
        } else {
            Err(Error::NotNormalizable { re_a: self.a.re })
        }
    }

    pub fn evaluate(&self, x: f64) -> Complex {
        (-self.a * x * x + self.b * x + self.c).exp()
    }

    /// `∫ |ψ|² dx`, in closed form.
    pub fn norm(&self) -> f64 {
        let re_a = self.a.re;
        (2.0 * self.c.re + self.b.re * self.b.re / (2.0 * re_a)).exp() * (PI / (2.0 * re_a)).sqrt()
    }

    /// Centre and standard width of the envelope `|ψ(x)|`, which is
    /// proportional to `exp(-(x - centre)² / 2 width²)`.
    pub fn envelope(&self) -> (f64, f64) {
        let re_a = self.a.re;
        (self.b.re / (2.0 * re_a), (0.5 / re_a).sqrt())
    }

    /// The state reflected through `x = 0`.
    pub fn mirrored(&self) -> Self {
        Self { b: -self.b, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepKind {
    Propagate { duration: f64 },
    Slit { center: f64, width: f64 },
    /// Multiplication by a constant, e.g. a non-standard kernel normalization.
    Scale,
}

/// One recorded chain operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub kind: StepKind,
    /// Logarithm of the constant factor the step multiplies into the state.
    /// Its imaginary part is the step's phase contribution.
    pub log_factor: Complex,
    /// `p = a - i m/2ħT` for propagation steps, `1` otherwise.
    pub width_factor: Complex,
}

impl Step {
    pub fn factor(&self) -> Complex {
        self.log_factor.exp()
    }

    pub fn phase(&self) -> f64 {
        self.log_factor.im
    }
}

/// Free evolution for `duration` seconds.
///
/// `duration == 0` is the identity (the kernel tends to a delta function).
pub fn propagate(
    state: &GaussianState,
    duration: f64,
    mass_over_hbar: f64,
) -> Result<(GaussianState, Step)> {
    state.check()?;
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(Error::InvalidConfig {
            field: "duration",
            reason: "must be finite and non-negative",
        });
    }
    let kind = StepKind::Propagate { duration };
    if duration == 0.0 {
        let step = Step {
            kind,
            log_factor: Complex::new(0.0, 0.0),
            width_factor: Complex::new(1.0, 0.0),
        };
        return Ok((*state, step));
    }
    let k = 0.5 * mass_over_hbar / duration;
    let p = state.a - Complex::new(0.0, k);
    let modulus = p.norm();
    if !(modulus >= MIN_DENOMINATOR) {
        return Err(Error::DegenerateCurvature { modulus });
    }
    let minus_ik_over_p = Complex::new(0.0, -k) / p;
    let log_factor = Complex::new(0.5 * (k / modulus).ln(), -FRAC_PI_4 - 0.5 * p.arg());
    let next = GaussianState {
        a: minus_ik_over_p * state.a,
        b: minus_ik_over_p * state.b,
        c: state.c + state.b * state.b / (4.0 * p) + log_factor,
    };
    next.check()?;
    Ok((
        next,
        Step {
            kind,
            log_factor,
            width_factor: p,
        },
    ))
}

/// Multiply by the Gaussian aperture `exp(-(x - center)² / 2 width²)`.
pub fn apply_slit(state: &GaussianState, center: f64, width: f64) -> GaussianState {
    let inv = 1.0 / (width * width);
    GaussianState {
        a: state.a + 0.5 * inv,
        b: state.b + center * inv,
        c: state.c - 0.5 * center * center * inv,
    }
}

/// Ordered record of the operations applied to an initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainLog {
    initial: GaussianState,
    mass_over_hbar: f64,
    steps: Vec<Step>,
}

impl ChainLog {
    pub fn initial(&self) -> &GaussianState {
        &self.initial
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Accumulated phase of all step factors, summed step by step.
    pub fn gouy_phase(&self) -> Result<f64> {
        let mut total = 0.0;
        for step in &self.steps {
            let phase = step.phase();
            if phase.abs() >= PI {
                return Err(Error::BranchAmbiguity { step_phase: phase });
            }
            total += phase;
        }
        Ok(total)
    }

    /// Gouy phase measured against a fixed reference phase.
    pub fn gouy_relative(&self, reference: f64) -> Result<f64> {
        Ok(self.gouy_phase()? - reference)
    }

    /// Product of all step factors.
    pub fn amplitude(&self) -> Complex {
        self.steps
            .iter()
            .map(|s| s.log_factor)
            .fold(Complex::new(0.0, 0.0), |acc, l| acc + l)
            .exp()
    }

    /// Product of the propagation denominators `p` along the chain.
    pub fn width_product(&self) -> Complex {
        self.steps
            .iter()
            .fold(Complex::new(1.0, 0.0), |acc, s| acc * s.width_factor)
    }

    /// Width factors of the propagation steps, in order.
    pub fn propagation_denominators(&self) -> Vec<Complex> {
        self.steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Propagate { duration } if duration > 0.0))
            .map(|s| s.width_factor)
            .collect()
    }

    /// Total free-flight time along the chain.
    pub fn elapsed(&self) -> f64 {
        self.steps
            .iter()
            .map(|s| match s.kind {
                StepKind::Propagate { duration } => duration,
                _ => 0.0,
            })
            .sum()
    }

    /// Re-run the recorded steps from the initial state.
    pub fn replay(&self) -> Result<GaussianState> {
        let mut chain = Chain::new(self.initial, self.mass_over_hbar);
        for step in &self.steps {
            chain = match step.kind {
                StepKind::Propagate { duration } => chain.propagate(duration)?,
                StepKind::Slit { center, width } => chain.slit(center, width),
                StepKind::Scale => chain.scale(step.log_factor)?,
            };
        }
        Ok(chain.state)
    }
}

/// A state together with the log of how it was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    state: GaussianState,
    log: ChainLog,
}

impl Chain {
    pub fn new(initial: GaussianState, mass_over_hbar: f64) -> Self {
        Self {
            state: initial,
            log: ChainLog {
                initial,
                mass_over_hbar,
                steps: Vec::new(),
            },
        }
    }

    pub fn state(&self) -> &GaussianState {
        &self.state
    }

    pub fn log(&self) -> &ChainLog {
        &self.log
    }

    pub fn into_parts(self) -> (GaussianState, ChainLog) {
        (self.state, self.log)
    }

    pub fn propagate(mut self, duration: f64) -> Result<Self> {
        let (state, step) = propagate(&self.state, duration, self.log.mass_over_hbar)?;
        self.state = state;
        self.log.steps.push(step);
        Ok(self)
    }

    pub fn slit(mut self, center: f64, width: f64) -> Self {
        self.state = apply_slit(&self.state, center, width);
        self.log.steps.push(Step {
            kind: StepKind::Slit { center, width },
            log_factor: Complex::new(0.0, 0.0),
            width_factor: Complex::new(1.0, 0.0),
        });
        self
    }

    /// Multiply by `exp(log_factor)`.
    pub fn scale(mut self, log_factor: Complex) -> Result<Self> {
        if log_factor.im.abs() >= PI {
            return Err(Error::BranchAmbiguity {
                step_phase: log_factor.im,
            });
        }
        self.state.c += log_factor;
        self.log.steps.push(Step {
            kind: StepKind::Scale,
            log_factor,
            width_factor: Complex::new(1.0, 0.0),
        });
        Ok(self)
    }

    pub fn gouy_phase(&self) -> Result<f64> {
        self.log.gouy_phase()
    }
}

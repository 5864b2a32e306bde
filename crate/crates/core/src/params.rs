//! Physical parameters of the interferometer and the scales derived from them.
//!
//! All quantities are SI. The source packet is the minimum-uncertainty
//! Gaussian `ψ₀(x) = (σ₀√π)^{-1/2} exp(-x²/2σ₀²)`, so its momentum spread is
//! `Δp = ħ/(√2 σ₀)` and the looping path's inter-slit time is
//! `ε = d/Δv = √2 m d σ₀ / ħ`.

use core::f64::consts::SQRT_2;

use crate::{Error, Result};

/// Reduced Planck constant (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Electron rest mass as used for the reference electron setup.
pub const ELECTRON_MASS: f64 = 9.11e-31;

/// How the inter-slit time ε of the looping path is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonPolicy {
    /// ε = d / Δv_x of the source packet.
    Auto,
    /// Fixed ε in seconds.
    Explicit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    /// Particle mass (kg).
    pub mass: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Width σ₀ of the source packet (m).
    pub sigma0: f64,
    /// Gaussian slit width β (m).
    pub beta: f64,
    /// Centre-to-centre slit separation d (m).
    pub d: f64,
    /// Flight time source → slits (s).
    pub t: f64,
    /// Flight time slits → detector (s).
    pub tau: f64,
    pub epsilon: EpsilonPolicy,
}

/// Scales that follow from a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedScales {
    /// Spreading time τ₀ = m σ₀² / ħ (s).
    pub tau0: f64,
    /// Momentum uncertainty Δp_x (kg·m/s).
    pub delta_p: f64,
    /// Velocity uncertainty Δv_x = Δp_x / m (m/s).
    pub delta_v: f64,
}

impl ExperimentConfig {
    /// The electron setup: m = 9.11e-31 kg, d = 650 nm, β = σ₀ = 62 nm,
    /// t = 18 ns, τ = 15 ns, automatic ε.
    pub fn electron() -> Self {
        Self {
            mass: ELECTRON_MASS,
            hbar: HBAR,
            sigma0: 62e-9,
            beta: 62e-9,
            d: 650e-9,
            t: 18e-9,
            tau: 15e-9,
            epsilon: EpsilonPolicy::Auto,
        }
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mass", self.mass),
            ("hbar", self.hbar),
            ("sigma0", self.sigma0),
            ("beta", self.beta),
            ("d", self.d),
            ("t", self.t),
            ("tau", self.tau),
        ];
        for (field, value) in positive {
            if !value.is_finite() {
                return Err(Error::InvalidConfig {
                    field,
                    reason: "must be finite",
                });
            }
            if value <= 0.0 {
                return Err(Error::InvalidConfig {
                    field,
                    reason: "must be strictly positive",
                });
            }
        }
        if let EpsilonPolicy::Explicit(eps) = self.epsilon {
            if !eps.is_finite() || eps <= 0.0 {
                return Err(Error::InvalidConfig {
                    field: "epsilon",
                    reason: "must be strictly positive",
                });
            }
        }
        Ok(())
    }

    /// `m / ħ`, the only combination the propagators need (s/m²).
    pub fn mass_over_hbar(&self) -> f64 {
        self.mass / self.hbar
    }
}

pub fn derived_scales(cfg: &ExperimentConfig) -> Result<DerivedScales> {
    cfg.validate()?;
    let delta_p = cfg.hbar / (SQRT_2 * cfg.sigma0);
    Ok(DerivedScales {
        tau0: cfg.mass * cfg.sigma0 * cfg.sigma0 / cfg.hbar,
        delta_p,
        delta_v: delta_p / cfg.mass,
    })
}

/// Time the looping path spends between adjacent slits.
pub fn estimate_epsilon(cfg: &ExperimentConfig) -> Result<f64> {
    cfg.validate()?;
    match cfg.epsilon {
        EpsilonPolicy::Explicit(eps) => Ok(eps),
        EpsilonPolicy::Auto => {
            let scales = derived_scales(cfg)?;
            Ok(cfg.d / scales.delta_v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn electron_epsilon_is_half_a_nanosecond() {
        let eps = estimate_epsilon(&ExperimentConfig::electron()).unwrap();
        assert!(rel(eps, 0.492e-9) < 5e-3, "eps = {eps:e}");
        // closed form √2 m d σ₀ / ħ
        let cfg = ExperimentConfig::electron();
        let direct = SQRT_2 * cfg.mass * cfg.d * cfg.sigma0 / cfg.hbar;
        assert!(rel(eps, direct) < 1e-15);
    }

    #[test]
    fn explicit_epsilon_passes_through() {
        let cfg = ExperimentConfig {
            epsilon: EpsilonPolicy::Explicit(1.0e-9),
            ..ExperimentConfig::electron()
        };
        assert_eq!(estimate_epsilon(&cfg).unwrap(), 1.0e-9);
    }

    #[test]
    fn epsilon_scales_linearly_with_d() {
        let cfg = ExperimentConfig::electron();
        let e1 = estimate_epsilon(&cfg).unwrap();
        let e2 = estimate_epsilon(&ExperimentConfig { d: 2.0 * cfg.d, ..cfg }).unwrap();
        assert_eq!(e2, 2.0 * e1);
    }

    #[test]
    fn tau0_for_electron() {
        let s = derived_scales(&ExperimentConfig::electron()).unwrap();
        // 9.11e-31 * (62e-9)^2 / 1.054571817e-34
        assert!(rel(s.tau0, 3.320_669_055_960_557_5e-11) < 1e-12, "{:e}", s.tau0);
        assert!(rel(s.tau0, 3.32e-11) < 1e-3);
    }

    #[test]
    fn tau0_is_quadratic_in_sigma0() {
        let cfg = ExperimentConfig::electron();
        let a = derived_scales(&cfg).unwrap().tau0;
        let b = derived_scales(&ExperimentConfig {
            sigma0: 2.0 * cfg.sigma0,
            ..cfg
        })
        .unwrap()
        .tau0;
        assert!(rel(b, 4.0 * a) < 1e-15);
    }

    #[test]
    fn minimum_uncertainty_product() {
        let cfg = ExperimentConfig::electron();
        let s = derived_scales(&cfg).unwrap();
        let spread_x = cfg.sigma0 / SQRT_2;
        assert!(rel(s.delta_p * spread_x, cfg.hbar / 2.0) < 1e-15);
        assert!(rel(s.delta_v, s.delta_p / cfg.mass) < 1e-15);
    }

    #[test]
    fn rejects_non_positive_fields() {
        let bad = ExperimentConfig {
            beta: 0.0,
            ..ExperimentConfig::electron()
        };
        assert_eq!(
            bad.validate(),
            Err(Error::InvalidConfig {
                field: "beta",
                reason: "must be strictly positive"
            })
        );
        let bad_eps = ExperimentConfig {
            epsilon: EpsilonPolicy::Explicit(-1.0),
            ..ExperimentConfig::electron()
        };
        assert!(estimate_epsilon(&bad_eps).is_err());
        let nan = ExperimentConfig {
            t: f64::NAN,
            ..ExperimentConfig::electron()
        };
        assert!(nan.validate().is_err());
    }
}

//! Branch handling for phases that are only defined modulo a period.
//!
//! The Gouy phases of the model come out of half-angle arctangents, so they
//! are ambiguous modulo π/2; the raw arguments of complex numbers are
//! ambiguous modulo 2π.

use core::f64::consts::{FRAC_PI_2, PI};
// Float math for no_std builds; shadowed by inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

/// Wrap `x` into `(-period/2, period/2]`.
pub fn wrap(x: f64, period: f64) -> f64 {
    let half = 0.5 * period;
    let mut y = x - period * (x / period).round();
    if y <= -half {
        y += period;
    } else if y > half {
        y -= period;
    }
    y
}

/// Wrap an angle into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    wrap(x, 2.0 * PI)
}

/// True when `a` and `b` agree modulo `period` to within `tol`.
pub fn congruent(a: f64, b: f64, period: f64, tol: f64) -> bool {
    wrap(a - b, period).abs() <= tol
}

/// Sequential phase unwrapper.
///
/// Feeds wrapped samples one at a time and returns the continuous value:
/// each new sample is shifted by the multiple of `period` that brings it
/// closest to the previous output.
#[derive(Debug, Clone, Copy)]
pub struct Unwrapper {
    period: f64,
    last: Option<f64>,
}

impl Unwrapper {
    pub fn new(period: f64) -> Self {
        Self { period, last: None }
    }

    /// Unwrapper for half-angle arctangents (period π/2).
    pub fn half_angle() -> Self {
        Self::new(FRAC_PI_2)
    }

    pub fn update(&mut self, x: f64) -> f64 {
        let y = match self.last {
            None => x,
            Some(prev) => prev + wrap(x - prev, self.period),
        };
        self.last = Some(y);
        y
    }
}

/// Unwrap a whole sequence in place.
pub fn unwrap_in_place(values: &mut [f64], period: f64) {
    let mut u = Unwrapper::new(period);
    for v in values.iter_mut() {
        *v = u.update(*v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn wrap_lands_in_half_open_interval() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI + 0.1) - (-PI + 0.1)).abs() < 1e-12);
        assert!((wrap(1.0, FRAC_PI_2) - (1.0 - FRAC_PI_2)).abs() < 1e-15);
    }

    #[test]
    fn unwrap_removes_jumps() {
        let truth: Vec<f64> = (0..200).map(|i| -0.3 + 0.01 * i as f64).collect();
        let mut wrapped: Vec<f64> = truth.iter().map(|&v| wrap(v, FRAC_PI_2)).collect();
        unwrap_in_place(&mut wrapped, FRAC_PI_2);
        for (a, b) in wrapped.iter().zip(&truth) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn congruence_modulo_quarter_turn() {
        assert!(congruent(0.1, 0.1 + FRAC_PI_2, FRAC_PI_2, 1e-12));
        assert!(!congruent(0.1, 0.2, FRAC_PI_2, 1e-3));
    }
}

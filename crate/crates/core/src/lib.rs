//! Closed-form and brute-force models of Gaussian matter-wave propagation
//! through a triple slit, including one looping (non-classical) path
//! slit 1 → slit 2 → slit 3.
//!
//! Every wavefunction in the model has the form `exp(-a x² + b x + c)` with
//! complex `a`, `b`, `c`, and stays in that form under free propagation and
//! Gaussian apertures. [`gchain`] implements that algebra exactly;
//! [`classical`] and [`nonclassical`] build the four path amplitudes on top
//! of it; [`sorkin`] assembles intensities and the Sorkin parameter κ;
//! [`oracle`] re-evaluates the defining path integrals by direct quadrature.
//!
//! The crate is `no_std` (it needs `alloc`). The `std` feature, on by
//! default, only switches the float math from `libm` to the platform
//! library.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is how NaN gets rejected alongside bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod classical;
mod error;
pub mod gchain;
pub mod nonclassical;
pub mod oracle;
pub mod params;
pub mod phase;
pub mod sorkin;

pub use error::{Error, Result};
pub use gchain::{Chain, ChainLog, GaussianState};
pub use params::{DerivedScales, EpsilonPolicy, ExperimentConfig};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

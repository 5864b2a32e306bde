use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the model.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical parameter failed validation.
    InvalidConfig {
        field: &'static str,
        reason: &'static str,
    },
    /// A Gaussian lost normalizability (`Re(a) <= 0`).
    NotNormalizable { re_a: f64 },
    /// The complex denominator of a propagation step vanished.
    DegenerateCurvature { modulus: f64 },
    /// A single chain step rotated the accumulated phase by π or more.
    BranchAmbiguity { step_phase: f64 },
    /// A z-chain entry underflowed.
    DegenerateZChain { index: usize },
    /// The classical intensity at the central maximum is zero.
    ZeroCentralIntensity,
    /// |κ| = 0 at the evaluation point, so the relative error is undefined.
    UndefinedPercentError,
    /// Quadrature did not settle under node doubling.
    NonConvergence { relative_change: f64, tolerance: f64 },
    /// A quadrature request exceeds the node budget.
    QuadratureTooLarge { nodes: usize, max: usize },
    /// A grid argument was empty or malformed.
    EmptyGrid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig { field, reason } => {
                write!(f, "invalid configuration: `{field}` {reason}")
            }
            Error::NotNormalizable { re_a } => {
                write!(f, "Gaussian is not normalizable (Re a = {re_a:e})")
            }
            Error::DegenerateCurvature { modulus } => write!(
                f,
                "degenerate curvature: propagation denominator has modulus {modulus:e}"
            ),
            Error::BranchAmbiguity { step_phase } => write!(
                f,
                "branch ambiguity: a single chain step rotated the phase by {step_phase} rad"
            ),
            Error::DegenerateZChain { index } => write!(f, "z-chain entry z{index} underflowed"),
            Error::ZeroCentralIntensity => {
                f.write_str("classical intensity at x = 0 vanishes; κ is undefined")
            }
            Error::UndefinedPercentError => {
                f.write_str("|κ| = 0 at the evaluation point; percentage error is undefined")
            }
            Error::NonConvergence {
                relative_change,
                tolerance,
            } => write!(
                f,
                "quadrature did not converge: node doubling changed the result by {relative_change:e} (tolerance {tolerance:e})"
            ),
            Error::QuadratureTooLarge { nodes, max } => {
                write!(f, "quadrature needs {nodes} nodes per dimension, limit is {max}")
            }
            Error::EmptyGrid(what) => write!(f, "{what} grid is empty"),
        }
    }
}

impl core::error::Error for Error {}

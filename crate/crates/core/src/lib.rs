//! Exact-arithmetic machinery for high-order derivatives of compositions
//! `g(t) = f(omega(t))` of a multivariate function with a parametric
//! polynomial curve, and for certified lower bounds on derivative norms.
//!
//! Everything is computed over arbitrary-precision rationals; floating point
//! appears only in human-readable decimal renderings. The crate is organized
//! around five concerns:
//!
//! - [`exactpoly`]: rational uni/multivariate polynomials and the symbolic
//!   oracle (compose, then differentiate) that every expansion is checked
//!   against;
//! - [`multiindex`]: multi-index bookkeeping for the expansion of
//!   `g^(d+1)`: the exponent grids `beta`, their compatibility conditions,
//!   and the order thresholds `kappa` and `eta`;
//! - [`chainrule`]: the expansion itself, built term by term from the
//!   differentiation recurrence, with evaluation, truncation for curves of
//!   bounded degree, and coefficient bounds;
//! - [`curves`]: polynomial curves, interpolation through point sets, the
//!   unit-ball certificate, and deviation of sampled curves from polynomial
//!   ones;
//! - [`rigidity`]: divided differences, the explicit constants, inequality
//!   certificates, and the derivative-order interval schedule.
//!
//! All public values are immutable after construction and safe to share
//! across threads.

pub mod chainrule;
pub mod curves;
pub mod exactpoly;
pub mod multiindex;
pub mod rigidity;
pub mod sturm;

use thiserror::Error;

/// Errors produced by fallible operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("multi-index order {order} outside the valid range 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },
    #[error("curve degree must be at least 1")]
    DegenerateCurveDegree,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("duplicate node/parameter value {0}")]
    DuplicateNode(String),
    #[error("witness point {0} coincides with a prescribed zero")]
    WitnessOnZero(String),
    #[error("value m must be strictly positive, got {0}")]
    NonPositiveM(String),
    #[error("point {0} lies outside [-1, 1]")]
    PointOutsideInterval(String),
    #[error("missing derivative tensor entry for alpha = {0}")]
    MissingTensor(String),
    #[error("curve not certified inside the unit ball: |omega({t})|^2 = {norm_sq} > 1")]
    CurveOutsideBall { t: String, norm_sq: String },
    #[error("incomplete derivative table: {0}")]
    IncompleteSamples(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub use chainrule::{ChainRuleExpansion, DerivativeTensors};
pub use curves::PolynomialCurve;
pub use exactpoly::{MVPoly, Rational, UniPoly};
pub use multiindex::{BetaIndex, MultiIndex, SigmaContext};
pub use rigidity::RigidityCertificate;

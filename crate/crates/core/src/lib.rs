//! Adversarial-classification toolkit: corruption oracles, adversarial risk,
//! and capacity measurements for halfspaces and sign-activation networks under
//! norm-bounded evasion adversaries.
//!
//! The adversary model is the standard evasion one: at prediction time an input
//! `x` may be replaced by any `x'` with `||x' - x||_p <= epsilon` (or by any
//! neighbor from an explicit finite map). A classifier `h` is *corrupted* into
//! `kappa(h)`, which answers `h(x)` when `h` is constant on the whole
//! neighborhood of `x` and a distinguished non-label `Bot` otherwise. `Bot`
//! disagrees with every label, so the 0/1 loss of `kappa(h)` is exactly the
//! worst-case loss of `h` over the neighborhood.
//!
//! On top of the oracles the crate computes adversarial empirical/true risk,
//! empirical risk minimizers over enumerated hypothesis families, adversarial
//! shattering coefficients with re-checkable witnesses, and growth-function
//! bounds for sign networks, all at exhaustive "desk" scale.
//!
//! Float-facing kernels are generic over the scalar (`f32`/`f64` via
//! [`scalar::Real`]); exact decision procedures run over arbitrary-precision
//! rationals ([`scalar::Rat`]). The aliases below fix the `f64` instantiations
//! used by the CLI and the test suites.

pub mod capacity;
pub mod corruption;
pub mod error;
pub mod geometry;
pub mod hypotheses;
pub mod risk;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational scalar used by the polyhedral decision procedures.
pub type Rat = scalar::Rat;

/// Halfspace classifier over `f64` coordinates.
pub type Halfspace64 = hypotheses::Halfspace<f64>;

/// Sign-activation network over `f64` parameters.
pub type Network64 = hypotheses::SignNetwork<f64>;

/// Neighborhood relation over `f64` coordinates.
pub type Neighborhood64 = geometry::NeighborhoodRelation<f64>;

//! Canonically quantized baker's map on the torus.
//!
//! * [`classical`]: the torus map, its four-branch lift to the plane and
//!   the region bookkeeping behind it.
//! * [`kinematics`]: δ-comb basis at `h = 1/N`, DFT, Weyl pair, parity and
//!   time reversal.
//! * [`propagator`]: corrected and Balazs–Voros propagators, their
//!   relation, and an operator-pipeline reconstruction in [`pipeline`].
//! * [`semiclassics`]: coherent states and the `ħ → 0` harnesses.

pub mod classical;
pub mod error;
pub mod kinematics;
pub mod matrix;
pub mod pipeline;
pub mod propagator;
pub mod quadrature;
pub mod semiclassics;

pub use error::{BakerError, Result};
pub use kinematics::PlanckN;
pub use matrix::ComplexMatrix;
pub use propagator::PropagatorVariant;

//! Exact tilt-stability computations on threefolds with nef tangent bundle.
//!
//! The crate models the even cohomology ring of a threefold by structure
//! constants over the rationals and builds the Chern character calculus,
//! slope functions, central charges and positivity checks on top of it.
//! Quantities depending on a polarization `omega = alpha H` with `alpha^2`
//! rational live in a real quadratic field and have exactly decidable signs.

pub mod bundle_maps;
pub mod chern;
pub mod classexpr;
pub mod divisor_checks;
pub mod error;
pub mod linalg;
pub mod ptp2;
pub mod quad;
pub mod rational;
pub mod ring;
pub mod sampling;
pub mod stability;
pub mod verify;

pub use error::{Error, Result};
pub use quad::{AlgebraicValue, Interval, QuadExt};
pub use rational::Rational;
pub use ring::{preset, CohRing, CurveClass, DivisorClass, PresetThreefold, Todd};

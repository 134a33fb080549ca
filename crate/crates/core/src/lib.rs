//! Exact configuration calculus for the weight 2/3/4 polylogarithm
//! complexes: generalized cross-ratios on projective configurations, the
//! simplex-pair coproduct, the trilogarithm comparison map, the degree-4
//! cobracket, and single-valued numeric realizations that verify the
//! functional-equation identities at desk scale.

pub mod error;
pub mod formal;
pub mod geom;
pub mod maps;
pub mod numeric;
pub mod scalar;
pub mod valuation;
pub mod weight4;

pub use error::{EngineError, Result};
pub use formal::{FormalSum, FormalTerm, Signature};
pub use geom::{Configuration, ProjectivePoint, SimplexPair};
pub use scalar::{FieldScalar, FieldTag};
pub use valuation::{valuations, PrimeKey, ValuationVector};

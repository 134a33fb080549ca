//! Numeric realizations: polylogarithms, realization homomorphisms into
//! valuation tensor spaces, differential forms, Monte-Carlo Grassmannian
//! integrals and path integrals.

pub mod polylog;
pub mod realize;

pub use polylog::{bloch_wigner, polylog, sv_trilog, ZETA2, ZETA3, ZETA4};
pub use realize::{realize, RealizationResult, RealizationSignature, RealizeCtx};

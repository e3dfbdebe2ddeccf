//! Integral closures of monomial ideals, their normal Hilbert functions and
//! coefficients, and instance checks of the classical bounds relating them.
//!
//! All arithmetic is exact: lengths are `u64`, coefficients `i64`, and
//! polytope data `BigRational`.

pub mod cli;
pub mod corpus;
pub mod diagnostics;
pub mod ehrhart;
pub mod error;
pub mod face_ring;
pub mod hilbert;
pub mod io;
pub mod lp;
pub mod monomial;
pub mod newton;
pub mod rlr2d;

pub use error::{Error, Result};
pub use hilbert::Filtration;
pub use monomial::{ExponentVector, MonomialIdeal};

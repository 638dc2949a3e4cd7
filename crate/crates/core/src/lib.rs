//! Multiprecision laboratory for two-term dilogarithm identities.
//!
//! The crate evaluates the Rogers dilogarithm to a few hundred digits,
//! recognizes rational multiples of `π²`, proves relation systems by exact
//! row elimination, searches element families for new two-term identities,
//! solves rank-2 Nahm systems and checks Nahm-type `q`-series identities
//! coefficient by coefficient.

pub mod error;
pub mod ladder;
pub mod nahm;
pub mod numeric;
pub mod polylog;
pub mod qseries;
pub mod relations;

pub use error::{Error, Result};
pub use numeric::expr::{parse_expr, ConstExpr, RootSelector};
pub use numeric::poly::IntPolynomial;
pub use numeric::recognize::recognize_rational;
pub use numeric::roots::real_roots;
pub use numeric::{BigReal, Integer, PrecisionContext, Rational};

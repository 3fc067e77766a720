//! Exact evaluation of `p`-adic hypergeometric functions over finite fields,
//! with character-sum oracles and elliptic-curve trace checks.

pub mod arith;
pub mod charsum;
pub mod error;
pub mod ffield;
pub mod frobtrace;
pub mod gfunc;
pub mod padic;
pub mod suite;

pub use error::{Error, Result};
pub use ffield::{build_field, CurveSpec, FqElem, FqField, PrimePower};
pub use padic::{ExactRational, GrElem, PadicCtx, PadicInt};
pub use gfunc::{evaluate_g, GParams, GValue};

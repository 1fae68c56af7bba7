//! Exact operator models of the Askey-Wilson algebras AW(3) and AW(4).
//!
//! The generators are intermediate Casimir operators of U_q(su(1,1)) acting on
//! truncated tensor products of positive discrete series representations.
//! Every entry is an exact rational, so relations are verified with zero
//! tolerance.

pub mod compass;
pub mod error;
pub mod exactnum;
pub mod fockspace;
pub mod opalgebra;
pub mod operator;
pub mod relcheck;
pub mod spectra;
pub mod uqrep;

pub use error::{Error, Result};
pub use exactnum::Rational;
pub use fockspace::{MultiIndex, TruncatedBasis};

pub use opalgebra::{GeneratorLabel, GeneratorRegistry};
pub use operator::{SparseOperator, WeightDegree};
pub use uqrep::{IntervalLabel, RepParams, UqGenerator};

//! Localized differential operators twisted by a group and a lattice.

mod dunkl;
mod operator;
mod ratfunc;

pub use dunkl::{a_sum, dunkl, dunkl_t, dunkl_t_tilde, equivariance_check, euler_element};
pub use operator::{Flavor, SkewContext, SkewError, SkewOperator, TermKey};
pub use ratfunc::RatFunc;

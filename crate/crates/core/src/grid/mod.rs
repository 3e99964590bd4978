//! Exact sets and functions on the dyadic torus `[0,1)^n`.

mod function;
pub mod kernel;
mod set;
mod spec;

pub use function::{integrate, superlevel, GridFunction};
pub use set::{measure, rademacher_sample, rectangle_indicator, set_algebra, GridSet, SetExpr};
pub(crate) use set::rademacher_factors;
pub use spec::GridSpec;

//! Exact dyadic-rectangle maximal operators on the torus.

pub mod cli;
pub mod constructions;
pub mod dyadic;
pub mod error;
pub mod grid;
pub mod io;
pub mod limits;
pub mod maximal;
pub mod orlicz;
pub mod poset;
pub mod random;
pub mod rect;

pub use dyadic::DyadicRational;
pub use error::{Error, Result};
pub use grid::{GridFunction, GridSet, GridSpec};
pub use limits::Limits;
pub use rect::{Comparison, DyadicRectangle, RectangleFamily, StrictChain};

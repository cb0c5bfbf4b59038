//! Exact computations with invariant laminations of the circle under
//! `sigma_d(x) = d x mod 1`, for `d = 2, 3`.

pub mod chords;
pub mod circle;
pub mod cli;
pub mod dyncore;
pub mod error;
pub mod lamination;
pub mod lamsets;
pub mod quadgap;
pub mod render;

pub use error::{LamError, Result};

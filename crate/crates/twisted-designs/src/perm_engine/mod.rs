//! Matrix generators for the small Ree and Suzuki groups and the permutation
//! machinery built on top of them.

pub mod action;
pub mod matrix;

pub use action::*;
pub use matrix::*;

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

mod dd;
pub mod error;
pub mod fractional;
pub mod kinetic;
pub mod special;
pub mod sumudu;
pub mod verify;

pub use error::{Error, Result};

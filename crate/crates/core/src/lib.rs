pub mod classify;
pub mod error;
pub mod geometry;
pub mod matcore;
pub mod numrange;
pub mod productset;
pub mod random;
pub mod repro;
pub mod witness;

pub use error::{Error, Result};
pub use matcore::{CMatrix, C64};

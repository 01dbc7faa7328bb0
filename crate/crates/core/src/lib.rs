pub mod cdr1d;
pub mod cdr2d;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod output;
pub mod series;
pub mod verify;

pub use error::{FsmError, Result};

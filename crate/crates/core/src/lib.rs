pub mod catalog;
pub mod cli;
pub mod error;
pub mod expr;
pub mod funcspace;
pub mod jets;
pub mod quad;
pub mod specfun;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};

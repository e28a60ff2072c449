pub mod duality;
pub mod error;
pub mod exactlin;
pub mod free_lie;
pub mod json;
pub mod lie;
pub mod sullivan;
pub mod uea;

pub use error::{Error, Result};

pub mod algebra;
pub mod algsols;
pub mod certsearch;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod integrality;
pub mod localsolve;
pub mod ore;

pub use error::{Error, Result};

pub mod cli;
pub mod error;
pub mod exact;
pub mod greenberg_fock;
pub mod involutions;
mod json_int;
pub mod level_table;
pub mod monomial_space;
pub mod partitions;
pub mod representation;

pub use error::{Error, Result};

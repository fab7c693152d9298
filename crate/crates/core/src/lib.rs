//! Executable reductions between machines, automata, DNF formulas and
//! restricted recursive Datalog programs, with a brute-force verifier.

pub mod analysis;
pub mod cli;
pub mod composition;
pub mod datalog;
pub mod error;
pub mod models;
pub mod reductions;
pub mod samples;
pub mod symbol;
pub mod syntax;
pub mod verify;

pub use error::{Error, Result};

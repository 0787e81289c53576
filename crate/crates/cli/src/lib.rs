//! Command-line front end for `beta-trees`: JSON codecs, Graphviz export, a
//! report cache, an A003645 reference table and a rayon-backed driver.

pub mod cache;
pub mod cli;
pub mod codec;
pub mod dot;
pub mod error;
pub mod oeis;
pub mod parallel;

pub use cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
pub use error::CliError;
pub use parallel::Parallel;

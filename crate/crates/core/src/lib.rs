pub mod decomposition;
pub mod error;
pub mod cli;
pub mod extensions;
pub mod intervals;
pub mod io;
pub mod oracle;
pub mod random;
pub mod selftest;
pub mod structure;

pub use error::{Error, Result};

//! File formats, a parallel enumeration driver and the `jsr2` command-line
//! tool on top of [`jsr2_core`].

pub mod cli;
pub mod family_file;
pub mod parallel;
pub mod report;

pub use family_file::{parse_family, read_family, serialize_family, LoadError, ParseError};
pub use jsr2_core;

//! Standard-library companion of `crosp-core`: file formats, rayon drivers
//! whose results match the sequential core bit for bit, report rendering and
//! the `crosp` command line.

pub mod cli;
pub mod doc;
pub mod error;
pub mod io;
pub mod parallel;
pub mod suites;

pub use error::{Error, Result};

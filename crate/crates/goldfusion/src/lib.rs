//! File formats, thread-parallel drivers and the `goldfusion` command line
//! on top of `goldfusion-core`.

pub mod cli;
pub mod json;
pub mod parallel;

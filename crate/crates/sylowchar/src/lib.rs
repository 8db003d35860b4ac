//! Command-line pipeline, data loading and file formats over [`sylowchar_core`].
//!
//! The library part is shared by the `sylowchar` binary and the integration
//! tests: [`data`] loads the bundled tables (optionally from the directory in
//! `SYLOWCHAR_DATA_DIR`) and root-order files, [`pipeline`] runs the core
//! algorithms in parallel, [`emit`] renders JSON, CSV and TeX, and [`verify`]
//! runs the end-to-end checks at a concrete `q`.

pub mod data;
pub mod emit;
pub mod error;
pub mod pipeline;
pub mod verify;

pub use error::{Error, Result};

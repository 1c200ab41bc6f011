//! File formats, rendering and the command line for blue-noise dot plots.
//!
//! The layout algorithm itself lives in [`bnplot_core`].

pub mod commands;
pub mod input;
pub mod layout_file;
pub mod render;
pub mod report;

pub use bnplot_core as core;

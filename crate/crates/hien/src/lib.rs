//! File-backed resources, configuration and the command-line front end for
//! the `hien-core` translation engine.
//!
//! The seed lexicon, grammar, transfer rules and transliteration table are
//! bundled; any of them can be replaced by a file at run time.

pub mod cli;
pub mod config;
pub mod resources;
pub mod trace;

pub use hien_core as core;
pub use resources::{seed_engine, ResourcePaths};

//! Library half of the `graphent` binary: the plain-text graph format
//! and the subcommand implementations.
//!
//! Exposed as a library so integration tests can build fixture files
//! with [`format`] and call the same entry points the binary dispatches
//! to; `src/main.rs` adds nothing but argument parsing.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod commands;
pub mod format;

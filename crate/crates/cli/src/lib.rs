//! Library side of the `affine-stanley` command line tool.

// Weyl elements cache their reduced word; ordering never reads the cache.
#![allow(clippy::mutable_key_type)]

pub mod commands;
pub mod suites;

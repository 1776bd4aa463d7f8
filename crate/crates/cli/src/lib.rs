//! File formats, cache persistence and command bodies for the `heckecat`
//! binary.

pub mod cache;
pub mod commands;
pub mod expr;
pub mod format;

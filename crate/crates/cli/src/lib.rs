//! Command implementations behind the `dcrnp` binary, plus a standalone
//! solution checker.

pub mod commands;
pub mod verify;

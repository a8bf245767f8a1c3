//! Front end for the `nsymm` command: the expression language, JSON
//! formats and verification suites.

pub mod eval;
pub mod expr;
pub mod json;
pub mod verify;

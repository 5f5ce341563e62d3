//! Command-line surface for `yb-core`: the `.yb` file format, the `yb`
//! command grammar, and the acceptance suite.

pub mod commands;
pub mod format;
pub mod suite;

pub use commands::run;
pub use format::{decode, AnyObject, FormatError, Object};

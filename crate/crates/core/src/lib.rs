//! Exact computations on translation quivers and their mesh categories.

pub mod cli;
pub mod cover;
pub mod crit;
pub mod exla;
pub mod gen;
pub mod meshcat;
#[doc(hidden)]
pub mod oracle;
pub mod qcore;

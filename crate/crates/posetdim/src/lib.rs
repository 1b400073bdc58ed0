//! Text formats, Graphviz export and the `posetdim` command line for
//! [`posetdim_core`].

pub mod cli;
pub mod dot;
pub mod format;

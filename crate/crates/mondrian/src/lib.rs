//! File formats, parallel drivers and the command-line front end for the
//! `mondrian-core` search.

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod pipeline;
pub mod render;

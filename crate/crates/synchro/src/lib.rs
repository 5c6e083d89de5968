//! File formats, J4 data, reproduction drivers and the command line for
//! the `synchro_core` algorithms.

pub mod actions;
pub mod cli;
pub mod formats;
pub mod j4;
pub mod manifest;
pub mod random;
pub mod reproduce;

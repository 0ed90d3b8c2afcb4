//! Command-line front end for the `foamhw` forecasting library.

pub mod commands;
pub mod config;
pub mod csv_io;
pub mod error;
pub mod output;

//! File formats, parallel measurement, reports and the command line on top
//! of [`hyperrec_core`].

pub mod cli;
pub mod io;
pub mod parallel;
pub mod report;

pub use hyperrec_core as core;

//! File formats, parallel search, the job server and client, and the command line.

pub mod cli;
pub mod config;
pub mod crypto;
pub mod data;
pub mod formats;
pub mod net;
pub mod parallel;

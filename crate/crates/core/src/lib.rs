//! Pattern tile set synthesis without the standard library.
//!
//! Tiles, patterns and assemblies; a rectilinear tile assembly simulator; the
//! exhaustive search for small directed tile sets; the monotone SAT encoding
//! into binary patterns; and the job server's state machine with its wire
//! codec. Everything here is pure and allocation-only.

#![no_std]

extern crate alloc;

mod dsu;
pub mod assembly;
pub mod dist;
pub mod error;
pub mod pattern;
pub mod reduction;
pub mod rtas;
pub mod search;
pub mod signal;
pub mod tile;
pub mod wire;

pub use assembly::{Assembly, Seed, EMPTY};
pub use error::Error;
pub use pattern::Pattern;
pub use search::{Job, ResultRecord};
pub use tile::{Color, Glue, Side, Tile, TileFields, TileSet, WideTile, BLANK};

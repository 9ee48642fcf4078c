//! Bundled inputs: the signal tile set, the gadget, the binary counter.

use std::path::{Path, PathBuf};

use pats_core::reduction::Reduction;
use pats_core::{Pattern, Seed, TileSet};

use crate::formats::{parse_pattern, parse_seed, parse_tileset};

pub const TILESET_T: &str = include_str!("../data/tileset_T.tiles");
/// The gadget without its bottom row, as searched.
pub const GADGET: &str = include_str!("../data/gadget_G.pat");
/// The gadget including the bottom row that receives the green signals.
pub const GADGET_FULL: &str = include_str!("../data/gadget_G_full.pat");
pub const COUNTER: &str = include_str!("../data/counter_8x8.pat");
pub const COUNTER_SEED: &str = include_str!("../data/counter_8x8.seed");
pub const HALF_ADDER: &str = include_str!("../data/half_adder.tiles");
pub const EXAMPLE2: &str = include_str!("../data/example2.msat");

pub fn canonical_t() -> TileSet {
    parse_tileset(TILESET_T).expect("bundled tile set parses")
}

pub fn gadget() -> Pattern {
    parse_pattern(GADGET).expect("bundled gadget parses")
}

pub fn gadget_full() -> Pattern {
    parse_pattern(GADGET_FULL).expect("bundled gadget parses")
}

pub fn counter() -> Pattern {
    parse_pattern(COUNTER).expect("bundled counter parses")
}

pub fn counter_seed() -> Seed {
    parse_seed(COUNTER_SEED).expect("bundled seed parses")
}

pub fn half_adder() -> TileSet {
    parse_tileset(HALF_ADDER).expect("bundled tile set parses")
}

pub fn reduction() -> Reduction {
    Reduction::new(canonical_t(), gadget_full()).expect("bundled gadget fits the tile set")
}

/// Directory holding the bundled files in the source tree.
pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

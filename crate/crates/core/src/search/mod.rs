//! Exhaustive search for directed tile sets that uniquely assemble a pattern.
//!
//! A [`Job`] is a node of the search tree: a partial assembly filled on a
//! prefix of the placement order plus the tile set it induces. [`expand`]
//! performs one placement.

mod batch;
mod driver;
mod iso;
pub mod order;

use alloc::vec::Vec;

use crate::assembly::Assembly;
use crate::error::Error;
use crate::pattern::Pattern;
use crate::tile::{Color, Glue, Side, Tile, TileFields, TileSet, BLANK};

pub use batch::tileset_from_assembly;
pub use driver::{explore, frontier, frontier_count, frontier_visit, node_counts, search, Frontier, SearchReport, Worker, WorkerStep};
pub use iso::{isomorphism_classes, tilesets_isomorphic};
pub use order::next_position;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Job<T = Tile> {
    pub x: u16,
    pub y: u16,
    pub kill_count: u16,
    pub tiles: TileSet<T>,
    pub assembly: Assembly,
}

impl<T: TileFields> Job<T> {
    /// Empty assembly over a fresh tile set of `len` tiles.
    pub fn root(pattern: &Pattern, len: usize) -> Result<Job<T>, Error> {
        if pattern.width() > usize::from(u16::MAX) || pattern.height() > usize::from(u16::MAX) {
            return Err(Error::TooLarge { what: "pattern side", value: pattern.width().max(pattern.height()), max: usize::from(u16::MAX) });
        }
        Ok(Job {
            x: 0,
            y: 0,
            kill_count: 0,
            tiles: TileSet::fresh(len)?,
            assembly: Assembly::empty(pattern.width(), pattern.height()),
        })
    }

    pub fn position(&self) -> (usize, usize) {
        (usize::from(self.x), usize::from(self.y))
    }

    /// Number of placed tiles.
    pub fn depth(&self) -> usize {
        self.assembly.filled()
    }

    /// Same task, one more kill.
    pub fn kill(&self) -> Job<T> {
        let mut j = self.clone();
        j.kill_count = j.kill_count.saturating_add(1);
        j
    }

    /// Equality ignoring the kill count.
    pub fn same_task(&self, other: &Job<T>) -> bool {
        self.x == other.x && self.y == other.y && self.tiles == other.tiles && self.assembly == other.assembly
    }
}

/// A total assembly and the tile set it was found with.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ResultRecord<T = Tile> {
    pub tiles: TileSet<T>,
    pub assembly: Assembly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expansion<T = Tile> {
    pub results: Vec<ResultRecord<T>>,
    pub subjobs: Vec<Job<T>>,
}

impl<T> Default for Expansion<T> {
    fn default() -> Self {
        Expansion { results: Vec::new(), subjobs: Vec::new() }
    }
}

/// No two tiles share their (south, west) input pair.
pub fn is_directed<T: TileFields>(tiles: &[T]) -> bool {
    if T::KEY_BITS <= 10 {
        let mut seen = [0u64; 16];
        for t in tiles {
            let k = t.input_key() as usize;
            let (w, b) = (k >> 6, 1u64 << (k & 63));
            if seen[w] & b != 0 {
                return false;
            }
            seen[w] |= b;
        }
        true
    } else {
        let mut keys: Vec<u32> = tiles.iter().map(|t| t.input_key()).collect();
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    }
}

/// Colors tile `i` and identifies the glue pairs `(ns_a, ns_b)` and `(ew_a, ew_b)`
/// throughout the set. The larger label is rewritten to the smaller; a `None`
/// on either side leaves that namespace untouched.
pub fn merge<T: TileFields>(
    tiles: &TileSet<T>,
    i: usize,
    color: Color,
    ns_a: Option<Glue>,
    ns_b: Option<Glue>,
    ew_a: Option<Glue>,
    ew_b: Option<Glue>,
) -> TileSet<T> {
    let pair = |a: Option<Glue>, b: Option<Glue>| match (a, b) {
        (Some(a), Some(b)) if a != b => Some((a.max(b), a.min(b))),
        _ => None,
    };
    let v = pair(ns_a, ns_b);
    let h = pair(ew_a, ew_b);
    tiles
        .iter()
        .enumerate()
        .map(|(j, &t)| {
            let mut t = t;
            if j == i {
                t = t.with(Side::Color, u16::from(color));
            }
            if let Some((from, to)) = v {
                if t.north() == from {
                    t = t.with(Side::North, to);
                }
                if t.south() == from {
                    t = t.with(Side::South, to);
                }
            }
            if let Some((from, to)) = h {
                if t.east() == from {
                    t = t.with(Side::East, to);
                }
                if t.west() == from {
                    t = t.with(Side::West, to);
                }
            }
            t
        })
        .collect()
}

/// Input glues at the job's position: north of the south neighbor and east of
/// the west neighbor, `None` on the border.
pub fn inputs<T: TileFields>(job: &Job<T>) -> (Option<Glue>, Option<Glue>) {
    let (x, y) = job.position();
    let tiles = job.tiles.as_slice();
    let s = if y > 0 { job.assembly.get(x, y - 1).map(|i| tiles[i].north()) } else { None };
    let w = if x > 0 { job.assembly.get(x - 1, y).map(|i| tiles[i].east()) } else { None };
    (s, w)
}

/// One placement at the job's position.
///
/// A tile whose inputs already match must be used. Otherwise every tile of
/// the cell's color is tried, plus the first uncolored tile, each after
/// unifying its inputs with the neighbors; undirected outcomes are dropped.
pub fn expand<T: TileFields>(job: &Job<T>, pattern: &Pattern) -> Expansion<T> {
    let (x, y) = job.position();
    let color = pattern.get(x, y);
    let (in_s, in_w) = inputs(job);
    let mut out = Expansion::default();

    if let (Some(s), Some(w)) = (in_s, in_w) {
        if let Some(i) = job.tiles.find_input(s, w) {
            let c = job.tiles[i].color();
            if c == color {
                place(job, pattern, job.tiles.clone(), i, &mut out);
            } else if c == BLANK {
                let mut ts = job.tiles.clone();
                ts.replace(i, ts[i].with(Side::Color, u16::from(color)));
                place(job, pattern, ts, i, &mut out);
            }
            return out;
        }
    }

    let mut seen_blank = false;
    for (i, &t) in job.tiles.iter().enumerate() {
        let c = t.color();
        let blank = c == BLANK;
        if c != color && !(blank && !seen_blank) {
            continue;
        }
        let merged = merge(&job.tiles, i, color, in_s, Some(t.south()), in_w, Some(t.west()));
        if is_directed(merged.as_slice()) {
            seen_blank |= blank;
            place(job, pattern, merged, i, &mut out);
        }
    }
    out
}

fn place<T: TileFields>(job: &Job<T>, pattern: &Pattern, tiles: TileSet<T>, i: usize, out: &mut Expansion<T>) {
    let (x, y) = job.position();
    let mut assembly = job.assembly.clone();
    assembly.set(x, y, i);
    match next_position(x, y, pattern.width(), pattern.height()) {
        Some((nx, ny)) => out.subjobs.push(Job { x: nx as u16, y: ny as u16, kill_count: job.kill_count, tiles, assembly }),
        None => out.results.push(ResultRecord { tiles, assembly }),
    }
}

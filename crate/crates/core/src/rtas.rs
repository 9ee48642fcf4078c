//! Rectilinear tile assembly: a tile attaches once both its west and south
//! neighbors are present and both glues match.

use alloc::vec::Vec;

use crate::assembly::{Assembly, Seed};
use crate::error::Error;
use crate::pattern::Pattern;
use crate::search::order;
use crate::tile::{Glue, TileFields, TileSet, BLANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Complete,
    /// A cell with both inputs present matches no tile.
    Stuck,
    /// A cell with both inputs present matches several tiles.
    Nondeterministic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationOutcome {
    pub status: Status,
    pub assembly: Assembly,
    /// First failing cell in placement order.
    pub fail_pos: Option<(usize, usize)>,
}

/// No two distinct tiles share both west and south glue.
pub fn is_directed_set<T: TileFields>(tiles: &TileSet<T>) -> bool {
    let s = tiles.as_slice();
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i].west() != s[j].west() || s[i].south() != s[j].south()))
}

fn check_inputs<T: TileFields>(tiles: &TileSet<T>, seed: &Seed) -> Result<(), Error> {
    if seed.width() == 0 || seed.height() == 0 {
        return Err(Error::EmptyGrid);
    }
    if let Some(index) = tiles.iter().position(|t| t.color() == BLANK) {
        return Err(Error::BlankTile { index });
    }
    Ok(())
}

struct Grid<'a, T> {
    tiles: &'a TileSet<T>,
    seed: &'a Seed,
    assembly: Assembly,
}

enum Attach {
    Waiting,
    Placed,
    Failed(Status),
}

impl<T: TileFields> Grid<'_, T> {
    fn input(&self, x: usize, y: usize) -> Option<(Glue, Glue)> {
        let s = if y == 0 { self.seed.south[x] } else { self.tiles[self.assembly.get(x, y - 1)?].north() };
        let w = if x == 0 { self.seed.west[y] } else { self.tiles[self.assembly.get(x - 1, y)?].east() };
        Some((s, w))
    }

    fn attach(&mut self, x: usize, y: usize) -> Attach {
        let Some((s, w)) = self.input(x, y) else {
            return Attach::Waiting;
        };
        let mut found = None;
        for (i, t) in self.tiles.iter().enumerate() {
            if t.south() == s && t.west() == w {
                if found.is_some() {
                    return Attach::Failed(Status::Nondeterministic);
                }
                found = Some(i);
            }
        }
        match found {
            Some(i) => {
                self.assembly.set(x, y, i);
                Attach::Placed
            }
            None => Attach::Failed(Status::Stuck),
        }
    }
}

/// Grows the terminal assembly from the seed, visiting cells in placement order.
pub fn assemble<T: TileFields>(tiles: &TileSet<T>, seed: &Seed) -> Result<SimulationOutcome, Error> {
    check_inputs(tiles, seed)?;
    let (w, h) = (seed.width(), seed.height());
    let mut g = Grid { tiles, seed, assembly: Assembly::empty(w, h) };
    let mut fail: Option<(Status, (usize, usize))> = None;
    for (x, y) in order::positions(w, h) {
        if let Attach::Failed(st) = g.attach(x, y) {
            fail.get_or_insert((st, (x, y)));
        }
    }
    Ok(finish(g.assembly, fail))
}

/// Same as [`assemble`], but the next cell is picked among all currently
/// attachable cells by `pick(count)`, which returns an index below `count`.
pub fn assemble_with<T: TileFields, F: FnMut(usize) -> usize>(tiles: &TileSet<T>, seed: &Seed, mut pick: F) -> Result<SimulationOutcome, Error> {
    check_inputs(tiles, seed)?;
    let (w, h) = (seed.width(), seed.height());
    let rank = order::ranks(w, h);
    let mut g = Grid { tiles, seed, assembly: Assembly::empty(w, h) };
    let mut ready = alloc::vec![(0usize, 0usize)];
    let mut fail: Option<(Status, (usize, usize))> = None;
    while !ready.is_empty() {
        let k = pick(ready.len()) % ready.len();
        let (x, y) = ready.swap_remove(k);
        match g.attach(x, y) {
            Attach::Placed => {
                if x + 1 < w && g.input(x + 1, y).is_some() {
                    ready.push((x + 1, y));
                }
                if y + 1 < h && g.input(x, y + 1).is_some() {
                    ready.push((x, y + 1));
                }
            }
            Attach::Failed(st) => {
                if fail.is_none_or(|(_, (fx, fy))| rank[y * w + x] < rank[fy * w + fx]) {
                    fail = Some((st, (x, y)));
                }
            }
            Attach::Waiting => unreachable!("only attachable cells are queued"),
        }
    }
    Ok(finish(g.assembly, fail))
}

fn finish(assembly: Assembly, fail: Option<(Status, (usize, usize))>) -> SimulationOutcome {
    match fail {
        None => {
            debug_assert!(assembly.is_total());
            SimulationOutcome { status: Status::Complete, assembly, fail_pos: None }
        }
        Some((status, p)) => SimulationOutcome { status, assembly, fail_pos: Some(p) },
    }
}

/// The seed a total assembly was grown from.
pub fn derive_seed<T: TileFields>(assembly: &Assembly, tiles: &TileSet<T>) -> Result<Seed, Error> {
    if let Some((x, y)) = assembly.first_empty() {
        return Err(Error::PartialAssembly { x, y });
    }
    let (w, h) = assembly.dims();
    let at = |x, y| assembly.get(x, y).filter(|&i| i < tiles.len()).ok_or(Error::Cell { x, y, value: -1 });
    let south = (0..w).map(|x| at(x, 0).map(|i| tiles[i].south())).collect::<Result<Vec<_>, _>>()?;
    let west = (0..h).map(|y| at(0, y).map(|i| tiles[i].west())).collect::<Result<Vec<_>, _>>()?;
    Ok(Seed { south, west })
}

/// Colors of a total assembly.
pub fn colors_of<T: TileFields>(assembly: &Assembly, tiles: &TileSet<T>) -> Result<Pattern, Error> {
    if let Some((x, y)) = assembly.first_empty() {
        return Err(Error::PartialAssembly { x, y });
    }
    let (w, h) = assembly.dims();
    let mut cells = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            cells.push(tiles[assembly.get(x, y).expect("total")].color());
        }
    }
    Pattern::new(w, h, cells)
}

/// Directed, completes, and every tile carries the pattern's color.
pub fn uniquely_self_assembles<T: TileFields>(tiles: &TileSet<T>, seed: &Seed, pattern: &Pattern) -> bool {
    if (seed.width(), seed.height()) != pattern.dims() || !is_directed_set(tiles) {
        return false;
    }
    match assemble(tiles, seed) {
        Ok(out) if out.status == Status::Complete => colors_of(&out.assembly, tiles).is_ok_and(|p| &p == pattern),
        _ => false,
    }
}

//! Glue alphabet of the 13-tile signal set and red-signal tracing.
//!
//! Vertical glues carry green and red signals northwards; horizontal glues
//! carry plain, blue, tagged blue, red and the uncover marker eastwards.

use alloc::vec::Vec;

use crate::assembly::Assembly;
use crate::error::Error;
use crate::tile::{Color, Glue, TileFields, TileSet};

pub const V_NONE: Glue = 0;
pub const V_GREEN: Glue = 1;
pub const V_RED: Glue = 2;

pub const H_PLAIN: Glue = 0;
pub const H_BLUE: Glue = 1;
pub const H_TAGGED: Glue = 2;
pub const H_RED: Glue = 3;
pub const H_UNC: Glue = 4;

pub const WHITE: Color = 0;
pub const BLACK: Color = 1;

pub fn vertical_name(g: Glue) -> &'static str {
    match g {
        V_NONE => "none",
        V_GREEN => "green",
        V_RED => "red",
        _ => "?",
    }
}

pub fn horizontal_name(g: Glue) -> &'static str {
    match g {
        H_PLAIN => "plain",
        H_BLUE => "blue",
        H_TAGGED => "tagged",
        H_RED => "red",
        H_UNC => "unc",
        _ => "?",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEnd {
    /// Left the assembly through its top edge.
    Top,
    /// Left the assembly through its east edge.
    East,
    /// Met a tagged blue.
    Destroyed,
    /// Reached an uncover row.
    Uncover,
    /// Reached a cell with no tile.
    Unfilled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalTrace {
    /// Cells whose tile carries the signal, in order.
    pub cells: Vec<(usize, usize)>,
    pub greens_crossed: usize,
    pub blues_crossed: usize,
    pub destroyed: bool,
    /// Last position receiving the signal from the south.
    pub end: (usize, usize),
    pub reason: TraceEnd,
}

/// Follows the red signal entering `start` from the south.
pub fn trace_red_signal<T: TileFields>(assembly: &Assembly, tiles: &TileSet<T>, start: (usize, usize)) -> Result<SignalTrace, Error> {
    let (w, h) = assembly.dims();
    let (mut x, mut y) = start;
    if x >= w || y >= h {
        return Err(Error::Argument("trace start outside the assembly"));
    }
    match assembly.get(x, y) {
        Some(i) if tiles[i].south() == V_RED => {}
        _ => return Err(Error::Argument("trace start does not receive a red signal")),
    }
    let mut tr = SignalTrace { cells: Vec::new(), greens_crossed: 0, blues_crossed: 0, destroyed: false, end: start, reason: TraceEnd::Top };
    let reason = 'outer: loop {
        // (x, y) receives red from the south
        tr.end = (x, y);
        if y == h {
            break TraceEnd::Top;
        }
        let Some(i) = assembly.get(x, y) else { break TraceEnd::Unfilled };
        let t = tiles[i];
        if t.west() == H_UNC {
            break TraceEnd::Uncover;
        }
        tr.cells.push((x, y));
        match t.west() {
            H_BLUE => {
                tr.blues_crossed += 1;
                y += 1;
            }
            H_TAGGED => {
                tr.destroyed = true;
                break TraceEnd::Destroyed;
            }
            H_PLAIN if t.east() == H_RED => loop {
                // travelling east until a cell without a green turns it north
                x += 1;
                if x == w {
                    break 'outer TraceEnd::East;
                }
                let Some(i) = assembly.get(x, y) else { break 'outer TraceEnd::Unfilled };
                let t = tiles[i];
                tr.cells.push((x, y));
                if t.south() == V_GREEN && t.east() == H_RED {
                    tr.greens_crossed += 1;
                } else if t.north() == V_RED {
                    y += 1;
                    break;
                } else {
                    return Err(Error::Argument("red signal runs into an unexpected tile"));
                }
            },
            _ => return Err(Error::Argument("red signal meets an unexpected west glue")),
        }
    };
    tr.reason = reason;
    Ok(tr)
}

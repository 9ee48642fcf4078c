use alloc::vec::Vec;

use crate::error::Error;
use crate::tile::Glue;

/// Marker for an unfilled assembly cell.
pub const EMPTY: i8 = -1;

/// A grid of tile indices, `EMPTY` where nothing is attached.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Assembly {
    width: usize,
    height: usize,
    cells: Vec<i8>,
}

impl Assembly {
    pub fn empty(width: usize, height: usize) -> Assembly {
        Assembly { width, height, cells: alloc::vec![EMPTY; width * height] }
    }

    /// `cells` row-major from the bottom row; every value is `EMPTY` or in `0..len`.
    pub fn from_cells(width: usize, height: usize, cells: Vec<i8>, len: usize) -> Result<Assembly, Error> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyGrid);
        }
        if cells.len() != width * height {
            return Err(Error::Dimension { expected: (width, height), found: (cells.len(), 1) });
        }
        for (i, &c) in cells.iter().enumerate() {
            if c < EMPTY || (c >= 0 && c as usize >= len) {
                return Err(Error::Cell { x: i % width, y: i / width, value: i32::from(c) });
            }
        }
        Ok(Assembly { width, height, cells })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        let c = self.cells[y * self.width + x];
        (c >= 0).then_some(c as usize)
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, tile: usize) {
        debug_assert!(tile < 128);
        self.cells[y * self.width + x] = tile as i8;
    }

    pub fn clear(&mut self, x: usize, y: usize) {
        self.cells[y * self.width + x] = EMPTY;
    }

    pub fn cells(&self) -> &[i8] {
        &self.cells
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|&&c| c >= 0).count()
    }

    pub fn is_total(&self) -> bool {
        self.cells.iter().all(|&c| c >= 0)
    }

    pub fn first_empty(&self) -> Option<(usize, usize)> {
        self.cells.iter().position(|&c| c < 0).map(|i| (i % self.width, i / self.width))
    }
}

/// The L-shaped boundary: one vertical glue per column below row 0, one
/// horizontal glue per row left of column 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Seed {
    pub south: Vec<Glue>,
    pub west: Vec<Glue>,
}

impl Seed {
    pub fn new(south: Vec<Glue>, west: Vec<Glue>) -> Seed {
        Seed { south, west }
    }

    pub fn width(&self) -> usize {
        self.south.len()
    }

    pub fn height(&self) -> usize {
        self.west.len()
    }
}

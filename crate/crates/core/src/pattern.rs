use alloc::vec::Vec;

use crate::error::Error;
use crate::tile::{Color, BLANK};

/// A `width x height` grid of colors. `(x, y)` is column from the left, row
/// from the bottom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Pattern {
    width: usize,
    height: usize,
    cells: Vec<Color>,
}

impl Pattern {
    /// `cells` is row-major starting at the bottom row.
    pub fn new(width: usize, height: usize, cells: Vec<Color>) -> Result<Pattern, Error> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyGrid);
        }
        if cells.len() != width * height {
            return Err(Error::Dimension { expected: (width, height), found: (cells.len(), 1) });
        }
        if let Some(i) = cells.iter().position(|&c| c >= BLANK) {
            return Err(Error::Cell { x: i % width, y: i / width, value: i32::from(cells[i]) });
        }
        Ok(Pattern { width, height, cells })
    }

    pub fn filled(width: usize, height: usize, color: Color) -> Result<Pattern, Error> {
        Pattern::new(width, height, alloc::vec![color; width * height])
    }

    /// Rows listed top first, as they appear on screen.
    pub fn from_rows_top_down<R: AsRef<[Color]>>(rows: &[R]) -> Result<Pattern, Error> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(width * height);
        for (i, row) in rows.iter().rev().enumerate() {
            if row.as_ref().len() != width {
                return Err(Error::Dimension { expected: (width, height), found: (row.as_ref().len(), height - 1 - i) });
            }
            cells.extend_from_slice(row.as_ref());
        }
        Pattern::new(width, height, cells)
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
    pub fn get(&self, x: usize, y: usize) -> Color {
        self.cells[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, color: Color) -> Result<(), Error> {
        if color >= BLANK {
            return Err(Error::Cell { x, y, value: i32::from(color) });
        }
        self.cells[y * self.width + x] = color;
        Ok(())
    }

    pub fn row(&self, y: usize) -> &[Color] {
        &self.cells[y * self.width..(y + 1) * self.width]
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    /// Number of colors in use, taken as `max + 1`.
    pub fn color_count(&self) -> usize {
        self.cells.iter().copied().max().map_or(0, |c| usize::from(c) + 1)
    }

    /// The `w x h` sub-rectangle with lower-left corner `(x0, y0)`.
    pub fn window(&self, x0: usize, y0: usize, w: usize, h: usize) -> Result<Pattern, Error> {
        if x0 + w > self.width || y0 + h > self.height {
            return Err(Error::Dimension { expected: self.dims(), found: (x0 + w, y0 + h) });
        }
        let mut cells = Vec::with_capacity(w * h);
        for y in y0..y0 + h {
            cells.extend_from_slice(&self.row(y)[x0..x0 + w]);
        }
        Pattern::new(w, h, cells)
    }
}

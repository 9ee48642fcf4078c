use core::fmt;

use crate::tile::Side;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A field value does not fit.
    Range { side: Side, value: u32, max: u32 },
    /// Tile budget above what the representation holds.
    Capacity { requested: usize, max: usize },
    /// Grid or sequence dimensions disagree.
    Dimension { expected: (usize, usize), found: (usize, usize) },
    /// A pattern or grid with a zero side.
    EmptyGrid,
    /// A cell value outside its allowed range.
    Cell { x: usize, y: usize, value: i32 },
    /// A simulated tile set still holds an uncolored tile.
    BlankTile { index: usize },
    /// The operation needs a total assembly.
    PartialAssembly { x: usize, y: usize },
    /// One tile index used under two colors.
    ColorConflict { tile: usize },
    /// Input above a size guard.
    TooLarge { what: &'static str, value: usize, max: usize },
    /// Any other violated precondition.
    Argument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Range { side, value, max } => write!(f, "{side} value {value} out of range 0..={max}"),
            Error::Capacity { requested, max } => write!(f, "tile budget {requested} exceeds capacity {max}"),
            Error::Dimension { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::EmptyGrid => f.write_str("grid has a zero dimension"),
            Error::Cell { x, y, value } => write!(f, "cell ({x},{y}) holds invalid value {value}"),
            Error::BlankTile { index } => write!(f, "tile {index} has no color"),
            Error::PartialAssembly { x, y } => write!(f, "assembly is empty at ({x},{y})"),
            Error::ColorConflict { tile } => write!(f, "tile {tile} is used with two colors"),
            Error::TooLarge { what, value, max } => write!(f, "{what} = {value} exceeds limit {max}"),
            Error::Argument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

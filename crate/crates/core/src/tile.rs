//! Tiles, glues and tile sets.
//!
//! A [`Tile`] packs four glues and a color into five 5-bit fields of a `u32`
//! (low to high: west, south, east, north, color). [`WideTile`] keeps the same
//! accessors without the 5-bit limit for tile budgets above 15.

use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use crate::error::Error;

/// A glue label. Horizontal (east/west) and vertical (north/south) glues live
/// in separate namespaces; which one is implied by the field it sits in.
pub type Glue = u16;

/// A color index. [`BLANK`] marks a tile that has not been colored yet.
pub type Color = u8;

/// Color of an unused tile.
pub const BLANK: Color = 31;

/// Bit width of one packed field.
pub const FIELD_BITS: u32 = 5;

const FIELD_MASK: u32 = (1 << FIELD_BITS) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    North,
    East,
    South,
    West,
    Color,
}

impl Side {
    pub const ALL: [Side; 5] = [Side::North, Side::East, Side::South, Side::West, Side::Color];

    const fn shift(self) -> u32 {
        match self {
            Side::West => 0,
            Side::South => FIELD_BITS,
            Side::East => 2 * FIELD_BITS,
            Side::North => 3 * FIELD_BITS,
            Side::Color => 4 * FIELD_BITS,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::North => "N",
            Side::East => "E",
            Side::South => "S",
            Side::West => "W",
            Side::Color => "COLOR",
        })
    }
}

/// Field access shared by the packed and the wide representation.
pub trait TileFields: Copy + Eq + Ord + Hash + fmt::Debug {
    /// Largest tile budget whose fresh tile set still fits.
    const CAPACITY: usize;
    /// Number of significant bits in [`TileFields::input_key`].
    const KEY_BITS: u32;

    fn get(self, side: Side) -> u16;

    /// Returns a copy with one field replaced.
    fn try_with(self, side: Side, value: u16) -> Result<Self, Error>;

    fn from_fields(north: Glue, east: Glue, south: Glue, west: Glue, color: Color) -> Result<Self, Error>;

    /// The (south, west) input pair as a single integer.
    fn input_key(self) -> u32;

    fn north(self) -> Glue {
        self.get(Side::North)
    }
    fn east(self) -> Glue {
        self.get(Side::East)
    }
    fn south(self) -> Glue {
        self.get(Side::South)
    }
    fn west(self) -> Glue {
        self.get(Side::West)
    }
    fn color(self) -> Color {
        self.get(Side::Color) as Color
    }

    fn with(self, side: Side, value: u16) -> Self {
        match self.try_with(side, value) {
            Ok(t) => t,
            Err(e) => panic!("{e}"),
        }
    }
}

/// Packed tile: `W | S << 5 | E << 10 | N << 15 | C << 20`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Tile(u32);

impl Tile {
    pub const BITS: u32 = 5 * FIELD_BITS;

    pub fn new(north: Glue, east: Glue, south: Glue, west: Glue, color: Color) -> Result<Tile, Error> {
        <Tile as TileFields>::from_fields(north, east, south, west, color)
    }

    pub const fn from_bits(bits: u32) -> Option<Tile> {
        if bits >> Self::BITS == 0 {
            Some(Tile(bits))
        } else {
            None
        }
    }

    pub const fn bits(self) -> u32 {
        self.0
    }
}

impl TileFields for Tile {
    const CAPACITY: usize = 15;
    const KEY_BITS: u32 = 2 * FIELD_BITS;

    #[inline]
    fn get(self, side: Side) -> u16 {
        ((self.0 >> side.shift()) & FIELD_MASK) as u16
    }

    #[inline]
    fn try_with(self, side: Side, value: u16) -> Result<Tile, Error> {
        if u32::from(value) > FIELD_MASK {
            return Err(Error::Range { side, value: u32::from(value), max: FIELD_MASK });
        }
        let s = side.shift();
        Ok(Tile((self.0 & !(FIELD_MASK << s)) | (u32::from(value) << s)))
    }

    fn from_fields(north: Glue, east: Glue, south: Glue, west: Glue, color: Color) -> Result<Tile, Error> {
        Tile(0)
            .try_with(Side::North, north)?
            .try_with(Side::East, east)?
            .try_with(Side::South, south)?
            .try_with(Side::West, west)?
            .try_with(Side::Color, u16::from(color))
    }

    #[inline]
    fn input_key(self) -> u32 {
        self.0 & ((1 << Self::KEY_BITS) - 1)
    }
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tile(f, *self)
    }
}

/// Unpacked tile for budgets the 5-bit fields cannot hold.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WideTile {
    pub north: Glue,
    pub east: Glue,
    pub south: Glue,
    pub west: Glue,
    pub color: Color,
}

impl TileFields for WideTile {
    // assembly cells are i8
    const CAPACITY: usize = 127;
    const KEY_BITS: u32 = 32;

    fn get(self, side: Side) -> u16 {
        match side {
            Side::North => self.north,
            Side::East => self.east,
            Side::South => self.south,
            Side::West => self.west,
            Side::Color => u16::from(self.color),
        }
    }

    fn try_with(mut self, side: Side, value: u16) -> Result<WideTile, Error> {
        match side {
            Side::North => self.north = value,
            Side::East => self.east = value,
            Side::South => self.south = value,
            Side::West => self.west = value,
            Side::Color => {
                if value > u16::from(BLANK) {
                    return Err(Error::Range { side, value: u32::from(value), max: u32::from(BLANK) });
                }
                self.color = value as Color;
            }
        }
        Ok(self)
    }

    fn from_fields(north: Glue, east: Glue, south: Glue, west: Glue, color: Color) -> Result<WideTile, Error> {
        WideTile { north, east, south, west, color: 0 }.try_with(Side::Color, u16::from(color))
    }

    fn input_key(self) -> u32 {
        (u32::from(self.south) << 16) | u32::from(self.west)
    }
}

impl fmt::Debug for WideTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tile(f, *self)
    }
}

fn write_tile<T: TileFields>(f: &mut fmt::Formatter<'_>, t: T) -> fmt::Result {
    write!(f, "[N{} E{} S{} W{} ", t.north(), t.east(), t.south(), t.west())?;
    if t.color() == BLANK {
        f.write_str("_]")
    } else {
        write!(f, "c{}]", t.color())
    }
}

/// An indexed sequence of tiles; index is identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TileSet<T = Tile> {
    tiles: Vec<T>,
}

impl<T: TileFields> TileSet<T> {
    pub fn new(tiles: Vec<T>) -> Self {
        TileSet { tiles }
    }

    /// Search root: tile `i` gets south/west glue `2i`, north/east `2i+1`, no color.
    pub fn fresh(len: usize) -> Result<Self, Error> {
        if len > T::CAPACITY {
            return Err(Error::Capacity { requested: len, max: T::CAPACITY });
        }
        let tiles = (0..len)
            .map(|i| {
                let lo = (2 * i) as Glue;
                T::from_fields(lo + 1, lo + 1, lo, lo, BLANK)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TileSet { tiles })
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn get(&self, i: usize) -> T {
        self.tiles[i]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.tiles
    }

    pub fn iter(&self) -> core::slice::Iter<'_, T> {
        self.tiles.iter()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.tiles
    }

    pub fn replace(&mut self, i: usize, tile: T) {
        self.tiles[i] = tile;
    }

    pub fn count_color(&self, color: Color) -> usize {
        self.tiles.iter().filter(|t| t.color() == color).count()
    }

    /// Index of the tile with the given (south, west) inputs, first match wins.
    pub fn find_input(&self, south: Glue, west: Glue) -> Option<usize> {
        self.tiles.iter().position(|t| t.south() == south && t.west() == west)
    }
}

impl<T> core::ops::Index<usize> for TileSet<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.tiles[i]
    }
}

impl<T: TileFields> FromIterator<T> for TileSet<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        TileSet { tiles: iter.into_iter().collect() }
    }
}

impl<'a, T> IntoIterator for &'a TileSet<T> {
    type Item = &'a T;
    type IntoIter = core::slice::Iter<'a, T>;
    fn into_iter(self) -> Self::IntoIter {
        self.tiles.iter()
    }
}

use alloc::vec::Vec;

use crate::assembly::Assembly;
use crate::dsu::MinDsu;
use crate::error::Error;
use crate::pattern::Pattern;
use crate::tile::{Color, Glue, TileFields, TileSet, BLANK};

/// Builds the tile set induced by a total assembly.
///
/// Glue slots start as in a fresh set (south/west `2i`, north/east `2i+1`).
/// Vertically adjacent tiles unify north-below with south-above, horizontally
/// adjacent ones east-left with west-right. Each class is labelled by its
/// smallest slot. Unused indices stay uncolored.
pub fn tileset_from_assembly<T: TileFields>(assembly: &Assembly, pattern: &Pattern, len: usize) -> Result<TileSet<T>, Error> {
    if assembly.dims() != pattern.dims() {
        return Err(Error::Dimension { expected: pattern.dims(), found: assembly.dims() });
    }
    if len > T::CAPACITY {
        return Err(Error::Capacity { requested: len, max: T::CAPACITY });
    }
    let (w, h) = assembly.dims();
    let mut colors: Vec<Color> = alloc::vec![BLANK; len];
    let mut vert = MinDsu::new(2 * len);
    let mut horiz = MinDsu::new(2 * len);
    for y in 0..h {
        for x in 0..w {
            let i = assembly.get(x, y).ok_or(Error::PartialAssembly { x, y })?;
            if i >= len {
                return Err(Error::Cell { x, y, value: i as i32 });
            }
            let c = pattern.get(x, y);
            if colors[i] == BLANK {
                colors[i] = c;
            } else if colors[i] != c {
                return Err(Error::ColorConflict { tile: i });
            }
            if y > 0 {
                let below = assembly.get(x, y - 1).ok_or(Error::PartialAssembly { x, y: y - 1 })?;
                vert.union(2 * below + 1, 2 * i);
            }
            if x > 0 {
                let left = assembly.get(x - 1, y).ok_or(Error::PartialAssembly { x: x - 1, y })?;
                horiz.union(2 * left + 1, 2 * i);
            }
        }
    }
    (0..len)
        .map(|i| {
            let g = |d: &mut MinDsu, s: usize| d.find(s) as Glue;
            T::from_fields(g(&mut vert, 2 * i + 1), g(&mut horiz, 2 * i + 1), g(&mut vert, 2 * i), g(&mut horiz, 2 * i), colors[i])
        })
        .collect::<Result<Vec<T>, Error>>()
        .map(TileSet::new)
}

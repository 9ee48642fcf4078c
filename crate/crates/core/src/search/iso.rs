use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ResultRecord;
use crate::tile::{Color, Glue, TileFields, TileSet};

const UNSET: u32 = u32::MAX;

struct GlueMap {
    fwd: Vec<u32>,
    bwd: Vec<u32>,
    trail: Vec<u32>,
}

impl GlueMap {
    fn new(size: usize) -> Self {
        GlueMap { fwd: alloc::vec![UNSET; size], bwd: alloc::vec![UNSET; size], trail: Vec::new() }
    }

    fn bind(&mut self, a: Glue, b: Glue) -> bool {
        let (ai, bi) = (usize::from(a), usize::from(b));
        match (self.fwd[ai], self.bwd[bi]) {
            (UNSET, UNSET) => {
                self.fwd[ai] = u32::from(b);
                self.bwd[bi] = u32::from(a);
                self.trail.push(u32::from(a));
                true
            }
            (f, g) => f == u32::from(b) && g == u32::from(a),
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("trail") as usize;
            let b = self.fwd[a] as usize;
            self.fwd[a] = UNSET;
            self.bwd[b] = UNSET;
        }
    }
}

struct Matcher<'a, T> {
    a: &'a [T],
    b: &'a [T],
    used: Vec<bool>,
    vert: GlueMap,
    horiz: GlueMap,
}

impl<T: TileFields> Matcher<'_, T> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.a.len() {
            return true;
        }
        let ta = self.a[i];
        for j in 0..self.b.len() {
            if self.used[j] || self.b[j].color() != ta.color() {
                continue;
            }
            let tb = self.b[j];
            let (mv, mh) = (self.vert.trail.len(), self.horiz.trail.len());
            let ok = self.vert.bind(ta.north(), tb.north())
                && self.vert.bind(ta.south(), tb.south())
                && self.horiz.bind(ta.east(), tb.east())
                && self.horiz.bind(ta.west(), tb.west());
            if ok {
                self.used[j] = true;
                if self.run(i + 1) {
                    return true;
                }
                self.used[j] = false;
            }
            self.vert.undo(mv);
            self.horiz.undo(mh);
        }
        false
    }
}

/// A color-preserving tile bijection exists together with one bijection per
/// glue namespace carrying `a` onto `b`.
pub fn tilesets_isomorphic<T: TileFields>(a: &TileSet<T>, b: &TileSet<T>) -> bool {
    if a.len() != b.len() || invariant(a) != invariant(b) {
        return false;
    }
    let size = a
        .iter()
        .chain(b.iter())
        .flat_map(|t| [t.north(), t.east(), t.south(), t.west()])
        .max()
        .map_or(0, |g| usize::from(g) + 1);
    let mut m = Matcher {
        a: a.as_slice(),
        b: b.as_slice(),
        used: alloc::vec![false; b.len()],
        vert: GlueMap::new(size),
        horiz: GlueMap::new(size),
    };
    m.run(0)
}

/// Cheap isomorphism invariant: per tile, its color and how many tiles share
/// each of its four glues, sorted.
fn invariant<T: TileFields>(ts: &TileSet<T>) -> Vec<(Color, [u8; 4])> {
    let mut vert: BTreeMap<Glue, u8> = BTreeMap::new();
    let mut horiz: BTreeMap<Glue, u8> = BTreeMap::new();
    for t in ts {
        *vert.entry(t.north()).or_default() += 1;
        *vert.entry(t.south()).or_default() += 1;
        *horiz.entry(t.east()).or_default() += 1;
        *horiz.entry(t.west()).or_default() += 1;
    }
    let mut v: Vec<_> = ts
        .iter()
        .map(|t| (t.color(), [vert[&t.north()], horiz[&t.east()], vert[&t.south()], horiz[&t.west()]]))
        .collect();
    v.sort_unstable();
    v
}

/// Sorts the results and keeps the first of each isomorphism class of tile sets.
pub fn isomorphism_classes<T: TileFields>(mut results: Vec<ResultRecord<T>>) -> Vec<ResultRecord<T>> {
    results.sort();
    results.dedup();
    let mut buckets: BTreeMap<Vec<(Color, [u8; 4])>, Vec<usize>> = BTreeMap::new();
    let mut keep: Vec<ResultRecord<T>> = Vec::new();
    for r in results {
        let bucket = buckets.entry(invariant(&r.tiles)).or_default();
        if bucket.iter().any(|&k| tilesets_isomorphic(&keep[k].tiles, &r.tiles)) {
            continue;
        }
        bucket.push(keep.len());
        keep.push(r);
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::{Side, Tile};
    use alloc::vec;

    fn half_adder() -> TileSet {
        TileSet::new(vec![
            Tile::new(0, 0, 0, 0, 0).unwrap(),
            Tile::new(1, 0, 0, 1, 1).unwrap(),
            Tile::new(1, 0, 1, 0, 1).unwrap(),
            Tile::new(0, 1, 1, 1, 0).unwrap(),
        ])
    }

    #[test]
    fn relabeled_is_isomorphic() {
        let a = half_adder();
        // swap the vertical labels, shift the horizontal ones, reverse tile order
        let b: TileSet = a
            .iter()
            .rev()
            .map(|t| Tile::new(1 - t.north(), t.east() + 7, 1 - t.south(), t.west() + 7, t.color()).unwrap())
            .collect();
        assert!(tilesets_isomorphic(&a, &b));
    }

    #[test]
    fn color_flip_breaks() {
        let a = half_adder();
        let mut b = a.clone();
        b.replace(0, b[0].with(Side::Color, 1));
        assert!(!tilesets_isomorphic(&a, &b));
    }

    #[test]
    fn shared_glue_structure_matters() {
        // a ties E of tile 0 to W of tile 1, b ties it to E of tile 1
        let a = TileSet::new(vec![Tile::new(0, 1, 2, 3, 0).unwrap(), Tile::new(2, 3, 0, 1, 0).unwrap()]);
        let b = TileSet::new(vec![Tile::new(0, 1, 2, 3, 0).unwrap(), Tile::new(2, 1, 0, 3, 0).unwrap()]);
        assert!(!tilesets_isomorphic(&a, &b));
        assert!(tilesets_isomorphic(&a, &a));
    }
}

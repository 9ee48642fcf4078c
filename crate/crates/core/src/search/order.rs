//! Placement order: squares grow by alternately adding a row and a column.
//!
//! ```text
//!  4 5 8
//!  1 3 7
//!  0 2 6
//! ```

use alloc::vec::Vec;

#[inline]
fn step(x: usize, y: usize) -> (usize, usize) {
    if x == y {
        (0, y + 1)
    } else if x + 1 == y {
        (x + 1, 0)
    } else if x > y {
        (x, y + 1)
    } else {
        (x + 1, y)
    }
}

/// Successor of `(x, y)` inside a `w x h` grid, or `None` after the last cell.
pub fn next_position(x: usize, y: usize, w: usize, h: usize) -> Option<(usize, usize)> {
    let n = w.max(h);
    let (mut x, mut y) = (x, y);
    loop {
        (x, y) = step(x, y);
        if x >= n || y >= n {
            return None;
        }
        if x < w && y < h {
            return Some((x, y));
        }
    }
}

/// Every cell of a `w x h` grid in placement order.
pub fn positions(w: usize, h: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(w * h);
    if w == 0 || h == 0 {
        return out;
    }
    let mut p = Some((0, 0));
    while let Some((x, y)) = p {
        out.push((x, y));
        p = next_position(x, y, w, h);
    }
    out
}

/// `rank[y * w + x]` is the position of `(x, y)` in placement order.
pub fn ranks(w: usize, h: usize) -> Vec<usize> {
    let mut rank = alloc::vec![0; w * h];
    for (i, (x, y)) in positions(w, h).into_iter().enumerate() {
        rank[y * w + x] = i;
    }
    rank
}

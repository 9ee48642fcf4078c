//! Brute-force reference for the search, sharing no code with it.
//!
//! An assignment of tile indices to every cell is valid when each index gets a
//! single color and the induced tile set (glue classes from the adjacency
//! constraints) has no two tiles with the same south and west class.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub const BLANK: u8 = 31;

/// (north, east, south, west, color); glues are class labels.
pub type RawTile = (usize, usize, usize, usize, u8);

struct Uf(Vec<usize>);

impl Uf {
    fn new(n: usize) -> Uf {
        Uf((0..n).collect())
    }
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let next = self.0[a];
            self.0[a] = r;
            a = next;
        }
        r
    }
    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Cell order used by the search: shells of growing size, each shell being
/// the top row left to right, then the right column bottom to top.
pub fn order_key(x: usize, y: usize) -> (usize, usize, usize) {
    let m = x.max(y);
    if x < m {
        (m, 0, x)
    } else {
        (m, 1, y)
    }
}

pub fn cell_order(w: usize, h: usize) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).collect();
    cells.sort_by_key(|&(x, y)| order_key(x, y));
    cells
}

/// Tile set induced by a (possibly partial) assignment; `None` on a color clash.
/// `colors[y][x]` and `alpha[y][x]` use y = 0 for the bottom row.
pub fn induced(colors: &[Vec<u8>], alpha: &[Vec<Option<usize>>], len: usize) -> Option<Vec<RawTile>> {
    let h = colors.len();
    let w = colors[0].len();
    let mut col = vec![BLANK; len];
    // slots: 4t + 0 north, 1 east, 2 south, 3 west
    let mut uf = Uf::new(4 * len);
    for y in 0..h {
        for x in 0..w {
            let Some(t) = alpha[y][x] else { continue };
            if col[t] == BLANK {
                col[t] = colors[y][x];
            } else if col[t] != colors[y][x] {
                return None;
            }
            if y > 0 {
                if let Some(b) = alpha[y - 1][x] {
                    uf.join(4 * b, 4 * t + 2);
                }
            }
            if x > 0 {
                if let Some(l) = alpha[y][x - 1] {
                    uf.join(4 * l + 1, 4 * t + 3);
                }
            }
        }
    }
    Some((0..len).map(|t| (uf.find(4 * t), uf.find(4 * t + 1), uf.find(4 * t + 2), uf.find(4 * t + 3), col[t])).collect())
}

pub fn directed(tiles: &[RawTile]) -> bool {
    let mut seen = BTreeSet::new();
    tiles.iter().all(|t| seen.insert((t.2, t.3)))
}

/// Smallest relabelled form over all tile orders; vertical and horizontal
/// glues are renumbered by first appearance.
pub fn canonical(tiles: &[RawTile]) -> Vec<RawTile> {
    let mut idx: Vec<usize> = (0..tiles.len()).collect();
    let mut best: Option<Vec<RawTile>> = None;
    permute(&mut idx, 0, &mut |perm| {
        let mut v: Vec<usize> = Vec::new();
        let mut hz: Vec<usize> = Vec::new();
        let label = |m: &mut Vec<usize>, g: usize| match m.iter().position(|&x| x == g) {
            Some(i) => i,
            None => {
                m.push(g);
                m.len() - 1
            }
        };
        let form: Vec<RawTile> = perm
            .iter()
            .map(|&i| {
                let (n, e, s, w, c) = tiles[i];
                let n = label(&mut v, n);
                let s = label(&mut v, s);
                let e = label(&mut hz, e);
                let w = label(&mut hz, w);
                (n, e, s, w, c)
            })
            .collect();
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
    });
    best.expect("at least one order")
}

fn permute(idx: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == idx.len() {
        f(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, f);
        idx.swap(k, i);
    }
}

#[derive(Default, Debug)]
pub struct Enumeration {
    /// Canonical forms of every valid induced tile set.
    pub classes: BTreeSet<Vec<RawTile>>,
    /// Valid assignments whose indices first appear in increasing order along the cell order.
    pub normalized: usize,
}

/// Tries all `len^(w*h)` assignments.
pub fn enumerate(colors: &[Vec<u8>], len: usize) -> Enumeration {
    let h = colors.len();
    let w = colors[0].len();
    let cells = cell_order(w, h);
    let mut out = Enumeration::default();
    let total = len.pow((w * h) as u32);
    let mut alpha = vec![vec![None; w]; h];
    for code in 0..total {
        let mut c = code;
        for &(x, y) in &cells {
            alpha[y][x] = Some(c % len);
            c /= len;
        }
        let Some(ts) = induced(colors, &alpha, len) else { continue };
        if !directed(&ts) {
            continue;
        }
        out.classes.insert(canonical(&ts));
        let mut next = 0;
        let normal = cells.iter().all(|&(x, y)| {
            let t = alpha[y][x].unwrap();
            if t == next {
                next += 1;
            }
            t < next
        });
        if normal {
            out.normalized += 1;
        }
    }
    out
}

/// Partial assignments over prefixes of the cell order with indices in
/// first-appearance order, colour-consistent and directed, counted by length.
pub fn node_counts(colors: &[Vec<u8>], len: usize) -> Vec<u64> {
    let h = colors.len();
    let w = colors[0].len();
    let cells = cell_order(w, h);
    let mut counts = vec![0u64; w * h + 1];
    let mut alpha = vec![vec![None; w]; h];
    fn go(d: usize, used: usize, cells: &[(usize, usize)], colors: &[Vec<u8>], alpha: &mut Vec<Vec<Option<usize>>>, len: usize, counts: &mut Vec<u64>) {
        match induced(colors, alpha, len) {
            Some(ts) if directed(&ts) => {}
            _ => return,
        }
        counts[d] += 1;
        if d == cells.len() {
            return;
        }
        let (x, y) = cells[d];
        for t in 0..(used + 1).min(len) {
            alpha[y][x] = Some(t);
            go(d + 1, used.max(t + 1), cells, colors, alpha, len, counts);
        }
        alpha[y][x] = None;
    }
    go(0, 0, &cells, colors, &mut alpha, len, &mut counts);
    counts
}

/// All `w x h` patterns over colors {0, 1}, bottom row first.
pub fn binary_patterns(w: usize, h: usize) -> Vec<Vec<Vec<u8>>> {
    (0u32..1 << (w * h)).map(|m| (0..h).map(|y| (0..w).map(|x| (m >> (y * w + x) & 1) as u8).collect()).collect()).collect()
}

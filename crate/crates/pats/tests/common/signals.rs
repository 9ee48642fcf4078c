//! Checks of the signal tile set shared by several test targets.

use pats_core::rtas::{assemble, is_directed_set, Status};
use pats_core::signal::*;
use pats_core::{Assembly, Seed, Tile, TileFields, TileSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn is_uncover(t: Tile) -> bool {
    t.west() == H_UNC
}

fn bluish(g: u16) -> bool {
    g == H_BLUE || g == H_TAGGED
}

/// Rows are uncover pairs, blue rows or plain rows; columns start with any vertical signal.
pub fn random_seed(rng: &mut impl Rng, w: usize, h: usize, uncover: bool) -> Seed {
    let south = (0..w).map(|_| [V_NONE, V_NONE, V_GREEN, V_RED][rng.gen_range(0..4)]).collect();
    let mut west = Vec::new();
    while west.len() < h {
        match rng.gen_range(0..5) {
            0 if uncover && west.len() + 2 <= h => west.extend([H_UNC, H_UNC]),
            1 | 2 => west.push(H_BLUE),
            _ => west.push(H_PLAIN),
        }
    }
    Seed::new(south, west)
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

pub fn check_rules(t: &TileSet, a: &Assembly) -> Result<(), String> {
    let (w, h) = a.dims();
    for y in 0..h {
        for x in 0..w {
            let Some(i) = a.get(x, y) else { continue };
            let c = t[i];
            if is_uncover(c) {
                ensure!(c.east() == H_UNC, "uncover tile leaks east at ({x}, {y})");
                continue;
            }
            ensure!((c.south() == V_GREEN) == (c.north() == V_GREEN), "green does not pass north at ({x}, {y})");
            ensure!(bluish(c.west()) == bluish(c.east()), "blue does not pass east at ({x}, {y})");
            ensure!(c.east() != H_UNC, "uncover glue outside an uncover row at ({x}, {y})");
            ensure!((c.east() == H_TAGGED) == (bluish(c.west()) && c.south() == V_GREEN), "tagging wrong at ({x}, {y})");
            let red_in = c.south() == V_RED || c.west() == H_RED;
            let red_out = c.north() == V_RED || c.east() == H_RED;
            ensure!(red_out == (red_in && c.west() != H_TAGGED), "red neither kept nor destroyed at ({x}, {y})");
        }
    }
    let row_unc = |y: usize| (0..w).all(|x| a.get(x, y).is_some_and(|i| is_uncover(t[i])));
    let mut y = 0;
    while y + 1 < h {
        if !(row_unc(y) && row_unc(y + 1)) {
            y += 1;
            continue;
        }
        for x in 0..w {
            let (lo, hi) = (t[a.get(x, y).unwrap()], t[a.get(x, y + 1).unwrap()]);
            let shown = match lo.south() {
                V_NONE => (BLACK, BLACK),
                V_GREEN => (WHITE, BLACK),
                V_RED => (BLACK, WHITE),
                g => return Err(format!("unknown vertical glue {g}")),
            };
            ensure!((lo.color(), hi.color()) == shown, "uncover colours wrong at ({x}, {y})");
            let swapped = match lo.south() {
                V_GREEN => V_RED,
                V_RED => V_GREEN,
                g => g,
            };
            ensure!(lo.north() == swapped, "uncover first row does not swap at ({x}, {y})");
            ensure!(hi.north() == lo.south(), "uncover second row does not restore at ({x}, {y})");
        }
        y += 2;
    }
    Ok(())
}

/// Checks the signal rules on random seeds until `want` assemblies completed.
pub fn rules_on_random_assemblies(t: &TileSet, want: usize, seed: u64) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut complete, mut tries) = (0, 0);
    while complete < want {
        tries += 1;
        ensure!(tries < 100_000, "only {complete} complete assemblies in {tries} tries");
        let (w, h) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let s = random_seed(&mut rng, w, h, true);
        let out = assemble(t, &s).map_err(|e| e.to_string())?;
        check_rules(t, &out.assembly)?;
        if out.status == Status::Complete {
            complete += 1;
        }
    }
    Ok(tries)
}

#[derive(Debug, Default)]
pub struct TraceStats {
    pub checked: usize,
    pub destroyed: usize,
}

/// Traces red signals from the bottom row of random assemblies without uncover rows.
pub fn red_offsets(t: &TileSet, want: usize, seed: u64) -> Result<TraceStats, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut stats = TraceStats::default();
    while stats.checked < want {
        let (w, h) = (rng.gen_range(2..=20), rng.gen_range(2..=20));
        let s = random_seed(&mut rng, w, h, false);
        let out = assemble(t, &s).map_err(|e| e.to_string())?;
        for x in 0..w {
            if s.south[x] != V_RED || out.assembly.get(x, 0).is_none() {
                continue;
            }
            let tr = trace_red_signal(&out.assembly, t, (x, 0)).map_err(|e| e.to_string())?;
            for pair in tr.cells.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                ensure!(b == (a.0 + 1, a.1) || b == (a.0, a.1 + 1), "trace jumps from {a:?} to {b:?}");
            }
            if tr.destroyed {
                stats.destroyed += 1;
                continue;
            }
            if tr.reason != TraceEnd::Top {
                continue;
            }
            let (x1, y1) = tr.end;
            let lhs = x1 as i64 - x as i64 - tr.greens_crossed as i64;
            let rhs = y1 as i64 - tr.blues_crossed as i64;
            ensure!(lhs == rhs, "trace from ({x}, 0): {lhs} != {rhs} in {tr:?}");
            stats.checked += 1;
        }
    }
    Ok(stats)
}

/// Identifies every pair of distinct glues in one namespace; returns the pairs tried.
pub fn rigidity(t: &TileSet) -> Result<usize, String> {
    let mut vertical: Vec<u16> = t.iter().flat_map(|c| [c.north(), c.south()]).collect();
    let mut horizontal: Vec<u16> = t.iter().flat_map(|c| [c.east(), c.west()]).collect();
    for v in [&mut vertical, &mut horizontal] {
        v.sort_unstable();
        v.dedup();
    }
    let mut pairs = 0;
    for (glues, vert) in [(&vertical, true), (&horizontal, false)] {
        for (k, &a) in glues.iter().enumerate() {
            for &b in &glues[k + 1..] {
                let merged: TileSet = t
                    .iter()
                    .map(|&c| {
                        let r = |g: u16| if g == b { a } else { g };
                        if vert {
                            Tile::new(r(c.north()), c.east(), r(c.south()), c.west(), c.color()).unwrap()
                        } else {
                            Tile::new(c.north(), r(c.east()), c.south(), r(c.west()), c.color()).unwrap()
                        }
                    })
                    .collect();
                ensure!(!is_directed_set(&merged), "identifying {a} and {b} keeps the set directed");
                pairs += 1;
            }
        }
    }
    Ok(pairs)
}

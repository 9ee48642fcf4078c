//! Monotone SAT with exactly `k` true variables, and its encoding as a binary
//! pattern assembled by the 13-tile signal set.
//!
//! Rows of the pattern, bottom up: the initial configuration (two uncover
//! rows), `k + n` white rows whose west glues hide the assignment, the target
//! configuration, 11 white rows, and 24 rows holding the gadget on the left.

mod formula;
mod words;

use alloc::vec::Vec;

use crate::assembly::Seed;
use crate::error::Error;
use crate::pattern::Pattern;
use crate::rtas::{assemble, colors_of, uniquely_self_assembles, Status};
use crate::signal::{H_UNC, WHITE};
use crate::tile::{Color, TileSet};

pub use formula::{msat_eval, msat_solve, vc_to_msat, Assignment, MonotoneFormula, SOLVE_MAX_VARS};
pub use words::{
    clause_word, decode_hidden, hidden_word, initial_word, target_word, Hidden, Pixel, GADGET_HEIGHT, GADGET_WIDTH, INIT_ROWS, WEST_SUFFIX, W_G,
};

/// Largest `n + k` accepted by [`Reduction::verify`].
pub const VERIFY_MAX: usize = 16;

/// The signal tile set together with the gadget it is built around.
#[derive(Clone, Debug)]
pub struct Reduction {
    tiles: TileSet,
    gadget: Pattern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A satisfying assignment exists but its seed does not produce the pattern.
    WitnessRejected(Assignment),
    /// A satisfying assignment exists but no hidden word produces the pattern.
    NoWordAccepted,
    /// A hidden word produces the pattern although the formula is unsatisfiable.
    WordWithoutSolution(Vec<Hidden>),
    /// An accepted hidden word with a blue count other than `k`.
    BlueCount { word: Vec<Hidden>, blues: usize },
    /// An accepted hidden word whose variables do not satisfy the formula.
    DecodedFails(Vec<Hidden>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub solution: Option<Assignment>,
    /// Whether the solution's own seed produces the pattern.
    pub witness_assembles: Option<bool>,
    /// Every hidden word of length `n + k` whose seed produces the pattern.
    pub accepted: Vec<Vec<Hidden>>,
    pub words_checked: usize,
    pub violations: Vec<Violation>,
}

impl ReductionReport {
    pub fn agrees(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn satisfiable(&self) -> bool {
        self.solution.is_some()
    }
}

impl Reduction {
    /// `gadget` is the full 21 x 24 gadget; its bottom row must be white
    /// exactly above the greens of `W_G`.
    pub fn new(tiles: TileSet, gadget: Pattern) -> Result<Reduction, Error> {
        if gadget.dims() != (GADGET_WIDTH, GADGET_HEIGHT) {
            return Err(Error::Dimension { expected: (GADGET_WIDTH, GADGET_HEIGHT), found: gadget.dims() });
        }
        let greens_match = W_G.iter().zip(gadget.row(0)).all(|(p, &c)| (*p == Pixel::Green) == (c == WHITE));
        if !greens_match {
            return Err(Error::Argument("gadget bottom row disagrees with the gadget's green inputs"));
        }
        Ok(Reduction { tiles, gadget })
    }

    pub fn tiles(&self) -> &TileSet {
        &self.tiles
    }

    pub fn gadget(&self) -> &Pattern {
        &self.gadget
    }

    /// The 35 rows above the target configuration, bottom up, grown from its signals.
    fn upper_rows(&self, target: &[Pixel]) -> Result<Vec<Vec<Color>>, Error> {
        let seed = Seed::new(target.iter().map(|p| p.glue()).collect(), WEST_SUFFIX.to_vec());
        let out = assemble(&self.tiles, &seed)?;
        if out.status != Status::Complete {
            return Err(Error::Argument("region above the target configuration does not assemble"));
        }
        let colors = colors_of(&out.assembly, &self.tiles)?;
        let rows: Vec<Vec<Color>> = (0..colors.height()).map(|y| colors.row(y).to_vec()).collect();
        if rows[..INIT_ROWS].iter().flatten().any(|&c| c != WHITE) {
            return Err(Error::Argument("initialization rows are not white"));
        }
        for (dy, row) in rows[INIT_ROWS..].iter().enumerate() {
            if row[..GADGET_WIDTH] != *self.gadget.row(dy) {
                return Err(Error::Argument("grown gadget area disagrees with the gadget"));
            }
        }
        Ok(rows)
    }

    pub fn build_pattern(&self, f: &MonotoneFormula, k: usize) -> Result<Pattern, Error> {
        if k > f.vars() {
            return Err(Error::Argument("k exceeds the number of variables"));
        }
        let c0 = initial_word(f, k);
        let ct = target_word(f, k);
        let width = c0.len();
        let mut rows: Vec<Vec<Color>> = Vec::with_capacity(k + f.vars() + 39);
        rows.push(c0.iter().map(|p| p.lower()).collect());
        rows.push(c0.iter().map(|p| p.upper()).collect());
        for _ in 0..k + f.vars() {
            rows.push(alloc::vec![WHITE; width]);
        }
        rows.push(ct.iter().map(|p| p.lower()).collect());
        rows.push(ct.iter().map(|p| p.upper()).collect());
        rows.extend(self.upper_rows(&ct)?);
        rows.reverse();
        Pattern::from_rows_top_down(&rows)
    }

    /// Seed with an arbitrary hidden word `z` between the configurations.
    pub fn seed_for_word(&self, f: &MonotoneFormula, k: usize, z: &[Hidden]) -> Seed {
        let south = initial_word(f, k).iter().map(|p| p.glue()).collect();
        let mut west = alloc::vec![H_UNC, H_UNC];
        west.extend(z.iter().map(|h| h.glue()));
        west.extend([H_UNC, H_UNC]);
        west.extend(WEST_SUFFIX);
        Seed::new(south, west)
    }

    pub fn build_seed(&self, f: &MonotoneFormula, k: usize, phi: &Assignment) -> Result<Seed, Error> {
        if phi.count() != k {
            return Err(Error::Argument("assignment must make exactly k variables true"));
        }
        if phi.true_vars().iter().any(|&v| v == 0 || v > f.vars()) {
            return Err(Error::Argument("assignment names an unknown variable"));
        }
        Ok(self.seed_for_word(f, k, &hidden_word(f.vars(), phi)))
    }

    /// Checks both directions on one instance: the witness seed of a solution
    /// assembles the pattern, and some hidden word does iff a solution exists.
    pub fn verify(&self, f: &MonotoneFormula, k: usize) -> Result<ReductionReport, Error> {
        let len = f.vars() + k;
        if len > VERIFY_MAX {
            return Err(Error::TooLarge { what: "n + k", value: len, max: VERIFY_MAX });
        }
        let pattern = self.build_pattern(f, k)?;
        let solution = msat_solve(f, k)?;
        let mut violations = Vec::new();
        let witness_assembles = match &solution {
            Some(phi) => {
                let ok = uniquely_self_assembles(&self.tiles, &self.build_seed(f, k, phi)?, &pattern);
                if !ok {
                    violations.push(Violation::WitnessRejected(phi.clone()));
                }
                Some(ok)
            }
            None => None,
        };
        let mut accepted = Vec::new();
        for mask in 0u32..(1 << len) {
            let z: Vec<Hidden> = (0..len).map(|i| if mask >> i & 1 == 1 { Hidden::Blue } else { Hidden::Plain }).collect();
            if !uniquely_self_assembles(&self.tiles, &self.seed_for_word(f, k, &z), &pattern) {
                continue;
            }
            let blues = z.iter().filter(|&&h| h == Hidden::Blue).count();
            if blues != k {
                violations.push(Violation::BlueCount { word: z.clone(), blues });
            }
            if !msat_eval(f, &decode_hidden(&z)) {
                violations.push(Violation::DecodedFails(z.clone()));
            }
            if solution.is_none() {
                violations.push(Violation::WordWithoutSolution(z.clone()));
            }
            accepted.push(z);
        }
        if solution.is_some() && accepted.is_empty() {
            violations.push(Violation::NoWordAccepted);
        }
        Ok(ReductionReport { solution, witness_assembles, accepted, words_checked: 1 << len, violations })
    }
}

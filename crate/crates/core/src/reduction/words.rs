use alloc::vec::Vec;

use super::formula::{Assignment, MonotoneFormula};
use crate::signal::{BLACK, H_BLUE, H_PLAIN, H_RED, H_UNC, V_GREEN, V_NONE, V_RED, WHITE};
use crate::tile::{Color, Glue};

/// Two vertically stacked pixels of an uncover row pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pixel {
    /// Black over black: no signal.
    Plain,
    /// White below black.
    Green,
    /// Black below white.
    Red,
}

impl Pixel {
    pub fn lower(self) -> Color {
        match self {
            Pixel::Green => WHITE,
            Pixel::Plain | Pixel::Red => BLACK,
        }
    }

    pub fn upper(self) -> Color {
        match self {
            Pixel::Red => WHITE,
            Pixel::Plain | Pixel::Green => BLACK,
        }
    }

    /// Vertical glue carrying this signal.
    pub fn glue(self) -> Glue {
        match self {
            Pixel::Plain => V_NONE,
            Pixel::Green => V_GREEN,
            Pixel::Red => V_RED,
        }
    }
}

/// One west glue of the hidden rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hidden {
    Plain,
    Blue,
}

impl Hidden {
    pub fn glue(self) -> Glue {
        match self {
            Hidden::Plain => H_PLAIN,
            Hidden::Blue => H_BLUE,
        }
    }
}

use Pixel::{Green as G, Plain as B};

/// Green signals entering the gadget from below.
pub const W_G: [Pixel; 21] = [G, B, B, B, B, G, B, G, B, B, G, B, B, G, B, B, B, B, G, B, B];

const R: Glue = H_RED;
const P: Glue = H_PLAIN;
const U: Glue = H_UNC;
const S: Glue = H_BLUE;

/// West glues above the target rows, bottom to top: 11 gadget-initialization
/// rows then the 24 gadget rows.
pub const WEST_SUFFIX: [Glue; 35] = [
    R, P, P, P, P, R, P, R, P, P, R, //
    U, U, P, U, U, S, U, U, U, U, S, U, U, U, U, R, U, U, P, U, U, S, U, U,
];

pub const GADGET_WIDTH: usize = W_G.len();
pub const GADGET_HEIGHT: usize = 24;
pub const INIT_ROWS: usize = 11;

/// `w_i`: for each variable `j` in order, a green if `j` is in the clause, then a plain pair.
pub fn clause_word(clause: &[usize], n: usize) -> Vec<Pixel> {
    let mut w = Vec::with_capacity(n + clause.len());
    for j in 1..=n {
        if clause.contains(&j) {
            w.push(Pixel::Green);
        }
        w.push(Pixel::Plain);
    }
    w
}

/// Bottom configuration: the counter red starts `k` pairs in, every clause starts with a red.
pub fn initial_word(f: &MonotoneFormula, k: usize) -> Vec<Pixel> {
    let n = f.vars();
    let mut w = W_G.to_vec();
    w.extend(core::iter::repeat_n(Pixel::Plain, k));
    w.push(Pixel::Red);
    w.extend(core::iter::repeat_n(Pixel::Plain, n));
    for c in f.clauses() {
        w.push(Pixel::Plain);
        w.push(Pixel::Red);
        w.extend(clause_word(c, n));
    }
    w
}

/// Target configuration: the counter red moved `n` pairs right, clause reds gone.
pub fn target_word(f: &MonotoneFormula, k: usize) -> Vec<Pixel> {
    let n = f.vars();
    let mut w = W_G.to_vec();
    w.extend(core::iter::repeat_n(Pixel::Plain, k + n));
    w.push(Pixel::Red);
    for c in f.clauses() {
        w.push(Pixel::Plain);
        w.push(Pixel::Plain);
        w.extend(clause_word(c, n));
    }
    w
}

/// `n` plain glues; after the `x`-th plain glue a blue one for every true `x`.
pub fn hidden_word(n: usize, phi: &Assignment) -> Vec<Hidden> {
    let mut z = Vec::with_capacity(n + phi.count());
    for x in 1..=n {
        z.push(Hidden::Plain);
        if phi.is_true(x) {
            z.push(Hidden::Blue);
        }
    }
    z
}

/// Variables whose blue glue is preceded by that many plain glues; a blue in
/// front of every plain glue names no variable.
pub fn decode_hidden(z: &[Hidden]) -> Assignment {
    let mut plains = 0;
    let mut vars = Vec::new();
    for h in z {
        match h {
            Hidden::Plain => plains += 1,
            Hidden::Blue if plains > 0 => vars.push(plains),
            Hidden::Blue => {}
        }
    }
    Assignment::new(vars)
}

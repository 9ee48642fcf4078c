use alloc::vec::Vec;

use crate::error::Error;

/// Largest variable count the brute-force solver accepts.
pub const SOLVE_MAX_VARS: usize = 24;

/// CNF without negations over variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneFormula {
    n: usize,
    clauses: Vec<Vec<usize>>,
}

impl MonotoneFormula {
    /// Clauses are sorted and deduplicated; each must be nonempty with variables in `1..=n`.
    pub fn new(n: usize, clauses: Vec<Vec<usize>>) -> Result<Self, Error> {
        let mut out = Vec::with_capacity(clauses.len());
        for mut c in clauses {
            if c.is_empty() {
                return Err(Error::Argument("empty clause"));
            }
            if c.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::Argument("clause variable outside 1..=n"));
            }
            c.sort_unstable();
            c.dedup();
            out.push(c);
        }
        Ok(MonotoneFormula { n, clauses: out })
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.clauses
    }
}

/// The set of variables assigned true, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Assignment {
    truth: Vec<usize>,
}

impl Assignment {
    pub fn new(mut truth: Vec<usize>) -> Self {
        truth.sort_unstable();
        truth.dedup();
        Assignment { truth }
    }

    pub fn true_vars(&self) -> &[usize] {
        &self.truth
    }

    pub fn is_true(&self, v: usize) -> bool {
        self.truth.binary_search(&v).is_ok()
    }

    pub fn count(&self) -> usize {
        self.truth.len()
    }
}

pub fn msat_eval(f: &MonotoneFormula, phi: &Assignment) -> bool {
    f.clauses.iter().all(|c| c.iter().any(|&v| phi.is_true(v)))
}

/// Lexicographically smallest satisfying set of exactly `k` true variables.
pub fn msat_solve(f: &MonotoneFormula, k: usize) -> Result<Option<Assignment>, Error> {
    if f.n > SOLVE_MAX_VARS {
        return Err(Error::TooLarge { what: "variables", value: f.n, max: SOLVE_MAX_VARS });
    }
    if k > f.n {
        return Ok(None);
    }
    let mut comb: Vec<usize> = (1..=k).collect();
    loop {
        let phi = Assignment { truth: comb.clone() };
        if msat_eval(f, &phi) {
            return Ok(Some(phi));
        }
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| comb[i] < f.n - (k - 1 - i)) else {
            return Ok(None);
        };
        comb[i] += 1;
        for j in i + 1..k {
            comb[j] = comb[j - 1] + 1;
        }
    }
}

/// One clause `x_u or x_v` per edge; vertex `v` becomes variable `v + 1`.
pub fn vc_to_msat(vertices: usize, edges: &[(usize, usize)]) -> Result<MonotoneFormula, Error> {
    let mut clauses = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u == v {
            return Err(Error::Argument("self-loop in graph"));
        }
        if u >= vertices || v >= vertices {
            return Err(Error::Argument("edge endpoint out of range"));
        }
        clauses.push(alloc::vec![u + 1, v + 1]);
    }
    MonotoneFormula::new(vertices, clauses)
}

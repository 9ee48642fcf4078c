//! Random monotone formulas and an exhaustive solver written for the tests.

use pats_core::reduction::{Assignment, MonotoneFormula};
use rand::Rng;

pub fn random_formula(rng: &mut impl Rng, max_n: usize, max_m: usize, max_k: usize) -> (MonotoneFormula, usize) {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let clauses = (0..m)
        .map(|_| {
            let mut c: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
            if c.is_empty() {
                c.push(rng.gen_range(1..=n));
            }
            c
        })
        .collect();
    let k = rng.gen_range(0..=max_k.min(n));
    (MonotoneFormula::new(n, clauses).unwrap(), k)
}

/// Every set of exactly `k` variables satisfying every clause.
pub fn all_solutions(f: &MonotoneFormula, k: usize) -> Vec<Assignment> {
    let n = f.vars();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|v| m >> (v - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|set| f.clauses().iter().all(|c| c.iter().any(|v| set.contains(v))))
        .map(Assignment::new)
        .collect()
}

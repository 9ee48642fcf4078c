use alloc::vec::Vec;

use super::{expand, isomorphism_classes, Job, ResultRecord};
use crate::error::Error;
use crate::pattern::Pattern;
use crate::tile::TileFields;

/// Depth-first exploration of one job with an explicit stack.
///
/// With `share` set, the first expansion that yields children hands them back
/// as a [`WorkerStep::Split`] instead of descending; sharing continues only
/// while splits produce a single child.
pub struct Worker<'p, T: TileFields> {
    pattern: &'p Pattern,
    stack: Vec<Job<T>>,
    results: Vec<ResultRecord<T>>,
    share: bool,
    expansions: u64,
    results_found: u64,
}

#[derive(Debug)]
pub enum WorkerStep<T: TileFields> {
    Expanded,
    Split { results: Vec<ResultRecord<T>>, next: Job<T>, new_jobs: Vec<Job<T>> },
    Done { results: Vec<ResultRecord<T>> },
}

impl<'p, T: TileFields> Worker<'p, T> {
    pub fn new(pattern: &'p Pattern, job: Job<T>, share: bool) -> Self {
        Worker { pattern, stack: alloc::vec![job], results: Vec::new(), share, expansions: 0, results_found: 0 }
    }

    pub fn step(&mut self) -> WorkerStep<T> {
        let Some(job) = self.stack.pop() else {
            return WorkerStep::Done { results: core::mem::take(&mut self.results) };
        };
        let e = expand(&job, self.pattern);
        self.expansions += 1;
        self.results_found += e.results.len() as u64;
        self.results.extend(e.results);
        let mut sub = e.subjobs;
        if self.share && !sub.is_empty() {
            let new_jobs = sub.split_off(1);
            let next = sub.pop().expect("one child");
            self.share = new_jobs.is_empty();
            self.stack.push(next.clone());
            return WorkerStep::Split { results: core::mem::take(&mut self.results), next, new_jobs };
        }
        self.stack.extend(sub.into_iter().rev());
        WorkerStep::Expanded
    }

    /// Unexplored jobs, next to be explored first, and results not yet handed out.
    pub fn checkpoint(&self) -> (Vec<Job<T>>, Vec<ResultRecord<T>>) {
        (self.stack.iter().rev().cloned().collect(), self.results.clone())
    }

    pub fn into_checkpoint(self) -> (Vec<Job<T>>, Vec<ResultRecord<T>>) {
        let mut pending = self.stack;
        pending.reverse();
        (pending, self.results)
    }

    pub fn expansions(&self) -> u64 {
        self.expansions
    }

    pub fn results_found(&self) -> u64 {
        self.results_found
    }

    pub fn is_sharing(&self) -> bool {
        self.share
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<T: TileFields> {
    /// One representative per isomorphism class.
    pub classes: Vec<ResultRecord<T>>,
    pub nodes_expanded: u64,
    pub results_found: u64,
}

/// Explores `job` to exhaustion; returns every result below it and the expansion count.
pub fn explore<T: TileFields>(pattern: &Pattern, job: Job<T>) -> (Vec<ResultRecord<T>>, u64) {
    let mut w = Worker::new(pattern, job, false);
    loop {
        if let WorkerStep::Done { results } = w.step() {
            return (results, w.expansions());
        }
    }
}

pub fn search<T: TileFields>(pattern: &Pattern, len: usize) -> Result<SearchReport<T>, Error> {
    let root = Job::root(pattern, len)?;
    let (results, nodes_expanded) = explore(pattern, root);
    let results_found = results.len() as u64;
    Ok(SearchReport { classes: isomorphism_classes(results), nodes_expanded, results_found })
}

/// Every job with exactly `depth` placed tiles, in lexicographic order of the
/// placement choices. Results met on the way (only when `depth` is the full
/// area) are collected separately so the frontier still covers every task.
#[derive(Clone, Debug, Default)]
pub struct Frontier<T: TileFields> {
    pub jobs: Vec<Job<T>>,
    pub results: Vec<ResultRecord<T>>,
}

pub fn frontier_visit<T, J, R>(pattern: &Pattern, len: usize, depth: usize, mut on_job: J, mut on_result: R) -> Result<(), Error>
where
    T: TileFields,
    J: FnMut(Job<T>),
    R: FnMut(ResultRecord<T>),
{
    let area = pattern.width() * pattern.height();
    if depth > area {
        return Err(Error::TooLarge { what: "frontier depth", value: depth, max: area });
    }
    let mut stack = alloc::vec![(0usize, Job::root(pattern, len)?)];
    while let Some((d, job)) = stack.pop() {
        if d == depth {
            on_job(job);
            continue;
        }
        let e = expand(&job, pattern);
        e.results.into_iter().for_each(&mut on_result);
        stack.extend(e.subjobs.into_iter().rev().map(|j| (d + 1, j)));
    }
    Ok(())
}

pub fn frontier<T: TileFields>(pattern: &Pattern, len: usize, depth: usize) -> Result<Frontier<T>, Error> {
    let mut f = Frontier { jobs: Vec::new(), results: Vec::new() };
    frontier_visit(pattern, len, depth, |j| f.jobs.push(j), |r| f.results.push(r))?;
    Ok(f)
}

/// Number of frontier jobs at `depth`, without keeping them.
pub fn frontier_count<T: TileFields>(pattern: &Pattern, len: usize, depth: usize) -> Result<u64, Error> {
    let mut n = 0u64;
    frontier_visit::<T, _, _>(pattern, len, depth, |_| n += 1, |_| {})?;
    Ok(n)
}

/// `counts[d]` = search-tree nodes with `d` placed tiles; the last entry counts results.
pub fn node_counts<T: TileFields>(pattern: &Pattern, len: usize) -> Result<Vec<u64>, Error> {
    let area = pattern.width() * pattern.height();
    let mut counts = alloc::vec![0u64; area + 1];
    let mut stack = alloc::vec![(0usize, Job::<T>::root(pattern, len)?)];
    while let Some((d, job)) = stack.pop() {
        counts[d] += 1;
        let e = expand(&job, pattern);
        counts[d + 1] += e.results.len() as u64;
        stack.extend(e.subjobs.into_iter().map(|j| (d + 1, j)));
    }
    Ok(counts)
}

//! In-process parallel search: split the tree breadth-first, then explore the
//! pieces on a thread pool. Output does not depend on the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use pats_core::search::{expand, explore, isomorphism_classes, Job, ResultRecord, SearchReport};
use pats_core::{Error, Pattern, TileFields};

/// Pieces per worker to aim for when splitting.
const PIECES_PER_WORKER: usize = 16;

struct Split<T> {
    jobs: Vec<Job<T>>,
    depth: usize,
    results: Vec<ResultRecord<T>>,
    expansions: u64,
}

/// Expands level by level, keeping lexicographic order, until there are at
/// least `target` jobs or the next level would exceed `max_depth`.
fn split<T: TileFields>(pattern: &Pattern, root: Job<T>, target: usize, max_depth: usize) -> Split<T> {
    let mut s = Split { jobs: vec![root], depth: 0, results: Vec::new(), expansions: 0 };
    while s.depth < max_depth && !s.jobs.is_empty() && s.jobs.len() < target {
        let mut next = Vec::new();
        for j in &s.jobs {
            let e = expand(j, pattern);
            s.expansions += 1;
            s.results.extend(e.results);
            next.extend(e.subjobs);
        }
        s.jobs = next;
        s.depth += 1;
    }
    s
}

/// Runs `f` on every item with `workers` threads; outputs come back in item order.
pub fn map_ordered<I, O, F>(items: &[I], workers: usize, f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync,
{
    let workers = workers.max(1).min(items.len().max(1));
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<O>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let out = f(item);
                *slots[i].lock().expect("slot") = Some(out);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("slot").expect("filled")).collect()
}

pub fn search<T>(pattern: &Pattern, len: usize, workers: usize) -> Result<SearchReport<T>, Error>
where
    T: TileFields + Send + Sync,
{
    let root = Job::root(pattern, len)?;
    if workers <= 1 {
        return pats_core::search::search(pattern, len);
    }
    let area = pattern.width() * pattern.height();
    let s = split(pattern, root, workers * PIECES_PER_WORKER, area);
    let outs = map_ordered(&s.jobs, workers, |j| explore(pattern, j.clone()));
    let mut results = s.results;
    let mut nodes_expanded = s.expansions;
    for (r, n) in outs {
        results.extend(r);
        nodes_expanded += n;
    }
    let results_found = results.len() as u64;
    Ok(SearchReport { classes: isomorphism_classes(results), nodes_expanded, results_found })
}

/// Depth-first frontier below an arbitrary job, children in placement order.
fn frontier_below<T: TileFields>(pattern: &Pattern, job: Job<T>, depth: usize, on_job: &mut dyn FnMut(Job<T>)) {
    let mut stack = vec![(0usize, job)];
    while let Some((d, j)) = stack.pop() {
        if d == depth {
            on_job(j);
            continue;
        }
        stack.extend(expand(&j, pattern).subjobs.into_iter().rev().map(|c| (d + 1, c)));
    }
}

fn check_depth(pattern: &Pattern, depth: usize) -> Result<(), Error> {
    let area = pattern.width() * pattern.height();
    if depth > area {
        return Err(Error::TooLarge { what: "frontier depth", value: depth, max: area });
    }
    Ok(())
}

/// Every job with `depth` placed tiles, in the same order as the sequential frontier.
pub fn frontier<T>(pattern: &Pattern, len: usize, depth: usize, workers: usize) -> Result<Vec<Job<T>>, Error>
where
    T: TileFields + Send + Sync,
{
    check_depth(pattern, depth)?;
    let s = split::<T>(pattern, Job::root(pattern, len)?, workers.max(1) * PIECES_PER_WORKER, depth);
    let rest = depth - s.depth;
    let parts = map_ordered(&s.jobs, workers, |j| {
        let mut v = Vec::new();
        frontier_below(pattern, j.clone(), rest, &mut |x| v.push(x));
        v
    });
    Ok(parts.into_iter().flatten().collect())
}

pub fn frontier_count<T>(pattern: &Pattern, len: usize, depth: usize, workers: usize) -> Result<u64, Error>
where
    T: TileFields + Send + Sync,
{
    check_depth(pattern, depth)?;
    let s = split::<T>(pattern, Job::root(pattern, len)?, workers.max(1) * PIECES_PER_WORKER, depth);
    let rest = depth - s.depth;
    let parts = map_ordered(&s.jobs, workers, |j| {
        let mut n = 0u64;
        frontier_below(pattern, j.clone(), rest, &mut |_| n += 1);
        n
    });
    Ok(parts.into_iter().sum())
}

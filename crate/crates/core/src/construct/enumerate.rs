//! Exhaustive enumeration of associative tables of order at most 5.
//!
//! Cells are decided one at a time by depth-first search. After each
//! assignment, every triple whose required products are all decided is
//! re-checked, so any leaf reached has passed a complete associativity
//! scan and the emitted table can skip re-validation.
//!
//! Tables come out in lexicographic order of the row-major entry vector.

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// Largest order the exhaustive enumerator accepts.
pub const MAX_ENUMERATION_ORDER: usize = 5;

/// Largest order [`canonical_form`] accepts (cost grows as `n!`).
pub const MAX_CANONICAL_ORDER: usize = 7;

/// Depth-first enumerator over associative tables of a fixed order.
#[derive(Debug, Clone)]
pub struct SemigroupEnumerator {
    n: usize,
    /// Decision order: `order[d]` is the flat cell decided at depth `d`.
    order: Vec<usize>,
    /// Current values, indexed by flat cell id.
    table: Vec<usize>,
    decided: Vec<bool>,
    /// Depths `0..fixed` are pinned and never backtracked past.
    fixed: usize,
    cursor: usize,
    /// Whether `table[order[cursor]]` is a fresh untried candidate.
    fresh: bool,
    started: bool,
    done: bool,
    up_to_iso: bool,
}

impl SemigroupEnumerator {
    fn build(n: usize, order: Vec<usize>, prefix: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_ENUMERATION_ORDER {
            return Err(Error::resource(format!(
                "enumeration supported for orders 1..={MAX_ENUMERATION_ORDER}, got {n}"
            )));
        }
        let cells = n * n;
        let mut seen = vec![false; cells];
        if order.len() != cells || order.iter().any(|&c| c >= cells || std::mem::replace(&mut seen[c], true)) {
            return Err(Error::input("decision order must be a permutation of all cells"));
        }
        if prefix.len() > cells || prefix.iter().any(|&v| v >= n) {
            return Err(Error::input("invalid cell prefix"));
        }
        let mut e = SemigroupEnumerator {
            n,
            order,
            table: vec![0; cells],
            decided: vec![false; cells],
            fixed: prefix.len(),
            cursor: 0,
            fresh: true,
            started: false,
            done: false,
            up_to_iso: false,
        };
        for (d, &v) in prefix.iter().enumerate() {
            e.table[e.order[d]] = v;
            e.decided[e.order[d]] = true;
        }
        Ok(e)
    }

    /// Row-major enumerator over all associative tables of order `n`.
    pub fn new(n: usize) -> Result<Self> {
        let order = (0..n * n).collect();
        SemigroupEnumerator::build(n, order, &[])
    }

    /// Enumerator deciding cells in a caller-chosen order. The set of
    /// emitted tables is order-independent; only the emission sequence
    /// changes.
    pub fn with_decision_order(n: usize, order: Vec<usize>) -> Result<Self> {
        SemigroupEnumerator::build(n, order, &[])
    }

    /// Row-major enumerator with the first `prefix.len()` cells pinned.
    /// Workers on disjoint prefixes cover disjoint subtrees.
    pub fn with_prefix(n: usize, prefix: &[usize]) -> Result<Self> {
        let order = (0..n * n).collect();
        SemigroupEnumerator::build(n, order, prefix)
    }

    /// Keep only tables that are lexicographically minimal in their
    /// relabeling orbit, i.e. one representative per isomorphism class.
    pub fn up_to_iso(mut self) -> Self {
        self.up_to_iso = true;
        self
    }

    /// True when every triple with all products decided associates.
    fn consistent(&self) -> bool {
        let n = self.n;
        let get = |i: usize, j: usize| -> Option<usize> {
            let c = i * n + j;
            self.decided[c].then(|| self.table[c])
        };
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = get(x, y) else { continue };
                for z in 0..n {
                    let (Some(yz), Some(l)) = (get(y, z), get(xy, z)) else {
                        continue;
                    };
                    let Some(r) = get(x, yz) else { continue };
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn emit(&self) -> CayleyTable {
        // The leaf consistency scan covered every triple.
        CayleyTable::new(self.n, self.table.clone())
            .expect("search state is a valid table")
            .assume_associative()
    }
}

impl Iterator for SemigroupEnumerator {
    type Item = CayleyTable;

    fn next(&mut self) -> Option<CayleyTable> {
        let cells = self.n * self.n;
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            // Check the pinned prefix in one pass; an inconsistent
            // prefix yields an empty stream.
            if !self.consistent() {
                self.done = true;
                return None;
            }
            if self.fixed == cells {
                self.done = true;
                let t = self.emit();
                return match self.up_to_iso {
                    true if !is_canonical(&t) => None,
                    _ => Some(t),
                };
            }
            self.cursor = self.fixed;
            self.table[self.order[self.cursor]] = 0;
            self.decided[self.order[self.cursor]] = true;
            self.fresh = true;
        } else {
            // Re-entry after yielding a leaf: advance the last cell.
            self.fresh = false;
        }

        loop {
            if !self.fresh {
                let cell = self.order[self.cursor];
                self.table[cell] += 1;
                if self.table[cell] == self.n {
                    // Exhausted this cell: backtrack.
                    self.decided[cell] = false;
                    if self.cursor == self.fixed {
                        self.done = true;
                        return None;
                    }
                    self.cursor -= 1;
                    continue;
                }
                self.fresh = true;
            }

            self.fresh = false;
            if !self.consistent() {
                continue;
            }
            if self.cursor + 1 == cells {
                let t = self.emit();
                if !self.up_to_iso || is_canonical(&t) {
                    return Some(t);
                }
                continue;
            }
            self.cursor += 1;
            let cell = self.order[self.cursor];
            self.table[cell] = 0;
            self.decided[cell] = true;
            self.fresh = true;
        }
    }
}

/// All associative tables of order `n` in lexicographic table order.
pub fn enumerate_semigroups(n: usize) -> Result<SemigroupEnumerator> {
    SemigroupEnumerator::new(n)
}

fn relabeled_entries(s: &CayleyTable, sigma: &[usize]) -> Vec<usize> {
    let n = s.order();
    let mut inv = vec![0; n];
    for (old, &new) in sigma.iter().enumerate() {
        inv[new] = old;
    }
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = sigma[s.at(inv[i], inv[j])];
        }
    }
    out
}

/// Lexicographically minimal relabeling of `s`, with default names.
/// Two tables are isomorphic exactly when their canonical forms have
/// equal entries.
pub fn canonical_form(s: &CayleyTable) -> Result<CayleyTable> {
    use itertools::Itertools;
    let n = s.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::resource(format!(
            "canonical form supported for orders 1..={MAX_CANONICAL_ORDER}, got {n}"
        )));
    }
    let best = (0..n)
        .permutations(n)
        .map(|sigma| relabeled_entries(s, &sigma))
        .min()
        .expect("at least the identity relabeling");
    CayleyTable::new(n, best)
}

fn is_canonical(s: &CayleyTable) -> bool {
    let n = s.order();
    use itertools::Itertools;
    // Early-exit comparison beats materializing every relabeling.
    (0..n)
        .permutations(n)
        .all(|sigma| relabeled_entries(s, &sigma).as_slice() >= s.entries())
}

/// Folds every associative table of order `n` in lexicographic order,
/// optionally fanning subtrees out over `jobs` worker threads.
///
/// Workers own disjoint cell-prefix subtrees and their partial folds are
/// merged in prefix order, so the result is identical for every job
/// count.
pub fn fold_tables<A, I, S, M>(n: usize, jobs: usize, init: I, step: S, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, CayleyTable) + Sync,
    M: Fn(A, A) -> A,
{
    if jobs == 0 {
        return Err(Error::input("job count must be at least 1"));
    }
    if jobs == 1 {
        let mut acc = init();
        for t in enumerate_semigroups(n)? {
            step(&mut acc, t);
        }
        return Ok(acc);
    }

    let depth = (n * n).min(3);
    let prefixes: Vec<Vec<usize>> = (0..n.pow(depth as u32))
        .map(|mut code| {
            let mut p = vec![0; depth];
            for d in (0..depth).rev() {
                p[d] = code % n;
                code /= n;
            }
            p
        })
        .collect();

    let step = &step;
    let init = &init;
    let results: Vec<Vec<(usize, A)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let prefixes = &prefixes;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for (idx, prefix) in prefixes.iter().enumerate() {
                        if idx % jobs != w {
                            continue;
                        }
                        let mut acc = init();
                        let e = SemigroupEnumerator::with_prefix(n, prefix)
                            .expect("prefix within range");
                        for t in e {
                            step(&mut acc, t);
                        }
                        out.push((idx, acc));
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut parts: Vec<(usize, A)> = results.into_iter().flatten().collect();
    parts.sort_by_key(|(idx, _)| *idx);
    let mut acc = init();
    for (_, part) in parts {
        acc = merge(acc, part);
    }
    Ok(acc)
}

/// Convenience count of all associative tables of order `n`.
pub fn count_semigroups(n: usize, jobs: usize) -> Result<u64> {
    fold_tables(n, jobs, || 0u64, |acc, _| *acc += 1, |a, b| a + b)
}

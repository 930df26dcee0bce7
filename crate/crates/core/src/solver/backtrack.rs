//! Primary solver: branch-and-bound over path systems.
//!
//! Systems are built in canonical order (path starts strictly
//! increasing, each path extended vertex by vertex), so every set of
//! paths is visited exactly once. Pruning combines the
//! remaining-vertices upper bound with a start-feasibility check, and
//! the maximization variant memoizes visited states: the subtree below
//! (used, built, phase) is fully determined by them, and the incumbent
//! only improves, so a revisit can never add anything.

use std::collections::HashSet;

use super::Adj;

struct MaxSearch<'a> {
    adj: &'a Adj,
    k: usize,
    best: usize,
    best_paths: Vec<Vec<usize>>,
    paths: Vec<Vec<usize>>,
    visited: HashSet<u64>,
}

/// Maximum-order system of exactly `k` paths: (order, witness paths).
/// Requires 1 <= k <= n.
pub(super) fn max_system(adj: &Adj, k: usize) -> (usize, Vec<Vec<usize>>) {
    debug_assert!(k >= 1 && k <= adj.n);
    let mut search = MaxSearch {
        adj,
        k,
        best: 0,
        best_paths: Vec::new(),
        paths: Vec::new(),
        visited: HashSet::new(),
    };
    search.closed(0, 0, 0);
    (search.best, search.best_paths)
}

impl MaxSearch<'_> {
    /// Upper bound on the total order reachable from this state: what
    /// is covered, plus one start per path still to open, plus every
    /// unused vertex that could still be appended to some path (it
    /// needs an in-arc from a vertex that is unused or is the open
    /// path's end).
    fn bound(&self, used: u32, covered: usize, paths_open: usize, cur_end: u32) -> usize {
        let unused = self.adj.full() & !used;
        let feed = unused | cur_end;
        let mut appendable = 0usize;
        let mut m = unused;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.adj.inn[v] & feed != 0 {
                appendable += 1;
            }
        }
        covered + (self.k - paths_open) + appendable
    }

    fn candidate(&mut self, covered: usize) {
        if covered > self.best {
            self.best = covered;
            self.best_paths = self.paths.clone();
        }
    }

    /// State between paths: `built` paths closed, next start must be
    /// >= `min_start`.
    fn closed(&mut self, used: u32, built: usize, min_start: usize) {
        let covered = used.count_ones() as usize;
        if built == self.k {
            self.candidate(covered);
            return;
        }
        let unused = self.adj.full() & !used;
        let eligible = unused & start_mask(min_start);
        if (eligible.count_ones() as usize) < self.k - built {
            return;
        }
        if self.bound(used, covered, built, 0) <= self.best {
            return;
        }
        if !self.visited.insert(state_key(used, built, 0xff, min_start)) {
            return;
        }
        let mut m = eligible;
        while m != 0 {
            let s = m.trailing_zeros() as usize;
            m &= m - 1;
            self.paths.push(vec![s]);
            self.open(used | 1 << s, built, s, s);
            self.paths.pop();
        }
    }

    /// State with an open path started at `start` and currently ending
    /// at `last`.
    fn open(&mut self, used: u32, built: usize, start: usize, last: usize) {
        let covered = used.count_ones() as usize;
        let unused = self.adj.full() & !used;
        // The k - built - 1 paths still to open need starts above ours.
        if ((unused & start_mask(start + 1)).count_ones() as usize) < self.k - built - 1 {
            return;
        }
        if self.bound(used, covered, built + 1, 1 << last) <= self.best {
            return;
        }
        if !self
            .visited
            .insert(state_key(used, built, last as u8, start))
        {
            return;
        }
        let mut m = self.adj.out[last] & unused;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            self.paths.last_mut().unwrap().push(v);
            self.open(used | 1 << v, built, start, v);
            self.paths.last_mut().unwrap().pop();
        }
        self.closed(used, built + 1, start + 1);
    }
}

struct EnumSearch<'a, F> {
    adj: &'a Adj,
    k: usize,
    target: usize,
    paths: Vec<Vec<usize>>,
    count: u64,
    emit: F,
}

/// Visits every system of exactly `k` paths whose order equals
/// `target` (pass lambda_k to get all maximum systems). Canonical
/// construction order guarantees no duplicates.
pub(super) fn enumerate_systems<F>(adj: &Adj, k: usize, target: usize, emit: F) -> u64
where
    F: FnMut(&[Vec<usize>]),
{
    let mut search = EnumSearch {
        adj,
        k,
        target,
        paths: Vec::new(),
        count: 0,
        emit,
    };
    search.closed(0, 0, 0);
    search.count
}

impl<F: FnMut(&[Vec<usize>])> EnumSearch<'_, F> {
    fn reachable(&self, used: u32, covered: usize, paths_open: usize, cur_end: u32) -> bool {
        let unused = self.adj.full() & !used;
        let feed = unused | cur_end;
        let mut appendable = 0usize;
        let mut m = unused;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.adj.inn[v] & feed != 0 {
                appendable += 1;
            }
        }
        covered + (self.k - paths_open) + appendable >= self.target
    }

    fn closed(&mut self, used: u32, built: usize, min_start: usize) {
        let covered = used.count_ones() as usize;
        if built == self.k {
            if covered == self.target {
                self.count += 1;
                (self.emit)(&self.paths);
            }
            return;
        }
        let unused = self.adj.full() & !used;
        let eligible = unused & start_mask(min_start);
        if (eligible.count_ones() as usize) < self.k - built {
            return;
        }
        if !self.reachable(used, covered, built, 0) {
            return;
        }
        let mut m = eligible;
        while m != 0 {
            let s = m.trailing_zeros() as usize;
            m &= m - 1;
            self.paths.push(vec![s]);
            self.open(used | 1 << s, built, s, s);
            self.paths.pop();
        }
    }

    fn open(&mut self, used: u32, built: usize, start: usize, last: usize) {
        let covered = used.count_ones() as usize;
        let unused = self.adj.full() & !used;
        if ((unused & start_mask(start + 1)).count_ones() as usize) < self.k - built - 1 {
            return;
        }
        if !self.reachable(used, covered, built + 1, 1 << last) {
            return;
        }
        let mut m = self.adj.out[last] & unused;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            self.paths.last_mut().unwrap().push(v);
            self.open(used | 1 << v, built, start, v);
            self.paths.last_mut().unwrap().pop();
        }
        self.closed(used, built + 1, start + 1);
    }
}

fn start_mask(min_start: usize) -> u32 {
    if min_start >= 32 {
        0
    } else {
        !0u32 << min_start
    }
}

fn state_key(used: u32, built: usize, last: u8, start: usize) -> u64 {
    (used as u64) | (built as u64) << 32 | (last as u64) << 40 | (start as u64) << 48
}

//! Branch-and-bound for minimum hitting sets.
//!
//! The search branches on an unhit set with the fewest available elements
//! (ties: least set index). Its available elements are tried in ascending
//! order; after element `e` is explored it is excluded for the remaining
//! siblings, so every hitting set is reached at most once. The lower bound
//! at a node is the number of chosen elements plus the size of a greedy
//! family of unhit sets that pairwise share no available element.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

/// A family of subsets of `0..elements`.
#[derive(Debug, Clone)]
pub struct HittingInstance {
    elements: usize,
    sets: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of expanded nodes; `None` is unlimited.
    pub node_budget: Option<u64>,
    pub threads: usize,
    /// Forces a single-threaded search with reproducible witnesses.
    pub deterministic: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: None,
            threads: 1,
            deterministic: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub value: usize,
    /// Sorted ascending.
    pub witness: Vec<usize>,
    pub proved_optimal: bool,
    pub nodes: u64,
}

/// Snapshot of a node handed to a search observer.
#[derive(Debug, Clone)]
pub struct NodeView<'a> {
    pub chosen: &'a [usize],
    pub excluded: Vec<usize>,
    /// Lower bound computed at this node (`usize::MAX` when infeasible).
    pub bound: usize,
}

impl HittingInstance {
    pub fn new(elements: usize, sets: Vec<Vec<usize>>) -> Self {
        let mut containing = vec![Vec::new(); elements];
        for (i, s) in sets.iter().enumerate() {
            for &e in s {
                containing[e].push(i);
            }
        }
        HittingInstance {
            elements,
            sets,
            containing,
        }
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Index of the first set missed by `chosen`, if any.
    pub fn first_unhit(&self, chosen: &[usize]) -> Option<usize> {
        let mut mark = vec![false; self.elements];
        for &e in chosen {
            mark[e] = true;
        }
        self.sets.iter().position(|s| !s.iter().any(|&e| mark[e]))
    }

    /// Repeatedly takes the element hitting the most unhit sets (ties: least
    /// index). Returns the chosen elements sorted, or `None` if some set is
    /// empty.
    pub fn greedy(&self) -> Option<Vec<usize>> {
        if self.sets.iter().any(|s| s.is_empty()) {
            return None;
        }
        let mut gain: Vec<usize> = self.containing.iter().map(|c| c.len()).collect();
        let mut hit = vec![false; self.sets.len()];
        let mut remaining = self.sets.len();
        let mut chosen = Vec::new();
        while remaining > 0 {
            let (best, _) = gain
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .expect("non-empty universe");
            chosen.push(best);
            for &s in &self.containing[best] {
                if !hit[s] {
                    hit[s] = true;
                    remaining -= 1;
                    for &e in &self.sets[s] {
                        gain[e] -= 1;
                    }
                }
            }
        }
        chosen.sort_unstable();
        Some(chosen)
    }

    pub fn solve(&self, opts: &SearchOptions) -> Option<SearchOutcome> {
        let threads = if opts.deterministic { 1 } else { opts.threads.max(1) };
        if threads == 1 {
            self.solve_observed(opts.node_budget, &mut |_| {})
        } else {
            self.solve_parallel(opts.node_budget, threads)
        }
    }

    /// Single-threaded search calling `observer` at every expanded node
    /// that is not already a hitting set.
    pub fn solve_observed(
        &self,
        node_budget: Option<u64>,
        observer: &mut dyn FnMut(&NodeView<'_>),
    ) -> Option<SearchOutcome> {
        let start = self.greedy()?;
        let shared = Shared::new(start, node_budget);
        let mut search = Search::new(self, &shared);
        search.observer = Some(observer);
        search.dfs();
        Some(shared.finish())
    }

    fn solve_parallel(&self, node_budget: Option<u64>, threads: usize) -> Option<SearchOutcome> {
        let start = self.greedy()?;
        let shared = Shared::new(start, node_budget);
        // Expand the top of the tree serially and hand out the frontier.
        let mut jobs = Vec::new();
        {
            let mut search = Search::new(self, &shared);
            search.split_depth = Some(2);
            search.frontier = Some(&mut jobs);
            search.dfs();
        }
        let next = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(job) = jobs.get(i) else { break };
                    let mut search = Search::new(self, &shared);
                    search.replay(job);
                    search.dfs();
                });
            }
        });
        Some(shared.finish())
    }
}

/// A subproblem: elements forced in and out.
#[derive(Debug, Clone)]
struct Job {
    chosen: Vec<usize>,
    excluded: Vec<usize>,
}

struct Shared {
    best_value: AtomicUsize,
    best: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    budget: Option<u64>,
    exhausted: AtomicBool,
}

impl Shared {
    fn new(start: Vec<usize>, budget: Option<u64>) -> Self {
        Shared {
            best_value: AtomicUsize::new(start.len()),
            best: Mutex::new(start),
            nodes: AtomicU64::new(0),
            budget,
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts a node; false once the budget is spent.
    fn take_node(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.budget.is_some_and(|b| n >= b) {
            self.nodes.fetch_sub(1, Ordering::Relaxed);
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn offer(&self, chosen: &[usize]) {
        let mut sorted = chosen.to_vec();
        sorted.sort_unstable();
        let mut best = self.best.lock().unwrap();
        if sorted.len() < best.len() || (sorted.len() == best.len() && sorted < *best) {
            self.best_value.store(sorted.len(), Ordering::Relaxed);
            *best = sorted;
        }
    }

    fn finish(self) -> SearchOutcome {
        let witness = self.best.into_inner().unwrap();
        SearchOutcome {
            value: witness.len(),
            witness,
            proved_optimal: !self.exhausted.into_inner(),
            nodes: self.nodes.into_inner(),
        }
    }
}

struct Search<'a, 'o> {
    inst: &'a HittingInstance,
    shared: &'a Shared,
    hit: Vec<u32>,
    avail: Vec<u32>,
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    unhit: usize,
    // Scratch for the packing bound.
    stamp: Vec<u32>,
    epoch: u32,
    buckets: Vec<Vec<usize>>,
    observer: Option<&'o mut dyn FnMut(&NodeView<'_>)>,
    split_depth: Option<usize>,
    frontier: Option<&'o mut Vec<Job>>,
}

const INFEASIBLE: usize = usize::MAX;

impl<'a, 'o> Search<'a, 'o> {
    fn new(inst: &'a HittingInstance, shared: &'a Shared) -> Self {
        let max_size = inst.sets.iter().map(Vec::len).max().unwrap_or(0);
        Search {
            inst,
            shared,
            hit: vec![0; inst.sets.len()],
            avail: inst.sets.iter().map(|s| s.len() as u32).collect(),
            excluded: vec![false; inst.elements],
            chosen: Vec::new(),
            unhit: inst.sets.len(),
            stamp: vec![0; inst.elements],
            epoch: 0,
            buckets: vec![Vec::new(); max_size + 1],
            observer: None,
            split_depth: None,
            frontier: None,
        }
    }

    fn replay(&mut self, job: &Job) {
        for &e in &job.excluded {
            self.exclude(e);
        }
        for &e in &job.chosen {
            self.choose(e);
        }
    }

    fn choose(&mut self, e: usize) {
        for &s in &self.inst.containing[e] {
            if self.hit[s] == 0 {
                self.unhit -= 1;
            }
            self.hit[s] += 1;
        }
        self.chosen.push(e);
    }

    fn unchoose(&mut self, e: usize) {
        self.chosen.pop();
        for &s in &self.inst.containing[e] {
            self.hit[s] -= 1;
            if self.hit[s] == 0 {
                self.unhit += 1;
            }
        }
    }

    fn exclude(&mut self, e: usize) {
        self.excluded[e] = true;
        for &s in &self.inst.containing[e] {
            self.avail[s] -= 1;
        }
    }

    fn include(&mut self, e: usize) {
        self.excluded[e] = false;
        for &s in &self.inst.containing[e] {
            self.avail[s] += 1;
        }
    }

    /// Greedy disjoint packing of unhit sets, fewest available elements
    /// first. Returns `INFEASIBLE` if some unhit set has nothing left.
    fn packing(&mut self) -> usize {
        for b in &mut self.buckets {
            b.clear();
        }
        for (s, (&h, &a)) in self.hit.iter().zip(&self.avail).enumerate() {
            if h == 0 {
                if a == 0 {
                    return INFEASIBLE;
                }
                self.buckets[a as usize].push(s);
            }
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|x| *x = 0);
            self.epoch = 1;
        }
        let mut count = 0;
        for bucket in &self.buckets {
            for &s in bucket {
                let elems = &self.inst.sets[s];
                let free = elems
                    .iter()
                    .all(|&e| self.excluded[e] || self.stamp[e] != self.epoch);
                if free {
                    count += 1;
                    for &e in elems {
                        self.stamp[e] = self.epoch;
                    }
                }
            }
        }
        count
    }

    fn branch_set(&self) -> usize {
        let mut best = (u32::MAX, 0);
        for (s, (&h, &a)) in self.hit.iter().zip(&self.avail).enumerate() {
            if h == 0 && a < best.0 {
                best = (a, s);
            }
        }
        best.1
    }

    fn dfs(&mut self) {
        if self.shared.exhausted.load(Ordering::Relaxed) {
            return;
        }
        if let (Some(depth), Some(frontier)) = (self.split_depth, self.frontier.as_deref_mut()) {
            if self.chosen.len() == depth && self.unhit > 0 {
                frontier.push(Job {
                    chosen: self.chosen.clone(),
                    excluded: (0..self.inst.elements).filter(|&e| self.excluded[e]).collect(),
                });
                return;
            }
        }
        if !self.shared.take_node() {
            return;
        }
        if self.unhit == 0 {
            if self.chosen.len() < self.shared.best_value.load(Ordering::Relaxed) {
                self.shared.offer(&self.chosen);
            }
            return;
        }
        let packed = self.packing();
        let bound = if packed == INFEASIBLE {
            INFEASIBLE
        } else {
            self.chosen.len() + packed
        };
        if let Some(obs) = self.observer.as_deref_mut() {
            obs(&NodeView {
                chosen: &self.chosen,
                excluded: (0..self.inst.elements).filter(|&e| self.excluded[e]).collect(),
                bound,
            });
        }
        if bound >= self.shared.best_value.load(Ordering::Relaxed) {
            return;
        }
        let set = self.branch_set();
        let mut newly_excluded = Vec::new();
        for &e in &self.inst.sets[set] {
            if self.excluded[e] {
                continue;
            }
            self.choose(e);
            self.dfs();
            self.unchoose(e);
            self.exclude(e);
            newly_excluded.push(e);
            if self.shared.exhausted.load(Ordering::Relaxed) {
                break;
            }
        }
        for e in newly_excluded {
            self.include(e);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_min(inst: &HittingInstance) -> usize {
        let n = inst.elements();
        (0u64..1 << n)
            .filter(|mask| {
                inst.sets()
                    .iter()
                    .all(|s| s.iter().any(|&e| mask >> e & 1 == 1))
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn small_instances_match_brute_force() {
        let inst = HittingInstance::new(5, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]]);
        let out = inst.solve(&SearchOptions::default()).unwrap();
        assert_eq!(out.value, brute_min(&inst));
        assert!(out.proved_optimal);
        assert_eq!(inst.first_unhit(&out.witness), None);
    }

    #[test]
    fn empty_set_is_infeasible() {
        let inst = HittingInstance::new(2, vec![vec![0], vec![]]);
        assert_eq!(inst.greedy(), None);
        assert_eq!(inst.solve(&SearchOptions::default()), None);
    }

    #[test]
    fn zero_budget_returns_greedy() {
        let inst = HittingInstance::new(4, vec![vec![0, 1], vec![2, 3]]);
        let opts = SearchOptions {
            node_budget: Some(0),
            ..SearchOptions::default()
        };
        let out = inst.solve(&opts).unwrap();
        assert!(!out.proved_optimal);
        assert_eq!(out.nodes, 0);
        assert_eq!(out.witness, inst.greedy().unwrap());
    }

    #[test]
    fn parallel_agrees_on_value() {
        // Cyclic instance where greedy is not optimal.
        let n = 9;
        let sets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n, (i + 3) % n]).collect();
        let inst = HittingInstance::new(n, sets);
        let serial = inst.solve(&SearchOptions::default()).unwrap();
        let parallel = inst
            .solve(&SearchOptions {
                node_budget: None,
                threads: 4,
                deterministic: false,
            })
            .unwrap();
        assert_eq!(serial.value, brute_min(&inst));
        assert_eq!(parallel.value, serial.value);
        assert!(parallel.proved_optimal);
    }
}

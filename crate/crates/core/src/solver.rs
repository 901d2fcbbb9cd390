//! Exact zero forcing numbers.
//!
//! The search deepens on the candidate size `k`, starting from a proven lower
//! bound (the girth/degree bound when it applies). For each `k`, sets are
//! enumerated in lexicographic order by depth-first extension, keeping the
//! closure of every prefix on the stack so each extension only propagates the
//! newly added vertex. Two prunings keep the search exact:
//!
//! * a candidate that is already black in the prefix closure is skipped; a set
//!   containing such a vertex is not minimal, and the first `k` that succeeds
//!   is the minimum, so no minimum set is lost;
//! * a prefix is abandoned when fewer white candidates remain above its last
//!   vertex than picks are left to make.
//!
//! The first `k` at which some set closes to `V` is `Z(G)`, and the first set
//! found is the lexicographically least minimum zero forcing set. Parallel
//! runs split on the smallest member of the set and keep the least block that
//! succeeds, so they return the same witness.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::davila_kenter_bound;
use crate::forcing::is_zero_forcing_set;
use crate::graph::Graph;
use crate::set::VertexSet;

/// Largest graph the enumeration oracle accepts.
pub const ORACLE_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// A lower bound on `Z(G)` supplied by the caller. It is trusted: a value
    /// above the true number is detected and reported as an error.
    pub start_lower_bound: Option<usize>,
    /// Maximum number of closure extensions before giving up with bounds.
    pub node_budget: Option<u64>,
    pub workers: usize,
    /// Start the search at the girth/degree bound when it applies. Turn this
    /// off when the answer is used to test that bound.
    pub use_structural_bound: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            start_lower_bound: None,
            node_budget: None,
            workers: 1,
            use_structural_bound: true,
        }
    }
}

impl SolverConfig {
    pub fn with_workers(workers: usize) -> Self {
        SolverConfig {
            workers,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), SolveError> {
        if self.workers == 0 {
            return Err(SolveError::InvalidConfig("worker count must be positive"));
        }
        if self.node_budget == Some(0) {
            return Err(SolveError::InvalidConfig("node budget must be positive"));
        }
        if self.start_lower_bound == Some(0) {
            return Err(SolveError::InvalidConfig(
                "start lower bound must be positive",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("graph has {n} vertices; the enumeration oracle is limited to {max}")]
    TooLarge { n: usize, max: usize },
    #[error("start lower bound {bound} exceeds the zero forcing number (a set of size {found} forces the graph)")]
    LowerBoundTooHigh { bound: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub z: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
    pub lower_bound_used: usize,
}

/// What the search proved before the node budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetExhausted {
    /// Every set smaller than this was ruled out.
    pub lower: usize,
    /// Size of `upper_witness`, a zero forcing set found greedily.
    pub upper: usize,
    pub upper_witness: VertexSet,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Exact(SolveResult),
    Budget(BudgetExhausted),
}

impl SolveOutcome {
    pub fn exact(&self) -> Option<&SolveResult> {
        match self {
            SolveOutcome::Exact(r) => Some(r),
            SolveOutcome::Budget(_) => None,
        }
    }

    pub fn into_exact(self) -> Option<SolveResult> {
        match self {
            SolveOutcome::Exact(r) => Some(r),
            SolveOutcome::Budget(_) => None,
        }
    }

    /// `(lower, upper)`; equal for exact outcomes.
    pub fn bounds(&self) -> (usize, usize) {
        match self {
            SolveOutcome::Exact(r) => (r.z, r.z),
            SolveOutcome::Budget(b) => (b.lower, b.upper),
        }
    }

    pub fn nodes_explored(&self) -> u64 {
        match self {
            SolveOutcome::Exact(r) => r.nodes_explored,
            SolveOutcome::Budget(b) => b.nodes_explored,
        }
    }
}

/// Black set plus per-vertex white-neighbor counts; one per search depth.
#[derive(Clone)]
struct Closure {
    black: VertexSet,
    white_deg: Vec<u32>,
    black_count: usize,
}

impl Closure {
    fn empty(g: &Graph) -> Self {
        Closure {
            black: VertexSet::empty(g.n()),
            white_deg: (0..g.n()).map(|v| g.degree(v) as u32).collect(),
            black_count: 0,
        }
    }

    fn is_full(&self) -> bool {
        self.black_count == self.black.universe()
    }

    fn blacken(&mut self, g: &Graph, v: usize, stack: &mut Vec<usize>) {
        self.black.insert(v);
        self.black_count += 1;
        for &w in g.neighbors(v) {
            self.white_deg[w] -= 1;
            stack.push(w);
        }
        stack.push(v);
    }

    /// Adds `v` and propagates to the fixed point.
    fn extend(&mut self, g: &Graph, v: usize, stack: &mut Vec<usize>) {
        debug_assert!(!self.black.contains(v));
        stack.clear();
        self.blacken(g, v, stack);
        while let Some(c) = stack.pop() {
            if self.white_deg[c] == 1 && self.black.contains(c) {
                let u = *g
                    .neighbors(c)
                    .iter()
                    .find(|&&w| !self.black.contains(w))
                    .expect("white neighbor count is exact");
                self.blacken(g, u, stack);
            }
        }
    }
}

/// Shared state of one fixed-`k` search across workers.
struct Shared {
    nodes: AtomicU64,
    budget: Option<u64>,
    out_of_budget: AtomicBool,
    /// Smallest first vertex of a block that found a set.
    best_first: AtomicUsize,
    /// Size of an over-small forcing set, if one turned up.
    too_small: AtomicUsize,
}

impl Shared {
    fn new(budget: Option<u64>, nodes_so_far: u64) -> Self {
        Shared {
            nodes: AtomicU64::new(nodes_so_far),
            budget,
            out_of_budget: AtomicBool::new(false),
            best_first: AtomicUsize::new(usize::MAX),
            too_small: AtomicUsize::new(usize::MAX),
        }
    }

    /// Counts one node; `false` once the budget is spent.
    fn tick(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget {
            Some(b) if used > b => {
                self.out_of_budget.store(true, Ordering::Relaxed);
                false
            }
            _ => true,
        }
    }
}

struct BlockSearch<'a> {
    g: &'a Graph,
    k: usize,
    first: usize,
    shared: &'a Shared,
    stack: Vec<usize>,
    chosen: Vec<usize>,
}

enum Step {
    Found,
    Exhausted,
    Abort,
}

impl BlockSearch<'_> {
    fn aborted(&self) -> bool {
        self.shared.out_of_budget.load(Ordering::Relaxed)
            || self.shared.best_first.load(Ordering::Relaxed) < self.first
            || self.shared.too_small.load(Ordering::Relaxed) != usize::MAX
    }

    fn run(mut self) -> Option<Vec<usize>> {
        let mut root = Closure::empty(self.g);
        if !self.shared.tick() {
            return None;
        }
        root.extend(self.g, self.first, &mut self.stack);
        self.chosen.push(self.first);
        match self.descend(&root, self.first + 1) {
            Step::Found => Some(self.chosen),
            Step::Exhausted | Step::Abort => None,
        }
    }

    fn descend(&mut self, state: &Closure, next: usize) -> Step {
        if state.is_full() {
            if self.chosen.len() == self.k {
                return Step::Found;
            }
            self.shared
                .too_small
                .fetch_min(self.chosen.len(), Ordering::Relaxed);
            return Step::Abort;
        }
        let need = self.k - self.chosen.len();
        if need == 0 {
            return Step::Exhausted;
        }
        let n = self.g.n();
        let candidates: Vec<usize> = (next..n).filter(|&v| !state.black.contains(v)).collect();
        if candidates.len() < need {
            return Step::Exhausted;
        }
        for (pos, &c) in candidates.iter().enumerate() {
            if candidates.len() - pos < need {
                break;
            }
            if self.aborted() || !self.shared.tick() {
                return Step::Abort;
            }
            let mut child = state.clone();
            child.extend(self.g, c, &mut self.stack);
            self.chosen.push(c);
            match self.descend(&child, c + 1) {
                Step::Found => return Step::Found,
                Step::Abort => return Step::Abort,
                Step::Exhausted => {}
            }
            self.chosen.pop();
        }
        Step::Exhausted
    }
}

enum SizeResult {
    Found(Vec<usize>),
    None,
    Budget,
    TooSmall(usize),
}

fn search_block(g: &Graph, k: usize, first: usize, shared: &Shared) -> Option<Vec<usize>> {
    if shared.best_first.load(Ordering::Relaxed) < first {
        return None;
    }
    let found = BlockSearch {
        g,
        k,
        first,
        shared,
        stack: Vec::with_capacity(2 * g.n()),
        chosen: Vec::with_capacity(k),
    }
    .run();
    if found.is_some() {
        shared.best_first.fetch_min(first, Ordering::Relaxed);
    }
    found
}

fn search_size(g: &Graph, k: usize, workers: usize, shared: &Shared) -> SizeResult {
    let n = g.n();
    let firsts = 0..=(n - k);
    let found: Option<Vec<usize>> = if workers > 1 {
        parallel_blocks(g, k, firsts, workers, shared)
    } else {
        firsts
            .into_iter()
            .find_map(|first| search_block(g, k, first, shared))
    };
    let too_small = shared.too_small.load(Ordering::Relaxed);
    if too_small != usize::MAX {
        SizeResult::TooSmall(too_small)
    } else if let Some(set) = found {
        SizeResult::Found(set)
    } else if shared.out_of_budget.load(Ordering::Relaxed) {
        SizeResult::Budget
    } else {
        SizeResult::None
    }
}

#[cfg(feature = "parallel")]
fn parallel_blocks(
    g: &Graph,
    k: usize,
    firsts: std::ops::RangeInclusive<usize>,
    workers: usize,
    shared: &Shared,
) -> Option<Vec<usize>> {
    use rayon::prelude::*;

    let run = || {
        firsts
            .into_par_iter()
            .filter_map(|first| search_block(g, k, first, shared).map(|set| (first, set)))
            .min_by_key(|(first, _)| *first)
            .map(|(_, set)| set)
    };
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_blocks(
    g: &Graph,
    k: usize,
    firsts: std::ops::RangeInclusive<usize>,
    _workers: usize,
    shared: &Shared,
) -> Option<Vec<usize>> {
    firsts
        .into_iter()
        .find_map(|first| search_block(g, k, first, shared))
}

/// Seed for a connected graph: the girth/degree bound when it applies.
fn structural_lower_bound(g: &Graph, enabled: bool) -> usize {
    if !enabled {
        return 1;
    }
    let delta = g.min_degree();
    davila_kenter_bound(g.girth(), delta).unwrap_or(1).max(1)
}

/// A zero forcing set built by repeatedly adding the white vertex whose
/// closure grows the most (ties to the smaller index).
pub fn greedy_zero_forcing_set(g: &Graph) -> VertexSet {
    let mut state = Closure::empty(g);
    let mut stack = Vec::new();
    let mut chosen = VertexSet::empty(g.n());
    while !state.is_full() {
        let mut best: Option<(usize, Closure)> = None;
        for v in (0..g.n()).filter(|&v| !state.black.contains(v)) {
            let mut next = state.clone();
            next.extend(g, v, &mut stack);
            if best
                .as_ref()
                .is_none_or(|(_, b)| next.black_count > b.black_count)
            {
                best = Some((v, next));
            }
        }
        let (v, next) = best.expect("a white vertex exists");
        chosen.insert(v);
        state = next;
    }
    chosen
}

fn solve_connected(
    g: &Graph,
    seed: usize,
    workers: usize,
    budget: Option<u64>,
) -> Result<SolveOutcome, SolveError> {
    let n = g.n();
    let seed = seed.clamp(1, n);
    let mut nodes = 0u64;
    for k in seed..=n {
        let shared = Shared::new(budget, nodes);
        let result = search_size(g, k, workers, &shared);
        nodes = shared
            .nodes
            .load(Ordering::Relaxed)
            .min(budget.unwrap_or(u64::MAX));
        match result {
            SizeResult::Found(set) => {
                let witness = VertexSet::from_vertices(n, set).expect("vertices in range");
                return Ok(SolveOutcome::Exact(SolveResult {
                    z: k,
                    witness,
                    nodes_explored: nodes,
                    lower_bound_used: seed,
                }));
            }
            SizeResult::TooSmall(found) => {
                return Err(SolveError::LowerBoundTooHigh { bound: seed, found });
            }
            SizeResult::Budget => {
                let upper_witness = greedy_zero_forcing_set(g);
                return Ok(SolveOutcome::Budget(BudgetExhausted {
                    lower: k,
                    upper: upper_witness.len().max(k),
                    upper_witness,
                    nodes_explored: nodes,
                }));
            }
            SizeResult::None => {}
        }
    }
    // every k up to n failed, so sets of size seed..=n all had a redundant
    // member: only possible when the caller's bound was too high
    Err(SolveError::LowerBoundTooHigh {
        bound: seed,
        found: greedy_zero_forcing_set(g).len(),
    })
}

/// Computes `Z(G)` exactly, or bounds on it if the node budget runs out.
///
/// Disconnected graphs are solved per component and summed; the caller's
/// `start_lower_bound` is only applied to connected graphs since it says
/// nothing about individual components.
pub fn zero_forcing_number(g: &Graph, cfg: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    cfg.validate()?;
    if g.n() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    let components = g.connected_components();
    if components.len() == 1 {
        let seed = structural_lower_bound(g, cfg.use_structural_bound)
            .max(cfg.start_lower_bound.unwrap_or(1));
        return solve_connected(g, seed, cfg.workers, cfg.node_budget);
    }

    let n = g.n();
    let mut witness = VertexSet::empty(n);
    let mut lower = 0;
    let mut upper = 0;
    let mut seeds = 0;
    let mut nodes = 0u64;
    let mut exhausted = false;
    for comp in &components {
        let sub = g
            .induced_subgraph(comp)
            .expect("component vertices are in range");
        let seed = structural_lower_bound(&sub.graph, cfg.use_structural_bound);
        seeds += seed;
        let remaining = cfg.node_budget.map(|b| b.saturating_sub(nodes));
        let outcome = if exhausted || remaining == Some(0) {
            exhausted = true;
            let w = greedy_zero_forcing_set(&sub.graph);
            SolveOutcome::Budget(BudgetExhausted {
                lower: seed,
                upper: w.len().max(seed),
                upper_witness: w,
                nodes_explored: 0,
            })
        } else {
            solve_connected(&sub.graph, seed, cfg.workers, remaining)?
        };
        nodes += outcome.nodes_explored();
        let (lo, hi) = outcome.bounds();
        lower += lo;
        upper += hi;
        let local = match outcome {
            SolveOutcome::Exact(r) => r.witness,
            SolveOutcome::Budget(b) => {
                exhausted = true;
                b.upper_witness
            }
        };
        for v in &local {
            witness.insert(sub.new_to_old[v]);
        }
    }
    if exhausted {
        Ok(SolveOutcome::Budget(BudgetExhausted {
            lower,
            upper,
            upper_witness: witness,
            nodes_explored: nodes,
        }))
    } else {
        Ok(SolveOutcome::Exact(SolveResult {
            z: lower,
            witness,
            nodes_explored: nodes,
            lower_bound_used: seeds,
        }))
    }
}

/// Plain enumeration of all subsets in size order; the first zero forcing set
/// found is returned. Uses the reference closure in [`crate::forcing`].
pub fn brute_force_oracle(g: &Graph) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if n > ORACLE_MAX_N {
        return Err(SolveError::TooLarge {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let mut nodes = 0u64;
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            nodes += 1;
            let s = VertexSet::from_vertices(n, idx.iter().copied()).expect("in range");
            if is_zero_forcing_set(g, &s) {
                return Ok(SolveResult {
                    z: k,
                    witness: s,
                    nodes_explored: nodes,
                    lower_bound_used: 0,
                });
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the full vertex set forces every graph")
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; `false` after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// `true` iff the witness has exactly `z` vertices and forces `g`.
pub fn verify_witness(g: &Graph, result: &SolveResult) -> bool {
    result.witness.universe() == g.n()
        && result.witness.len() == result.z
        && is_zero_forcing_set(g, &result.witness)
}

/// Every zero forcing set with exactly `size` vertices, in lexicographic
/// order. With `size = Z(G)` these are all the minimum zero forcing sets.
pub fn zero_forcing_sets_of_size(g: &Graph, size: usize) -> Vec<VertexSet> {
    fn walk(
        g: &Graph,
        state: &Closure,
        chosen: &mut Vec<usize>,
        next: usize,
        size: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if chosen.len() == size {
            if state.is_full() {
                out.push(
                    VertexSet::from_vertices(g.n(), chosen.iter().copied()).expect("in range"),
                );
            }
            return;
        }
        let need = size - chosen.len();
        for c in next..g.n() {
            if g.n() - c < need {
                break;
            }
            chosen.push(c);
            if state.black.contains(c) {
                // redundant member: closure unchanged
                walk(g, state, chosen, c + 1, size, stack, out);
            } else {
                let mut child = state.clone();
                child.extend(g, c, stack);
                walk(g, &child, chosen, c + 1, size, stack, out);
            }
            chosen.pop();
        }
    }

    let mut out = Vec::new();
    if size <= g.n() {
        let mut stack = Vec::new();
        walk(
            g,
            &Closure::empty(g),
            &mut Vec::new(),
            0,
            size,
            &mut stack,
            &mut out,
        );
    }
    out
}

//! Depth-first diagonal enumeration with occupancy bitmasks.
//!
//! Level `k` of the tree picks the entry whose first coordinate is the
//! `k`-th row of the level order (ascending unless reordered). Candidates
//! are kept in ascending flat order, so children are ordered by increasing
//! second coordinate. Partial Delta sums are pruned against the set of sums
//! still reachable from the remaining levels.

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::hypercube::Hypercube;

use super::{SearchBudget, SearchStatus};

pub(crate) const MAX_SEARCH_DIM: usize = 12;

#[derive(Clone, Copy)]
struct Cand {
    flat: u32,
    symbol: u8,
    delta: u8,
    coords: [u8; MAX_SEARCH_DIM],
}

#[derive(Clone, Debug, Default)]
pub(crate) struct EngineConfig<'a> {
    /// Require pairwise distinct symbols (transversal search).
    pub distinct_symbols: bool,
    /// Required Delta sum, as a group index.
    pub target: Option<usize>,
    /// Cells (by flat index) that may not be used.
    pub forbidden: Option<&'a [bool]>,
    /// Cells (by flat index) that must be used.
    pub forced: &'a [usize],
    /// Visit the most constrained levels first. Changes result order.
    pub reorder: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub nodes: u64,
    pub results: u64,
    pub status: SearchStatus,
}

pub(crate) struct Engine {
    n: usize,
    d: usize,
    levels: Vec<Vec<Cand>>,
    reach: Vec<u64>,
    target: Option<usize>,
    distinct: bool,
    group: AbelianGroup,
}

struct Control {
    nodes: u64,
    results: u64,
    max_nodes: u64,
    max_results: u64,
    deadline: Option<Instant>,
    status: SearchStatus,
}

impl Control {
    fn new(budget: &SearchBudget, start: Instant) -> Self {
        Control {
            nodes: 0,
            results: 0,
            max_nodes: budget.max_nodes,
            max_results: budget.max_results,
            deadline: budget.deadline(start),
            status: SearchStatus::Complete,
        }
    }

    fn outcome(&self) -> Outcome {
        Outcome {
            nodes: self.nodes,
            results: self.results,
            status: self.status,
        }
    }
}

/// Results of one root branch, tagged with the branch-local node counter at
/// which each was found so a sequential run can be replayed exactly.
struct BranchRun {
    found: Vec<(u64, Vec<u32>)>,
    nodes: u64,
    status: SearchStatus,
}

impl Engine {
    pub fn new(h: &Hypercube, g: &AbelianGroup, cfg: &EngineConfig<'_>) -> Result<Self> {
        let n = h.order();
        let d = h.dim();
        if d > MAX_SEARCH_DIM {
            return Err(Error::invalid(format!("search supports d <= {MAX_SEARCH_DIM}, got {d}")));
        }
        if g.order() != n {
            return Err(Error::invalid(format!("group {g} does not label order {n}")));
        }
        h.require_latin()?;

        let forced: Vec<(Vec<usize>, usize)> = cfg
            .forced
            .iter()
            .map(|&f| {
                if f >= h.num_cells() {
                    return Err(Error::invalid(format!("cell index {f} out of range")));
                }
                Ok((h.coords_of(f), h.symbol_at(f)))
            })
            .collect::<Result<_>>()?;
        for (i, (a, sa)) in forced.iter().enumerate() {
            for (b, sb) in &forced[i + 1..] {
                if a.iter().zip(b).any(|(x, y)| x == y) {
                    return Err(Error::NotADiagonal(format!("forced cells {a:?} and {b:?} collide")));
                }
                if cfg.distinct_symbols && sa == sb {
                    return Err(Error::NotATransversal(format!(
                        "forced cells {a:?} and {b:?} share symbol {sa}"
                    )));
                }
            }
        }

        let mut rows: Vec<Vec<Cand>> = vec![Vec::new(); n];
        for flat in 0..h.num_cells() {
            if cfg.forbidden.is_some_and(|fb| fb[flat]) && !cfg.forced.contains(&flat) {
                continue;
            }
            let coords = h.coords_of(flat);
            let symbol = h.symbol_at(flat);
            let is_forced = cfg.forced.contains(&flat);
            if !is_forced {
                let blocked = forced.iter().any(|(fc, fs)| {
                    fc.iter().zip(&coords).any(|(x, y)| x == y) || (cfg.distinct_symbols && *fs == symbol)
                });
                if blocked {
                    continue;
                }
            }
            let mut packed = [0u8; MAX_SEARCH_DIM];
            for (p, &x) in packed.iter_mut().zip(&coords) {
                *p = x as u8;
            }
            rows[coords[0]].push(Cand {
                flat: flat as u32,
                symbol: symbol as u8,
                delta: crate::delta::delta_of(g, &coords, symbol) as u8,
                coords: packed,
            });
        }

        let mut order: Vec<usize> = (0..n).collect();
        if cfg.reorder {
            let forced_rows: Vec<usize> = forced.iter().map(|(c, _)| c[0]).collect();
            order.sort_by_key(|&r| (!forced_rows.contains(&r), rows[r].len(), r));
        }
        let levels: Vec<Vec<Cand>> = order.iter().map(|&r| std::mem::take(&mut rows[r])).collect();

        let mut reach = vec![0u64; n + 1];
        reach[n] = 1;
        for k in (0..n).rev() {
            let mut deltas = 0u64;
            for c in &levels[k] {
                deltas |= 1 << c.delta;
            }
            let mut r = 0u64;
            for dl in 0..n {
                if deltas >> dl & 1 == 0 {
                    continue;
                }
                for s in 0..n {
                    if reach[k + 1] >> s & 1 == 1 {
                        r |= 1 << g.add_idx(dl, s);
                    }
                }
            }
            reach[k] = r;
        }

        Ok(Engine {
            n,
            d,
            levels,
            reach,
            target: cfg.target,
            distinct: cfg.distinct_symbols,
            group: g.clone(),
        })
    }

    /// Streams every result to `visit` (return `false` to stop early).
    pub fn run(&self, budget: &SearchBudget, visit: &mut dyn FnMut(&[u32]) -> bool) -> Outcome {
        let mut ctl = Control::new(budget, Instant::now());
        let mut st = State::new(self.n);
        self.dfs(0, &mut st, &mut ctl, &mut |c, _| visit(c));
        ctl.outcome()
    }

    /// Collects results, optionally splitting root branches across threads.
    /// Output and outcome are identical for every thread count as long as
    /// no wall-clock cap fires.
    pub fn collect(&self, budget: &SearchBudget) -> (Vec<Vec<u32>>, Outcome) {
        if budget.threads <= 1 || self.n == 0 || self.levels[0].len() <= 1 {
            let mut out = Vec::new();
            let outcome = self.run(budget, &mut |c| {
                out.push(c.to_vec());
                true
            });
            return (out, outcome);
        }
        let start = Instant::now();
        let branches: Vec<BranchRun> = build_pool(budget.threads).install(|| {
            (0..self.levels[0].len())
                .into_par_iter()
                .map(|b| self.run_branch(b, budget, start))
                .collect()
        });
        merge_branches(branches, budget)
    }

    fn run_branch(&self, branch: usize, budget: &SearchBudget, start: Instant) -> BranchRun {
        let mut ctl = Control::new(budget, start);
        // results are capped during the merge
        ctl.max_results = u64::MAX;
        let mut st = State::new(self.n);
        let mut found = Vec::new();
        if self.root_feasible(&st) {
            let c = self.levels[0][branch];
            if self.accept(&c, &st) && ctl.tick() {
                self.push(&c, &mut st);
                self.dfs(1, &mut st, &mut ctl, &mut |chosen, nodes| {
                    found.push((nodes, chosen.to_vec()));
                    true
                });
                self.pop(&c, &mut st);
            }
        }
        BranchRun {
            found,
            nodes: ctl.nodes,
            status: ctl.status,
        }
    }

    fn root_feasible(&self, st: &State) -> bool {
        match self.target {
            Some(t) => self.reach[0] >> self.group.sub_idx(t, st.sum) & 1 == 1,
            None => true,
        }
    }

    #[inline]
    fn accept(&self, c: &Cand, st: &State) -> bool {
        if self.distinct && st.symbols >> c.symbol & 1 == 1 {
            return false;
        }
        (1..self.d).all(|a| st.used[a] >> c.coords[a] & 1 == 0)
    }

    #[inline]
    fn push(&self, c: &Cand, st: &mut State) {
        for a in 1..self.d {
            st.used[a] |= 1 << c.coords[a];
        }
        st.symbols |= 1 << c.symbol;
        st.sum = self.group.add_idx(st.sum, c.delta as usize);
        st.chosen.push(c.flat);
    }

    #[inline]
    fn pop(&self, c: &Cand, st: &mut State) {
        for a in 1..self.d {
            st.used[a] &= !(1 << c.coords[a]);
        }
        st.symbols &= !(1 << c.symbol);
        st.sum = self.group.sub_idx(st.sum, c.delta as usize);
        st.chosen.pop();
    }

    fn dfs(
        &self,
        depth: usize,
        st: &mut State,
        ctl: &mut Control,
        visit: &mut dyn FnMut(&[u32], u64) -> bool,
    ) -> bool {
        if depth == self.n {
            if self.target.is_some_and(|t| t != st.sum) {
                return true;
            }
            ctl.results += 1;
            if !visit(&st.chosen, ctl.nodes) {
                ctl.status = SearchStatus::Stopped;
                return false;
            }
            if ctl.results >= ctl.max_results {
                ctl.status = SearchStatus::ResultCap;
                return false;
            }
            return true;
        }
        if let Some(t) = self.target {
            if self.reach[depth] >> self.group.sub_idx(t, st.sum) & 1 == 0 {
                return true;
            }
        }
        for i in 0..self.levels[depth].len() {
            let c = self.levels[depth][i];
            if !self.accept(&c, st) {
                continue;
            }
            if !ctl.tick() {
                return false;
            }
            self.push(&c, st);
            let go_on = self.dfs(depth + 1, st, ctl, visit);
            self.pop(&c, st);
            if !go_on {
                return false;
            }
        }
        true
    }
}

impl Control {
    /// Counts one node; false once a cap is hit.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.nodes = self.max_nodes;
            self.status = SearchStatus::NodeCap;
            return false;
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(dl) = self.deadline {
                if Instant::now() >= dl {
                    self.status = SearchStatus::TimeCap;
                    return false;
                }
            }
        }
        true
    }
}

struct State {
    used: [u64; MAX_SEARCH_DIM],
    symbols: u64,
    sum: usize,
    chosen: Vec<u32>,
}

impl State {
    fn new(n: usize) -> Self {
        State {
            used: [0; MAX_SEARCH_DIM],
            symbols: 0,
            sum: 0,
            chosen: Vec::with_capacity(n),
        }
    }
}

fn build_pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Replays the sequential budget semantics over independently run branches.
fn merge_branches(branches: Vec<BranchRun>, budget: &SearchBudget) -> (Vec<Vec<u32>>, Outcome) {
    let mut out = Vec::new();
    let mut spent = 0u64;
    for br in branches {
        let remaining = budget.max_nodes - spent;
        for (at, cells) in br.found {
            if at > remaining {
                break;
            }
            out.push(cells);
            if out.len() as u64 >= budget.max_results {
                return (
                    out,
                    Outcome {
                        nodes: spent + at,
                        results: budget.max_results,
                        status: SearchStatus::ResultCap,
                    },
                );
            }
        }
        if br.status == SearchStatus::NodeCap || br.nodes > remaining {
            let results = out.len() as u64;
            return (
                out,
                Outcome {
                    nodes: budget.max_nodes,
                    results,
                    status: SearchStatus::NodeCap,
                },
            );
        }
        if br.status == SearchStatus::TimeCap {
            let results = out.len() as u64;
            return (
                out,
                Outcome {
                    nodes: spent + br.nodes,
                    results,
                    status: SearchStatus::TimeCap,
                },
            );
        }
        spent += br.nodes;
    }
    let results = out.len() as u64;
    (
        out,
        Outcome {
            nodes: spent,
            results,
            status: SearchStatus::Complete,
        },
    )
}

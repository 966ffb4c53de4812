//! Exact search over diagonals and transversals.
//!
//! Everything here is deterministic for a fixed hypercube and budget.
//! Absence claims (no transversal through a cell, every suitable diagonal
//! meets a cell set) are only made when the search tree was exhausted;
//! otherwise the result carries the [`SearchStatus`] that stopped it.

mod engine;
mod hill;
mod matching;
mod packing;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::delta::{self, DeltaProfile};
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, GroupElement};
use crate::hypercube::{Diagonal, Hypercube};

pub(crate) use engine::{Engine, EngineConfig};
pub use hill::{hill_climb_decomposition, HillClimbOutcome};
pub use packing::{max_disjoint_transversals, Packing};

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_1A7E_2025;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// The search tree was exhausted.
    Complete,
    /// Node-expansion cap reached.
    NodeCap,
    /// Result cap reached; counts are lower bounds.
    ResultCap,
    /// Wall-clock cap reached.
    TimeCap,
    /// The caller stopped the search after finding what it needed.
    Stopped,
}

impl SearchStatus {
    pub fn is_complete(self) -> bool {
        self == SearchStatus::Complete
    }

    /// True when a resource cap (not a result cap or early stop) ended the run.
    pub fn budget_exhausted(self) -> bool {
        matches!(self, SearchStatus::NodeCap | SearchStatus::TimeCap)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_results: u64,
    /// Wall-clock cap in seconds.
    pub time_cap: Option<f64>,
    pub rng_seed: u64,
    /// Worker threads for root-level branch splitting.
    #[serde(default = "one")]
    pub threads: usize,
}

fn one() -> usize {
    1
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 20_000_000_000,
            max_results: u64::MAX,
            time_cap: None,
            rng_seed: DEFAULT_SEED,
            threads: 1,
        }
    }
}

impl SearchBudget {
    pub fn with_max_nodes(mut self, n: u64) -> Self {
        self.max_nodes = n;
        self
    }

    pub fn with_max_results(mut self, n: u64) -> Self {
        self.max_results = n;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_time_cap(mut self, secs: f64) -> Self {
        self.time_cap = Some(secs);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.max_results == 0 || self.threads == 0 {
            return Err(Error::invalid("budget caps and thread count must be positive"));
        }
        if self.time_cap.is_some_and(|t| t.is_nan() || t <= 0.0) {
            return Err(Error::invalid("time cap must be positive"));
        }
        Ok(())
    }

    pub(crate) fn deadline(&self, start: Instant) -> Option<Instant> {
        self.time_cap.map(|t| start + Duration::from_secs_f64(t))
    }
}

/// Diagonals produced by an enumeration, with the reason it stopped.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub diagonals: Vec<Diagonal>,
    pub status: SearchStatus,
    pub nodes: u64,
}

pub(crate) fn to_diagonal(h: &Hypercube, cells: &[u32]) -> Diagonal {
    Diagonal::new(cells.iter().map(|&f| h.entry_at(f as usize)).collect())
}

fn flat_of(h: &Hypercube, coords: &[usize]) -> Result<usize> {
    if coords.len() != h.dim() || coords.iter().any(|&x| x >= h.order()) {
        return Err(Error::invalid(format!("{coords:?} is not a cell of the hypercube")));
    }
    Ok(h.flat_index(coords))
}

fn target_index(g: &AbelianGroup, target: Option<&GroupElement>) -> Result<Option<usize>> {
    target.map(|t| g.index_of(t)).transpose()
}

/// Every complete diagonal with Delta sum `target` (all diagonals when
/// `target` is `None`), each exactly once, in DFS order.
pub fn enumerate_diagonals(
    h: &Hypercube,
    g: &AbelianGroup,
    target: Option<&GroupElement>,
    budget: &SearchBudget,
) -> Result<Enumeration> {
    budget.validate()?;
    let cfg = EngineConfig {
        target: target_index(g, target)?,
        ..Default::default()
    };
    let engine = Engine::new(h, g, &cfg)?;
    let (found, outcome) = engine.collect(budget);
    Ok(Enumeration {
        diagonals: found.iter().map(|c| to_diagonal(h, c)).collect(),
        status: outcome.status,
        nodes: outcome.nodes,
    })
}

/// Streaming form of [`enumerate_diagonals`]; `visit` returns `false` to stop.
pub fn for_each_diagonal(
    h: &Hypercube,
    g: &AbelianGroup,
    target: Option<&GroupElement>,
    budget: &SearchBudget,
    mut visit: impl FnMut(Diagonal) -> bool,
) -> Result<(SearchStatus, u64)> {
    budget.validate()?;
    let cfg = EngineConfig {
        target: target_index(g, target)?,
        ..Default::default()
    };
    let engine = Engine::new(h, g, &cfg)?;
    let outcome = engine.run(budget, &mut |c| visit(to_diagonal(h, c)));
    Ok((outcome.status, outcome.nodes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransversalOptions {
    /// Prune partial transversals whose Delta sum can no longer reach
    /// `(1 - d) G_+` under the hypercube's own labeling. Sound by the Delta
    /// lemma; disable to run a plain symbol-distinctness search.
    pub delta_prune: bool,
}

impl Default for TransversalOptions {
    fn default() -> Self {
        TransversalOptions { delta_prune: true }
    }
}

fn transversal_engine(h: &Hypercube, opts: TransversalOptions, forced: &[usize], reorder: bool) -> Result<Engine> {
    let g = h.group();
    let target = if opts.delta_prune {
        Some(delta::suitable_target_idx(g, h.dim())?)
    } else {
        None
    };
    let cfg = EngineConfig {
        distinct_symbols: true,
        target,
        forced,
        reorder,
        ..Default::default()
    };
    Engine::new(h, g, &cfg)
}

pub fn enumerate_transversals(h: &Hypercube, budget: &SearchBudget) -> Result<Enumeration> {
    enumerate_transversals_with(h, TransversalOptions::default(), budget)
}

pub fn enumerate_transversals_with(
    h: &Hypercube,
    opts: TransversalOptions,
    budget: &SearchBudget,
) -> Result<Enumeration> {
    budget.validate()?;
    let engine = transversal_engine(h, opts, &[], false)?;
    let (found, outcome) = engine.collect(budget);
    Ok(Enumeration {
        diagonals: found.iter().map(|c| to_diagonal(h, c)).collect(),
        status: outcome.status,
        nodes: outcome.nodes,
    })
}

/// Counts transversals without materialising them.
pub fn count_transversals(
    h: &Hypercube,
    opts: TransversalOptions,
    budget: &SearchBudget,
) -> Result<(u64, SearchStatus)> {
    budget.validate()?;
    let engine = transversal_engine(h, opts, &[], false)?;
    let outcome = engine.run(budget, &mut |_| true);
    Ok((outcome.results, outcome.status))
}

/// Outcome of a search for one object through a given cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Through {
    Found(Diagonal),
    /// The search was exhausted without finding one.
    Absent,
    /// The budget ran out first.
    Unknown(SearchStatus),
}

impl Through {
    pub fn witness(&self) -> Option<&Diagonal> {
        match self {
            Through::Found(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Through::Found(_))
    }
}

fn first_result(engine: &Engine, budget: &SearchBudget) -> (Option<Vec<u32>>, SearchStatus) {
    let mut hit = None;
    let outcome = engine.run(budget, &mut |c| {
        hit = Some(c.to_vec());
        false
    });
    (hit, outcome.status)
}

fn through_from(h: &Hypercube, hit: Option<Vec<u32>>, status: SearchStatus) -> Through {
    match hit {
        Some(cells) => Through::Found(to_diagonal(h, &cells)),
        None if status.is_complete() => Through::Absent,
        None => Through::Unknown(status),
    }
}

/// A transversal containing the cell at `coords`, or proof that none exists.
pub fn transversal_through(h: &Hypercube, coords: &[usize], budget: &SearchBudget) -> Result<Through> {
    budget.validate()?;
    let flat = flat_of(h, coords)?;
    let engine = transversal_engine(h, TransversalOptions::default(), &[flat], true)?;
    let (hit, status) = first_result(&engine, budget);
    Ok(through_from(h, hit, status))
}

/// A diagonal with Delta sum `target` through the cell at `coords`.
pub fn diagonal_through(
    h: &Hypercube,
    g: &AbelianGroup,
    target: &GroupElement,
    coords: &[usize],
    budget: &SearchBudget,
) -> Result<Through> {
    budget.validate()?;
    let flat = flat_of(h, coords)?;
    let cfg = EngineConfig {
        target: Some(g.index_of(target)?),
        forced: &[flat],
        reorder: true,
        ..Default::default()
    };
    let engine = Engine::new(h, g, &cfg)?;
    let (hit, status) = first_result(&engine, budget);
    Ok(through_from(h, hit, status))
}

/// Cells on no transversal. Cells whose search ran out of budget are listed
/// in `undecided` and make the result partial.
#[derive(Clone, Debug, Default)]
pub struct BachelorCells {
    pub cells: Vec<Vec<usize>>,
    pub undecided: Vec<Vec<usize>>,
    /// Transversals found along the way; together they cover every
    /// non-bachelor cell.
    pub witnesses: Vec<Diagonal>,
    pub complete: bool,
}

pub fn bachelor_cells(h: &Hypercube, budget: &SearchBudget) -> Result<BachelorCells> {
    budget.validate()?;
    h.require_latin()?;
    let start = Instant::now();
    let mut covered = vec![false; h.num_cells()];
    let mut out = BachelorCells::default();
    for flat in 0..h.num_cells() {
        if covered[flat] {
            continue;
        }
        let mut cell_budget = budget.clone();
        if let Some(cap) = budget.time_cap {
            let left = cap - start.elapsed().as_secs_f64();
            if left <= 0.0 {
                out.undecided.push(h.coords_of(flat));
                continue;
            }
            cell_budget.time_cap = Some(left);
        }
        match transversal_through(h, &h.coords_of(flat), &cell_budget)? {
            Through::Found(t) => {
                for e in &t.entries {
                    covered[h.flat_index(&e.coords)] = true;
                }
                out.witnesses.push(t);
            }
            Through::Absent => out.cells.push(h.coords_of(flat)),
            Through::Unknown(_) => out.undecided.push(h.coords_of(flat)),
        }
    }
    out.complete = out.undecided.is_empty();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum HittingStrategy {
    /// Support branching when the Delta support is small, otherwise `Avoiding`.
    Auto,
    /// Enumerate every diagonal with the target sum and check each one.
    Enumerate,
    /// Search directly for a target diagonal that avoids the cell set.
    Avoiding,
    /// Branch on partial diagonals inside the Delta support, then test
    /// whether each extends while avoiding the rest of the support.
    SupportBranch,
}

#[derive(Clone, Debug)]
pub struct HittingCheck {
    /// `Some(true)` when every target diagonal meets the cells, `Some(false)`
    /// with a counterexample otherwise, `None` if the budget ran out.
    pub holds: Option<bool>,
    pub counterexample: Option<Diagonal>,
    pub strategy: HittingStrategy,
    /// Target diagonals inspected (`Enumerate`) or partial diagonals inside
    /// the support with the target sum (`SupportBranch`).
    pub checked: u64,
    pub status: SearchStatus,
}

/// Whether every diagonal with Delta sum `target` meets `cells`.
pub fn hitting_set_check(
    h: &Hypercube,
    g: &AbelianGroup,
    target: &GroupElement,
    cells: &[Vec<usize>],
    strategy: HittingStrategy,
    budget: &SearchBudget,
) -> Result<HittingCheck> {
    budget.validate()?;
    h.require_latin()?;
    let t = g.index_of(target)?;
    let mut blocked = vec![false; h.num_cells()];
    for c in cells {
        blocked[flat_of(h, c)?] = true;
    }
    let strategy = match strategy {
        HittingStrategy::Auto => {
            let prof = DeltaProfile::new(h, g)?;
            if prof.support().len() <= h.order() * h.dim() {
                HittingStrategy::SupportBranch
            } else {
                HittingStrategy::Avoiding
            }
        }
        s => s,
    };
    match strategy {
        HittingStrategy::Enumerate => {
            let engine = Engine::new(h, g, &EngineConfig { target: Some(t), ..Default::default() })?;
            let mut checked = 0u64;
            let mut counter = None;
            let outcome = engine.run(budget, &mut |c| {
                checked += 1;
                if c.iter().any(|&f| blocked[f as usize]) {
                    true
                } else {
                    counter = Some(c.to_vec());
                    false
                }
            });
            Ok(finish_hitting(h, strategy, counter, checked, outcome.status))
        }
        HittingStrategy::Avoiding => {
            let cfg = EngineConfig {
                target: Some(t),
                forbidden: Some(&blocked),
                reorder: true,
                ..Default::default()
            };
            let engine = Engine::new(h, g, &cfg)?;
            let (hit, status) = first_result(&engine, budget);
            Ok(finish_hitting(h, strategy, hit, 0, status))
        }
        HittingStrategy::SupportBranch => support_branch(h, g, t, &blocked, budget),
        HittingStrategy::Auto => unreachable!(),
    }
}

fn finish_hitting(
    h: &Hypercube,
    strategy: HittingStrategy,
    counter: Option<Vec<u32>>,
    checked: u64,
    status: SearchStatus,
) -> HittingCheck {
    let counterexample = counter.map(|c| to_diagonal(h, &c));
    let holds = if counterexample.is_some() {
        Some(false)
    } else if status.is_complete() {
        Some(true)
    } else {
        None
    };
    HittingCheck {
        holds,
        counterexample,
        strategy,
        checked,
        status: if holds.is_some() { SearchStatus::Complete } else { status },
    }
}

/// Partial diagonals inside `cells`, in ascending lexicographic order of
/// their flat indices (the empty diagonal first).
pub(crate) fn partial_diagonals_within(h: &Hypercube, cells: &[usize], mut visit: impl FnMut(&[usize]) -> bool) {
    fn rec(
        h: &Hypercube,
        cells: &[usize],
        from: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if !visit(chosen) {
            return false;
        }
        for i in from..cells.len() {
            let ci = h.coords_of(cells[i]);
            let ok = chosen
                .iter()
                .all(|&f| !h.coords_of(f).iter().zip(&ci).any(|(a, b)| a == b));
            if ok {
                chosen.push(cells[i]);
                let go = rec(h, cells, i + 1, chosen, visit);
                chosen.pop();
                if !go {
                    return false;
                }
            }
        }
        true
    }
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    rec(h, &sorted, 0, &mut Vec::new(), &mut visit);
}

fn support_branch(
    h: &Hypercube,
    g: &AbelianGroup,
    target: usize,
    blocked: &[bool],
    budget: &SearchBudget,
) -> Result<HittingCheck> {
    let prof = DeltaProfile::new(h, g)?;
    let support = prof.support();
    let usable: Vec<usize> = support.iter().copied().filter(|&f| !blocked[f]).collect();
    let mut avoid: Vec<bool> = blocked.to_vec();
    for &f in support {
        avoid[f] = true;
    }

    let mut checked = 0u64;
    let mut counter: Option<Diagonal> = None;
    let mut failure: Option<Error> = None;
    let mut status = SearchStatus::Complete;
    partial_diagonals_within(h, &usable, |partial| {
        let sum = g.sum_idx(partial.iter().map(|&f| prof.value_at(f)));
        if sum != target {
            return true;
        }
        checked += 1;
        match extend_avoiding(h, partial, &avoid, budget) {
            Ok((Some(d), _)) => {
                counter = Some(d);
                false
            }
            Ok((None, st)) if st.is_complete() => true,
            Ok((None, st)) => {
                status = st;
                false
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let holds = if counter.is_some() {
        Some(false)
    } else if status.is_complete() {
        Some(true)
    } else {
        None
    };
    Ok(HittingCheck {
        holds,
        counterexample: counter,
        strategy: HittingStrategy::SupportBranch,
        checked,
        status,
    })
}

/// Completes `partial` (flat indices) to a diagonal whose other entries all
/// avoid cells flagged in `avoid`.
pub(crate) fn extend_avoiding(
    h: &Hypercube,
    partial: &[usize],
    avoid: &[bool],
    budget: &SearchBudget,
) -> Result<(Option<Diagonal>, SearchStatus)> {
    if h.dim() == 2 {
        let found = matching::complete_square_diagonal(h, partial, avoid);
        return Ok((found.map(|c| to_diagonal(h, &c)), SearchStatus::Complete));
    }
    let cfg = EngineConfig {
        forbidden: Some(avoid),
        forced: partial,
        reorder: true,
        ..Default::default()
    };
    let engine = Engine::new(h, h.group(), &cfg)?;
    let (hit, status) = first_result(&engine, budget);
    Ok((hit.map(|c| to_diagonal(h, &c)), if status == SearchStatus::Stopped { SearchStatus::Complete } else { status }))
}

/// Extends a partial diagonal to a complete one whose remaining entries
/// avoid `avoid`. `Ok(None)` means no such extension exists.
pub fn extend_partial_diagonal(
    h: &Hypercube,
    partial: &[Vec<usize>],
    avoid: &[Vec<usize>],
    budget: &SearchBudget,
) -> Result<Option<Diagonal>> {
    budget.validate()?;
    h.require_latin()?;
    let partial_diag = h.diagonal_from_coords(partial)?;
    let flats: Vec<usize> = partial_diag.entries.iter().map(|e| h.flat_index(&e.coords)).collect();
    let mut mask = vec![false; h.num_cells()];
    for c in avoid {
        mask[flat_of(h, c)?] = true;
    }
    let (found, status) = extend_avoiding(h, &flats, &mask, budget)?;
    if found.is_none() && !status.is_complete() {
        return Err(Error::invalid(format!("extension search stopped early: {status:?}")));
    }
    Ok(found)
}

/// Stable identifier for a hypercube, from its dimensions and fingerprint.
pub fn instance_id(h: &Hypercube) -> String {
    format!("lhc-d{}-n{}-{:016x}", h.dim(), h.order(), h.fingerprint())
}

/// Machine-readable result of an analysis run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct SearchReport {
    pub instance: String,
    pub operation: String,
    pub group: String,
    pub dim: usize,
    pub order: usize,
    /// Exact when `complete`, otherwise a lower bound.
    pub count: u64,
    pub complete: bool,
    pub status: SearchStatus,
    pub budget: SearchBudget,
    #[serde(default)]
    pub witnesses: Vec<Diagonal>,
    #[serde(default)]
    pub bachelor_cells: Vec<Vec<usize>>,
    #[serde(default)]
    pub undecided_cells: Vec<Vec<usize>>,
    #[serde(default)]
    pub packing: Vec<Diagonal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<u64>,
    /// Cells met by every transversal (packing upper-bound certificate) or
    /// the cell set of a hitting-set check.
    #[serde(default)]
    pub certificate_cells: Vec<Vec<usize>>,
    /// Omitted unless timings are requested, so reports stay byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SearchReport {
    pub fn new(h: &Hypercube, operation: &str, budget: &SearchBudget) -> Self {
        SearchReport {
            instance: instance_id(h),
            operation: operation.to_string(),
            group: h.group().to_string(),
            dim: h.dim(),
            order: h.order(),
            count: 0,
            complete: true,
            status: SearchStatus::Complete,
            budget: budget.clone(),
            witnesses: Vec::new(),
            bachelor_cells: Vec::new(),
            undecided_cells: Vec::new(),
            packing: Vec::new(),
            optimal: None,
            upper_bound: None,
            certificate_cells: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// Rechecks every embedded diagonal against `h`: witnesses must be
    /// complete diagonals (transversals for transversal operations) and
    /// packing members pairwise disjoint transversals.
    pub fn revalidate(&self, h: &Hypercube) -> Result<()> {
        if instance_id(h) != self.instance {
            return Err(Error::Validation(format!(
                "report is for {}, hypercube is {}",
                self.instance,
                instance_id(h)
            )));
        }
        let transversal_op = matches!(
            self.operation.as_str(),
            "transversals" | "bachelors" | "packing" | "decompose"
        );
        for w in &self.witnesses {
            if transversal_op {
                h.check_transversal(w)?;
            } else {
                h.check_complete_diagonal(w)?;
            }
        }
        for p in &self.packing {
            h.check_transversal(p)?;
        }
        let mut seen = BTreeSet::new();
        for p in &self.packing {
            for e in &p.entries {
                if !seen.insert(e.coords.clone()) {
                    return Err(Error::Validation(format!("packing reuses cell {:?}", e.coords)));
                }
            }
        }
        Ok(())
    }
}

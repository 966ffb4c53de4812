//! Maximum sets of pairwise disjoint transversals.
//!
//! All transversals are enumerated first, then a branch and bound over a
//! cell set `S` met by every transversal picks at most one transversal per
//! cell of `S`. `|S|` is therefore an upper bound on any packing, and `S`
//! is reported as the certificate for it.

use std::time::Instant;

use crate::delta;
use crate::error::Result;
use crate::hypercube::{Diagonal, Hypercube};

use super::{transversal_engine, SearchBudget, SearchStatus, TransversalOptions};

#[derive(Clone, Debug)]
pub struct Packing {
    pub transversals: Vec<Diagonal>,
    /// No packing has more than this many transversals.
    pub upper_bound: usize,
    /// Cells met by every transversal; `upper_bound == certificate.len()`.
    pub certificate: Vec<Vec<usize>>,
    /// True when the packing is provably maximum.
    pub optimal: bool,
    /// Transversals found by the enumeration phase.
    pub enumerated: usize,
    /// Status of the enumeration phase, or of the branch and bound if that
    /// stopped early.
    pub status: SearchStatus,
}

pub fn max_disjoint_transversals(h: &Hypercube, budget: &SearchBudget) -> Result<Packing> {
    budget.validate()?;
    let start = Instant::now();
    let engine = transversal_engine(h, TransversalOptions::default(), &[], false)?;
    let (found, outcome) = engine.collect(&budget.clone().with_max_results(u64::MAX));
    let complete = outcome.status.is_complete();
    let cells = h.num_cells();
    let words = cells.div_ceil(64);

    let masks: Vec<Vec<u64>> = found
        .iter()
        .map(|t| {
            let mut m = vec![0u64; words];
            for &f in t {
                m[f as usize / 64] |= 1 << (f % 64);
            }
            m
        })
        .collect();

    let cert = certificate(h, &found, complete)?;
    let bound = cert.len();

    let mut bnb = Bnb {
        masks: &masks,
        by_cell: cert
            .iter()
            .map(|&c| (0..found.len()).filter(|&t| masks[t][c / 64] >> (c % 64) & 1 == 1).collect())
            .collect(),
        best: Vec::new(),
        chosen: Vec::new(),
        used: vec![0u64; words],
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline: budget.deadline(start),
        status: SearchStatus::Complete,
        bound,
    };
    bnb.greedy();
    if bnb.best.len() < bound {
        bnb.search(0);
    }
    let tree_done = bnb.status.is_complete();
    let mut best = bnb.best.clone();
    best.sort_unstable();
    let optimal = complete && (tree_done || best.len() == bound);
    Ok(Packing {
        transversals: best.iter().map(|&t| super::to_diagonal(h, &found[t])).collect(),
        upper_bound: bound,
        certificate: cert.iter().map(|&c| h.coords_of(c)).collect(),
        optimal,
        enumerated: found.len(),
        status: if complete { bnb.status } else { outcome.status },
    })
}

/// Smallest known set of cells met by every transversal. When the
/// enumeration is complete this is the smallest of: the covered part of
/// each axis-parallel hyperplane, and the covered part of the Delta
/// support when the Delta lemma applies. Otherwise only sets valid for all
/// transversals regardless of enumeration are used.
fn certificate(h: &Hypercube, found: &[Vec<u32>], complete: bool) -> Result<Vec<usize>> {
    let n = h.order();
    let d = h.dim();
    let mut covered = vec![false; h.num_cells()];
    for t in found {
        for &f in t {
            covered[f as usize] = true;
        }
    }
    let keep = |f: usize| !complete || covered[f];
    let mut best: Option<Vec<usize>> = delta::delta_lemma_hitting_set(h, h.group())?
        .map(|s| s.into_iter().filter(|&f| keep(f)).collect());
    for axis in 0..d {
        for v in 0..n {
            let plane: Vec<usize> = (0..h.num_cells())
                .filter(|&f| h.coords_of(f)[axis] == v && keep(f))
                .collect();
            if best.as_ref().is_none_or(|b| plane.len() < b.len()) {
                best = Some(plane);
            }
        }
    }
    Ok(best.unwrap_or_default())
}

struct Bnb<'a> {
    masks: &'a [Vec<u64>],
    by_cell: Vec<Vec<usize>>,
    best: Vec<usize>,
    chosen: Vec<usize>,
    used: Vec<u64>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    status: SearchStatus,
    bound: usize,
}

impl Bnb<'_> {
    fn fits(&self, t: usize) -> bool {
        self.masks[t].iter().zip(&self.used).all(|(a, b)| a & b == 0)
    }

    fn toggle(&mut self, t: usize) {
        for (u, m) in self.used.iter_mut().zip(&self.masks[t]) {
            *u ^= m;
        }
    }

    fn greedy(&mut self) {
        for t in 0..self.masks.len() {
            if self.fits(t) {
                self.toggle(t);
                self.chosen.push(t);
            }
        }
        self.best = std::mem::take(&mut self.chosen);
        self.used.iter_mut().for_each(|u| *u = 0);
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.status = SearchStatus::NodeCap;
            return false;
        }
        if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|dl| Instant::now() >= dl) {
            self.status = SearchStatus::TimeCap;
            return false;
        }
        true
    }

    /// Returns false when the search must stop (cap hit or bound reached).
    fn search(&mut self, i: usize) -> bool {
        if !self.tick() {
            return false;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            if self.best.len() == self.bound {
                return false;
            }
        }
        if i == self.by_cell.len() || self.chosen.len() + (self.by_cell.len() - i) <= self.best.len() {
            return true;
        }
        for k in 0..self.by_cell[i].len() {
            let t = self.by_cell[i][k];
            if self.fits(t) {
                self.toggle(t);
                self.chosen.push(t);
                let go = self.search(i + 1);
                self.chosen.pop();
                self.toggle(t);
                if !go {
                    return false;
                }
            }
        }
        self.search(i + 1)
    }
}

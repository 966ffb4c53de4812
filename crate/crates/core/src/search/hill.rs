//! Randomised local search for a decomposition into disjoint transversals.
//!
//! The cells of each hyperplane `x_1 = k` are assigned bijectively to the
//! `n^(d-1)` labels, so every label class meets each such hyperplane once.
//! The cost counts colliding pairs inside label classes (equal coordinate on
//! another axis, or equal symbol); cost zero means every class is a
//! transversal. Moves swap the labels of two cells in one hyperplane.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hypercube::{Diagonal, Hypercube};

use super::SearchBudget;

/// Iterations used when the budget's node cap is larger.
const MAX_ITERATIONS: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct HillClimbOutcome {
    /// The transversals, sorted, when a decomposition was found.
    pub decomposition: Option<Vec<Diagonal>>,
    pub iterations: u64,
    pub restarts: u64,
    /// Lowest cost seen; zero exactly when a decomposition was found.
    pub best_cost: u64,
}

struct State {
    n: usize,
    d: usize,
    labels: usize,
    /// assign[k * labels + t] = local index (within hyperplane k) of label t's cell
    assign: Vec<usize>,
    /// counts[(t * d + a) * n + v]; axis 0 slot holds symbol counts
    counts: Vec<u32>,
    cost: u64,
}

impl State {
    fn random(h: &Hypercube, rng: &mut ChaCha8Rng) -> Self {
        let n = h.order();
        let d = h.dim();
        let labels = h.num_cells() / n;
        let mut assign = Vec::with_capacity(h.num_cells());
        for _ in 0..n {
            let mut p: Vec<usize> = (0..labels).collect();
            p.shuffle(rng);
            assign.extend(p);
        }
        let mut st = State {
            n,
            d,
            labels,
            assign,
            counts: vec![0; labels * d * n],
            cost: 0,
        };
        for k in 0..n {
            for t in 0..labels {
                let cell = k * labels + st.assign[k * labels + t];
                st.add(h, t, cell);
            }
        }
        st
    }

    /// Counter slots touched by `cell`: symbol and coordinates on axes 1..d.
    fn slots(&self, h: &Hypercube, t: usize, cell: usize) -> impl Iterator<Item = usize> {
        let (n, d) = (self.n, self.d);
        let base = t * d * n;
        let sym = h.symbol_at(cell);
        let mut rest = cell;
        let mut coords = [0usize; 16];
        for a in (1..d).rev() {
            coords[a] = rest % n;
            rest /= n;
        }
        (0..d).map(move |a| base + a * n + if a == 0 { sym } else { coords[a] })
    }

    fn add(&mut self, h: &Hypercube, t: usize, cell: usize) {
        let slots: Vec<usize> = self.slots(h, t, cell).collect();
        for s in slots {
            self.cost += self.counts[s] as u64;
            self.counts[s] += 1;
        }
    }

    fn remove(&mut self, h: &Hypercube, t: usize, cell: usize) {
        let slots: Vec<usize> = self.slots(h, t, cell).collect();
        for s in slots {
            self.counts[s] -= 1;
            self.cost -= self.counts[s] as u64;
        }
    }

    fn swap(&mut self, h: &Hypercube, k: usize, t1: usize, t2: usize) {
        let base = k * self.labels;
        let c1 = base + self.assign[base + t1];
        let c2 = base + self.assign[base + t2];
        self.remove(h, t1, c1);
        self.remove(h, t2, c2);
        self.add(h, t1, c2);
        self.add(h, t2, c1);
        self.assign.swap(base + t1, base + t2);
    }

    fn classes(&self, h: &Hypercube) -> Vec<Diagonal> {
        let mut out: Vec<Diagonal> = (0..self.labels)
            .map(|t| {
                Diagonal::new(
                    (0..self.n)
                        .map(|k| h.entry_at(k * self.labels + self.assign[k * self.labels + t]))
                        .collect(),
                )
            })
            .collect();
        out.sort_by(|a, b| a.entries.cmp(&b.entries));
        out
    }
}

/// Searches for `n^(d-1)` pairwise disjoint transversals. Uses
/// `budget.max_nodes` (capped) as the iteration limit and `budget.rng_seed`
/// for all randomness, so runs are reproducible.
pub fn hill_climb_decomposition(h: &Hypercube, budget: &SearchBudget) -> Result<HillClimbOutcome> {
    budget.validate()?;
    h.require_latin()?;
    if h.dim() > 16 {
        return Err(crate::error::Error::invalid("hill climbing supports d <= 16"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.rng_seed);
    let max_iter = budget.max_nodes.min(MAX_ITERATIONS);
    let n = h.order();
    let mut st = State::random(h, &mut rng);
    let stall_limit = (200 * h.num_cells() as u64).max(20_000);
    let sideways_cap = 4 * h.num_cells() as u64;

    let mut best_cost = st.cost;
    let mut since_improvement = 0u64;
    let mut sideways = 0u64;
    let mut restarts = 0u64;
    let mut iterations = 0u64;
    while st.cost > 0 && iterations < max_iter {
        iterations += 1;
        if st.labels < 2 {
            break;
        }
        let k = rng.gen_range(0..n);
        let t1 = rng.gen_range(0..st.labels);
        let mut t2 = rng.gen_range(0..st.labels - 1);
        if t2 >= t1 {
            t2 += 1;
        }
        let before = st.cost;
        st.swap(h, k, t1, t2);
        if st.cost < before {
            sideways = 0;
            since_improvement = 0;
        } else if st.cost == before && sideways < sideways_cap {
            sideways += 1;
            since_improvement += 1;
        } else {
            st.swap(h, k, t1, t2);
            since_improvement += 1;
        }
        best_cost = best_cost.min(st.cost);
        if since_improvement >= stall_limit && st.cost > 0 {
            st = State::random(h, &mut rng);
            restarts += 1;
            since_improvement = 0;
            sideways = 0;
        }
    }
    let decomposition = (st.cost == 0).then(|| st.classes(h));
    Ok(HillClimbOutcome {
        decomposition,
        iterations,
        restarts,
        best_cost: best_cost.min(st.cost),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::AbelianGroup;

    #[test]
    fn decomposes_odd_cyclic_square() {
        let h = Hypercube::cyclic(&AbelianGroup::cyclic(5).unwrap(), 2).unwrap();
        let out = hill_climb_decomposition(&h, &SearchBudget::default().with_max_nodes(1_000_000)).unwrap();
        let dec = out.decomposition.unwrap();
        assert_eq!(dec.len(), 5);
        for (i, t) in dec.iter().enumerate() {
            assert!(h.is_transversal(t));
            for u in &dec[i + 1..] {
                assert!(t.is_disjoint_from(u));
            }
        }
    }

    #[test]
    fn same_seed_same_result() {
        let h = Hypercube::cyclic(&AbelianGroup::cyclic(3).unwrap(), 3).unwrap();
        let b = SearchBudget::default().with_max_nodes(200_000).with_seed(9);
        let a = hill_climb_decomposition(&h, &b).unwrap();
        let c = hill_climb_decomposition(&h, &b).unwrap();
        assert_eq!(a.decomposition, c.decomposition);
        assert_eq!(a.iterations, c.iterations);
        assert!(a.decomposition.is_some());
    }

    #[test]
    fn fails_cleanly_without_transversals() {
        let h = Hypercube::cyclic(&AbelianGroup::cyclic(2).unwrap(), 2).unwrap();
        let out = hill_climb_decomposition(&h, &SearchBudget::default().with_max_nodes(5_000)).unwrap();
        assert!(out.decomposition.is_none());
        assert!(out.best_cost > 0);
    }
}

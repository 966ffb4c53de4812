//! Delta values: how far each entry is from the Cayley hypercube `G^d`.
//!
//! For an entry `(x_1, ..., x_d; s)` the Delta value is `s - x_1 - ... - x_d`
//! computed in the labeling group. Summed over a transversal it always
//! equals `(1 - d) G_+`, which makes the support of nonzero values the
//! natural place to look for obstructions.

use std::collections::BTreeSet;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, GroupElement};
use crate::hypercube::{Diagonal, Entry, Hypercube};

fn check_group(h: &Hypercube, g: &AbelianGroup) -> Result<()> {
    if g.order() != h.order() {
        return Err(Error::invalid(format!(
            "group {g} has order {}, hypercube has order {}",
            g.order(),
            h.order()
        )));
    }
    Ok(())
}

/// Delta value of the cell at `flat`, as a group index.
#[inline]
pub(crate) fn delta_flat(h: &Hypercube, g: &AbelianGroup, flat: usize) -> usize {
    let coords = h.coords_of(flat);
    g.sub_idx(h.symbol_at(flat), g.sum_idx(coords))
}

/// Delta value of an entry given as raw coordinates and symbol.
pub fn delta_of(g: &AbelianGroup, coords: &[usize], symbol: usize) -> usize {
    g.sub_idx(symbol, g.sum_idx(coords.iter().copied()))
}

/// Delta value of an entry of `h` under the labeling `g`.
pub fn delta(h: &Hypercube, g: &AbelianGroup, e: &Entry) -> Result<GroupElement> {
    check_group(h, g)?;
    if e.coords.len() != h.dim() || e.coords.iter().any(|&x| x >= h.order()) {
        return Err(Error::invalid(format!("{:?} is not a cell of the hypercube", e.coords)));
    }
    if h.get(&e.coords) != e.symbol {
        return Err(Error::invalid(format!(
            "entry {:?} claims symbol {}, hypercube holds {}",
            e.coords,
            e.symbol,
            h.get(&e.coords)
        )));
    }
    Ok(g.decode(delta_of(g, &e.coords, e.symbol)))
}

/// Group sum of the Delta values over a (partial) diagonal.
pub fn delta_sum(h: &Hypercube, g: &AbelianGroup, diag: &Diagonal) -> Result<GroupElement> {
    check_group(h, g)?;
    h.check_diagonal(diag)?;
    Ok(g.decode(delta_sum_idx(g, diag)))
}

pub(crate) fn delta_sum_idx(g: &AbelianGroup, diag: &Diagonal) -> usize {
    g.sum_idx(diag.entries.iter().map(|e| delta_of(g, &e.coords, e.symbol)))
}

/// `(1 - d') G_+`, the Delta sum a `(G, d')`-suitable diagonal must have.
pub fn suitable_target(g: &AbelianGroup, d_prime: usize) -> Result<GroupElement> {
    Ok(g.decode(suitable_target_idx(g, d_prime)?))
}

pub fn suitable_target_idx(g: &AbelianGroup, d_prime: usize) -> Result<usize> {
    if d_prime < 2 {
        return Err(Error::invalid(format!("d' must be at least 2, got {d_prime}")));
    }
    Ok(g.mul_idx(1 - d_prime as i64, g.g_plus_idx()))
}

/// Whether a complete diagonal is `(G, d')`-suitable.
pub fn is_suitable(h: &Hypercube, g: &AbelianGroup, diag: &Diagonal, d_prime: usize) -> Result<bool> {
    check_group(h, g)?;
    h.check_complete_diagonal(diag)?;
    Ok(delta_sum_idx(g, diag) == suitable_target_idx(g, d_prime)?)
}

/// One nonzero Delta cell, as reported by `analyze delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SupportCell {
    pub coords: Vec<usize>,
    pub delta: GroupElement,
}

/// Delta values of every cell, the nonzero support `X` and its projections.
#[derive(Clone, Debug)]
pub struct DeltaProfile {
    group: AbelianGroup,
    dim: usize,
    order: usize,
    values: Vec<u16>,
    support: Vec<usize>,
    support_coords: Vec<Vec<usize>>,
    projections: Vec<BTreeSet<usize>>,
}

impl DeltaProfile {
    pub fn new(h: &Hypercube, g: &AbelianGroup) -> Result<Self> {
        check_group(h, g)?;
        let values: Vec<u16> = (0..h.num_cells()).map(|f| delta_flat(h, g, f) as u16).collect();
        let support: Vec<usize> = (0..values.len()).filter(|&f| values[f] != 0).collect();
        let support_coords: Vec<Vec<usize>> = support.iter().map(|&f| h.coords_of(f)).collect();
        let mut projections = vec![BTreeSet::new(); h.dim()];
        for c in &support_coords {
            for (a, &x) in c.iter().enumerate() {
                projections[a].insert(x);
            }
        }
        Ok(DeltaProfile {
            group: g.clone(),
            dim: h.dim(),
            order: h.order(),
            values,
            support,
            support_coords,
            projections,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Delta value (group index) at a flat cell index.
    #[inline]
    pub fn value_at(&self, flat: usize) -> usize {
        self.values[flat] as usize
    }

    pub fn value(&self, coords: &[usize]) -> GroupElement {
        let flat = coords.iter().fold(0, |acc, &x| acc * self.order + x);
        self.group.decode(self.value_at(flat))
    }

    /// Flat indices of the cells with nonzero Delta, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn support_coords(&self) -> &[Vec<usize>] {
        &self.support_coords
    }

    pub fn in_support(&self, flat: usize) -> bool {
        self.values[flat] != 0
    }

    /// `A_i`: the `i`-th coordinates occurring in the support.
    pub fn projections(&self) -> &[BTreeSet<usize>] {
        &self.projections
    }

    pub fn projection_sizes(&self) -> Vec<usize> {
        self.projections.iter().map(BTreeSet::len).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support_cells(&self) -> Vec<SupportCell> {
        self.support
            .iter()
            .zip(&self.support_coords)
            .map(|(&f, c)| SupportCell {
                coords: c.clone(),
                delta: self.group.decode(self.value_at(f)),
            })
            .collect()
    }

    /// Cells whose Delta value is not in the subgroup `2G`, i.e. cells with
    /// "odd" Delta when the group is cyclic of even order.
    pub fn odd_cells(&self) -> Vec<Vec<usize>> {
        let g = &self.group;
        let doubles: BTreeSet<usize> = (0..g.order()).map(|x| g.add_idx(x, x)).collect();
        (0..self.values.len())
            .filter(|&f| !doubles.contains(&self.value_at(f)))
            .map(|f| unflatten(f, self.dim, self.order))
            .collect()
    }
}

pub(crate) fn unflatten(mut flat: usize, d: usize, n: usize) -> Vec<usize> {
    let mut coords = vec![0; d];
    for c in coords.iter_mut().rev() {
        *c = flat % n;
        flat /= n;
    }
    coords
}

pub fn profile(h: &Hypercube, g: &AbelianGroup) -> Result<DeltaProfile> {
    DeltaProfile::new(h, g)
}

/// Delta-lemma certificate: when the transversal target `(1 - d) G_+` is
/// nonzero, every transversal must meet the support, so the support (as
/// flat indices) is a hitting set. Returns `None` when the target is zero.
pub fn delta_lemma_hitting_set(h: &Hypercube, g: &AbelianGroup) -> Result<Option<Vec<usize>>> {
    let target = suitable_target_idx(g, h.dim())?;
    if target == 0 {
        return Ok(None);
    }
    Ok(Some(DeltaProfile::new(h, g)?.support().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_has_zero_delta() {
        for (n, d) in [(5, 2), (4, 3), (6, 2)] {
            let g = z(n);
            let h = Hypercube::cyclic(&g, d).unwrap();
            for e in h.entries() {
                assert_eq!(delta(&h, &g, &e).unwrap(), g.identity());
            }
            let p = profile(&h, &g).unwrap();
            assert!(p.support().is_empty());
            assert!(p.projections().iter().all(BTreeSet::is_empty));
        }
    }

    #[test]
    fn delta_rejects_foreign_entries() {
        let g = z(3);
        let h = Hypercube::cyclic(&g, 2).unwrap();
        assert!(delta(&h, &g, &Entry::new(vec![0, 0], 1)).is_err());
        assert!(delta(&h, &z(4), &Entry::new(vec![0, 0], 0)).is_err());
    }

    #[test]
    fn main_diagonal_of_z5() {
        let g = z(5);
        let h = Hypercube::cyclic(&g, 2).unwrap();
        let coords: Vec<Vec<usize>> = (0..5).map(|i| vec![i, i]).collect();
        let diag = h.diagonal_from_coords(&coords).unwrap();
        assert_eq!(delta_sum(&h, &g, &diag).unwrap(), g.identity());
    }

    #[test]
    fn suitable_targets() {
        assert_eq!(suitable_target(&z(8), 2).unwrap(), GroupElement(vec![4]));
        assert_eq!(suitable_target(&z(6), 4).unwrap(), GroupElement(vec![3]));
        for dp in 2..8 {
            assert_eq!(suitable_target(&z(5), dp).unwrap(), GroupElement(vec![0]));
        }
        assert!(suitable_target(&z(5), 1).is_err());
    }

    #[test]
    fn main_diagonal_of_z8_is_not_suitable() {
        let g = z(8);
        let h = Hypercube::cyclic(&g, 2).unwrap();
        let coords: Vec<Vec<usize>> = (0..8).map(|i| vec![i, i]).collect();
        let diag = h.diagonal_from_coords(&coords).unwrap();
        assert!(!is_suitable(&h, &g, &diag, 2).unwrap());
        let partial = h.diagonal_from_coords(&coords[..3]).unwrap();
        assert!(is_suitable(&h, &g, &partial, 2).is_err());
    }

    #[test]
    fn constant_diagonal_sum_is_minus_d_gplus() {
        // symbol classes of cyclic squares, and of a cyclic cube over Z_3
        for n in 2..=8 {
            let g = z(n);
            let h = Hypercube::cyclic(&g, 2).unwrap();
            let expect = g.mul_idx(-2, g.g_plus_idx());
            for s in 0..n {
                let coords: Vec<Vec<usize>> = (0..n).map(|i| vec![i, g.sub_idx(s, i)]).collect();
                let diag = h.diagonal_from_coords(&coords).unwrap();
                assert!(diag.is_constant());
                assert_eq!(delta_sum_idx(&g, &diag), expect);
            }
        }
        // (i, i+1, s-2i-1) is a constant diagonal of Z_3^3
        let g3 = z(3);
        let h3 = Hypercube::cyclic(&g3, 3).unwrap();
        for s in 0..3 {
            let coords: Vec<Vec<usize>> = (0..3)
                .map(|i| vec![i, (i + 1) % 3, g3.sub_idx(s, g3.add_idx(i, (i + 1) % 3))])
                .collect();
            let diag = h3.diagonal_from_coords(&coords).unwrap();
            assert!(diag.is_constant());
            assert_eq!(delta_sum_idx(&g3, &diag), g3.mul_idx(-3, g3.g_plus_idx()));
        }
    }

    #[test]
    fn even_cyclic_has_no_suitable_diagonals() {
        for (n, d) in [(2, 2), (4, 2), (2, 4), (6, 2)] {
            let g = z(n);
            let h = Hypercube::cyclic(&g, d).unwrap();
            let target = suitable_target_idx(&g, d).unwrap();
            assert_ne!(target, 0);
            assert!(profile(&h, &g).unwrap().support().is_empty());
            assert_eq!(delta_lemma_hitting_set(&h, &g).unwrap(), Some(vec![]));
        }
    }
}

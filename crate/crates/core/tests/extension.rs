mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use transversal_lab::constructions::*;
use transversal_lab::delta;
use transversal_lab::extension::{self, ExtensionMap, Quasigroup};
use transversal_lab::search::{self, SearchBudget};
use transversal_lab::{AbelianGroup, Diagonal, GroupElement, Hypercube};

fn z(n: usize) -> AbelianGroup {
    AbelianGroup::cyclic(n).unwrap()
}

fn cells(t: &Diagonal) -> Vec<Vec<usize>> {
    t.entries.iter().map(|e| e.coords.clone()).collect()
}

#[test]
fn extension_cells_follow_the_formula() {
    let l = ord6m_square(1).unwrap();
    let h = extension::g_extension(&l, &z(6), 4).unwrap();
    assert!(common::is_latin(&h));
    for f in (0..h.num_cells()).step_by(7) {
        let c = h.coords_of(f);
        assert_eq!(h.get(&c), (l.get(&c[..2]) + c[2] + c[3]) % 6);
    }
    assert!(extension::g_extension(&l, &z(6), 2).is_err());
    assert!(extension::g_extension(&l, &z(5), 3).is_err());
}

#[test]
fn projection_and_fibre() {
    let l = z6_isotope_square();
    let m = ExtensionMap::new(&l, &z(6), 3).unwrap();
    let e = m.extension().entry(&[2, 3, 4]);
    assert_eq!(m.project(&e).unwrap(), l.entry(&[2, 3]));
    let fib = m.fibre(&[l.entry(&[2, 3])]).unwrap();
    assert_eq!(fib.len(), 6);
    assert!(fib.contains(&e));
}

#[test]
fn lifted_transversal_is_independent_of_padding() {
    let l = z6_isotope_square();
    let d = z6_marked_diagonal();
    let ext = extension::g_extension(&l, &z(6), 6).unwrap();
    for seed in [None, Some(1), Some(99)] {
        let t = extension::lift_diagonal_with(&l, &d, &z(6), 6, seed).unwrap();
        assert!(common::is_transversal_cells(&ext, &cells(&t)));
    }
}

#[test]
fn unsuitable_diagonals_are_rejected() {
    let l = ord6m_square(1).unwrap();
    let g = z(6);
    let e = search::enumerate_diagonals(&l, &g, Some(&GroupElement(vec![0])), &SearchBudget::default().with_max_results(1))
        .unwrap();
    assert!(extension::lift_diagonal(&l, &e.diagonals[0], &g, 4).is_err());
}

#[test]
fn through_every_cell_of_a_fibre() {
    let l = ord6m_square(1).unwrap();
    let g = z(6);
    let [a, _] = ord6_transversals();
    let m = ExtensionMap::new(&l, &g, 4).unwrap();
    for alpha in m.fibre(&a.entries[..2]).unwrap() {
        let t = extension::transversal_through_fibre(&l, &a, &g, 4, &alpha).unwrap();
        assert!(t.entries.contains(&alpha));
        m.extension().check_transversal(&t).unwrap();
    }
}

#[test]
fn quasigroup_fibres() {
    let q = Quasigroup::new(vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]).unwrap();
    assert!(Quasigroup::new(vec![vec![0, 0], vec![1, 1]]).is_err());
    for a in 0..3 {
        for c in 0..3 {
            assert_eq!(q.op(a, q.solve_right(a, c)), c);
        }
    }
    let h = Hypercube::cyclic(&z(3), 2).unwrap();
    let big = extension::quasi_extend(&h, &q).unwrap();
    assert!(common::is_latin(&big));
    let t = search::enumerate_transversals(&h, &SearchBudget::default()).unwrap().diagonals;
    let consts = extension::transversal_to_constant_fibre(&h, &q, &t[0]).unwrap();
    let mut seen = BTreeSet::new();
    for c in &consts {
        big.check_complete_diagonal(c).unwrap();
        assert!(c.is_constant());
        seen.extend(c.coord_set());
    }
    assert_eq!(seen.len(), 9);
    let k = extension::symbol_classes(&h).unwrap();
    for tr in extension::constant_to_transversal_fibre(&h, &q, &k[0]).unwrap() {
        big.check_transversal(&tr).unwrap();
    }
}

#[test]
fn lifted_families_are_disjoint() {
    let l = Hypercube::cyclic(&z(5), 2).unwrap();
    let classes = extension::symbol_classes(&l).unwrap();
    let fam = extension::lift_family(&l, &classes, &z(5), 4).unwrap();
    assert_eq!(fam.len(), 125);
    let ext = extension::g_extension(&l, &z(5), 4).unwrap();
    let mut seen = BTreeSet::new();
    for t in &fam {
        ext.check_transversal(t).unwrap();
        for c in cells(t) {
            assert!(seen.insert(c));
        }
    }
    assert_eq!(seen.len(), ext.num_cells());
}

fn zero_sum(g: &AbelianGroup, raw: &[usize]) -> Vec<GroupElement> {
    let n = g.order();
    let mut s: Vec<usize> = raw.iter().take(n - 1).map(|&x| x % n).collect();
    s.push(g.neg_idx(g.sum_idx(s.iter().copied())));
    s.into_iter().map(|x| g.decode(x)).collect()
}

proptest! {
    #[test]
    fn hall_pairs_are_valid(spec in prop::sample::select(vec!["Z4", "Z6", "Z7", "Z9", "Z2xZ2", "Z2xZ6", "Z3xZ3"]),
                            raw in prop::collection::vec(0usize..64, 18)) {
        let g: AbelianGroup = spec.parse().unwrap();
        let sig = zero_sum(&g, &raw);
        let (a, b) = extension::hall_pair(&g, &sig).unwrap();
        let an: BTreeSet<_> = a.iter().collect();
        let bn: BTreeSet<_> = b.iter().collect();
        prop_assert_eq!(an.len(), g.order());
        prop_assert_eq!(bn.len(), g.order());
        for i in 0..g.order() {
            prop_assert_eq!(g.sub(&a[i], &b[i]).unwrap(), sig[i].clone());
        }
    }

    #[test]
    fn nonzero_sum_is_rejected(raw in prop::collection::vec(0usize..6, 6)) {
        let g = z(6);
        prop_assume!(raw.iter().sum::<usize>() % 6 != 0);
        let sig: Vec<GroupElement> = raw.iter().map(|&x| g.decode(x)).collect();
        prop_assert!(extension::hall_pair(&g, &sig).is_err());
    }

    #[test]
    fn lifts_of_suitable_diagonals(k in 0usize..56, dp in prop::sample::select(vec![4usize, 6])) {
        let l = z6_isotope_square();
        let g = z(6);
        let target = delta::suitable_target(&g, dp).unwrap();
        let all = search::enumerate_diagonals(&l, &g, Some(&target), &SearchBudget::default()).unwrap();
        let d = &all.diagonals[k % all.diagonals.len()];
        let t = extension::lift_diagonal(&l, d, &g, dp).unwrap();
        let ext = extension::g_extension(&l, &g, dp).unwrap();
        prop_assert!(common::is_transversal_cells(&ext, &cells(&t)));
    }
}

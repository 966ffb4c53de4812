mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use transversal_lab::constructions::*;
use transversal_lab::delta;
use transversal_lab::search::{self, HittingStrategy, SearchBudget, SearchStatus, Through, TransversalOptions};
use transversal_lab::{AbelianGroup, GroupElement, Hypercube};

fn z(n: usize) -> AbelianGroup {
    AbelianGroup::cyclic(n).unwrap()
}

fn isotope(n: usize, d: usize, seeds: &[usize]) -> Hypercube {
    let h = Hypercube::cyclic(&z(n), d).unwrap();
    let perms: Vec<Vec<usize>> = (0..=d)
        .map(|a| {
            let mut p: Vec<usize> = (0..n).collect();
            let k = seeds[a % seeds.len()] + a;
            p.rotate_left(k % n);
            if k.is_multiple_of(3) && n > 2 {
                p.swap(0, n - 1);
            }
            p
        })
        .collect();
    h.apply_isotopy(&perms).unwrap()
}

#[test]
fn counts_match_brute_force_on_cyclic_cubes() {
    for (n, d) in [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3), (4, 3), (2, 5), (3, 4)] {
        let h = Hypercube::cyclic(&z(n), d).unwrap();
        let want = common::count_transversals(&h) as u64;
        let (got, status) = search::count_transversals(&h, TransversalOptions::default(), &SearchBudget::default()).unwrap();
        assert_eq!((got, status), (want, SearchStatus::Complete), "Z{n}^{d}");
    }
}

#[test]
fn diagonal_sums_match_brute_force() {
    let h = ord6m_square(1).unwrap();
    for t in 0..6 {
        let e = search::enumerate_diagonals(&h, h.group(), Some(&GroupElement(vec![t as u32])), &SearchBudget::default())
            .unwrap();
        assert_eq!(e.diagonals.len(), common::count_diagonals_with_sum(&h, t), "target {t}");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let h = turned_cyclic(4, 4).unwrap();
    let one = search::enumerate_transversals(&h, &SearchBudget::default()).unwrap();
    let four = search::enumerate_transversals(&h, &SearchBudget::default().with_threads(4)).unwrap();
    assert_eq!(one.diagonals, four.diagonals);
    assert_eq!(one.nodes, four.nodes);
    let capped1 = search::enumerate_transversals(&h, &SearchBudget::default().with_max_results(100)).unwrap();
    let capped4 =
        search::enumerate_transversals(&h, &SearchBudget::default().with_max_results(100).with_threads(4)).unwrap();
    assert_eq!(capped1.diagonals, capped4.diagonals);
    assert_eq!(capped1.status, SearchStatus::ResultCap);
    assert_eq!(capped1.diagonals[..], one.diagonals[..100]);
}

#[test]
fn node_cap_is_reported() {
    let h = Hypercube::cyclic(&z(7), 3).unwrap();
    let e = search::enumerate_transversals(&h, &SearchBudget::default().with_max_nodes(50)).unwrap();
    assert_eq!(e.status, SearchStatus::NodeCap);
    assert!(e.status.budget_exhausted());
}

#[test]
fn through_and_bachelor() {
    let h = confirmed_bachelor(4, 4).unwrap();
    assert!(matches!(
        search::transversal_through(&h, &[0, 1, 0, 1], &SearchBudget::default()).unwrap(),
        Through::Absent
    ));
    match search::transversal_through(&h, &[3, 2, 2, 3], &SearchBudget::default()).unwrap() {
        Through::Found(t) => {
            let cells: Vec<Vec<usize>> = t.entries.iter().map(|e| e.coords.clone()).collect();
            assert!(common::is_transversal_cells(&h, &cells));
            assert!(cells.contains(&vec![3, 2, 2, 3]));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn hitting_strategies_agree() {
    let cases = [(ord6m_square(1).unwrap(), ord6m_marked_cells(1)), (ord8_square(), ord8_marked_cells())];
    for (h, cells) in cases {
        let g = h.group();
        let t = delta::suitable_target(g, 2).unwrap();
        let mut verdicts = BTreeSet::new();
        for s in [HittingStrategy::Enumerate, HittingStrategy::Avoiding, HittingStrategy::SupportBranch, HittingStrategy::Auto] {
            let r = search::hitting_set_check(&h, g, &t, &cells, s, &SearchBudget::default()).unwrap();
            verdicts.insert(r.holds);
        }
        assert_eq!(verdicts.into_iter().collect::<Vec<_>>(), vec![Some(true)]);
        // a single starred cell is not enough
        let r = search::hitting_set_check(&h, g, &t, &cells[..1], HittingStrategy::SupportBranch, &SearchBudget::default())
            .unwrap();
        assert_eq!(r.holds, Some(false));
        let ce = r.counterexample.unwrap();
        assert!(!ce.contains_coords(&cells[0]));
        assert_eq!(delta::delta_sum(&h, g, &ce).unwrap(), t);
    }
}

#[test]
fn order_12_restricted_diagonals_by_avoiding_search() {
    let h = ord6m_square(2).unwrap();
    let g = h.group();
    let t = delta::suitable_target(g, 2).unwrap();
    let r = search::hitting_set_check(&h, g, &t, &ord6m_marked_cells(2), HittingStrategy::Avoiding, &SearchBudget::default())
        .unwrap();
    assert_eq!(r.holds, Some(true));
}

#[test]
fn packing_of_small_cyclic_squares() {
    for n in [3, 5, 7] {
        let h = Hypercube::cyclic(&z(n), 2).unwrap();
        let p = search::max_disjoint_transversals(&h, &SearchBudget::default()).unwrap();
        assert_eq!(p.transversals.len(), n, "Z{n}");
        assert!(p.optimal);
        for t in &p.transversals {
            h.check_transversal(t).unwrap();
        }
    }
}

#[test]
fn hill_climb_decomposes_cyclic_odd_order() {
    let h = Hypercube::cyclic(&z(5), 3).unwrap();
    let out = search::hill_climb_decomposition(&h, &SearchBudget::default()).unwrap();
    let parts = out.decomposition.expect("decomposition");
    assert_eq!(parts.len(), 25);
    let mut seen = BTreeSet::new();
    for p in &parts {
        h.check_transversal(p).unwrap();
        for e in &p.entries {
            assert!(seen.insert(e.coords.clone()));
        }
    }
}

#[test]
fn extend_partial() {
    let h = Hypercube::cyclic(&z(5), 2).unwrap();
    let d = search::extend_partial_diagonal(&h, &[vec![0, 0], vec![1, 2]], &[vec![2, 4]], &SearchBudget::default())
        .unwrap()
        .unwrap();
    assert!(d.contains_coords(&[0, 0]) && d.contains_coords(&[1, 2]) && !d.contains_coords(&[2, 4]));
    h.check_complete_diagonal(&d).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let h = ord8_square();
    let mk = || {
        let b = SearchBudget::default();
        let mut r = search::SearchReport::new(&h, "transversals", &b);
        let e = search::enumerate_transversals(&h, &b).unwrap();
        r.count = e.diagonals.len() as u64;
        r.witnesses = e.diagonals;
        r.status = e.status;
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(mk(), mk());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn isotopes_keep_counts(n in 2usize..6, seeds in prop::collection::vec(0usize..7, 3)) {
        let d = if n <= 3 { 3 } else { 2 };
        let h = isotope(n, d, &seeds);
        prop_assert!(common::is_latin(&h));
        let base = Hypercube::cyclic(&z(n), d).unwrap();
        let (a, _) = search::count_transversals(&h, TransversalOptions::default(), &SearchBudget::default()).unwrap();
        let (b, _) = search::count_transversals(&base, TransversalOptions::default(), &SearchBudget::default()).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a as usize, common::count_transversals(&h));
    }

    #[test]
    fn every_enumerated_transversal_is_valid(n in 3usize..6, seeds in prop::collection::vec(0usize..7, 3)) {
        let h = isotope(n, 2, &seeds);
        let e = search::enumerate_transversals(&h, &SearchBudget::default()).unwrap();
        for t in &e.diagonals {
            let cells: Vec<Vec<usize>> = t.entries.iter().map(|x| x.coords.clone()).collect();
            prop_assert!(common::is_transversal_cells(&h, &cells));
        }
    }
}

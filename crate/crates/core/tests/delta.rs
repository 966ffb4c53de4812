mod common;

use proptest::prelude::*;
use transversal_lab::constructions::*;
use transversal_lab::delta::{self, DeltaProfile};
use transversal_lab::search::{self, SearchBudget};
use transversal_lab::{AbelianGroup, Hypercube};

fn z(n: usize) -> AbelianGroup {
    AbelianGroup::cyclic(n).unwrap()
}

#[test]
fn profile_matches_integer_formula() {
    for h in [ord8_square(), ord6m_square(1).unwrap(), l8_square(), confirmed_bachelor(4, 4).unwrap()] {
        let p = DeltaProfile::new(&h, h.group()).unwrap();
        let mut support = Vec::new();
        for f in 0..h.num_cells() {
            let c = common::coords(f, h.order(), h.dim());
            assert_eq!(p.value_at(f), common::delta_mod(&h, &c));
            if common::delta_mod(&h, &c) != 0 {
                support.push(f);
            }
        }
        assert_eq!(p.support(), &support[..]);
    }
}

#[test]
fn targets() {
    // (1 - d') G_+ for Z6, Z8 and Z2xZ2
    assert_eq!(delta::suitable_target_idx(&z(6), 2).unwrap(), 3);
    assert_eq!(delta::suitable_target_idx(&z(6), 3).unwrap(), 0);
    assert_eq!(delta::suitable_target_idx(&z(8), 4).unwrap(), 4);
    assert_eq!(delta::suitable_target_idx(&"Z2xZ2".parse().unwrap(), 3).unwrap(), 0);
}

#[test]
fn l8_support_shape() {
    let h = l8_square();
    let p = DeltaProfile::new(&h, h.group()).unwrap();
    assert_eq!(p.support().len(), 28);
    let mut sizes = p.projection_sizes();
    sizes.sort();
    assert_eq!(sizes, vec![4, 7]);
}

#[test]
fn lemma_hitting_set_on_turned_cubes() {
    let h = turned_cyclic(4, 4).unwrap();
    let x = delta::delta_lemma_hitting_set(&h, h.group()).unwrap().unwrap();
    assert_eq!(x.len(), 16);
    let cyc = Hypercube::cyclic(&z(5), 3).unwrap();
    assert_eq!(delta::delta_lemma_hitting_set(&cyc, cyc.group()).unwrap(), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // Every transversal has Delta sum (1 - d) G_+.
    #[test]
    fn transversal_delta_sum(n in 3usize..6, d in 2usize..4, rot in 0usize..5, sym in 0usize..5) {
        prop_assume!(n.pow(d as u32) <= 125);
        let h = Hypercube::cyclic(&z(n), d).unwrap();
        let mut perms: Vec<Vec<usize>> = (0..=d).map(|_| (0..n).collect()).collect();
        perms[0].rotate_left(rot % n);
        perms[d].swap(0, sym % n);
        let h = h.apply_isotopy(&perms).unwrap();
        let target = delta::suitable_target(h.group(), d).unwrap();
        let e = search::enumerate_transversals_with(
            &h, search::TransversalOptions { delta_prune: false }, &SearchBudget::default().with_max_results(200)).unwrap();
        for t in &e.diagonals {
            prop_assert_eq!(delta::delta_sum(&h, h.group(), t).unwrap(), target.clone());
            prop_assert!(delta::is_suitable(&h, h.group(), t, d).unwrap());
        }
    }
}

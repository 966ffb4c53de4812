mod common;

use proptest::prelude::*;
use transversal_lab::constructions::*;
use transversal_lab::delta::DeltaProfile;
use transversal_lab::dilation::{self, DilationMap, TransferMethod};
use transversal_lab::search::{self, SearchBudget};
use transversal_lab::{AbelianGroup, Entry, Hypercube};

fn z(n: usize) -> AbelianGroup {
    AbelianGroup::cyclic(n).unwrap()
}

#[test]
fn parity_condition_against_direct_computation() {
    for n in 1..8 {
        for d in 2..6 {
            for lambda in 2..5 {
                let big = n * lambda;
                let gp = |m: usize| (m * (m - 1) / 2) % m;
                let lhs = (lambda * ((1 + big * 8 - d) % n) * gp(n)) % big;
                let lhs = if n == 1 { 0 } else { lhs };
                let rhs = (((1 + big * 8 - d) % big) * gp(big)) % big;
                assert_eq!(dilation::parity_condition(n, d, lambda), lhs == rhs, "n={n} d={d} lambda={lambda}");
            }
        }
    }
}

#[test]
fn psi_and_preimage() {
    let m = DilationMap::new(4, 3).unwrap();
    assert_eq!(m.psi(&Entry::new(vec![1, 2], 3)), Entry::new(vec![3, 6], 9));
    assert_eq!(m.preimage(&[3, 9]), Some(vec![1, 3]));
    assert_eq!(m.preimage(&[3, 8]), None);
    assert!(DilationMap::new(4, 1).is_err());
    assert!(DilationMap::new(40, 2).is_err());
    let h = Hypercube::cyclic(&z(4), 2).unwrap();
    assert!(dilation::psi(&h, &Entry::new(vec![1, 2], 0), 2).is_err());
}

#[test]
fn dilation_is_latin_and_embeds_the_base() {
    for (h, lambda) in [(ord8_square(), 2), (ord6m_square(1).unwrap(), 3), (confirmed_bachelor(4, 4).unwrap(), 2)] {
        let big = dilation::dilate(&h, lambda).unwrap();
        assert!(common::is_latin(&big));
        let m = DilationMap::new(h.order(), lambda).unwrap();
        for f in (0..h.num_cells()).step_by(3) {
            let e = h.entry_at(f);
            assert_eq!(big.entry(&m.psi(&e).coords), m.psi(&e));
        }
    }
    let k: AbelianGroup = "Z2xZ2".parse().unwrap();
    assert!(dilation::dilate(&Hypercube::cyclic(&k, 2).unwrap(), 2).is_err());
}

#[test]
fn dilrect_sizes() {
    let r = dilation::dilrect_condition(&ord6m_square(1).unwrap()).unwrap();
    assert_eq!((r.sum, r.bound, r.holds), (7, 6, false));
    let r = dilation::dilrect_condition(&l8_square()).unwrap();
    assert_eq!((r.sum, r.bound, r.holds), (11, 8, false));
    let r = dilation::dilrect_condition(&ord8_square()).unwrap();
    assert_eq!((r.sizes, r.holds), (vec![3, 8], false));
    let r = dilation::dilrect_condition(&turned_cyclic(4, 4).unwrap()).unwrap();
    assert_eq!((r.sizes, r.sum, r.bound, r.holds), (vec![2; 4], 8, 12, true));
}

#[test]
fn partial_diagonals_extend_inside_x() {
    let h = turned_cyclic(4, 4).unwrap();
    let p = DeltaProfile::new(&h, h.group()).unwrap();
    let x = p.support_coords().to_vec();
    let mut partials: Vec<Vec<Vec<usize>>> = x.iter().map(|c| vec![c.clone()]).collect();
    partials.push(vec![vec![0, 0, 0, 0], vec![2, 2, 2, 2]]);
    partials.push(vec![]);
    for part in &partials {
        let e = dilation::extend_partial_in_x(&h, part, &SearchBudget::default()).unwrap().unwrap();
        h.check_complete_diagonal(&e).unwrap();
        let inside: Vec<_> = e.entries.iter().filter(|en| x.contains(&en.coords)).map(|en| en.coords.clone()).collect();
        assert_eq!(&inside, part);
    }
    assert!(dilation::extend_partial_in_x(&h, &[vec![1, 1, 1, 1]], &SearchBudget::default()).is_err());

    // without the projection bound some cells of X force a second one
    let h = ord8_square();
    let x = DeltaProfile::new(&h, h.group()).unwrap().support_coords().to_vec();
    let mut stuck = 0;
    for c in &x {
        match dilation::extend_partial_in_x(&h, std::slice::from_ref(c), &SearchBudget::default()).unwrap() {
            Some(e) => assert_eq!(e.entries.iter().filter(|en| x.contains(&en.coords)).count(), 1),
            None => stuck += 1,
        }
    }
    assert!(stuck > 0);
}

#[test]
fn transfer_certificates() {
    let h = ord6m_square(1).unwrap();
    let c = dilation::transfer_hitting_set(&h, &ord6m_marked_cells(1), 2, true, &SearchBudget::default()).unwrap();
    assert!(c.holds && c.base_hitting && c.parity_ok);
    assert_eq!(c.method, Some(TransferMethod::PartialDiagonals));
    assert_eq!(c.cross_check, Some(true));
    assert_eq!(c.image, vec![vec![2, 0], vec![2, 2]]);

    let h = turned_cyclic(4, 4).unwrap();
    let c = dilation::transfer_hitting_set(&h, &half_vectors(4, 4), 2, true, &SearchBudget::default()).unwrap();
    assert_eq!(c.method, Some(TransferMethod::Dilrect));
    assert_eq!(c.cross_check, Some(true));

    let h = ord8_square();
    let c = dilation::transfer_hitting_set(&h, &ord8_marked_cells(), 2, true, &SearchBudget::default()).unwrap();
    assert!(c.holds);
    assert_eq!(c.cross_check, Some(true));

    // base hitting fails with one starred cell
    assert!(dilation::transfer_hitting_set(&h, &ord8_marked_cells()[..1], 2, false, &SearchBudget::default()).is_err());
    // parity: odd order, even dimension, even factor
    let h = Hypercube::cyclic(&z(3), 2).unwrap();
    assert!(dilation::transfer_hitting_set(&h, &[], 2, false, &SearchBudget::default()).is_err());
}

#[test]
fn l8_dilation_transversal_through_sample() {
    let big = dilation::dilate(&l8_square(), 2).unwrap();
    for c in [[0, 0], [2, 4], [15, 1], [7, 9]] {
        let t = search::transversal_through(&big, &c, &SearchBudget::default()).unwrap();
        let t = t.witness().expect("transversal");
        let cells: Vec<Vec<usize>> = t.entries.iter().map(|e| e.coords.clone()).collect();
        assert!(common::is_transversal_cells(&big, &cells));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn delta_scales_on_the_embedded_copy(n in 2usize..7, lambda in 2usize..4, rot in 0usize..6) {
        let mut perms: Vec<Vec<usize>> = (0..3).map(|_| (0..n).collect()).collect();
        perms[1].rotate_left(rot % n);
        let h = Hypercube::cyclic(&z(n), 2).unwrap().apply_isotopy(&perms).unwrap();
        let big = dilation::dilate(&h, lambda).unwrap();
        for f in 0..big.num_cells() {
            let c = big.coords_of(f);
            let want = if c.iter().all(|x| x % lambda == 0) {
                let b: Vec<usize> = c.iter().map(|x| x / lambda).collect();
                lambda * common::delta_mod(&h, &b)
            } else {
                0
            };
            prop_assert_eq!(common::delta_mod(&big, &c), want);
        }
    }
}

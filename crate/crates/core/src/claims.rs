//! Executable checks of the quantitative claims reproduced by this crate.
//!
//! Each criterion builds its instances from scratch, runs the relevant
//! searches or constructions and compares against the expected values. A
//! criterion with a time limit fails if it overruns, even when every check
//! inside it passed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::constructions::*;
use crate::delta::{self, DeltaProfile};
use crate::dilation;
use crate::error::Error;
use crate::extension::{self, Quasigroup};
use crate::groups::{AbelianGroup, GroupElement};
use crate::hypercube::{Diagonal, Hypercube};
use crate::oracle;
use crate::search::{self, HittingStrategy, SearchBudget, TransversalOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Samples the order-16 all-cells dilation check.
    Quick,
    Full,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "quick" => Ok(Suite::Quick),
            "full" => Ok(Suite::Full),
            _ => Err(Error::invalid(format!("unknown suite {s:?}, expected quick or full"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Quick => "quick",
            Suite::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
    pub limit_ms: Option<u64>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let limit = self.limit_ms.map(|l| format!(" (limit {l} ms)")).unwrap_or_default();
        write!(
            f,
            "{} C{:02} {}: {} [{} ms{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed_ms,
            limit
        )
    }
}

type Check = Result<String, String>;

const TITLES: [&str; 13] = [
    "cyclic hypercubes of even order and even dimension have no transversals",
    "confirmed bachelor (4,4) has exactly the 16 switched cells off every transversal",
    "transversal table of the confirmed bachelor family validates",
    "third species (4,4): 32 odd-Delta cells are exactly the bachelor cells",
    "turned cyclic hypercubes: at most and exactly 2^d disjoint transversals",
    "order-8 square: every transversal uses one of two cells, packing 2",
    "order-6m squares: restricted transversals through two starred cells",
    "Hall completion of zero-sum sequences",
    "lifting suitable diagonals to transversals of the extension",
    "decompositions of extensions and iterated quasigroups",
    "order-6 extension to dimension 4: restricted transversals, 72 disjoint",
    "dilation: cyclic, Delta scaling, L8 and its 2-dilation",
    "transversal enumeration agrees with brute force",
];

pub fn titles() -> Vec<(u8, &'static str)> {
    TITLES.iter().enumerate().map(|(i, t)| (i as u8 + 1, *t)).collect()
}

fn limit_ms(id: u8, suite: Suite) -> Option<u64> {
    match id {
        1 => Some(5_000),
        2 => Some(30_000),
        3 => Some(1_000),
        4 => Some(60_000),
        6 => Some(10_000),
        7 => Some(60_000),
        8 => Some(10_000),
        12 => Some(if suite == Suite::Full { 600_000 } else { 60_000 }),
        _ => None,
    }
}

pub fn run_criterion(id: u8, suite: Suite) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => c01(),
        2 => c02(),
        3 => c03(),
        4 => c04(),
        5 => c05(),
        6 => c06(),
        7 => c07(),
        8 => c08(),
        9 => c09(),
        10 => c10(),
        11 => c11(),
        12 => c12(suite),
        13 => c13(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let limit = limit_ms(id, suite);
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    if let Some(l) = limit {
        if elapsed_ms > l {
            passed = false;
            detail = format!("{detail}; exceeded time limit");
        }
    }
    CriterionResult {
        id,
        title: TITLES.get(id as usize - 1).unwrap_or(&"unknown").to_string(),
        passed,
        detail,
        elapsed_ms,
        limit_ms: limit,
    }
}

pub fn run_suite(suite: Suite) -> Vec<CriterionResult> {
    (1..=TITLES.len() as u8).map(|id| run_criterion(id, suite)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn z(n: usize) -> Result<AbelianGroup, String> {
    AbelianGroup::cyclic(n).map_err(err)
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn coord_set(d: &Diagonal) -> BTreeSet<Vec<usize>> {
    d.coord_set()
}

fn disjoint_family(ts: &[Diagonal]) -> bool {
    let mut seen = BTreeSet::new();
    ts.iter().flat_map(|t| &t.entries).all(|e| seen.insert(e.coords.clone()))
}

fn c01() -> Check {
    let mut parts = Vec::new();
    for (n, d) in [(2, 2), (4, 2), (2, 4), (4, 4), (6, 2)] {
        let h = Hypercube::cyclic(&z(n)?, d).map_err(err)?;
        let t = Instant::now();
        let (count, status) = search::count_transversals(&h, TransversalOptions::default(), &budget()).map_err(err)?;
        ensure(status.is_complete() && count == 0, || format!("Z{n}^{d}: {count} transversals ({status:?})"))?;
        if (n, d) == (4, 4) {
            ensure(t.elapsed().as_secs_f64() < 5.0, || "Z4^4 took 5 s or more".into())?;
        }
        parts.push(format!("Z{n}^{d}=0"));
    }
    // the plain symbol-distinctness search agrees on the small cases
    for (n, d) in [(2, 2), (4, 2), (2, 4), (6, 2)] {
        let h = Hypercube::cyclic(&z(n)?, d).map_err(err)?;
        let (count, _) =
            search::count_transversals(&h, TransversalOptions { delta_prune: false }, &budget()).map_err(err)?;
        ensure(count == 0, || format!("unpruned Z{n}^{d}: {count}"))?;
    }
    Ok(parts.join(", "))
}

fn c02() -> Check {
    let h = confirmed_bachelor(4, 4).map_err(err)?;
    let b = search::bachelor_cells(&h, &budget()).map_err(err)?;
    ensure(b.complete, || "bachelor search incomplete".into())?;
    let got: BTreeSet<Vec<usize>> = b.cells.iter().cloned().collect();
    let expected: BTreeSet<Vec<usize>> = switched_subcube(4).into_iter().collect();
    ensure(got == expected, || format!("bachelor cells {got:?}"))?;
    let mut covered = BTreeSet::new();
    for w in &b.witnesses {
        h.check_transversal(w).map_err(err)?;
        covered.extend(coord_set(w));
    }
    ensure(covered.len() == 240 && covered.is_disjoint(&expected), || {
        format!("witnesses cover {} cells", covered.len())
    })?;
    let t = atran_transversal(4, 4).map_err(err)?;
    h.check_transversal(&t).map_err(err)?;
    ensure(coord_set(&t).is_disjoint(&expected), || "table meets I'".into())?;
    Ok(format!("16 bachelor cells, 240 covered by {} witnesses", b.witnesses.len()))
}

fn c03() -> Check {
    for (n, d) in [(4, 4), (8, 4), (12, 4), (4, 6), (8, 6)] {
        let h = confirmed_bachelor(n, d).map_err(err)?;
        let t = atran_transversal(n, d).map_err(err)?;
        h.check_transversal(&t).map_err(|e| format!("({n},{d}): {e}"))?;
        ensure(t.entries.iter().all(|e| e.coords.iter().any(|&x| x > 1)), || {
            format!("({n},{d}) meets I'")
        })?;
    }
    Ok("5 parameter pairs validated".into())
}

fn c04() -> Check {
    let h = third_species_44();
    let prof = DeltaProfile::new(&h, h.group()).map_err(err)?;
    let odd: BTreeSet<Vec<usize>> = prof.odd_cells().into_iter().collect();
    let listed: BTreeSet<Vec<usize>> = swit03_entries().into_iter().map(|e| e.coords).collect();
    ensure(listed.len() == 32 && odd == listed, || format!("{} odd cells", odd.len()))?;
    let b = search::bachelor_cells(&h, &budget()).map_err(err)?;
    let got: BTreeSet<Vec<usize>> = b.cells.iter().cloned().collect();
    ensure(b.complete && got == listed, || format!("{} bachelor cells", got.len()))?;
    h.check_transversal(&third_species_transversal()).map_err(err)?;
    Ok("32 odd cells = 32 bachelor cells; 224 covered".into())
}

fn c05() -> Check {
    let mut notes = Vec::new();
    for n in [4, 6] {
        let h = turned_cyclic(n, 4).map_err(err)?;
        let t = btran_transversal(n, 4).map_err(err)?;
        h.check_transversal(&t).map_err(err)?;
        let i_cells: BTreeSet<Vec<usize>> = half_vectors(n, 4).into_iter().collect();
        let family = translated_transversals(&h, &t, &half_vectors(n, 4)).map_err(err)?;
        ensure(family.len() == 16 && disjoint_family(&family), || {
            format!("n={n}: translates not 16 disjoint")
        })?;
        if n == 4 {
            let all = search::enumerate_transversals(&h, &budget()).map_err(err)?;
            ensure(all.status.is_complete(), || "enumeration incomplete".into())?;
            ensure(all.diagonals.iter().all(|d| !coord_set(d).is_disjoint(&i_cells)), || {
                "a transversal avoids I".into()
            })?;
            let p = search::max_disjoint_transversals(&h, &budget()).map_err(err)?;
            let cert: BTreeSet<Vec<usize>> = p.certificate.iter().cloned().collect();
            ensure(p.transversals.len() == 16 && p.optimal && p.upper_bound == 16, || {
                format!("packing {} bound {}", p.transversals.len(), p.upper_bound)
            })?;
            ensure(cert == i_cells, || "certificate differs from I".into())?;
            notes.push(format!("(4,4): {} transversals all hit I, packing 16 optimal", all.diagonals.len()));
        } else {
            let x = delta::delta_lemma_hitting_set(&h, h.group()).map_err(err)?;
            let x: BTreeSet<Vec<usize>> = x
                .ok_or("Delta-lemma target is zero")?
                .into_iter()
                .map(|f| h.coords_of(f))
                .collect();
            ensure(x == i_cells, || "Delta support differs from I".into())?;
            notes.push("(6,4): Delta support = I, 16 disjoint translates".into());
        }
    }
    Ok(notes.join("; "))
}

fn c06() -> Check {
    let h = ord8_square();
    let expected: [[i64; 8]; 8] = [
        [0, 0, 1, 1, 1, 1, 1, 3],
        [2, 2, -1, 2, 2, -1, 2, 0],
        [0; 8],
        [-2, -2, 0, -3, -3, 0, -3, -3],
        [0; 8],
        [0; 8],
        [0; 8],
        [0; 8],
    ];
    let prof = DeltaProfile::new(&h, h.group()).map_err(err)?;
    for (r, row) in expected.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            let want = v.rem_euclid(8) as usize;
            ensure(prof.value_at(r * 8 + c) == want, || format!("Delta at ({r},{c})"))?;
        }
    }
    let [a, b] = ord8_transversals();
    h.check_transversal(&a).map_err(err)?;
    h.check_transversal(&b).map_err(err)?;
    let target = GroupElement(vec![4]);
    let r = search::hitting_set_check(&h, h.group(), &target, &ord8_marked_cells(), HittingStrategy::Enumerate, &budget())
        .map_err(err)?;
    ensure(r.holds == Some(true), || "a target-4 diagonal avoids both cells".into())?;
    let p = search::max_disjoint_transversals(&h, &budget()).map_err(err)?;
    ensure(p.transversals.len() == 2 && p.optimal, || format!("packing {}", p.transversals.len()))?;
    Ok(format!("{} target-4 diagonals all hit the two cells; packing 2 optimal", r.checked))
}

fn ord6m_expected(m: usize) -> BTreeSet<(usize, usize, usize)> {
    let n = 6 * m;
    let neg = |v: usize| (n - v) % n;
    [
        (0, 0, m),
        (0, m, m),
        (0, 2 * m, 2 * m),
        (0, 4 * m, 2 * m),
        (m, 0, m),
        (m, m, neg(m)),
        (2 * m, 0, neg(2 * m)),
        (2 * m, 2 * m, neg(2 * m)),
        (2 * m, 4 * m, neg(2 * m)),
    ]
    .into_iter()
    .collect()
}

fn support_triples(h: &Hypercube) -> Result<BTreeSet<(usize, usize, usize)>, String> {
    let prof = DeltaProfile::new(h, h.group()).map_err(err)?;
    Ok(prof
        .support()
        .iter()
        .map(|&f| (f / h.order(), f % h.order(), prof.value_at(f)))
        .collect())
}

fn c07() -> Check {
    let mut notes = Vec::new();
    for m in [1, 2] {
        let h = ord6m_square(m).map_err(err)?;
        ensure(support_triples(&h)? == ord6m_expected(m), || format!("m={m}: support differs"))?;
        let g = h.group();
        let target = delta::suitable_target(g, 2).map_err(err)?;
        let strategy = if m == 1 { HittingStrategy::Enumerate } else { HittingStrategy::SupportBranch };
        let r = search::hitting_set_check(&h, g, &target, &ord6m_marked_cells(m), strategy, &budget()).map_err(err)?;
        ensure(r.holds == Some(true), || format!("m={m}: a suitable diagonal avoids the starred cells"))?;
        if m == 1 {
            for t in ord6_transversals() {
                h.check_transversal(&t).map_err(err)?;
            }
        }
        notes.push(format!("m={m}: {:?} checked {}", r.strategy, r.checked));
    }
    Ok(notes.join("; "))
}

fn c08() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(search::DEFAULT_SEED);
    for spec in ["Z5", "Z8", "Z12", "Z2xZ2", "Z2xZ4"] {
        let g: AbelianGroup = spec.parse().map_err(err)?;
        let n = g.order();
        for trial in 0..1000 {
            let mut sig: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..n)).collect();
            sig.push(g.neg_idx(g.sum_idx(sig.iter().copied())));
            let elems: Vec<GroupElement> = sig.iter().map(|&s| g.decode(s)).collect();
            let (a, b) = extension::hall_pair(&g, &elems).map_err(err)?;
            let ai: Vec<usize> = a.iter().map(|x| g.index_of(x)).collect::<Result<_, _>>().map_err(err)?;
            let bi: Vec<usize> = b.iter().map(|x| g.index_of(x)).collect::<Result<_, _>>().map_err(err)?;
            let perm = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == n;
            ensure(perm(&ai) && perm(&bi), || format!("{spec} trial {trial}: not bijections"))?;
            ensure((0..n).all(|i| g.sub_idx(ai[i], bi[i]) == sig[i]), || {
                format!("{spec} trial {trial}: a - b differs from sigma")
            })?;
        }
    }
    Ok("5000 random sequences completed".into())
}

fn c09() -> Check {
    let mut notes = Vec::new();
    for (name, h) in [("z6 isotope", z6_isotope_square()), ("ord6m(1)", ord6m_square(1).map_err(err)?)] {
        let g = h.group().clone();
        let target = delta::suitable_target(&g, 4).map_err(err)?;
        let ext = extension::g_extension(&h, &g, 4).map_err(err)?;
        let all = search::enumerate_diagonals(&h, &g, Some(&target), &budget()).map_err(err)?;
        ensure(all.status.is_complete(), || "enumeration incomplete".into())?;
        for d in &all.diagonals {
            let t = extension::lift_diagonal(&h, d, &g, 4).map_err(err)?;
            ext.check_transversal(&t).map_err(err)?;
            let projected: BTreeSet<Vec<usize>> = t.entries.iter().map(|e| e.coords[..2].to_vec()).collect();
            ensure(projected == coord_set(d), || format!("{name}: projection differs"))?;
        }
        ensure(!all.diagonals.is_empty(), || format!("{name}: no suitable diagonals"))?;
        notes.push(format!("{name}: {} lifted", all.diagonals.len()));
    }
    let marked = z6_marked_diagonal();
    let h = z6_isotope_square();
    let t = extension::lift_diagonal(&h, &marked, h.group(), 4).map_err(err)?;
    extension::g_extension(&h, h.group(), 4).map_err(err)?.check_transversal(&t).map_err(err)?;
    let cyc = Hypercube::cyclic(&z(6)?, 4).map_err(err)?;
    let x = delta::delta_lemma_hitting_set(&cyc, cyc.group()).map_err(err)?;
    ensure(x.is_some_and(|s| s.is_empty()), || "cyclic Z6^4 target or support unexpected".into())?;
    notes.push("Z6^4: nonzero target, empty support".into());
    Ok(notes.join("; "))
}

fn c10() -> Check {
    let g3 = z(3)?;
    let l = Hypercube::cyclic(&g3, 2).map_err(err)?;
    let classes = extension::symbol_classes(&l).map_err(err)?;
    let fam = extension::lift_family(&l, &classes, &g3, 3).map_err(err)?;
    let ext = extension::g_extension(&l, &g3, 3).map_err(err)?;
    for t in &fam {
        ext.check_transversal(t).map_err(err)?;
    }
    ensure(fam.len() == 9 && disjoint_family(&fam), || format!("{} lifted transversals", fam.len()))?;

    let z4 = z(4)?;
    let k4: AbelianGroup = "Z2xZ2".parse().map_err(err)?;
    let ops3 = [Quasigroup::cayley(&z4), Quasigroup::cayley(&k4)];
    let ops4 = [
        Quasigroup::cayley(&g3),
        Quasigroup::new(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).map_err(err)?,
        Quasigroup::cayley(&g3),
    ];
    let mut notes = vec!["Z3 square -> 9 disjoint transversals".to_string()];
    for (ops, transversals) in [(&ops3[..], true), (&ops4[..], false)] {
        let h = extension::iterated_hypercube(ops).map_err(err)?;
        let parts = extension::iterated_decomposition(ops).map_err(err)?;
        let n = h.order();
        ensure(parts.len() == n.pow(h.dim() as u32 - 1) && disjoint_family(&parts), || {
            "iterated decomposition is not a partition".into()
        })?;
        for p in &parts {
            if transversals {
                h.check_transversal(p).map_err(err)?;
            } else {
                h.check_complete_diagonal(p).map_err(err)?;
                ensure(p.is_constant(), || "diagonal is not constant".into())?;
            }
        }
        notes.push(format!("d={}: {} parts", h.dim(), parts.len()));
    }
    Ok(notes.join("; "))
}

fn c11() -> Check {
    let h = ord6m_square(1).map_err(err)?;
    let g = h.group().clone();
    let target = delta::suitable_target(&g, 4).map_err(err)?;
    let starred = ord6m_marked_cells(1);
    let r = search::hitting_set_check(&h, &g, &target, &starred, HittingStrategy::Enumerate, &budget()).map_err(err)?;
    ensure(r.holds == Some(true), || "a (Z6,4)-suitable diagonal avoids the starred cells".into())?;

    let ext = extension::g_extension(&h, &g, 4).map_err(err)?;
    let in_fibre = |c: &[usize]| starred.iter().any(|s| s[..] == c[..2]);
    let sample = search::enumerate_transversals(&ext, &budget().with_max_results(5000)).map_err(err)?;
    ensure(
        sample.diagonals.iter().all(|t| t.entries.iter().any(|e| in_fibre(&e.coords))),
        || "a transversal of the extension avoids the fibre".into(),
    )?;

    let family = extension::lift_family(&h, &ord6_transversals(), &g, 4).map_err(err)?;
    for t in &family {
        ext.check_transversal(t).map_err(err)?;
    }
    ensure(family.len() == 72 && disjoint_family(&family), || format!("{} disjoint", family.len()))?;
    Ok(format!(
        "{} base diagonals checked; {} extension transversals sampled; 72 disjoint built",
        r.checked,
        sample.diagonals.len()
    ))
}

fn c12(suite: Suite) -> Check {
    for n in 2..=8 {
        for lambda in 2..=16 / n {
            let base = Hypercube::cyclic(&z(n)?, 2).map_err(err)?;
            let big = Hypercube::cyclic(&z(n * lambda)?, 2).map_err(err)?;
            ensure(dilation::dilate(&base, lambda).map_err(err)? == big, || {
                format!("dilating Z{n}^2 by {lambda}")
            })?;
        }
    }
    let base = Hypercube::cyclic(&z(2)?, 3).map_err(err)?;
    ensure(dilation::dilate(&base, 4).map_err(err)? == Hypercube::cyclic(&z(8)?, 3).map_err(err)?, || {
        "dilating Z2^3 by 4".into()
    })?;

    let h = ord6m_square(1).map_err(err)?;
    let big = dilation::dilate(&h, 2).map_err(err)?;
    let pb = DeltaProfile::new(&h, h.group()).map_err(err)?;
    let pd = DeltaProfile::new(&big, big.group()).map_err(err)?;
    for f in 0..big.num_cells() {
        let c = big.coords_of(f);
        let want = if c.iter().all(|x| x % 2 == 0) {
            let bc: Vec<usize> = c.iter().map(|x| x / 2).collect();
            2 * pb.value_at(h.flat_index(&bc))
        } else {
            0
        };
        ensure(pd.value_at(f) == want, || format!("Delta of the dilation at {c:?}"))?;
    }

    let l8 = l8_square();
    let none = search::enumerate_diagonals(&l8, l8.group(), Some(&GroupElement(vec![4])), &budget()).map_err(err)?;
    ensure(none.status.is_complete() && none.diagonals.is_empty(), || {
        format!("L8 has {} suitable diagonals", none.diagonals.len())
    })?;
    let mut all = 0u64;
    search::for_each_diagonal(&l8, l8.group(), None, &budget(), |_| {
        all += 1;
        true
    })
    .map_err(err)?;
    ensure(all == 40320, || format!("L8 has {all} diagonals"))?;

    let d16 = dilation::dilate(&l8, 2).map_err(err)?;
    let cells: Vec<usize> = match suite {
        Suite::Full => (0..256).collect(),
        Suite::Quick => (0..32).map(|k| 8 * k + k % 8).collect(),
    };
    for &f in &cells {
        let c = d16.coords_of(f);
        match search::transversal_through(&d16, &c, &budget()).map_err(err)? {
            search::Through::Found(t) => {
                d16.check_transversal(&t).map_err(err)?;
                ensure(t.contains_coords(&c), || format!("witness misses {c:?}"))?;
            }
            other => return Err(format!("no transversal through {c:?}: {other:?}")),
        }
    }
    Ok(format!(
        "L8: 0 of 40320 diagonals suitable; 2-dilation has transversals through {} checked cells",
        cells.len()
    ))
}

fn c13() -> Check {
    let mut squares = 0;
    for n in 1..=4 {
        for cells in oracle::latin_squares(n) {
            let h = Hypercube::from_symbols(2, z(n)?, cells).map_err(err)?;
            let want = oracle::brute_force_transversals(&h);
            for opts in [TransversalOptions::default(), TransversalOptions { delta_prune: false }] {
                let e = search::enumerate_transversals_with(&h, opts, &budget()).map_err(err)?;
                ensure(e.status.is_complete() && e.diagonals.len() as u64 == want, || {
                    format!("square {:?}: {} vs {want}", h.to_lhc(), e.diagonals.len())
                })?;
                let distinct: BTreeSet<BTreeSet<Vec<usize>>> = e.diagonals.iter().map(coord_set).collect();
                ensure(distinct.len() == e.diagonals.len(), || "duplicate transversal".into())?;
            }
            squares += 1;
        }
    }
    let mut cubes = Vec::new();
    for n in 2..=3 {
        for d in 2..=4 {
            let h = Hypercube::cyclic(&z(n)?, d).map_err(err)?;
            let want = oracle::brute_force_transversals(&h);
            let e = search::enumerate_transversals(&h, &budget()).map_err(err)?;
            ensure(e.diagonals.len() as u64 == want, || format!("Z{n}^{d}: {} vs {want}", e.diagonals.len()))?;
            cubes.push(format!("Z{n}^{d}={want}"));
        }
    }
    Ok(format!("{squares} squares of order <= 4 agree; {}", cubes.join(", ")))
}

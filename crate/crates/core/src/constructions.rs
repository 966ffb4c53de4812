//! Explicit hypercubes and witness diagonals.
//!
//! Every constructor validates its output: hypercubes are checked to be
//! Latin, witness tables are checked to be transversals of the hypercube
//! they belong to. Literal squares carry a fingerprint that is compared on
//! every build.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::hypercube::{product, Diagonal, Entry, Hypercube};

/// A named construction with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum ConstructionId {
    /// Cayley hypercube of a group given as e.g. `Z6` or `Z2xZ4`.
    Cyclic { group: String, d: usize },
    ConfirmedBachelor { n: usize, d: usize },
    ThirdSpecies44,
    TurnedCyclic { n: usize, d: usize },
    Ord8,
    Ord6m { m: usize },
    Z6Isotope,
    L8,
}

impl ConstructionId {
    pub fn build(&self) -> Result<Hypercube> {
        match self {
            ConstructionId::Cyclic { group, d } => Hypercube::cyclic(&group.parse::<AbelianGroup>()?, *d),
            ConstructionId::ConfirmedBachelor { n, d } => confirmed_bachelor(*n, *d),
            ConstructionId::ThirdSpecies44 => Ok(third_species_44()),
            ConstructionId::TurnedCyclic { n, d } => turned_cyclic(*n, *d),
            ConstructionId::Ord8 => Ok(ord8_square()),
            ConstructionId::Ord6m { m } => ord6m_square(*m),
            ConstructionId::Z6Isotope => Ok(z6_isotope_square()),
            ConstructionId::L8 => Ok(l8_square()),
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionId::Cyclic { group, d } => write!(f, "cyclic({group},{d})"),
            ConstructionId::ConfirmedBachelor { n, d } => write!(f, "confirmed-bachelor({n},{d})"),
            ConstructionId::ThirdSpecies44 => write!(f, "third-species-44"),
            ConstructionId::TurnedCyclic { n, d } => write!(f, "turned-cyclic({n},{d})"),
            ConstructionId::Ord8 => write!(f, "ord8"),
            ConstructionId::Ord6m { m } => write!(f, "ord6m({m})"),
            ConstructionId::Z6Isotope => write!(f, "z6-isotope"),
            ConstructionId::L8 => write!(f, "l8"),
        }
    }
}

fn zn(n: usize) -> Result<AbelianGroup> {
    AbelianGroup::cyclic(n)
}

fn md(v: i64, n: usize) -> usize {
    v.rem_euclid(n as i64) as usize
}

fn latin(h: Hypercube, what: &str) -> Result<Hypercube> {
    if !h.is_latin() {
        return Err(Error::Validation(format!("{what} is not Latin")));
    }
    Ok(h)
}

fn witness(h: &Hypercube, rows: Vec<(Vec<i64>, i64)>, what: &str) -> Result<Diagonal> {
    let n = h.order();
    let diag = Diagonal::new(
        rows.into_iter()
            .map(|(c, s)| Entry::new(c.into_iter().map(|x| md(x, n)).collect(), md(s, n)))
            .collect(),
    );
    h.check_transversal(&diag)
        .map_err(|e| Error::Validation(format!("{what}: {e}")))?;
    Ok(diag)
}

fn bachelor_params(n: usize, d: usize) -> Result<()> {
    if d < 4 || !d.is_multiple_of(2) || n == 0 || !n.is_multiple_of(4) {
        return Err(Error::invalid(format!(
            "needs even d > 2 and n divisible by 4, got n={n}, d={d}"
        )));
    }
    Ok(())
}

/// Start from `Z_n^d`, set the symbol of `x` to `s - (m - 1)` (m odd) or
/// `s - m` (m even), where `s = x_1 + ... + x_d` and `m` counts odd
/// coordinates, then swap symbols 0 and 1 inside `{0,1}^d`.
pub fn confirmed_bachelor(n: usize, d: usize) -> Result<Hypercube> {
    bachelor_params(n, d)?;
    let h = Hypercube::from_fn(d, zn(n)?, |x| {
        let s: i64 = x.iter().map(|&v| v as i64).sum();
        let m = x.iter().filter(|&&v| v % 2 == 1).count() as i64;
        let sym = md(if m % 2 == 1 { s - (m - 1) } else { s - m }, n);
        if x.iter().all(|&v| v <= 1) {
            1 - sym
        } else {
            sym
        }
    })?;
    latin(h, "confirmed bachelor")
}

/// The switched subcube `{0,1}^d`, whose cells lie on no transversal of
/// [`confirmed_bachelor`].
pub fn switched_subcube(d: usize) -> Vec<Vec<usize>> {
    product(&vec![vec![0, 1]; d]).collect()
}

/// A transversal of [`confirmed_bachelor`] that avoids the switched subcube.
pub fn atran_transversal(n: usize, d: usize) -> Result<Diagonal> {
    bachelor_params(n, d)?;
    let h = confirmed_bachelor(n, d)?;
    let half = (n / 2) as i64;
    let pairs = (d - 4) / 2;
    let mut rows = Vec::with_capacity(n);
    for i in (0..=half - 2).step_by(2) {
        let rep = |a: i64, b: i64| (0..pairs).flat_map(move |_| [a, b]);
        let row = |head: [i64; 4], tail: (i64, i64), sym: i64| {
            let mut c = head.to_vec();
            c.extend(rep(tail.0, tail.1));
            (c, sym)
        };
        rows.push(row([3 + i, 1 + i, 1 + i, 1 - i], (i, -i), 2 + 2 * i));
        rows.push(row([half + 3 + i, half + 1 + i, -1 - i, 2 + i], (1 + i, 1 - i), 3 + 2 * i));
        rows.push(row([2 + i, -i, i, 3 + i], (half + 1 + i, half + 1 - i), 5 + 2 * i));
        rows.push(row([-i, 2 + i, half + i, half + 2 + i], (half + i, half - i), 4 + 2 * i));
    }
    let t = witness(&h, rows, "transversal table")?;
    if t.entries.iter().any(|e| e.coords.iter().all(|&v| v <= 1)) {
        return Err(Error::Validation("transversal table meets the switched subcube".into()));
    }
    Ok(t)
}

/// `Z_4^4` with 2 added where `i + j = k = l (mod 2)`, then symbols 0 and
/// 3 swapped wherever `{k, l}` lies inside `{2, 3}`.
pub fn third_species_44() -> Hypercube {
    let h = Hypercube::from_fn(4, zn(4).expect("Z4"), |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let mut s = (i + j + k + l) % 4;
        if (i + j) % 2 == k % 2 && k % 2 == l % 2 {
            s = (s + 2) % 4;
        }
        if k >= 2 && l >= 2 {
            s = match s {
                0 => 3,
                3 => 0,
                s => s,
            };
        }
        s
    })
    .expect("4^4 hypercube");
    latin(h, "third species").expect("third species cube is Latin")
}

/// The 32 entries of [`third_species_44`] that lie on no transversal.
pub fn swit03_entries() -> Vec<Entry> {
    let mut out = Vec::with_capacity(32);
    for i in 0..4usize {
        for (k, l) in [(2, 2), (3, 3)] {
            out.push(Entry::new(vec![i, (7 - i) % 4, k, l], 0));
            out.push(Entry::new(vec![i, (6 - i) % 4, k, l], 3));
        }
        for (k, l) in [(2, 3), (3, 2)] {
            out.push(Entry::new(vec![i, (7 - i) % 4, k, l], 3));
            out.push(Entry::new(vec![i, (6 - i) % 4, k, l], 0));
        }
    }
    out.sort();
    out
}

/// A transversal of [`third_species_44`].
pub fn third_species_transversal() -> Diagonal {
    witness(
        &third_species_44(),
        vec![
            (vec![3, 1, 2, 0], 0),
            (vec![0, 2, 0, 3], 1),
            (vec![2, 0, 3, 1], 2),
            (vec![1, 3, 1, 2], 3),
        ],
        "listed transversal",
    )
    .expect("listed transversal is valid")
}

/// Replaces the order-2 subhypercube with cells `corner + b * offsets`
/// (`b` in `{0,1}^d`, coordinates mod n) by the other order-2 hypercube on
/// the same two symbols.
pub fn turn_subcube(h: &Hypercube, corner: &[usize], offsets: &[usize]) -> Result<Hypercube> {
    let (n, d) = (h.order(), h.dim());
    if corner.len() != d || offsets.len() != d {
        return Err(Error::invalid(format!("corner and offsets need {d} coordinates")));
    }
    if corner.iter().any(|&c| c >= n) || offsets.iter().any(|&o| o % n == 0) {
        return Err(Error::invalid("corner must be a cell and offsets nonzero mod n"));
    }
    let mut even = None;
    let mut odd = None;
    let mut cells = Vec::with_capacity(1 << d);
    for b in switched_subcube(d) {
        let coords: Vec<usize> = (0..d).map(|a| (corner[a] + b[a] * offsets[a]) % n).collect();
        let sym = h.get(&coords);
        let slot = if b.iter().sum::<usize>() % 2 == 0 { &mut even } else { &mut odd };
        match *slot {
            None => *slot = Some(sym),
            Some(s) if s == sym => {}
            Some(_) => {
                return Err(Error::invalid(
                    "selection is not an order-2 subhypercube on two symbols",
                ))
            }
        }
        cells.push((h.flat_index(&coords), sym));
    }
    let (a, b) = (even.unwrap(), odd.unwrap());
    if a == b {
        return Err(Error::invalid("selection uses a single symbol"));
    }
    h.with_cells(cells.into_iter().map(|(f, s)| (f, if s == a { b } else { a })))
}

fn turned_params(n: usize, d: usize) -> Result<()> {
    if n <= 2 || !n.is_multiple_of(2) || d < 2 || !d.is_multiple_of(2) {
        return Err(Error::invalid(format!("needs even n > 2 and even d, got n={n}, d={d}")));
    }
    Ok(())
}

/// `Z_n^d` with `n/2` added to every symbol in `{0, n/2}^d`.
pub fn turned_cyclic(n: usize, d: usize) -> Result<Hypercube> {
    turned_params(n, d)?;
    let h = Hypercube::from_fn(d, zn(n)?, |x| {
        let s = x.iter().sum::<usize>() % n;
        if x.iter().all(|&v| v == 0 || v == n / 2) {
            (s + n / 2) % n
        } else {
            s
        }
    })?;
    latin(h, "turned cyclic")
}

/// The vectors `{0, n/2}^d`.
pub fn half_vectors(n: usize, d: usize) -> Vec<Vec<usize>> {
    product(&vec![vec![0, n / 2]; d]).collect()
}

/// A transversal of [`turned_cyclic`] through the all-zero cell.
pub fn btran_transversal(n: usize, d: usize) -> Result<Diagonal> {
    turned_params(n, d)?;
    let h = turned_cyclic(n, d)?;
    let pairs = (d - 2) / 2;
    let mut rows = vec![(vec![0i64; d], (n / 2) as i64)];
    for i in 1..n as i64 {
        let second = if i < (n / 2) as i64 { -2 * i } else { -1 - 2 * i };
        let sym = if i < (n / 2) as i64 { -i } else { -1 - i };
        let mut c = vec![i, second];
        c.extend((0..pairs).flat_map(|_| [i, -i]));
        rows.push((c, sym));
    }
    witness(&h, rows, "transversal table")
}

/// Translates of the transversal `t` by each vector, read off `h` and
/// validated as transversals.
pub fn translated_transversals(h: &Hypercube, t: &Diagonal, vectors: &[Vec<usize>]) -> Result<Vec<Diagonal>> {
    h.check_transversal(t)?;
    let n = h.order();
    vectors
        .iter()
        .map(|v| {
            if v.len() != h.dim() {
                return Err(Error::invalid(format!("vector {v:?} has wrong length")));
            }
            let diag = Diagonal::new(
                t.entries
                    .iter()
                    .map(|e| {
                        let c: Vec<usize> = e.coords.iter().zip(v).map(|(x, y)| (x + y) % n).collect();
                        let s = h.get(&c);
                        Entry::new(c, s)
                    })
                    .collect(),
            );
            h.check_transversal(&diag)
                .map_err(|e| Error::Validation(format!("translate by {v:?}: {e}")))?;
            Ok(diag)
        })
        .collect()
}

fn literal(rows: &[[usize; 8]], fingerprint: u64, what: &str) -> Hypercube {
    let cells: Vec<usize> = rows.iter().flatten().copied().collect();
    square_from(cells, 8, fingerprint, what)
}

fn square_from(cells: Vec<usize>, n: usize, fingerprint: u64, what: &str) -> Hypercube {
    let h = Hypercube::from_symbols(2, zn(n).expect("cyclic group"), cells).expect("square data");
    assert_eq!(h.fingerprint(), fingerprint, "{what} data corrupted");
    latin(h, what).expect("literal square is Latin")
}

const ORD8: [[usize; 8]; 8] = [
    [0, 1, 3, 4, 5, 6, 7, 2],
    [3, 4, 2, 6, 7, 5, 1, 0],
    [2, 3, 4, 5, 6, 7, 0, 1],
    [1, 2, 5, 3, 4, 0, 6, 7],
    [4, 5, 6, 7, 0, 1, 2, 3],
    [5, 6, 7, 0, 1, 2, 3, 4],
    [6, 7, 0, 1, 2, 3, 4, 5],
    [7, 0, 1, 2, 3, 4, 5, 6],
];

const L8: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 4, 5, 6, 7, 0, 3, 2],
    [2, 3, 4, 5, 6, 7, 0, 1],
    [3, 6, 7, 0, 1, 2, 5, 4],
    [4, 5, 6, 7, 0, 1, 2, 3],
    [5, 0, 1, 2, 3, 4, 7, 6],
    [6, 7, 0, 1, 2, 3, 4, 5],
    [7, 2, 3, 4, 5, 6, 1, 0],
];

const Z6_ISOTOPE: [[usize; 6]; 6] = [
    [0, 1, 2, 3, 5, 4],
    [1, 2, 3, 5, 4, 0],
    [2, 3, 5, 4, 0, 1],
    [3, 5, 4, 0, 1, 2],
    [5, 4, 0, 1, 2, 3],
    [4, 0, 1, 2, 3, 5],
];

const ORD8_FINGERPRINT: u64 = 0x01ecc61d2def4f9e;
const L8_FINGERPRINT: u64 = 0x4cc986a7e339c3de;
const Z6_FINGERPRINT: u64 = 0x0c77ff8c00d99984;

/// An order-8 square in which every transversal uses one of two cells of row 1.
pub fn ord8_square() -> Hypercube {
    literal(&ORD8, ORD8_FINGERPRINT, "order-8 square")
}

fn square_diagonal(h: &Hypercube, cells: &[(usize, usize)]) -> Diagonal {
    Diagonal::new(cells.iter().map(|&(r, c)| h.entry(&[r, c])).collect())
}

/// Two disjoint transversals of [`ord8_square`].
pub fn ord8_transversals() -> [Diagonal; 2] {
    let h = ord8_square();
    let a = square_diagonal(&h, &[(0, 0), (1, 2), (2, 7), (3, 4), (4, 3), (5, 1), (6, 5), (7, 6)]);
    let b = square_diagonal(&h, &[(0, 1), (1, 5), (2, 0), (3, 7), (4, 2), (5, 3), (6, 6), (7, 4)]);
    for t in [&a, &b] {
        h.check_transversal(t).expect("highlighted transversal");
    }
    [a, b]
}

/// The two cells of [`ord8_square`] with Delta value -1.
pub fn ord8_marked_cells() -> Vec<Vec<usize>> {
    vec![vec![1, 2], vec![1, 5]]
}

/// `Z_{6m}` as a square with nine cells replaced so that the Delta support
/// is confined to rows `0, m, 2m`.
pub fn ord6m_square(m: usize) -> Result<Hypercube> {
    if m == 0 || 6 * m > crate::hypercube::MAX_ORDER {
        return Err(Error::invalid(format!("m must lie in 1..={}, got {m}", crate::hypercube::MAX_ORDER / 6)));
    }
    let n = 6 * m;
    let g = zn(n)?;
    let h = Hypercube::cyclic(&g, 2)?;
    let replace = [
        (0, 0, m),
        (0, m, 2 * m),
        (m, 0, 2 * m),
        (m, m, m),
        (2 * m, 0, 0),
        (0, 2 * m, 4 * m),
        (2 * m, 2 * m, 2 * m),
        (0, 4 * m, 0),
        (2 * m, 4 * m, 4 * m),
    ];
    let h = h.with_cells(replace.iter().map(|&(r, c, s)| (r * n + c, s)))?;
    latin(h, "order-6m square")
}

/// The two cells of [`ord6m_square`] that every suitable diagonal meets.
pub fn ord6m_marked_cells(m: usize) -> Vec<Vec<usize>> {
    vec![vec![m, 0], vec![m, m]]
}

/// Two disjoint transversals of `ord6m_square(1)`.
pub fn ord6_transversals() -> [Diagonal; 2] {
    let h = ord6m_square(1).expect("m = 1");
    let a = square_diagonal(&h, &[(0, 2), (1, 0), (2, 5), (3, 3), (4, 1), (5, 4)]);
    let b = square_diagonal(&h, &[(0, 3), (1, 1), (2, 0), (3, 2), (4, 4), (5, 5)]);
    for t in [&a, &b] {
        h.check_transversal(t).expect("highlighted transversal");
    }
    [a, b]
}

/// The Cayley table of `Z_6` with symbols 4 and 5 exchanged.
pub fn z6_isotope_square() -> Hypercube {
    let cells: Vec<usize> = Z6_ISOTOPE.iter().flatten().copied().collect();
    square_from(cells, 6, Z6_FINGERPRINT, "isotope of Z6")
}

/// A diagonal of [`z6_isotope_square`] with Delta sum 3.
pub fn z6_marked_diagonal() -> Diagonal {
    let h = z6_isotope_square();
    let d = square_diagonal(&h, &[(0, 5), (1, 4), (2, 3), (3, 0), (4, 2), (5, 1)]);
    h.check_complete_diagonal(&d).expect("marked diagonal");
    d
}

/// An order-8 square with no diagonal of Delta sum 4.
pub fn l8_square() -> Hypercube {
    literal(&L8, L8_FINGERPRINT, "L8")
}

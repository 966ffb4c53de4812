//! Dense `d`-dimensional hypercubes of order `n`.
//!
//! Cells are stored row-major with the last coordinate varying fastest, so
//! the flat index of `(x_1, ..., x_d)` is `sum x_i n^(d-i)`. Coordinates and
//! symbols always live in `0..n`; the group labeling used for Delta analysis
//! travels with the array but does not affect storage.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::AbelianGroup;

/// Largest order handled by the bitmask-based routines.
pub const MAX_ORDER: usize = 64;

/// A coordinate tuple together with the symbol stored there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
pub struct Entry {
    pub coords: Vec<usize>,
    pub symbol: usize,
}

impl Entry {
    pub fn new(coords: Vec<usize>, symbol: usize) -> Self {
        Entry { coords, symbol }
    }

    /// True when the two entries share a hyperplane.
    pub fn collides(&self, other: &Entry) -> bool {
        self.coords.iter().zip(&other.coords).any(|(a, b)| a == b)
    }
}

/// A (possibly partial) diagonal: entries pairwise in distinct hyperplanes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub struct Diagonal {
    pub entries: Vec<Entry>,
}

impl Diagonal {
    pub fn new(mut entries: Vec<Entry>) -> Self {
        entries.sort();
        Diagonal { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_complete(&self, n: usize) -> bool {
        self.entries.len() == n
    }

    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.symbol)
    }

    pub fn contains_coords(&self, coords: &[usize]) -> bool {
        self.entries.iter().any(|e| e.coords == coords)
    }

    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].symbol == w[1].symbol)
    }

    pub fn coord_set(&self) -> BTreeSet<Vec<usize>> {
        self.entries.iter().map(|e| e.coords.clone()).collect()
    }

    pub fn is_disjoint_from(&self, other: &Diagonal) -> bool {
        let mine: HashSet<&Vec<usize>> = self.entries.iter().map(|e| &e.coords).collect();
        other.entries.iter().all(|e| !mine.contains(&e.coords))
    }
}

/// Fixed coordinates of a plane; the remaining axes are free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaneSpec {
    pub fixed: BTreeMap<usize, usize>,
}

impl PlaneSpec {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(fixed: I) -> Self {
        PlaneSpec {
            fixed: fixed.into_iter().collect(),
        }
    }

    /// The line through `coords` along `axis`.
    pub fn line_through(coords: &[usize], axis: usize) -> Self {
        PlaneSpec::new(
            coords
                .iter()
                .enumerate()
                .filter(|&(a, _)| a != axis)
                .map(|(a, &x)| (a, x)),
        )
    }

    pub fn free_axes(&self, d: usize) -> Vec<usize> {
        (0..d).filter(|a| !self.fixed.contains_key(a)).collect()
    }
}

/// A restriction of a hypercube to a product of index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubArray {
    pub index_sets: Vec<Vec<usize>>,
    /// Symbols in row-major order over the index sets.
    pub symbols: Vec<usize>,
}

impl SubArray {
    pub fn shape(&self) -> Vec<usize> {
        self.index_sets.iter().map(Vec::len).collect()
    }

    pub fn distinct_symbols(&self) -> BTreeSet<usize> {
        self.symbols.iter().copied().collect()
    }

    /// Reinterprets the subarray as a hypercube of order `k`, relabeling
    /// symbols through `relabel`. All index sets must have size `k`.
    pub fn to_hypercube(&self, relabel: impl Fn(usize) -> usize) -> Result<Hypercube> {
        let k = self.index_sets.first().map_or(0, Vec::len);
        if self.index_sets.iter().any(|s| s.len() != k) {
            return Err(Error::invalid("subarray is not cubical"));
        }
        let cells = self.symbols.iter().map(|&s| relabel(s)).collect();
        Hypercube::from_symbols(self.index_sets.len(), AbelianGroup::cyclic(k)?, cells)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypercube {
    d: usize,
    n: usize,
    group: AbelianGroup,
    cells: Vec<u16>,
    latin: bool,
}

impl Hypercube {
    /// Builds a hypercube from row-major symbols; the Latin flag is computed.
    pub fn from_symbols(d: usize, group: AbelianGroup, cells: Vec<usize>) -> Result<Self> {
        let n = group.order();
        check_shape(d, n)?;
        let expected = n.pow(d as u32);
        if cells.len() != expected {
            return Err(Error::invalid(format!(
                "expected {expected} cells for d={d}, n={n}, found {}",
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&s| s >= n) {
            return Err(Error::invalid(format!("symbol {bad} out of range 0..{n}")));
        }
        let mut h = Hypercube {
            d,
            n,
            group,
            cells: cells.into_iter().map(|s| s as u16).collect(),
            latin: false,
        };
        h.latin = h.is_latin();
        Ok(h)
    }

    /// Builds a hypercube by evaluating `f` at every coordinate tuple.
    pub fn from_fn(d: usize, group: AbelianGroup, mut f: impl FnMut(&[usize]) -> usize) -> Result<Self> {
        let n = group.order();
        check_shape(d, n)?;
        let mut coords = vec![0usize; d];
        let mut cells = Vec::with_capacity(n.pow(d as u32));
        loop {
            cells.push(f(&coords));
            if !advance(&mut coords, n) {
                break;
            }
        }
        Self::from_symbols(d, group, cells)
    }

    /// The Cayley hypercube `G^d`: the symbol at `x` is `x_1 + ... + x_d`.
    pub fn cyclic(group: &AbelianGroup, d: usize) -> Result<Self> {
        Self::from_fn(d, group.clone(), |x| group.sum_idx(x.iter().copied()))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Same array under a different group labeling of the index set.
    pub fn with_group(&self, group: AbelianGroup) -> Result<Self> {
        if group.order() != self.n {
            return Err(Error::invalid(format!(
                "group {group} has order {}, hypercube has order {}",
                group.order(),
                self.n
            )));
        }
        Ok(Hypercube {
            group,
            ..self.clone()
        })
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().map(|&s| s as usize)
    }

    #[inline]
    pub fn symbol_at(&self, flat: usize) -> usize {
        self.cells[flat] as usize
    }

    pub fn get(&self, coords: &[usize]) -> usize {
        self.symbol_at(self.flat_index(coords))
    }

    #[inline]
    pub fn flat_index(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &x| acc * self.n + x)
    }

    pub fn coords_of(&self, mut flat: usize) -> Vec<usize> {
        let mut coords = vec![0; self.d];
        for c in coords.iter_mut().rev() {
            *c = flat % self.n;
            flat /= self.n;
        }
        coords
    }

    pub fn entry(&self, coords: &[usize]) -> Entry {
        Entry::new(coords.to_vec(), self.get(coords))
    }

    pub fn entry_at(&self, flat: usize) -> Entry {
        Entry::new(self.coords_of(flat), self.symbol_at(flat))
    }

    pub fn entries(&self) -> impl Iterator<Item = Entry> + '_ {
        (0..self.cells.len()).map(|i| self.entry_at(i))
    }

    fn stride(&self, axis: usize) -> usize {
        self.n.pow((self.d - 1 - axis) as u32)
    }

    /// Recomputes Latinness: every line holds every symbol once.
    pub fn is_latin(&self) -> bool {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        for axis in 0..self.d {
            let stride = self.stride(axis);
            for start in 0..self.cells.len() {
                if !(start / stride).is_multiple_of(self.n) {
                    continue;
                }
                let mut mask = 0u64;
                for k in 0..self.n {
                    mask |= 1u64 << self.cells[start + k * stride];
                }
                if mask != full {
                    return false;
                }
            }
        }
        true
    }

    /// The Latin flag computed when the array was built.
    pub fn latin_validated(&self) -> bool {
        self.latin
    }

    pub fn require_latin(&self) -> Result<()> {
        if self.latin {
            Ok(())
        } else {
            Err(Error::NotLatin(format!(
                "d={}, n={} array has a line with a repeated symbol",
                self.d, self.n
            )))
        }
    }

    /// Entries of the plane described by `spec`, in row-major order.
    pub fn plane(&self, spec: &PlaneSpec) -> Result<Vec<Entry>> {
        for (&axis, &value) in &spec.fixed {
            if axis >= self.d || value >= self.n {
                return Err(Error::invalid(format!(
                    "fixed coordinate {axis}={value} outside d={}, n={}",
                    self.d, self.n
                )));
            }
        }
        let sets: Vec<Vec<usize>> = (0..self.d)
            .map(|a| match spec.fixed.get(&a) {
                Some(&v) => vec![v],
                None => (0..self.n).collect(),
            })
            .collect();
        Ok(product(&sets).map(|c| self.entry(&c)).collect())
    }

    /// The `n` entries of a line, ordered along its free axis.
    pub fn line(&self, spec: &PlaneSpec) -> Result<Vec<Entry>> {
        let free = spec.free_axes(self.d);
        if free.len() != 1 || spec.fixed.len() != self.d - 1 {
            return Err(Error::invalid(format!(
                "a line needs exactly one free axis, spec leaves {}",
                free.len()
            )));
        }
        self.plane(spec)
    }

    pub fn subcube(&self, index_sets: &[Vec<usize>]) -> Result<SubArray> {
        if index_sets.len() != self.d {
            return Err(Error::invalid(format!(
                "expected {} index sets, found {}",
                self.d,
                index_sets.len()
            )));
        }
        for set in index_sets {
            if set.is_empty() {
                return Err(Error::invalid("empty index set"));
            }
            if let Some(x) = set.iter().find(|&&x| x >= self.n) {
                return Err(Error::invalid(format!("index {x} out of range 0..{}", self.n)));
            }
        }
        Ok(SubArray {
            index_sets: index_sets.to_vec(),
            symbols: product(index_sets).map(|c| self.get(&c)).collect(),
        })
    }

    /// Applies `d` coordinate permutations followed by a symbol permutation:
    /// the result holds `perms[d][H(x)]` at `(perms[0][x_1], ..., perms[d-1][x_d])`.
    pub fn apply_isotopy(&self, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != self.d + 1 {
            return Err(Error::invalid(format!(
                "isotopy needs {} permutations, found {}",
                self.d + 1,
                perms.len()
            )));
        }
        for p in perms {
            if !is_permutation(p, self.n) {
                return Err(Error::invalid(format!("{p:?} is not a permutation of 0..{}", self.n)));
            }
        }
        let mut cells = vec![0usize; self.cells.len()];
        let mut target = vec![0usize; self.d];
        for flat in 0..self.cells.len() {
            let coords = self.coords_of(flat);
            for (a, &x) in coords.iter().enumerate() {
                target[a] = perms[a][x];
            }
            cells[self.flat_index(&target)] = perms[self.d][self.symbol_at(flat)];
        }
        Self::from_symbols(self.d, self.group.clone(), cells)
    }

    /// Number of cells at which two same-shape hypercubes differ.
    pub fn cells_differing(&self, other: &Hypercube) -> usize {
        self.cells.iter().zip(&other.cells).filter(|(a, b)| a != b).count()
    }

    /// Returns a copy with the given cells overwritten (no Latin requirement).
    pub fn with_cells(&self, updates: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut cells: Vec<usize> = self.symbols().collect();
        for (flat, s) in updates {
            if flat >= cells.len() || s >= self.n {
                return Err(Error::invalid(format!("cell update ({flat}, {s}) out of range")));
            }
            cells[flat] = s;
        }
        Self::from_symbols(self.d, self.group.clone(), cells)
    }

    /// Checks that `diag` is a (partial) diagonal of this hypercube.
    pub fn check_diagonal(&self, diag: &Diagonal) -> Result<()> {
        if diag.len() > self.n {
            return Err(Error::NotADiagonal(format!("{} entries exceed order {}", diag.len(), self.n)));
        }
        for e in &diag.entries {
            if e.coords.len() != self.d || e.coords.iter().any(|&x| x >= self.n) {
                return Err(Error::NotADiagonal(format!("{:?} is not a cell", e.coords)));
            }
            if self.get(&e.coords) != e.symbol {
                return Err(Error::NotADiagonal(format!(
                    "cell {:?} holds {}, entry claims {}",
                    e.coords,
                    self.get(&e.coords),
                    e.symbol
                )));
            }
        }
        for (i, a) in diag.entries.iter().enumerate() {
            for b in &diag.entries[i + 1..] {
                if a.collides(b) {
                    return Err(Error::NotADiagonal(format!(
                        "{:?} and {:?} share a hyperplane",
                        a.coords, b.coords
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_complete_diagonal(&self, diag: &Diagonal) -> Result<()> {
        self.check_diagonal(diag)?;
        if !diag.is_complete(self.n) {
            return Err(Error::NotADiagonal(format!(
                "{} entries, a complete diagonal has {}",
                diag.len(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn check_transversal(&self, diag: &Diagonal) -> Result<()> {
        self.check_complete_diagonal(diag)
            .map_err(|e| Error::NotATransversal(e.to_string()))?;
        let symbols: BTreeSet<usize> = diag.symbols().collect();
        if symbols.len() != self.n {
            return Err(Error::NotATransversal(format!(
                "only {} distinct symbols",
                symbols.len()
            )));
        }
        Ok(())
    }

    pub fn is_transversal(&self, diag: &Diagonal) -> bool {
        self.check_transversal(diag).is_ok()
    }

    /// Builds a diagonal from coordinate tuples, reading symbols from `self`.
    pub fn diagonal_from_coords(&self, coords: &[Vec<usize>]) -> Result<Diagonal> {
        for c in coords {
            if c.len() != self.d || c.iter().any(|&x| x >= self.n) {
                return Err(Error::invalid(format!("{c:?} is not a cell")));
            }
        }
        let diag = Diagonal::new(coords.iter().map(|c| self.entry(c)).collect());
        self.check_diagonal(&diag)?;
        Ok(diag)
    }

    /// Serializes to the `.lhc` text format.
    pub fn to_lhc(&self) -> String {
        let mut out = format!("lhc {} {}\n", self.d, self.n);
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// FNV-1a hash of the `.lhc` text.
    pub fn fingerprint(&self) -> u64 {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.to_lhc().bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
        hash
    }

    /// Parses the `.lhc` text format; the labeling group defaults to `Z_n`.
    pub fn from_lhc(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut cells = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match header {
                None => {
                    let parts: Vec<&str> = line.split_whitespace().collect();
                    let parse_err = |message: &str| Error::Parse {
                        line: lineno,
                        message: message.to_string(),
                    };
                    if parts.len() != 3 || parts[0] != "lhc" {
                        return Err(parse_err("expected header `lhc <d> <n>`"));
                    }
                    let d = parts[1].parse().map_err(|_| parse_err("bad dimension"))?;
                    let n = parts[2].parse().map_err(|_| parse_err("bad order"))?;
                    header = Some((d, n, lineno));
                }
                Some((_, n, _)) => {
                    for tok in line.split_whitespace() {
                        let s: usize = tok.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            message: format!("bad symbol {tok:?}"),
                        })?;
                        if s >= n {
                            return Err(Error::Parse {
                                line: lineno,
                                message: format!("symbol {s} out of range 0..{n}"),
                            });
                        }
                        cells.push(s);
                    }
                }
            }
        }
        let (d, n, hline) = header.ok_or(Error::Parse {
            line: 1,
            message: "missing `lhc <d> <n>` header".into(),
        })?;
        let group = AbelianGroup::cyclic(n).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        check_shape(d, n).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        let expected = n.pow(d as u32);
        if cells.len() != expected {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected {expected} cells, found {}", cells.len()),
            });
        }
        Self::from_symbols(d, group, cells)
    }

    /// Human-readable grid. Cells on `highlight` diagonals are marked with
    /// `*` (first diagonal), `+` (second) and `@` (any further ones).
    /// Dimensions above two are printed as a sequence of 2-dimensional slices.
    pub fn to_grid(&self, highlight: &[&Diagonal]) -> String {
        let marks = ['*', '+', '@'];
        let mut marked: BTreeMap<Vec<usize>, char> = BTreeMap::new();
        for (i, diag) in highlight.iter().enumerate() {
            for e in &diag.entries {
                marked.entry(e.coords.clone()).or_insert(marks[i.min(2)]);
            }
        }
        let width = (self.n - 1).to_string().len();
        let mut out = String::new();
        let square = self.n * self.n;
        for (slice, chunk) in self.cells.chunks(square).enumerate() {
            if self.d > 2 {
                let prefix = &self.coords_of(slice * square)[..self.d - 2];
                let _ = writeln!(out, "slice {prefix:?}");
            }
            for r in 0..self.n {
                let mut parts = Vec::with_capacity(self.n);
                for c in 0..self.n {
                    let flat = slice * square + r * self.n + c;
                    let mark = marked.get(&self.coords_of(flat)).copied().unwrap_or(' ');
                    parts.push(format!("{:>width$}{mark}", chunk[r * self.n + c]));
                }
                out.push_str(parts.join(" ").trim_end());
                out.push('\n');
            }
        }
        out
    }
}

fn check_shape(d: usize, n: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::invalid(format!("dimension must be at least 2, got {d}")));
    }
    if n == 0 || n > MAX_ORDER {
        return Err(Error::invalid(format!("order must lie in 1..={MAX_ORDER}, got {n}")));
    }
    if (n as f64).powi(d as i32) > (1u64 << 28) as f64 {
        return Err(Error::invalid(format!("n^d = {n}^{d} cells is too large")));
    }
    Ok(())
}

/// Odometer increment over `0..n` with the last coordinate fastest.
pub(crate) fn advance(coords: &mut [usize], n: usize) -> bool {
    for c in coords.iter_mut().rev() {
        *c += 1;
        if *c < n {
            return true;
        }
        *c = 0;
    }
    false
}

/// Row-major cartesian product of index sets.
pub(crate) fn product(sets: &[Vec<usize>]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = sets.iter().map(Vec::len).product();
    (0..total).map(move |mut k| {
        let mut out = vec![0; sets.len()];
        for (slot, set) in out.iter_mut().zip(sets).rev() {
            *slot = set[k % set.len()];
            k /= set.len();
        }
        out
    })
}

pub(crate) fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn cyclic_examples() {
        let h = Hypercube::cyclic(&z(2), 2).unwrap();
        assert_eq!(h.symbols().collect::<Vec<_>>(), vec![0, 1, 1, 0]);
        let h = Hypercube::cyclic(&z(4), 4).unwrap();
        assert_eq!(h.get(&[1, 2, 3, 0]), 2);
        let klein: AbelianGroup = "Z2xZ2".parse().unwrap();
        let h = Hypercube::cyclic(&klein, 2).unwrap();
        assert!(h.is_latin());
        // (1,0)+(0,1) = (1,1), encoded as index 3
        assert_eq!(h.get(&[2, 1]), 3);
        for x in 0..4 {
            assert_eq!(h.get(&[x, x]), 0);
        }
    }

    #[test]
    fn latin_detection() {
        assert!(Hypercube::cyclic(&z(6), 3).unwrap().is_latin());
        let bad = Hypercube::from_symbols(2, z(2), vec![0, 0, 1, 1]).unwrap();
        assert!(!bad.is_latin());
        assert!(!bad.latin_validated());
        assert!(bad.require_latin().is_err());
    }

    #[test]
    fn lines_of_z3() {
        let h = Hypercube::cyclic(&z(3), 2).unwrap();
        let row = h.line(&PlaneSpec::new([(0, 0)])).unwrap();
        assert_eq!(row.iter().map(|e| e.symbol).collect::<Vec<_>>(), vec![0, 1, 2]);
        let col = h.line(&PlaneSpec::new([(1, 1)])).unwrap();
        assert_eq!(col.iter().map(|e| e.symbol).collect::<Vec<_>>(), vec![1, 2, 0]);
        assert!(h.line(&PlaneSpec::default()).is_err());
        assert!(h.line(&PlaneSpec::new([(0, 3)])).is_err());
    }

    #[test]
    fn plane_sizes() {
        let h = Hypercube::cyclic(&z(3), 4).unwrap();
        let p = h.plane(&PlaneSpec::new([(0, 1), (2, 2)])).unwrap();
        assert_eq!(p.len(), 9);
        assert!(p.iter().all(|e| e.coords[0] == 1 && e.coords[2] == 2));
    }

    #[test]
    fn subcube_full_is_identity() {
        let h = Hypercube::cyclic(&z(4), 3).unwrap();
        let full: Vec<Vec<usize>> = vec![(0..4).collect(); 3];
        let sub = h.subcube(&full).unwrap();
        assert_eq!(sub.to_hypercube(|s| s).unwrap(), h);
        assert!(h.subcube(&[vec![0], vec![4], vec![0]]).is_err());
        assert!(h.subcube(&[vec![0], vec![], vec![0]]).is_err());
    }

    #[test]
    fn isotopy_identity_and_relabel() {
        let h = Hypercube::cyclic(&z(3), 2).unwrap();
        let id: Vec<usize> = (0..3).collect();
        assert_eq!(h.apply_isotopy(&[id.clone(), id.clone(), id.clone()]).unwrap(), h);
        let rot = vec![1, 2, 0];
        let g = h.apply_isotopy(&[id.clone(), id.clone(), rot]).unwrap();
        assert!(g.is_latin());
        assert!(h.apply_isotopy(&[id.clone(), id.clone(), vec![0, 0, 1]]).is_err());
        assert!(h.apply_isotopy(&[id.clone(), id]).is_err());
    }

    #[test]
    fn lhc_parsing() {
        let h = Hypercube::from_lhc("lhc 2 2\n0 1\n1 0").unwrap();
        assert_eq!(h, Hypercube::cyclic(&z(2), 2).unwrap());
        let h = Hypercube::from_lhc("# comment\nlhc 2 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert_eq!(h, Hypercube::cyclic(&z(3), 2).unwrap());
        let text = "lhc 2 3\n0 1 2\n1 2 0\n2 0 1\n";
        assert_eq!(Hypercube::from_lhc(text).unwrap().to_lhc(), text);
    }

    #[test]
    fn lhc_errors() {
        assert!(matches!(Hypercube::from_lhc(""), Err(Error::Parse { .. })));
        assert!(matches!(Hypercube::from_lhc("lhx 2 2\n0 1 1 0"), Err(Error::Parse { .. })));
        assert!(matches!(Hypercube::from_lhc("lhc 2 2\n0 1 1"), Err(Error::Parse { .. })));
        assert!(matches!(Hypercube::from_lhc("lhc 2 2\n0 1 1 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Hypercube::from_lhc("lhc 1 2\n0 1"), Err(Error::Parse { .. })));
        // a non-Latin array still parses; Latinness is a separate flag
        let h = Hypercube::from_lhc("lhc 2 2\n0 0\n1 1").unwrap();
        assert!(!h.latin_validated());
    }

    #[test]
    fn diagonal_checks() {
        let h = Hypercube::cyclic(&z(3), 2).unwrap();
        let t = h
            .diagonal_from_coords(&[vec![0, 0], vec![1, 1], vec![2, 2]])
            .unwrap();
        assert!(h.is_transversal(&t));
        let c = h
            .diagonal_from_coords(&[vec![0, 0], vec![1, 2], vec![2, 1]])
            .unwrap();
        assert!(c.is_constant());
        assert!(!h.is_transversal(&c));
        assert!(h.diagonal_from_coords(&[vec![0, 0], vec![0, 1]]).is_err());
        let wrong = Diagonal::new(vec![Entry::new(vec![0, 0], 1)]);
        assert!(h.check_diagonal(&wrong).is_err());
    }

    #[test]
    fn grid_marks_highlighted_cells() {
        let h = Hypercube::cyclic(&z(3), 2).unwrap();
        let t = h
            .diagonal_from_coords(&[vec![0, 0], vec![1, 1], vec![2, 2]])
            .unwrap();
        let grid = h.to_grid(&[&t]);
        assert_eq!(grid.lines().next().unwrap(), "0* 1  2");
    }
}

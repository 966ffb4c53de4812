//! Raising the dimension of a Latin hypercube.
//!
//! The `G`-extension of a `d`-dimensional `L` to dimension `d'` is
//! `L'(x_1..x_d') = L(x_1..x_d) + x_{d+1} + ... + x_{d'}`. Projection onto
//! the first `d` coordinates preserves Delta values, and suitable diagonals
//! of `L` lift to transversals of `L'`. The quasigroup variant replaces the
//! addition of one extra coordinate with an arbitrary binary quasigroup.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::delta;
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, GroupElement};
use crate::hypercube::{product, Diagonal, Entry, Hypercube};

fn check_extension(l: &Hypercube, g: &AbelianGroup, d_prime: usize) -> Result<()> {
    if g.order() != l.order() {
        return Err(Error::invalid(format!(
            "group {g} has order {}, hypercube has order {}",
            g.order(),
            l.order()
        )));
    }
    if d_prime <= l.dim() {
        return Err(Error::invalid(format!(
            "target dimension {d_prime} must exceed {}",
            l.dim()
        )));
    }
    l.require_latin()
}

/// The `d'`-dimensional `G`-extension of `l`.
pub fn g_extension(l: &Hypercube, g: &AbelianGroup, d_prime: usize) -> Result<Hypercube> {
    check_extension(l, g, d_prime)?;
    let d = l.dim();
    let n = l.order();
    let h = Hypercube::from_fn(d_prime, g.clone(), |x| {
        let base = x[..d].iter().fold(0, |acc, &v| acc * n + v);
        g.add_idx(l.symbol_at(base), g.sum_idx(x[d..].iter().copied()))
    })?;
    if !h.is_latin() {
        return Err(Error::Validation("extension is not Latin".into()));
    }
    Ok(h)
}

/// A base hypercube together with its `G`-extension.
#[derive(Clone, Debug)]
pub struct ExtensionMap {
    base: Hypercube,
    extension: Hypercube,
    d_prime: usize,
}

impl ExtensionMap {
    pub fn new(l: &Hypercube, g: &AbelianGroup, d_prime: usize) -> Result<Self> {
        let extension = g_extension(l, g, d_prime)?;
        Ok(ExtensionMap {
            base: l.with_group(g.clone())?,
            extension,
            d_prime,
        })
    }

    pub fn base(&self) -> &Hypercube {
        &self.base
    }

    pub fn extension(&self) -> &Hypercube {
        &self.extension
    }

    pub fn d_prime(&self) -> usize {
        self.d_prime
    }

    pub fn group(&self) -> &AbelianGroup {
        self.extension.group()
    }

    /// The entry of the base in the first `d` coordinates of `alpha`.
    pub fn project(&self, alpha: &Entry) -> Result<Entry> {
        self.extension
            .check_diagonal(&Diagonal::new(vec![alpha.clone()]))?;
        Ok(self.base.entry(&alpha.coords[..self.base.dim()]))
    }

    /// All entries of the extension projecting into `s`.
    pub fn fibre(&self, s: &[Entry]) -> Result<Vec<Entry>> {
        let n = self.base.order();
        let free = self.d_prime - self.base.dim();
        let mut out = Vec::with_capacity(s.len() * n.pow(free as u32));
        for e in s {
            if e.coords.len() != self.base.dim()
                || e.coords.iter().any(|&v| v >= n)
                || self.base.get(&e.coords) != e.symbol
            {
                return Err(Error::invalid(format!("{e:?} is not an entry of the base")));
            }
            for tail in product(&vec![(0..n).collect(); free]) {
                let mut c = e.coords.clone();
                c.extend(tail);
                out.push(self.extension.entry(&c));
            }
        }
        Ok(out)
    }
}

/// Permutations `a`, `b` of `G` (as element lists) with `a_i - b_i =
/// sigma_i` for every `i`. Requires `n = |G|` elements summing to zero.
pub fn hall_pair(g: &AbelianGroup, sigmas: &[GroupElement]) -> Result<(Vec<GroupElement>, Vec<GroupElement>)> {
    let idx: Vec<usize> = sigmas.iter().map(|s| g.index_of(s)).collect::<Result<_>>()?;
    let (a, b) = hall_pair_idx(g, &idx)?;
    Ok((
        a.into_iter().map(|x| g.decode(x)).collect(),
        b.into_iter().map(|x| g.decode(x)).collect(),
    ))
}

/// Index form of [`hall_pair`]. Backtracks over `b` choosing the position
/// with the fewest remaining options first.
pub(crate) fn hall_pair_idx(g: &AbelianGroup, sigmas: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    if sigmas.len() != n {
        return Err(Error::invalid(format!("need {n} elements, got {}", sigmas.len())));
    }
    if g.sum_idx(sigmas.iter().copied()) != 0 {
        return Err(Error::invalid("elements do not sum to zero"));
    }
    let mut b = vec![usize::MAX; n];
    let mut used_b = vec![false; n];
    let mut used_a = vec![false; n];
    if !hall_rec(g, sigmas, &mut b, &mut used_b, &mut used_a, n) {
        return Err(Error::Validation("no pair of permutations found".into()));
    }
    let a = (0..n).map(|i| g.add_idx(b[i], sigmas[i])).collect();
    Ok((a, b))
}

fn hall_rec(
    g: &AbelianGroup,
    sigmas: &[usize],
    b: &mut [usize],
    used_b: &mut [bool],
    used_a: &mut [bool],
    left: usize,
) -> bool {
    if left == 0 {
        return true;
    }
    fn options<'a>(
        g: &'a AbelianGroup,
        sigma: usize,
        used_b: &'a [bool],
        used_a: &'a [bool],
    ) -> impl Iterator<Item = usize> + 'a {
        (0..used_b.len()).filter(move |&v| !used_b[v] && !used_a[g.add_idx(v, sigma)])
    }
    let mut pick = None;
    let mut fewest = usize::MAX;
    for i in 0..sigmas.len() {
        if b[i] != usize::MAX {
            continue;
        }
        let k = options(g, sigmas[i], used_b, used_a).count();
        if k < fewest {
            fewest = k;
            pick = Some(i);
        }
    }
    let Some(i) = pick else { return true };
    let choices: Vec<usize> = options(g, sigmas[i], used_b, used_a).collect();
    for v in choices {
        let a = g.add_idx(v, sigmas[i]);
        b[i] = v;
        used_b[v] = true;
        used_a[a] = true;
        if hall_rec(g, sigmas, b, used_b, used_a, left - 1) {
            return true;
        }
        used_b[v] = false;
        used_a[a] = false;
    }
    b[i] = usize::MAX;
    false
}

fn check_suitable(l: &Hypercube, g: &AbelianGroup, d: &Diagonal, d_prime: usize) -> Result<()> {
    l.check_complete_diagonal(d)?;
    if !delta::is_suitable(l, g, d, d_prime)? {
        return Err(Error::NotSuitable(format!(
            "Delta sum {} differs from {}",
            delta::delta_sum(l, g, d)?,
            delta::suitable_target(g, d_prime)?
        )));
    }
    Ok(())
}

/// A transversal of the `d'`-dimensional `G`-extension of `l` projecting
/// onto the suitable diagonal `d`. Extra coordinates other than the last
/// use the identity enumeration of `G`.
pub fn lift_diagonal(l: &Hypercube, d: &Diagonal, g: &AbelianGroup, d_prime: usize) -> Result<Diagonal> {
    lift_diagonal_with(l, d, g, d_prime, None)
}

/// [`lift_diagonal`] with the padding permutations shuffled by `seed`.
pub fn lift_diagonal_with(
    l: &Hypercube,
    d: &Diagonal,
    g: &AbelianGroup,
    d_prime: usize,
    seed: Option<u64>,
) -> Result<Diagonal> {
    check_extension(l, g, d_prime)?;
    check_suitable(l, g, d, d_prime)?;
    let n = l.order();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut coords: Vec<Vec<usize>> = d.entries.iter().map(|e| e.coords.clone()).collect();
    let mut symbols: Vec<usize> = d.entries.iter().map(|e| e.symbol).collect();
    for _ in l.dim() + 1..d_prime {
        let mut perm: Vec<usize> = (0..n).collect();
        if let Some(r) = rng.as_mut() {
            perm.shuffle(r);
        }
        for i in 0..n {
            coords[i].push(perm[i]);
            symbols[i] = g.add_idx(symbols[i], perm[i]);
        }
    }
    let (a, b) = hall_pair_idx(g, &symbols)?;
    for i in 0..n {
        coords[i].push(b[i]);
        symbols[i] = a[i];
    }
    let t = Diagonal::new(coords.into_iter().zip(symbols).map(|(c, s)| Entry::new(c, s)).collect());
    check_lifted(l, g, &t)?;
    Ok(t)
}

/// Symbol of the extension at `coords`, read through the base.
fn extension_symbol(l: &Hypercube, g: &AbelianGroup, coords: &[usize]) -> usize {
    let d = l.dim();
    g.add_idx(l.get(&coords[..d]), g.sum_idx(coords[d..].iter().copied()))
}

/// Validates `t` as a transversal of the extension without building it.
fn check_lifted(l: &Hypercube, g: &AbelianGroup, t: &Diagonal) -> Result<()> {
    let n = l.order();
    if t.len() != n {
        return Err(Error::NotATransversal(format!("{} entries, expected {n}", t.len())));
    }
    let dp = t.entries[0].coords.len();
    for e in &t.entries {
        if e.coords.len() != dp || e.coords.iter().any(|&v| v >= n) {
            return Err(Error::NotATransversal(format!("{:?} is not a cell", e.coords)));
        }
        if extension_symbol(l, g, &e.coords) != e.symbol {
            return Err(Error::NotATransversal(format!("wrong symbol at {:?}", e.coords)));
        }
    }
    for axis in 0..dp {
        let vals: BTreeSet<usize> = t.entries.iter().map(|e| e.coords[axis]).collect();
        if vals.len() != n {
            return Err(Error::NotATransversal(format!("repeated coordinate on axis {axis}")));
        }
    }
    if t.symbols().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::NotATransversal("repeated symbol".into()));
    }
    Ok(())
}

/// Moves every extra coordinate of `t` by `v` (the base coordinates stay).
fn translate(l: &Hypercube, g: &AbelianGroup, t: &Diagonal, v: &[usize]) -> Diagonal {
    let d = l.dim();
    Diagonal::new(
        t.entries
            .iter()
            .map(|e| {
                let mut c = e.coords.clone();
                for (x, &y) in c[d..].iter_mut().zip(v) {
                    *x = g.add_idx(*x, y);
                }
                let s = extension_symbol(l, g, &c);
                Entry::new(c, s)
            })
            .collect(),
    )
}

/// A transversal of the extension through `alpha`, where `alpha` projects
/// onto an entry of the suitable diagonal `d`.
pub fn transversal_through_fibre(
    l: &Hypercube,
    d: &Diagonal,
    g: &AbelianGroup,
    d_prime: usize,
    alpha: &Entry,
) -> Result<Diagonal> {
    let lifted = lift_diagonal(l, d, g, d_prime)?;
    let base_d = l.dim();
    if alpha.coords.len() != d_prime || alpha.coords.iter().any(|&v| v >= l.order()) {
        return Err(Error::invalid(format!("{:?} is not a cell of the extension", alpha.coords)));
    }
    let k = lifted
        .entries
        .iter()
        .position(|e| e.coords[..base_d] == alpha.coords[..base_d])
        .ok_or_else(|| Error::invalid("the entry does not project onto the diagonal"))?;
    let v: Vec<usize> = (base_d..d_prime)
        .map(|a| g.sub_idx(alpha.coords[a], lifted.entries[k].coords[a]))
        .collect();
    let t = translate(l, g, &lifted, &v);
    check_lifted(l, g, &t)?;
    if !t.entries.contains(alpha) {
        return Err(Error::invalid(format!("{alpha:?} is not an entry of the extension")));
    }
    Ok(t)
}

/// `m * n^(d'-d)` pairwise disjoint transversals of the extension, from
/// `m` pairwise disjoint suitable diagonals.
pub fn lift_family(l: &Hypercube, diagonals: &[Diagonal], g: &AbelianGroup, d_prime: usize) -> Result<Vec<Diagonal>> {
    check_extension(l, g, d_prime)?;
    for (i, a) in diagonals.iter().enumerate() {
        for b in &diagonals[i + 1..] {
            if !a.is_disjoint_from(b) {
                return Err(Error::invalid("diagonals are not pairwise disjoint"));
            }
        }
    }
    let n = l.order();
    let shifts: Vec<Vec<usize>> = product(&vec![(0..n).collect(); d_prime - l.dim()]).collect();
    let mut out = Vec::with_capacity(diagonals.len() * shifts.len());
    for d in diagonals {
        let lifted = lift_diagonal(l, d, g, d_prime)?;
        for v in &shifts {
            let t = translate(l, g, &lifted, v);
            check_lifted(l, g, &t)?;
            out.push(t);
        }
    }
    Ok(out)
}

/// The constant diagonals of a Latin square, one per symbol.
pub fn symbol_classes(l: &Hypercube) -> Result<Vec<Diagonal>> {
    if l.dim() != 2 {
        return Err(Error::invalid("symbol classes are defined for squares"));
    }
    l.require_latin()?;
    let mut classes = vec![Vec::new(); l.order()];
    for e in l.entries() {
        classes[e.symbol].push(e);
    }
    Ok(classes.into_iter().map(Diagonal::new).collect())
}

/// A binary quasigroup on `0..n`, stored as its Latin square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasigroup {
    n: usize,
    table: Vec<usize>,
}

impl Quasigroup {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("quasigroup table must be square"));
        }
        let q = Quasigroup {
            n,
            table: rows.into_iter().flatten().collect(),
        };
        q.to_hypercube()?.require_latin()?;
        Ok(q)
    }

    pub fn from_square(h: &Hypercube) -> Result<Self> {
        if h.dim() != 2 {
            return Err(Error::invalid("a quasigroup table is a square"));
        }
        h.require_latin()?;
        Ok(Quasigroup {
            n: h.order(),
            table: h.symbols().collect(),
        })
    }

    /// The Cayley table of `g`.
    pub fn cayley(g: &AbelianGroup) -> Self {
        let n = g.order();
        Quasigroup {
            n,
            table: (0..n * n).map(|f| g.add_idx(f / n, f % n)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// The unique `b` with `a * b = c`.
    pub fn solve_right(&self, a: usize, c: usize) -> usize {
        (0..self.n).find(|&b| self.op(a, b) == c).expect("row of a Latin square")
    }

    pub fn to_hypercube(&self) -> Result<Hypercube> {
        Hypercube::from_symbols(2, AbelianGroup::cyclic(self.n)?, self.table.clone())
    }
}

/// `H_d(x_1..x_d) = H_{d-1}(x_1..x_{d-1}) * x_d`.
pub fn quasi_extend(h: &Hypercube, q: &Quasigroup) -> Result<Hypercube> {
    if h.order() != q.order() {
        return Err(Error::invalid(format!(
            "hypercube order {} differs from quasigroup order {}",
            h.order(),
            q.order()
        )));
    }
    h.require_latin()?;
    let d = h.dim();
    let n = h.order();
    let out = Hypercube::from_fn(d + 1, h.group().clone(), |x| {
        let base = x[..d].iter().fold(0, |acc, &v| acc * n + v);
        q.op(h.symbol_at(base), x[d])
    })?;
    if !out.is_latin() {
        return Err(Error::Validation("quasigroup extension is not Latin".into()));
    }
    Ok(out)
}

/// `n` disjoint transversals of `quasi_extend(h_prev, q)` partitioning the
/// fibre of the constant diagonal `d`, one per cyclic shift `i -> i + r`.
pub fn constant_to_transversal_fibre(h_prev: &Hypercube, q: &Quasigroup, d: &Diagonal) -> Result<Vec<Diagonal>> {
    h_prev.check_complete_diagonal(d)?;
    if !d.is_constant() {
        return Err(Error::invalid("diagonal is not constant"));
    }
    let n = h_prev.order();
    if q.order() != n {
        return Err(Error::invalid("orders differ"));
    }
    let sigma = d.entries[0].symbol;
    Ok((0..n)
        .map(|r| {
            Diagonal::new(
                d.entries
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let tau = (i + r) % n;
                        let mut c = e.coords.clone();
                        c.push(tau);
                        Entry::new(c, q.op(sigma, tau))
                    })
                    .collect(),
            )
        })
        .collect())
}

/// `n` disjoint constant diagonals of `quasi_extend(h_prev, q)`
/// partitioning the fibre of the transversal `t`, one per symbol.
pub fn transversal_to_constant_fibre(h_prev: &Hypercube, q: &Quasigroup, t: &Diagonal) -> Result<Vec<Diagonal>> {
    h_prev.check_transversal(t)?;
    let n = h_prev.order();
    if q.order() != n {
        return Err(Error::invalid("orders differ"));
    }
    Ok((0..n)
        .map(|target| {
            Diagonal::new(
                t.entries
                    .iter()
                    .map(|e| {
                        let mut c = e.coords.clone();
                        c.push(q.solve_right(e.symbol, target));
                        Entry::new(c, target)
                    })
                    .collect(),
            )
        })
        .collect())
}

/// `H(x_1..x_d) = (..((x_1 *_1 x_2) *_2 x_3)..) *_{d-1} x_d`.
pub fn iterated_hypercube(ops: &[Quasigroup]) -> Result<Hypercube> {
    let (first, rest) = ops
        .split_first()
        .ok_or_else(|| Error::invalid("need at least one quasigroup"))?;
    let mut h = first.to_hypercube()?;
    for q in rest {
        h = quasi_extend(&h, q)?;
    }
    Ok(h)
}

/// Decomposition of [`iterated_hypercube`] into constant diagonals (even
/// dimension) or transversals (odd dimension).
pub fn iterated_decomposition(ops: &[Quasigroup]) -> Result<Vec<Diagonal>> {
    let (first, rest) = ops
        .split_first()
        .ok_or_else(|| Error::invalid("need at least one quasigroup"))?;
    let mut h = first.to_hypercube()?;
    let mut parts = symbol_classes(&h)?;
    let mut constant = true;
    for q in rest {
        let mut next = Vec::with_capacity(parts.len() * q.order());
        for p in &parts {
            if constant {
                next.extend(constant_to_transversal_fibre(&h, q, p)?);
            } else {
                next.extend(transversal_to_constant_fibre(&h, q, p)?);
            }
        }
        h = quasi_extend(&h, q)?;
        parts = next;
        constant = !constant;
    }
    Ok(parts)
}

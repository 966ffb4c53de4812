//! Dilations: embedding a `Z_n`-indexed hypercube into `Z_{λn}^d`.
//!
//! The `λ`-dilation `H'` agrees with `Z_{λn}^d` except on cells whose
//! coordinates are all multiples of `λ`, where `H'(λx) = λ H(x)`. Delta
//! values are `λ` times the base values on that embedded copy and zero
//! elsewhere, which lets hitting-set arguments carry over from `H` to `H'`
//! under conditions checked here.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::delta::{self, DeltaProfile};
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, GroupElement};
use crate::hypercube::{Diagonal, Entry, Hypercube, MAX_ORDER};
use crate::search::{self, HittingStrategy, SearchBudget};

/// The embedding of an order-`n` hypercube into its `λ`-dilation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DilationMap {
    pub n: usize,
    pub lambda: usize,
}

impl DilationMap {
    pub fn new(n: usize, lambda: usize) -> Result<Self> {
        if lambda < 2 {
            return Err(Error::invalid(format!("dilation factor must be at least 2, got {lambda}")));
        }
        if n == 0 || lambda * n > MAX_ORDER {
            return Err(Error::invalid(format!("dilated order {} exceeds {MAX_ORDER}", lambda * n)));
        }
        Ok(DilationMap { n, lambda })
    }

    pub fn target_order(&self) -> usize {
        self.lambda * self.n
    }

    pub fn target_group(&self) -> AbelianGroup {
        AbelianGroup::cyclic(self.target_order()).expect("order checked")
    }

    /// `(x; s) -> (λx; λs)`.
    pub fn psi(&self, e: &Entry) -> Entry {
        Entry::new(e.coords.iter().map(|&x| x * self.lambda).collect(), e.symbol * self.lambda)
    }

    pub fn psi_coords(&self, coords: &[usize]) -> Vec<usize> {
        coords.iter().map(|&x| x * self.lambda).collect()
    }

    /// The base cell embedded at `coords`, if every coordinate is a multiple of `λ`.
    pub fn preimage(&self, coords: &[usize]) -> Option<Vec<usize>> {
        coords
            .iter()
            .map(|&x| (x % self.lambda == 0).then_some(x / self.lambda))
            .collect()
    }
}

fn require_cyclic(h: &Hypercube) -> Result<()> {
    if !h.group().is_cyclic_labeling() {
        return Err(Error::invalid(format!(
            "dilation needs a Z_n labeling, hypercube is labeled by {}",
            h.group()
        )));
    }
    h.require_latin()
}

/// The `λ`-dilation of `h`.
pub fn dilate(h: &Hypercube, lambda: usize) -> Result<Hypercube> {
    require_cyclic(h)?;
    let map = DilationMap::new(h.order(), lambda)?;
    let big = map.target_order();
    let out = Hypercube::from_fn(h.dim(), map.target_group(), |x| match map.preimage(x) {
        Some(base) => h.get(&base) * lambda,
        None => x.iter().sum::<usize>() % big,
    })?;
    if !out.is_latin() {
        return Err(Error::Validation("dilation is not Latin".into()));
    }
    Ok(out)
}

/// `Ψ` applied to one entry of `h`.
pub fn psi(h: &Hypercube, e: &Entry, lambda: usize) -> Result<Entry> {
    h.check_diagonal(&Diagonal::new(vec![e.clone()]))?;
    Ok(DilationMap::new(h.order(), lambda)?.psi(e))
}

/// True when `λ(1-d) Z_n^+ = (1-d) Z_{λn}^+`, i.e. `n` even, `d` odd or `λ` odd.
pub fn parity_condition(n: usize, d: usize, lambda: usize) -> bool {
    n.is_multiple_of(2) || d % 2 == 1 || lambda % 2 == 1
}

/// Sizes of the projections `A_i` of the Delta support, against `(d-1)n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct DilrectReport {
    pub sizes: Vec<usize>,
    pub sum: usize,
    pub bound: usize,
    pub holds: bool,
}

pub fn dilrect_condition(h: &Hypercube) -> Result<DilrectReport> {
    require_cyclic(h)?;
    let prof = DeltaProfile::new(h, h.group())?;
    Ok(dilrect_from(&prof, h))
}

fn dilrect_from(prof: &DeltaProfile, h: &Hypercube) -> DilrectReport {
    let sizes = prof.projection_sizes();
    let sum = sizes.iter().sum();
    let bound = (h.dim() - 1) * h.order();
    DilrectReport {
        sizes,
        sum,
        bound,
        holds: sum <= bound,
    }
}

/// A diagonal `E` with `E ∩ X = D`, where `X` is the Delta support and `D`
/// a partial diagonal inside it. Uses the row-filling construction when the
/// projection bound holds, otherwise a search; `Ok(None)` means no such
/// diagonal exists.
pub fn extend_partial_in_x(h: &Hypercube, partial: &[Vec<usize>], budget: &SearchBudget) -> Result<Option<Diagonal>> {
    require_cyclic(h)?;
    let prof = DeltaProfile::new(h, h.group())?;
    let d_part = h.diagonal_from_coords(partial)?;
    for e in &d_part.entries {
        if !prof.in_support(h.flat_index(&e.coords)) {
            return Err(Error::invalid(format!("{:?} is outside the Delta support", e.coords)));
        }
    }
    if dilrect_from(&prof, h).holds {
        let e = fill_rows(h, &prof, &d_part);
        h.check_complete_diagonal(&e)
            .map_err(|err| Error::Validation(format!("row filling: {err}")))?;
        return Ok(Some(e));
    }
    let avoid: Vec<Vec<usize>> = prof
        .support_coords()
        .iter()
        .filter(|c| !d_part.contains_coords(c))
        .cloned()
        .collect();
    search::extend_partial_diagonal(h, partial, &avoid, budget)
}

/// Rows after those of `D` each get one coordinate outside the matching
/// projection, so they avoid the support; remaining slots are filled with
/// unused values in ascending order.
fn fill_rows(h: &Hypercube, prof: &DeltaProfile, part: &Diagonal) -> Diagonal {
    let (n, d) = (h.order(), h.dim());
    let a = prof.projections();
    let mut rows: Vec<Vec<Option<usize>>> = part
        .entries
        .iter()
        .map(|e| e.coords.iter().map(|&x| Some(x)).collect())
        .collect();
    let free = (0..d).flat_map(|j| (0..n).filter(move |x| !a[j].contains(x)).map(move |x| (j, x)));
    for (j, x) in free.take(n - part.len()) {
        let mut row = vec![None; d];
        row[j] = Some(x);
        rows.push(row);
    }
    for j in 0..d {
        let mut used = vec![false; n];
        for r in &rows {
            if let Some(x) = r[j] {
                used[x] = true;
            }
        }
        let mut spare = (0..n).filter(|&x| !used[x]);
        for r in rows.iter_mut() {
            if r[j].is_none() {
                r[j] = spare.next();
            }
        }
    }
    Diagonal::new(
        rows.into_iter()
            .map(|r| h.entry(&r.into_iter().map(|x| x.expect("filled")).collect::<Vec<_>>()))
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum TransferMethod {
    /// The projection bound holds, so every partial diagonal inside the
    /// support extends without meeting the rest of it.
    Dilrect,
    /// No partial diagonal inside the support and outside `U` has the
    /// suitable Delta sum, so no suitable diagonal of the dilation can
    /// avoid `Ψ(U)`.
    PartialDiagonals,
}

/// Which hypotheses were checked and what was concluded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct TransferCertificate {
    pub lambda: usize,
    pub base_order: usize,
    pub dim: usize,
    pub parity_ok: bool,
    /// Every suitable diagonal of the base meets `U` (exhaustively checked).
    pub base_hitting: bool,
    pub dilrect: DilrectReport,
    pub method: Option<TransferMethod>,
    /// Partial diagonals inside `X \ U` with the suitable sum; nonempty only
    /// when neither method applies.
    pub obstructions: Vec<Diagonal>,
    /// `Ψ(U)` in the dilation.
    pub image: Vec<Vec<usize>>,
    /// Every suitable diagonal of the dilation meets `Ψ(U)`.
    pub holds: bool,
    /// Result of an exhaustive check on the dilation, when requested.
    pub cross_check: Option<bool>,
}

/// Certifies that every `(Z_{λn}, d)`-suitable diagonal of the dilation
/// meets `Ψ(U)`, given that every `(Z_n, d)`-suitable diagonal of `h`
/// meets `U`.
pub fn transfer_hitting_set(
    h: &Hypercube,
    u: &[Vec<usize>],
    lambda: usize,
    cross_check: bool,
    budget: &SearchBudget,
) -> Result<TransferCertificate> {
    require_cyclic(h)?;
    let (n, d) = (h.order(), h.dim());
    let map = DilationMap::new(n, lambda)?;
    if !parity_condition(n, d, lambda) {
        return Err(Error::invalid(format!(
            "parity condition fails: n={n} odd, d={d} even, lambda={lambda} even"
        )));
    }
    let g = h.group();
    let target_idx = delta::suitable_target_idx(g, d)?;
    let target = g.decode(target_idx);
    let base = search::hitting_set_check(h, g, &target, u, HittingStrategy::Auto, budget)?;
    let base_hitting = match base.holds {
        Some(b) => b,
        None => return Err(Error::invalid("base hitting-set check ran out of budget")),
    };
    if !base_hitting {
        return Err(Error::NotSuitable(format!(
            "a suitable diagonal of the base avoids U: {:?}",
            base.counterexample.map(|c| c.entries)
        )));
    }

    let prof = DeltaProfile::new(h, g)?;
    let dilrect = dilrect_from(&prof, h);
    let mut obstructions = Vec::new();
    let method = if dilrect.holds {
        Some(TransferMethod::Dilrect)
    } else {
        let u_flat: Vec<usize> = u.iter().map(|c| h.flat_index(c)).collect();
        let cells: Vec<usize> = prof
            .support()
            .iter()
            .copied()
            .filter(|f| !u_flat.contains(f))
            .collect();
        search::partial_diagonals_within(h, &cells, |p| {
            if g.sum_idx(p.iter().map(|&f| prof.value_at(f))) == target_idx {
                obstructions.push(Diagonal::new(p.iter().map(|&f| h.entry_at(f)).collect()));
            }
            true
        });
        obstructions.is_empty().then_some(TransferMethod::PartialDiagonals)
    };

    let image: Vec<Vec<usize>> = u.iter().map(|c| map.psi_coords(c)).collect();
    let cross = if cross_check {
        let big = dilate(h, lambda)?;
        let bg = big.group();
        let t: GroupElement = delta::suitable_target(bg, d)?;
        let r = search::hitting_set_check(&big, bg, &t, &image, HittingStrategy::Auto, budget)?;
        r.holds
    } else {
        None
    };
    Ok(TransferCertificate {
        lambda,
        base_order: n,
        dim: d,
        parity_ok: true,
        base_hitting,
        dilrect,
        method,
        obstructions,
        image,
        holds: method.is_some(),
        cross_check: cross,
    })
}

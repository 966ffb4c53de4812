//! Finite abelian groups given as direct products of cyclic factors.
//!
//! Elements have two interchangeable representations: a component tuple
//! ([`GroupElement`]) and a dense index in `0..order`. The index encoding is
//! mixed radix with the last factor varying fastest, so for a single cyclic
//! factor `Z_n` the index of `k` is `k` itself. Hypercubes store symbols and
//! coordinates as indices, and all hot-path arithmetic goes through the
//! precomputed index tables.

use std::fmt;
use std::str::FromStr;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A group element as a tuple of reduced components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn components(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{m_1} x ... x Z_{m_k}` with index-level addition tables.
#[derive(Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
    order: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{m}")?;
        }
        Ok(())
    }
}

/// Largest group order supported by the index tables.
pub const MAX_ORDER: usize = 256;

impl AbelianGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::invalid("a group needs at least one cyclic factor"));
        }
        if moduli.contains(&0) {
            return Err(Error::invalid("cyclic factors must have positive order"));
        }
        let order = moduli
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m as usize))
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::invalid(format!("group order exceeds {MAX_ORDER}")))?;

        let mut g = AbelianGroup {
            moduli,
            order,
            add: Vec::new(),
            neg: Vec::new(),
        };
        let elems: Vec<GroupElement> = (0..order).map(|i| g.decode(i)).collect();
        let mut add = vec![0u16; order * order];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let s: Vec<u32> = a
                    .0
                    .iter()
                    .zip(&b.0)
                    .zip(&g.moduli)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect();
                add[i * order + j] = g.encode(&s) as u16;
            }
        }
        let neg = (0..order)
            .map(|i| (0..order).find(|&j| add[i * order + j] == 0).unwrap() as u16)
            .collect();
        g.add = add;
        g.neg = neg;
        Ok(g)
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let m = u32::try_from(n).map_err(|_| Error::invalid("cyclic order too large"))?;
        Self::new(vec![m])
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic_labeling(&self) -> bool {
        self.moduli.len() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    /// Reduces arbitrary (possibly negative) integers into a canonical element.
    pub fn element(&self, components: &[i64]) -> Result<GroupElement> {
        self.check_arity(components.len())?;
        Ok(GroupElement(
            components
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u32)
                .collect(),
        ))
    }

    fn check_arity(&self, len: usize) -> Result<()> {
        if len != self.moduli.len() {
            return Err(Error::ComponentMismatch {
                expected: self.moduli.len(),
                found: len,
            });
        }
        Ok(())
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        self.check_arity(a.0.len())?;
        if a.0.iter().zip(&self.moduli).any(|(c, m)| c >= m) {
            return Err(Error::invalid(format!("{a} is not reduced in {self}")));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.decode(self.add_idx(self.encode(&a.0), self.encode(&b.0))))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.decode(self.neg_idx(self.encode(&a.0))))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Integer multiple `k * a`.
    pub fn mul(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.decode(self.mul_idx(k, self.encode(&a.0))))
    }

    /// Sum of all elements of the group.
    pub fn g_plus(&self) -> GroupElement {
        self.decode(self.g_plus_idx())
    }

    pub fn g_plus_idx(&self) -> usize {
        (0..self.order).fold(0, |acc, x| self.add_idx(acc, x))
    }

    /// Whether the Sylow 2-subgroup is noncyclic, i.e. at least two of the
    /// prime-power cyclic factors are 2-groups.
    pub fn has_noncyclic_sylow2(&self) -> bool {
        self.moduli.iter().filter(|&&m| m % 2 == 0).count() >= 2
    }

    /// Index of an element; components must already be reduced.
    pub fn encode(&self, components: &[u32]) -> usize {
        components
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    pub fn decode(&self, mut index: usize) -> GroupElement {
        let mut comps = vec![0u32; self.moduli.len()];
        for (c, &m) in comps.iter_mut().zip(&self.moduli).rev() {
            *c = (index % m as usize) as u32;
            index /= m as usize;
        }
        GroupElement(comps)
    }

    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(self.encode(&a.0))
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, k: i64, a: usize) -> usize {
        let reps = k.unsigned_abs() as usize % self.order.max(1);
        let base = if k < 0 { self.neg_idx(a) } else { a };
        (0..reps).fold(0, |acc, _| self.add_idx(acc, base))
    }

    /// Sums a sequence of element indices.
    pub fn sum_idx<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(0, |acc, x| self.add_idx(acc, x))
    }

    /// Order of an element given by index.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.add_idx(x, a);
            k += 1;
        }
        k
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses literals such as `Z6`, `Z2xZ2`, `z4xz3`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower.is_empty() {
            return Err(Error::invalid("empty group literal"));
        }
        let moduli = lower
            .split('x')
            .map(|factor| {
                factor
                    .strip_prefix('z')
                    .and_then(|m| m.parse::<u32>().ok())
                    .filter(|&m| m > 0)
                    .ok_or_else(|| Error::invalid(format!("bad group factor {factor:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        AbelianGroup::new(moduli)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: &[u32]) -> GroupElement {
        GroupElement(c.to_vec())
    }

    #[test]
    fn addition_examples() {
        let z6 = AbelianGroup::cyclic(6).unwrap();
        assert_eq!(z6.add(&el(&[4]), &el(&[5])).unwrap(), el(&[3]));
        let k = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(k.add(&el(&[1, 0]), &el(&[1, 1])).unwrap(), el(&[0, 1]));
        for i in 0..k.order() {
            let a = k.decode(i);
            assert_eq!(k.add(&a, &k.identity()).unwrap(), a);
        }
    }

    #[test]
    fn component_mismatch_is_rejected() {
        let z6 = AbelianGroup::cyclic(6).unwrap();
        assert!(matches!(
            z6.add(&el(&[1, 0]), &el(&[1])),
            Err(Error::ComponentMismatch { .. })
        ));
    }

    #[test]
    fn negation_examples() {
        let z8 = AbelianGroup::cyclic(8).unwrap();
        assert_eq!(z8.neg(&el(&[3])).unwrap(), el(&[5]));
        assert_eq!(z8.neg(&el(&[0])).unwrap(), el(&[0]));
        let k = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(k.neg(&el(&[1, 1])).unwrap(), el(&[1, 1]));
    }

    #[test]
    fn g_plus_examples() {
        assert_eq!(AbelianGroup::cyclic(5).unwrap().g_plus(), el(&[0]));
        assert_eq!(AbelianGroup::cyclic(8).unwrap().g_plus(), el(&[4]));
        assert_eq!(AbelianGroup::new(vec![2, 2]).unwrap().g_plus(), el(&[0, 0]));
    }

    #[test]
    fn sylow2_examples() {
        assert!(!"Z12".parse::<AbelianGroup>().unwrap().has_noncyclic_sylow2());
        assert!("Z2xZ2".parse::<AbelianGroup>().unwrap().has_noncyclic_sylow2());
        assert!(!"Z2xZ9".parse::<AbelianGroup>().unwrap().has_noncyclic_sylow2());
        assert!("Z4xZ6".parse::<AbelianGroup>().unwrap().has_noncyclic_sylow2());
    }

    #[test]
    fn literal_parsing() {
        let g: AbelianGroup = "z4XZ3".parse().unwrap();
        assert_eq!(g.moduli(), &[4, 3]);
        assert_eq!(g.order(), 12);
        assert_eq!(g.to_string(), "Z4xZ3");
        assert!("".parse::<AbelianGroup>().is_err());
        assert!("Z0".parse::<AbelianGroup>().is_err());
        assert!("Q8".parse::<AbelianGroup>().is_err());
        assert!("Z2x".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn negative_literals_reduce() {
        let z6 = AbelianGroup::cyclic(6).unwrap();
        assert_eq!(z6.element(&[-1]).unwrap(), el(&[5]));
        assert_eq!(z6.element(&[-13]).unwrap(), el(&[5]));
        assert_eq!(z6.mul(-3, &el(&[3])).unwrap(), el(&[3]));
    }

    fn small_groups() -> Vec<AbelianGroup> {
        let mut out = Vec::new();
        for n in 1..=16u32 {
            out.push(AbelianGroup::new(vec![n]).unwrap());
        }
        for m in [vec![2, 2], vec![2, 4], vec![2, 2, 2], vec![3, 3], vec![2, 6], vec![4, 4], vec![2, 2, 4], vec![2, 2, 2, 2]] {
            out.push(AbelianGroup::new(m).unwrap());
        }
        out
    }

    #[test]
    fn group_axioms_exhaustive_up_to_16() {
        for g in small_groups() {
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.add_idx(a, g.neg_idx(a)), 0);
                for b in 0..n {
                    assert_eq!(g.add_idx(a, b), g.add_idx(b, a));
                    for c in 0..n {
                        assert_eq!(
                            g.add_idx(g.add_idx(a, b), c),
                            g.add_idx(a, g.add_idx(b, c)),
                            "{g}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn g_plus_is_the_unique_involution_or_identity() {
        for g in small_groups() {
            let involutions: Vec<usize> = (0..g.order()).filter(|&a| g.element_order(a) == 2).collect();
            let gp = g.g_plus_idx();
            assert_eq!(g.add_idx(gp, gp), 0);
            if involutions.len() == 1 {
                assert_eq!(gp, involutions[0], "{g}");
            } else {
                assert_eq!(gp, 0, "{g}");
            }
        }
    }
}

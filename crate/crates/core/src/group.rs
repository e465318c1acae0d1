//! Finite-group arithmetic: dense element indexing, composition, inverses.
//!
//! Two constructions are supported: finite products of cyclic groups
//! (elements are mixed-radix tuples with the last factor varying fastest)
//! and explicit Cayley tables. Haar measure throughout the crate is counting
//! measure with mass 1 per element, so integrals over `G` are plain sums and
//! the modular function is identically 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a [`GroupSpec`], stored as a dense index in `[0, order)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

/// The defining data of a finite group, as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupKind {
    /// `Z_{m1} x ... x Z_{md}`; the empty product is the trivial group.
    CyclicProduct { moduli: Vec<usize> },
    /// `table[a][b]` is the index of `a * b`.
    CayleyTable { table: Vec<Vec<usize>> },
}

/// A validated finite group with precomputed inverses.
///
/// Construction checks every axiom (closure, identity, two-sided inverses,
/// associativity), so holding a `GroupSpec` is proof of validity. Cayley
/// validation is `O(n^3)`; it runs once.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "GroupKind", into = "GroupKind")]
pub struct GroupSpec {
    kind: GroupKind,
    order: usize,
    identity: usize,
    inverses: Vec<usize>,
    abelian: bool,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        // Everything else is derived from the kind.
        self.kind == other.kind
    }
}

impl Eq for GroupSpec {}

impl From<GroupSpec> for GroupKind {
    fn from(g: GroupSpec) -> Self {
        g.kind
    }
}

impl TryFrom<GroupKind> for GroupSpec {
    type Error = Error;

    fn try_from(kind: GroupKind) -> Result<Self> {
        match kind {
            GroupKind::CyclicProduct { moduli } => GroupSpec::cyclic_product(moduli),
            GroupKind::CayleyTable { table } => GroupSpec::from_cayley_table(table),
        }
    }
}

impl GroupSpec {
    /// Direct product of cyclic groups `Z_{m1} x ... x Z_{md}`.
    pub fn cyclic_product(moduli: Vec<usize>) -> Result<Self> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic moduli must be >= 2, got {m}"
            )));
        }
        let mut order: usize = 1;
        for &m in &moduli {
            order = order
                .checked_mul(m)
                .ok_or_else(|| Error::InvalidGroup("group order overflows usize".into()))?;
        }
        let inverses = (0..order).map(|a| cyclic_invert(&moduli, a)).collect();
        Ok(GroupSpec {
            kind: GroupKind::CyclicProduct { moduli },
            order,
            identity: 0,
            inverses,
            abelian: true,
        })
    }

    /// The cyclic group `Z_m`.
    pub fn cyclic(m: usize) -> Result<Self> {
        Self::cyclic_product(vec![m])
    }

    /// Builds a group from an explicit Cayley table, verifying all axioms.
    pub fn from_cayley_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGroup(format!(
                    "row {a} contains entry {v} outside [0, {n})"
                )));
            }
        }
        // Rows and columns must be permutations (cancellation).
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row_seen[table[a][b]], true) {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
                if std::mem::replace(&mut col_seen[table[b][a]], true) {
                    return Err(Error::InvalidGroup(format!(
                        "column {a} is not a permutation"
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverses = vec![0usize; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| {
                    Error::InvalidGroup(format!("element {a} has no two-sided inverse"))
                })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let abelian = (0..n).all(|a| (a..n).all(|b| table[a][b] == table[b][a]));
        Ok(GroupSpec {
            kind: GroupKind::CayleyTable { table },
            order: n,
            identity,
            inverses,
            abelian,
        })
    }

    /// The one-element group.
    pub fn trivial() -> Self {
        Self::cyclic_product(Vec::new()).expect("trivial group is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        Element(self.identity)
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// The cyclic moduli, or `None` for a Cayley-table group.
    pub fn moduli(&self) -> Option<&[usize]> {
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => Some(moduli),
            GroupKind::CayleyTable { .. } => None,
        }
    }

    /// Checked element from a raw index.
    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.order {
            Ok(Element(index))
        } else {
            Err(Error::InvalidElement {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn compose(&self, a: Element, b: Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(Element(self.compose_idx(a.0, b.0)))
    }

    pub fn inverse(&self, a: Element) -> Result<Element> {
        self.check(a)?;
        Ok(Element(self.inverses[a.0]))
    }

    /// Mixed-radix digits of a cyclic-product element (last axis fastest).
    pub fn element_tuple(&self, a: Element) -> Result<Vec<usize>> {
        self.check(a)?;
        let moduli = self.moduli().ok_or_else(|| {
            Error::UnsupportedGroup("tuple coordinates require a cyclic_product group".into())
        })?;
        let mut out = vec![0; moduli.len()];
        decompose_mixed_radix(moduli, a.0, &mut out);
        Ok(out)
    }

    /// Inverse of [`Self::element_tuple`].
    pub fn tuple_element(&self, tuple: &[usize]) -> Result<Element> {
        let moduli = self.moduli().ok_or_else(|| {
            Error::UnsupportedGroup("tuple coordinates require a cyclic_product group".into())
        })?;
        if tuple.len() != moduli.len() {
            return Err(Error::InvalidParameter(format!(
                "tuple has {} coordinates, expected {}",
                tuple.len(),
                moduli.len()
            )));
        }
        let mut idx = 0usize;
        for (&x, &m) in tuple.iter().zip(moduli) {
            if x >= m {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {x} outside [0, {m})"
                )));
            }
            idx = idx * m + x;
        }
        Ok(Element(idx))
    }

    fn check(&self, a: Element) -> Result<()> {
        if a.0 < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                index: a.0,
                order: self.order,
            })
        }
    }

    /// Unchecked composition on raw indices (hot path for kernels).
    pub(crate) fn compose_idx(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.order && b < self.order);
        match &self.kind {
            GroupKind::CyclicProduct { moduli } => cyclic_compose(moduli, a, b),
            GroupKind::CayleyTable { table } => table[a][b],
        }
    }

    pub(crate) fn inverse_idx(&self, a: usize) -> usize {
        debug_assert!(a < self.order);
        self.inverses[a]
    }
}

fn cyclic_compose(moduli: &[usize], mut a: usize, mut b: usize) -> usize {
    let mut idx = 0;
    let mut stride = 1;
    for &m in moduli.iter().rev() {
        let mut s = a % m + b % m;
        if s >= m {
            s -= m;
        }
        idx += s * stride;
        stride *= m;
        a /= m;
        b /= m;
    }
    idx
}

fn cyclic_invert(moduli: &[usize], mut a: usize) -> usize {
    let mut idx = 0;
    let mut stride = 1;
    for &m in moduli.iter().rev() {
        let x = a % m;
        let inv = if x == 0 { 0 } else { m - x };
        idx += inv * stride;
        stride *= m;
        a /= m;
    }
    idx
}

pub(crate) fn decompose_mixed_radix(moduli: &[usize], mut idx: usize, out: &mut [usize]) {
    debug_assert_eq!(moduli.len(), out.len());
    for (slot, &m) in out.iter_mut().zip(moduli).rev() {
        *slot = idx % m;
        idx /= m;
    }
}

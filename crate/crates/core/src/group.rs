//! Discrete groups with explicit arithmetic and Følner schedules.
//!
//! Two kinds are supported: finite groups given by a Cayley table (with
//! constructors for cyclic and symmetric groups) and the integers. Finite
//! groups use the constant whole-group Følner schedule; ℤ uses the
//! symmetric intervals `[-λ, λ]`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element of some [`Group`]: an index into a Cayley table, or an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub i64);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Multiplication table of a finite group, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl CayleyTable {
    /// Builds a table and checks the group axioms.
    pub fn new(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::MalformedTable("table has no rows".into()));
        }
        if identity >= order {
            return Err(Error::MalformedTable(format!(
                "identity {identity} out of range for order {order}"
            )));
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::MalformedTable(format!(
                    "row {r} has length {} but the table has {order} rows",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::MalformedTable(format!("entry {x} in row {r} out of range")));
                }
            }
            table.extend_from_slice(row);
        }
        let mut t = CayleyTable { order, table, identity, inverse: vec![identity; order] };
        t.check_identity()?;
        t.fill_inverses()?;
        t.check_associativity()?;
        Ok(t)
    }

    fn unchecked(order: usize, table: Vec<usize>, identity: usize) -> Self {
        let mut t = CayleyTable { order, table, identity, inverse: vec![identity; order] };
        t.fill_inverses().expect("constructed table has inverses");
        t
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    fn check_identity(&self) -> Result<()> {
        let e = self.identity;
        for a in 0..self.order {
            if self.mul(e, a) != a || self.mul(a, e) != a {
                return Err(Error::Axiom {
                    axiom: "identity",
                    detail: format!("{e} is not a two-sided identity for {a}"),
                });
            }
        }
        Ok(())
    }

    fn fill_inverses(&mut self) -> Result<()> {
        let e = self.identity;
        for a in 0..self.order {
            let inv = (0..self.order).find(|&b| self.mul(a, b) == e && self.mul(b, a) == e);
            match inv {
                Some(b) => self.inverse[a] = b,
                None => {
                    return Err(Error::Axiom {
                        axiom: "inverse",
                        detail: format!("element {a} has no two-sided inverse"),
                    })
                }
            }
        }
        Ok(())
    }

    /// Exhaustive `(ab)c = a(bc)` check, O(n³).
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Axiom {
                            axiom: "associativity",
                            detail: format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-checks every axiom; constructors that skip validation rely on this in tests.
    pub fn check_axioms(&self) -> Result<()> {
        self.check_identity()?;
        let e = self.identity;
        for a in 0..self.order {
            let b = self.inverse[a];
            if self.mul(a, b) != e || self.mul(b, a) != e {
                return Err(Error::Axiom { axiom: "inverse", detail: format!("bad inverse for {a}") });
            }
        }
        self.check_associativity()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Finite(CayleyTable),
    Integers,
}

/// A discrete amenable group together with its Følner schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    kind: GroupKind,
    name: String,
}

impl Group {
    pub fn integers() -> Self {
        Group { kind: GroupKind::Integers, name: "Z".into() }
    }

    /// ℤ/n with element `k` standing for the residue `k`.
    pub fn cyclic(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroupSpec("cyclic group order must be at least 1".into()));
        }
        let table = (0..order).flat_map(|a| (0..order).map(move |b| (a + b) % order)).collect();
        Ok(Group { kind: GroupKind::Finite(CayleyTable::unchecked(order, table, 0)), name: format!("Z/{order}") })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1 is valid")
    }

    /// S_n on `{0..n}`; elements are indices into the lexicographic list of
    /// permutations (index 0 is the identity) and `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 || degree > 6 {
            return Err(Error::InvalidGroupSpec("symmetric group degree must be in 1..=6".into()));
        }
        let perms: Vec<Vec<usize>> = (0..degree).permutations(degree).collect();
        let index_of = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p).expect("closed");
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                table.push(index_of(&st));
            }
        }
        Ok(Group { kind: GroupKind::Finite(CayleyTable::unchecked(n, table, 0)), name: format!("S{degree}") })
    }

    pub fn from_table(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let t = CayleyTable::new(rows, identity)?;
        let name = format!("Cayley({})", t.order());
        Ok(Group { kind: GroupKind::Finite(t), name })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, GroupKind::Finite(_))
    }

    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Finite(t) => Some(t.order()),
            GroupKind::Integers => None,
        }
    }

    /// All elements, for finite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        self.order().map(|n| (0..n as i64).map(GroupElement).collect())
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Finite(t) => GroupElement(t.identity() as i64),
            GroupKind::Integers => GroupElement(0),
        }
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        match &self.kind {
            GroupKind::Finite(t) => g.0 >= 0 && (g.0 as usize) < t.order(),
            GroupKind::Integers => true,
        }
    }

    pub fn check(&self, g: GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::InvalidElement(g.0))
        }
    }

    pub fn mul(&self, g: GroupElement, h: GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(match &self.kind {
            GroupKind::Finite(t) => GroupElement(t.mul(g.0 as usize, h.0 as usize) as i64),
            GroupKind::Integers => GroupElement(
                g.0.checked_add(h.0).ok_or(Error::InvalidElement(h.0))?,
            ),
        })
    }

    pub fn inv(&self, g: GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(match &self.kind {
            GroupKind::Finite(t) => GroupElement(t.inverse(g.0 as usize) as i64),
            GroupKind::Integers => GroupElement(g.0.checked_neg().ok_or(Error::InvalidElement(g.0))?),
        })
    }

    /// The λ-th Følner set: the whole group when finite, `[-λ, λ]` for ℤ.
    pub fn folner_set(&self, lambda: usize) -> BTreeSet<GroupElement> {
        match &self.kind {
            GroupKind::Finite(t) => (0..t.order() as i64).map(GroupElement).collect(),
            GroupKind::Integers => {
                let l = lambda as i64;
                (-l..=l).map(GroupElement).collect()
            }
        }
    }

    /// `max_{g ∈ gens} |gF Δ F| / |F|`; zero when `gens` is empty.
    pub fn folner_defect<K: Scalar>(
        &self,
        set: &BTreeSet<GroupElement>,
        gens: &[GroupElement],
    ) -> Result<K> {
        if set.is_empty() {
            return Err(Error::Empty("Følner set"));
        }
        let mut worst = 0usize;
        for &g in gens {
            let shifted = set.iter().map(|&x| self.mul(g, x)).collect::<Result<BTreeSet<_>>>()?;
            let sym = shifted.symmetric_difference(set).count();
            worst = worst.max(sym);
        }
        Ok(K::from_count(worst) / K::from_count(set.len()))
    }

    /// Generators used for defect diagnostics.
    pub fn default_generators(&self) -> Vec<GroupElement> {
        match &self.kind {
            GroupKind::Integers => vec![GroupElement(1)],
            GroupKind::Finite(t) => (0..t.order() as i64).map(GroupElement).collect(),
        }
    }
}

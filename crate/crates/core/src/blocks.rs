//! Block decomposition of ℓ¹(T) and the matrix-unit embeddings.
//!
//! `H^c_{(i,j)}` plants `c ∈ ℓ¹(G)` in block `(i,j)` of ℓ¹(T);
//! `E^b_{(i,j,i',j')}` plants `b ∈ ℓ¹(G×G)` at `((i,·,j),(i',·,j'))` in
//! ℓ¹(T×T). The `*_formula` functions evaluate module actions and the
//! diagonal map through these embeddings, i.e. by computing in ℓ¹(G) and
//! relabelling indices; they are meant to agree with the generic
//! leg-wise actions in [`crate::l1`].

use std::collections::BTreeMap;

use crate::brandt::Triple;
use crate::error::Result;
use crate::group::{Group, GroupElement};
use crate::l1::{self, L1Vector};
use crate::scalar::Scalar;

/// Index quadruple `(i, j, i', j')` of an `E` embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EIndex {
    pub i: usize,
    pub j: usize,
    pub i2: usize,
    pub j2: usize,
}

impl EIndex {
    pub fn new(i: usize, j: usize, i2: usize, j2: usize) -> Self {
        EIndex { i, j, i2, j2 }
    }
}

/// `a_{(u,v)}(g) = a(u,g,v)`.
pub fn block<K: Scalar>(a: &L1Vector<Triple, K>, u: usize, v: usize) -> L1Vector<GroupElement, K> {
    a.map_basis(|t| (t.i == u && t.j == v).then_some(t.g))
}

/// All nonzero blocks of `a`, keyed by `(u, v)`.
pub fn blocks<K: Scalar>(a: &L1Vector<Triple, K>) -> BTreeMap<(usize, usize), L1Vector<GroupElement, K>> {
    let mut out: BTreeMap<(usize, usize), L1Vector<GroupElement, K>> = BTreeMap::new();
    for (t, c) in a.iter() {
        out.entry((t.i, t.j)).or_default().add_term(t.g, c.clone());
    }
    out
}

/// Row and column indices appearing in the support of `a`.
pub fn support_indices<K: Scalar>(a: &L1Vector<Triple, K>) -> std::collections::BTreeSet<usize> {
    a.support().flat_map(|t| [t.i, t.j]).collect()
}

pub fn embed_h<K: Scalar>(c: &L1Vector<GroupElement, K>, i: usize, j: usize) -> L1Vector<Triple, K> {
    c.map_basis(|&g| Some(Triple::new(i, g, j)))
}

pub fn embed_e<K: Scalar>(
    b: &L1Vector<(GroupElement, GroupElement), K>,
    idx: EIndex,
) -> L1Vector<(Triple, Triple), K> {
    b.map_basis(|&(g, h)| Some((Triple::new(idx.i, g, idx.j), Triple::new(idx.i2, h, idx.j2))))
}

/// `δ_{(u,g,v)} · E^b_{(i,j,i',j')} = E^{δ_g·b}_{(u,j,i',j')}` if `i = v`, else 0.
pub fn point_act_e_formula<K: Scalar>(
    group: &Group,
    point: Triple,
    b: &L1Vector<(GroupElement, GroupElement), K>,
    idx: EIndex,
) -> Result<L1Vector<(Triple, Triple), K>> {
    if idx.i != point.j {
        group.check(point.g)?;
        return Ok(L1Vector::zero());
    }
    let gb = l1::tensor_act_left(group, &L1Vector::point(point.g), b)?;
    Ok(embed_e(&gb, EIndex::new(point.i, idx.j, idx.i2, idx.j2)))
}

/// `E^b_{(i,j,i',j')} · δ_{(u,g,v)} = E^{b·δ_g}_{(i,j,i',v)}` if `j' = u`, else 0.
pub fn e_act_point_formula<K: Scalar>(
    group: &Group,
    b: &L1Vector<(GroupElement, GroupElement), K>,
    idx: EIndex,
    point: Triple,
) -> Result<L1Vector<(Triple, Triple), K>> {
    if idx.j2 != point.i {
        group.check(point.g)?;
        return Ok(L1Vector::zero());
    }
    let bg = l1::tensor_act_right(group, b, &L1Vector::point(point.g))?;
    Ok(embed_e(&bg, EIndex::new(idx.i, idx.j, idx.i2, point.j)))
}

/// `δ_{(u,g,v)} H^c_{(i,j)} = H^{δ_g c}_{(u,j)}` if `i = v`, else 0.
pub fn point_mul_h_formula<K: Scalar>(
    group: &Group,
    point: Triple,
    c: &L1Vector<GroupElement, K>,
    i: usize,
    j: usize,
) -> Result<L1Vector<Triple, K>> {
    let gc = l1::convolve(group, &L1Vector::point(point.g), c)?;
    Ok(if i == point.j { embed_h(&gc, point.i, j) } else { L1Vector::zero() })
}

/// `H^c_{(i,j)} δ_{(u,g,v)} = H^{c δ_g}_{(i,v)}` if `j = u`, else 0.
pub fn h_mul_point_formula<K: Scalar>(
    group: &Group,
    c: &L1Vector<GroupElement, K>,
    i: usize,
    j: usize,
    point: Triple,
) -> Result<L1Vector<Triple, K>> {
    let cg = l1::convolve(group, c, &L1Vector::point(point.g))?;
    Ok(if j == point.i { embed_h(&cg, i, point.j) } else { L1Vector::zero() })
}

/// `π(E^b_{(i,j,i',j')}) = H^{π(b)}_{(i,j')}` if `j = i'`, else 0.
pub fn pi_e_formula<K: Scalar>(
    group: &Group,
    b: &L1Vector<(GroupElement, GroupElement), K>,
    idx: EIndex,
) -> Result<L1Vector<Triple, K>> {
    let pb = l1::pi(group, b)?;
    Ok(if idx.j == idx.i2 { embed_h(&pb, idx.i, idx.j2) } else { L1Vector::zero() })
}

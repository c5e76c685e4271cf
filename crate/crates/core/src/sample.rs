//! Seeded random sparse elements for the invariant suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::brandt::{BrandtElement, Triple};
use crate::group::{Group, GroupElement};
use crate::l1::L1Vector;
use crate::scalar::{rat, Rational};

/// Shape of random elements: coefficients from `{±1/4, ±1/2, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparseShape {
    /// Indices are drawn from `0..=max_index`.
    pub max_index: usize,
    pub max_support: usize,
    /// For ℤ, group elements are drawn from `[-int_radius, int_radius]`.
    pub int_radius: i64,
}

impl Default for SparseShape {
    fn default() -> Self {
        SparseShape { max_index: 5, max_support: 6, int_radius: 3 }
    }
}

const COEFFS: [(i64, i64); 5] = [(1, 4), (-1, 4), (1, 2), (-1, 2), (1, 1)];

pub fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    let (n, d) = *COEFFS.choose(rng).expect("nonempty");
    rat(n, d)
}

pub fn group_element<R: Rng>(rng: &mut R, group: &Group, shape: &SparseShape) -> GroupElement {
    match group.order() {
        Some(n) => GroupElement(rng.gen_range(0..n as i64)),
        None => GroupElement(rng.gen_range(-shape.int_radius..=shape.int_radius)),
    }
}

pub fn triple<R: Rng>(rng: &mut R, group: &Group, shape: &SparseShape) -> Triple {
    Triple::new(
        rng.gen_range(0..=shape.max_index),
        group_element(rng, group, shape),
        rng.gen_range(0..=shape.max_index),
    )
}

fn sparse<R: Rng, B: Ord + Clone>(
    rng: &mut R,
    shape: &SparseShape,
    mut point: impl FnMut(&mut R) -> B,
) -> L1Vector<B, Rational> {
    let n = rng.gen_range(0..=shape.max_support);
    let mut v = L1Vector::zero();
    for _ in 0..n {
        let b = point(rng);
        let c = coefficient(rng);
        v.add_term(b, c);
    }
    v
}

pub fn g_vector<R: Rng>(rng: &mut R, group: &Group, shape: &SparseShape) -> L1Vector<GroupElement, Rational> {
    sparse(rng, shape, |r| group_element(r, group, shape))
}

pub fn t_vector<R: Rng>(rng: &mut R, group: &Group, shape: &SparseShape) -> L1Vector<Triple, Rational> {
    sparse(rng, shape, |r| triple(r, group, shape))
}

/// ℓ¹(S) element; roughly one draw in five lands on `∘`.
pub fn s_vector<R: Rng>(rng: &mut R, group: &Group, shape: &SparseShape) -> L1Vector<BrandtElement, Rational> {
    sparse(rng, shape, |r| {
        if r.gen_ratio(1, 5) {
            BrandtElement::Null
        } else {
            BrandtElement::Triple(triple(r, group, shape))
        }
    })
}

pub fn gg_tensor<R: Rng>(
    rng: &mut R,
    group: &Group,
    shape: &SparseShape,
) -> L1Vector<(GroupElement, GroupElement), Rational> {
    sparse(rng, shape, |r| (group_element(r, group, shape), group_element(r, group, shape)))
}

pub fn tt_tensor<R: Rng>(rng: &mut R, group: &Group, shape: &SparseShape) -> L1Vector<(Triple, Triple), Rational> {
    sparse(rng, shape, |r| (triple(r, group, shape), triple(r, group, shape)))
}

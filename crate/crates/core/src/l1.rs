//! Finitely supported ℓ¹ vectors and the convolution products.
//!
//! Tensors in `ℓ¹(X) ⊗̂ ℓ¹(X)` are stored as vectors on the pair basis
//! `X × X`, so the projective norm is the plain ℓ¹ norm.

use std::collections::btree_map::{self, Entry};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Neg, Sub};

use crate::brandt::{triple_mul, BrandtElement, Triple};
use crate::error::Result;
use crate::group::{Group, GroupElement};
use crate::scalar::Scalar;

/// A finitely supported function `B → K` with no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct L1Vector<B: Ord, K> {
    terms: BTreeMap<B, K>,
}

impl<B: Ord, K> Default for L1Vector<B, K> {
    fn default() -> Self {
        L1Vector { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone, K: Scalar> L1Vector<B, K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The point mass `δ_x`.
    pub fn point(x: B) -> Self {
        Self::scaled_point(x, K::one())
    }

    pub fn scaled_point(x: B, c: K) -> Self {
        let mut v = Self::zero();
        v.add_term(x, c);
        v
    }

    /// Sums repeated basis points and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (B, K)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (b, c) in terms {
            v.add_term(b, c);
        }
        v
    }

    pub fn add_term(&mut self, b: B, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, b: &B) -> K {
        self.terms.get(b).cloned().unwrap_or_else(K::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, K> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// `Σ |coefficients|`.
    pub fn norm(&self) -> K {
        self.terms.values().fold(K::zero(), |acc, c| acc + c.abs())
    }

    /// `Σ coefficients`.
    pub fn mass(&self) -> K {
        self.terms.values().fold(K::zero(), |acc, c| acc + c.clone())
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, x)| (b.clone(), x.clone() * c.clone())))
    }

    /// Pushes coefficients forward along `f`, merging collisions and dropping `None`.
    pub fn map_basis<C: Ord + Clone, F: FnMut(&B) -> Option<C>>(&self, mut f: F) -> L1Vector<C, K> {
        L1Vector::from_terms(self.terms.iter().filter_map(|(b, c)| f(b).map(|x| (x, c.clone()))))
    }

    pub fn filter<F: FnMut(&B) -> bool>(&self, mut keep: F) -> Self {
        L1Vector {
            terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }
}

impl<B: Ord + Clone, K: Scalar> FromIterator<(B, K)> for L1Vector<B, K> {
    fn from_iter<I: IntoIterator<Item = (B, K)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<B: Ord + Clone, K: Scalar> Add for &L1Vector<B, K> {
    type Output = L1Vector<B, K>;
    fn add(self, rhs: Self) -> L1Vector<B, K> {
        let mut out = self.clone();
        for (b, c) in rhs.iter() {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl<B: Ord + Clone, K: Scalar> Sub for &L1Vector<B, K> {
    type Output = L1Vector<B, K>;
    fn sub(self, rhs: Self) -> L1Vector<B, K> {
        let mut out = self.clone();
        for (b, c) in rhs.iter() {
            out.add_term(b.clone(), -c.clone());
        }
        out
    }
}

impl<B: Ord + Clone, K: Scalar> Neg for &L1Vector<B, K> {
    type Output = L1Vector<B, K>;
    fn neg(self) -> L1Vector<B, K> {
        self.scale(&-K::one())
    }
}

/// A basis whose point masses multiply to point masses (or vanish).
pub trait Convolution: Ord + Clone + Send + Sync {
    /// `δ_x * δ_y`, with `None` meaning the product is zero in this algebra.
    fn product(group: &Group, x: &Self, y: &Self) -> Result<Option<Self>>;
}

impl Convolution for GroupElement {
    fn product(group: &Group, x: &Self, y: &Self) -> Result<Option<Self>> {
        group.mul(*x, *y).map(Some)
    }
}

/// In ℓ¹(T) products landing on `∘` are dropped.
impl Convolution for Triple {
    fn product(group: &Group, x: &Self, y: &Self) -> Result<Option<Self>> {
        triple_mul(group, x, y)
    }
}

impl Convolution for BrandtElement {
    fn product(group: &Group, x: &Self, y: &Self) -> Result<Option<Self>> {
        let out = match (x, y) {
            (BrandtElement::Triple(s), BrandtElement::Triple(t)) => {
                triple_mul(group, s, t)?.map_or(BrandtElement::Null, BrandtElement::Triple)
            }
            (BrandtElement::Triple(t), BrandtElement::Null) | (BrandtElement::Null, BrandtElement::Triple(t)) => {
                group.check(t.g)?;
                BrandtElement::Null
            }
            (BrandtElement::Null, BrandtElement::Null) => BrandtElement::Null,
        };
        Ok(Some(out))
    }
}

/// Bilinear extension of the basis product.
pub fn convolve<B: Convolution, K: Scalar>(
    group: &Group,
    a: &L1Vector<B, K>,
    b: &L1Vector<B, K>,
) -> Result<L1Vector<B, K>> {
    let mut out = L1Vector::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            if let Some(z) = B::product(group, x, y)? {
                out.add_term(z, cx.clone() * cy.clone());
            }
        }
    }
    Ok(out)
}

/// ℓ¹(T) product evaluated pointwise from
/// `(ab)(i,g,j) = Σ_{k,h} a(i, g h⁻¹, k) b(k, h, j)`.
///
/// Independent of [`convolve`]: candidate outputs are enumerated, then each
/// coefficient is recomputed through the inverse map and coefficient lookups.
pub fn convolve_t_pointwise<K: Scalar>(
    group: &Group,
    a: &L1Vector<Triple, K>,
    b: &L1Vector<Triple, K>,
) -> Result<L1Vector<Triple, K>> {
    for t in a.support().chain(b.support()) {
        group.check(t.g)?;
    }
    let mut out = L1Vector::zero();
    let mut candidates = BTreeSet::new();
    for x in a.support() {
        for y in b.support() {
            candidates.insert((x.i, group.mul(x.g, y.g)?, y.j));
        }
    }
    for (i, g, j) in candidates {
        let mut sum = K::zero();
        for (y, cy) in b.iter().filter(|(y, _)| y.j == j) {
            let left = Triple::new(i, group.mul(g, group.inv(y.g)?)?, y.i);
            sum = sum + a.coeff(&left) * cy.clone();
        }
        out.add_term(Triple::new(i, g, j), sum);
    }
    Ok(out)
}

/// `a · t`: convolve the left tensor leg, `a·(δ_x⊗δ_y) = (a*δ_x)⊗δ_y`.
pub fn tensor_act_left<B: Convolution, K: Scalar>(
    group: &Group,
    a: &L1Vector<B, K>,
    t: &L1Vector<(B, B), K>,
) -> Result<L1Vector<(B, B), K>> {
    let mut out = L1Vector::zero();
    for (x, cx) in a.iter() {
        for ((y, z), c) in t.iter() {
            if let Some(p) = B::product(group, x, y)? {
                out.add_term((p, z.clone()), cx.clone() * c.clone());
            }
        }
    }
    Ok(out)
}

/// `t · a`: convolve the right tensor leg, `(δ_y⊗δ_z)·a = δ_y⊗(δ_z*a)`.
pub fn tensor_act_right<B: Convolution, K: Scalar>(
    group: &Group,
    t: &L1Vector<(B, B), K>,
    a: &L1Vector<B, K>,
) -> Result<L1Vector<(B, B), K>> {
    let mut out = L1Vector::zero();
    for ((y, z), c) in t.iter() {
        for (x, cx) in a.iter() {
            if let Some(p) = B::product(group, z, x)? {
                out.add_term((y.clone(), p), c.clone() * cx.clone());
            }
        }
    }
    Ok(out)
}

/// The diagonal map `π(δ_x⊗δ_y) = δ_x * δ_y`, extended linearly.
pub fn pi<B: Convolution, K: Scalar>(group: &Group, t: &L1Vector<(B, B), K>) -> Result<L1Vector<B, K>> {
    let mut out = L1Vector::zero();
    for ((x, y), c) in t.iter() {
        if let Some(p) = B::product(group, x, y)? {
            out.add_term(p, c.clone());
        }
    }
    Ok(out)
}

/// `Σ c_{x,y} δ_x⊗δ_y` from two factors: the elementary tensor `a ⊗ b`.
pub fn tensor<B: Ord + Clone, K: Scalar>(a: &L1Vector<B, K>, b: &L1Vector<B, K>) -> L1Vector<(B, B), K> {
    a.iter()
        .flat_map(|(x, cx)| b.iter().map(move |(y, cy)| ((x.clone(), y.clone()), cx.clone() * cy.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use crate::{GroupVector, SVector, TVector};

    fn g(x: i64) -> GroupElement {
        GroupElement(x)
    }
    fn t(i: usize, x: i64, j: usize) -> Triple {
        Triple::new(i, g(x), j)
    }

    #[test]
    fn norms() {
        let x: GroupVector = L1Vector::point(g(0));
        assert_eq!(x.norm(), rat(1, 1));
        let v = GroupVector::from_terms([(g(0), rat(3, 4)), (g(1), rat(-1, 4))]);
        assert_eq!(v.norm(), rat(1, 1));
        assert_eq!(GroupVector::zero().norm(), rat(0, 1));
    }

    #[test]
    fn pruning() {
        let v = GroupVector::from_terms([(g(0), rat(1, 2)), (g(0), rat(-1, 2)), (g(1), rat(0, 1))]);
        assert!(v.is_zero());
        let w = &GroupVector::point(g(3)) - &GroupVector::point(g(3));
        assert_eq!(w, GroupVector::zero());
    }

    #[test]
    fn group_convolution() {
        let z = Group::integers();
        let a = GroupVector::point(g(4));
        assert_eq!(convolve(&z, &a, &GroupVector::point(g(-4))).unwrap(), GroupVector::point(g(0)));
        let z2 = Group::cyclic(2).unwrap();
        let s = GroupVector::from_terms([(g(0), rat(1, 1)), (g(1), rat(1, 1))]);
        let expected = GroupVector::from_terms([(g(0), rat(2, 1)), (g(1), rat(2, 1))]);
        assert_eq!(convolve(&z2, &s, &s).unwrap(), expected);
        let v = GroupVector::from_terms([(g(2), rat(1, 3)), (g(-7), rat(5, 1))]);
        assert_eq!(convolve(&z, &GroupVector::point(g(0)), &v).unwrap(), v);
    }

    #[test]
    fn t_convolution_both_routes() {
        let z3 = Group::cyclic(3).unwrap();
        let a = TVector::point(t(0, 1, 1));
        let b = TVector::point(t(1, 2, 2));
        let expected = TVector::point(t(0, 0, 2));
        assert_eq!(convolve(&z3, &a, &b).unwrap(), expected);
        assert_eq!(convolve_t_pointwise(&z3, &a, &b).unwrap(), expected);
        let c = TVector::point(t(2, 2, 3));
        assert!(convolve(&z3, &a, &c).unwrap().is_zero());
        assert!(convolve_t_pointwise(&z3, &a, &c).unwrap().is_zero());
        assert!(convolve(&z3, &TVector::zero(), &a).unwrap().is_zero());
    }

    #[test]
    fn s_convolution() {
        let z3 = Group::cyclic(3).unwrap();
        let x = SVector::point(BrandtElement::triple(0, g(1), 1));
        let y = SVector::point(BrandtElement::triple(2, g(1), 3));
        assert_eq!(convolve(&z3, &x, &y).unwrap(), SVector::point(BrandtElement::Null));
        assert_eq!(convolve(&z3, &SVector::point(BrandtElement::Null), &x).unwrap(), SVector::point(BrandtElement::Null));
        let y = SVector::point(BrandtElement::triple(1, g(1), 2));
        assert_eq!(convolve(&z3, &x, &y).unwrap(), SVector::point(BrandtElement::triple(0, g(2), 2)));
    }

    #[test]
    fn invalid_elements_surface() {
        let z3 = Group::cyclic(3).unwrap();
        let bad = TVector::point(t(0, 5, 0));
        assert!(convolve(&z3, &bad, &TVector::point(t(0, 0, 0))).is_err());
        assert!(convolve_t_pointwise(&z3, &bad, &TVector::point(t(0, 0, 0))).is_err());
    }

    #[test]
    fn tensor_actions_and_pi() {
        let z = Group::integers();
        let m = L1Vector::<(GroupElement, GroupElement), Rational>::point((g(2), g(5)));
        let left = tensor_act_left(&z, &GroupVector::point(g(1)), &m).unwrap();
        assert_eq!(left, L1Vector::point((g(3), g(5))));
        let right = tensor_act_right(&z, &m, &GroupVector::point(g(1))).unwrap();
        assert_eq!(right, L1Vector::point((g(2), g(6))));
        let d = L1Vector::<(GroupElement, GroupElement), Rational>::point((g(7), g(-7)));
        assert_eq!(pi(&z, &d).unwrap(), GroupVector::point(g(0)));
        let tt = L1Vector::<(Triple, Triple), Rational>::point((t(0, 1, 1), t(2, 1, 3)));
        assert!(pi(&z, &tt).unwrap().is_zero());
    }

    #[test]
    fn float_instantiation() {
        let z = Group::integers();
        let a = L1Vector::<GroupElement, f64>::from_terms([(g(0), 0.5), (g(1), -0.25)]);
        let p = convolve(&z, &a, &a).unwrap();
        assert!((p.norm() - 0.5625).abs() < 1e-12);
    }
}

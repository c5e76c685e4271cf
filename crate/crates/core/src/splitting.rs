//! The split exact sequence `0 → ℓ¹(T) → ℓ¹(S) → C → 0`.
//!
//! `Ψ` embeds ℓ¹(T) with the `∘` coefficient set to minus the total mass,
//! `Φ` is the integral functional and `Θ` restricts to `T`. Together they
//! give `ℓ¹(S) ≅ ℓ¹(T) ⊕ C` via `a ↦ (Θa, Φa)` and `(b, z) ↦ Ψb + z·δ_∘`.

use crate::brandt::{BrandtElement, Triple};
use crate::error::Result;
use crate::group::Group;
use crate::l1::{self, L1Vector};
use crate::scalar::Scalar;

/// An element of `ℓ¹(T) ⊕ C` with the sum norm and coordinatewise product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAlgebraElement<K: Scalar> {
    pub t_part: L1Vector<Triple, K>,
    pub scalar_part: K,
}

impl<K: Scalar> PairAlgebraElement<K> {
    pub fn new(t_part: L1Vector<Triple, K>, scalar_part: K) -> Self {
        PairAlgebraElement { t_part, scalar_part }
    }

    pub fn norm(&self) -> K {
        self.t_part.norm() + self.scalar_part.abs()
    }

    pub fn mul(&self, group: &Group, other: &Self) -> Result<Self> {
        Ok(PairAlgebraElement {
            t_part: l1::convolve(group, &self.t_part, &other.t_part)?,
            scalar_part: self.scalar_part.clone() * other.scalar_part.clone(),
        })
    }
}

/// `Ψ(b)(t) = b(t)`, `Ψ(b)(∘) = -Σ_{s∈T} b(s)`.
pub fn psi<K: Scalar>(b: &L1Vector<Triple, K>) -> L1Vector<BrandtElement, K> {
    let mut out: L1Vector<BrandtElement, K> = b.map_basis(|&t| Some(BrandtElement::Triple(t)));
    out.add_term(BrandtElement::Null, -b.mass());
    out
}

/// `Φ(a) = Σ_{s∈S} a(s)`.
pub fn phi<K: Scalar>(a: &L1Vector<BrandtElement, K>) -> K {
    a.mass()
}

/// Restriction to `T`.
pub fn theta<K: Scalar>(a: &L1Vector<BrandtElement, K>) -> L1Vector<Triple, K> {
    a.map_basis(|s| s.as_triple().copied())
}

pub fn to_pair<K: Scalar>(a: &L1Vector<BrandtElement, K>) -> PairAlgebraElement<K> {
    PairAlgebraElement::new(theta(a), phi(a))
}

pub fn from_pair<K: Scalar>(p: &PairAlgebraElement<K>) -> L1Vector<BrandtElement, K> {
    let mut out = psi(&p.t_part);
    out.add_term(BrandtElement::Null, p.scalar_part.clone());
    out
}

/// `Ψ ⊗ Ψ` on ℓ¹(T×T).
pub fn psi_tensor<K: Scalar>(t: &L1Vector<(Triple, Triple), K>) -> L1Vector<(BrandtElement, BrandtElement), K> {
    use BrandtElement::Null;
    let mut out = L1Vector::zero();
    for ((x, y), c) in t.iter() {
        let (x, y) = (BrandtElement::Triple(*x), BrandtElement::Triple(*y));
        out.add_term((x, y), c.clone());
        out.add_term((x, Null), -c.clone());
        out.add_term((Null, y), -c.clone());
        out.add_term((Null, Null), c.clone());
    }
    out
}

//! The Brandt semigroup `B(I, G) = (I × G × I) ∪ {∘}`.
//!
//! The index set `I` is all of ℕ and is never stored: every ℓ¹ element is
//! finitely supported, so an unbounded index universe is free.

use std::fmt;

use crate::error::Result;
use crate::group::{Group, GroupElement};

/// A non-null element `(i, g, j)` of `T = I × G × I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub i: usize,
    pub g: GroupElement,
    pub j: usize,
}

impl Triple {
    pub fn new(i: usize, g: GroupElement, j: usize) -> Self {
        Triple { i, g, j }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.g, self.j)
    }
}

/// An element of `S`: the null element or a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BrandtElement {
    Null,
    Triple(Triple),
}

impl BrandtElement {
    pub fn triple(i: usize, g: GroupElement, j: usize) -> Self {
        BrandtElement::Triple(Triple::new(i, g, j))
    }

    pub fn as_triple(&self) -> Option<&Triple> {
        match self {
            BrandtElement::Null => None,
            BrandtElement::Triple(t) => Some(t),
        }
    }
}

impl From<Triple> for BrandtElement {
    fn from(t: Triple) -> Self {
        BrandtElement::Triple(t)
    }
}

impl fmt::Display for BrandtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrandtElement::Null => write!(f, "∘"),
            BrandtElement::Triple(t) => t.fmt(f),
        }
    }
}

/// Product of two triples in `T`; `None` is the null element.
pub fn triple_mul(group: &Group, s: &Triple, t: &Triple) -> Result<Option<Triple>> {
    if s.j != t.i {
        group.check(s.g)?;
        group.check(t.g)?;
        return Ok(None);
    }
    Ok(Some(Triple::new(s.i, group.mul(s.g, t.g)?, t.j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrandtSemigroup {
    group: Group,
}

impl BrandtSemigroup {
    pub fn new(group: Group) -> Self {
        BrandtSemigroup { group }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn mul(&self, s: &BrandtElement, t: &BrandtElement) -> Result<BrandtElement> {
        self.validate(s)?;
        self.validate(t)?;
        Ok(match (s, t) {
            (BrandtElement::Triple(x), BrandtElement::Triple(y)) => {
                triple_mul(&self.group, x, y)?.map_or(BrandtElement::Null, BrandtElement::Triple)
            }
            _ => BrandtElement::Null,
        })
    }

    pub fn validate(&self, s: &BrandtElement) -> Result<()> {
        match s {
            BrandtElement::Null => Ok(()),
            BrandtElement::Triple(t) => self.group.check(t.g),
        }
    }

    /// Every element with indices `< index_count`, null first.
    pub fn enumerate(&self, index_count: usize, group_elements: &[GroupElement]) -> Vec<BrandtElement> {
        let mut out = vec![BrandtElement::Null];
        for i in 0..index_count {
            for &g in group_elements {
                for j in 0..index_count {
                    out.push(BrandtElement::triple(i, g, j));
                }
            }
        }
        out
    }
}

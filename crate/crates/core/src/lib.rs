//! Exact computations in the l1 algebras of Brandt semigroups `B(I, G)`.
//!
//! The crate models a Brandt semigroup `S = T ∪ {∘}` with `T = I × G × I`,
//! finitely supported l1 vectors over `G`, `T`, `S` and their pair bases,
//! the convolution products, the splitting `l1(S) ≅ l1(T) ⊕ C`, and the
//! approximate diagonals `W_{F,λ}` built from Følner diagonals of `G`.
//!
//! All algebra is generic over the coefficient type through [`Scalar`];
//! the exact instantiation over [`Rational`] is what the verification
//! suites use, and the aliases below name the common cases.

pub mod blocks;
pub mod brandt;
pub mod checks;
pub mod diagonals;
pub mod error;
pub mod group;
pub mod json;
pub mod l1;
pub mod sample;
pub mod scalar;
pub mod splitting;

pub use brandt::{BrandtElement, BrandtSemigroup, Triple};
pub use error::{Error, Result};
pub use group::{Group, GroupElement};
pub use l1::{Convolution, L1Vector};
pub use scalar::{Rational, Scalar};

/// Coefficients of ℓ¹(G) over the exact rationals.
pub type GroupVector = L1Vector<GroupElement, Rational>;
/// ℓ¹(T): the Brandt semigroup without its null element.
pub type TVector = L1Vector<Triple, Rational>;
/// ℓ¹(S): the full Brandt semigroup algebra.
pub type SVector = L1Vector<BrandtElement, Rational>;
/// ℓ¹(G×G) = ℓ¹(G) ⊗̂ ℓ¹(G).
pub type GroupTensor = L1Vector<(GroupElement, GroupElement), Rational>;
/// ℓ¹(T×T) = ℓ¹(T) ⊗̂ ℓ¹(T).
pub type TTensor = L1Vector<(Triple, Triple), Rational>;
/// ℓ¹(S×S) = ℓ¹(S) ⊗̂ ℓ¹(S).
pub type STensor = L1Vector<(BrandtElement, BrandtElement), Rational>;

/// Floating-point ℓ¹(T), for timing sweeps only.
pub type TVectorF64 = L1Vector<Triple, f64>;
/// Floating-point ℓ¹(T×T).
pub type TTensorF64 = L1Vector<(Triple, Triple), f64>;

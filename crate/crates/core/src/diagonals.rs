//! Approximate diagonals for ℓ¹(G), ℓ¹(T) and ℓ¹(S).
//!
//! For an amenable `G` the Følner diagonals
//! `m_λ = (1/|F_λ|) Σ_{g∈F_λ} δ_g ⊗ δ_{g⁻¹}` form a bounded approximate
//! diagonal with `‖m_λ‖ = 1` and `π(m_λ) = δ_e`. For a finite nonempty
//! `F ⊂ I` they are spread over matrix units as
//! `W_{F,λ} = (1/#F) Σ_{i,j∈F} E^{m_λ}_{(i,j,j,i)}`, which is an (unbounded)
//! approximate diagonal of ℓ¹(T) along the net `Γ × Λ`.
//!
//! The net is swept along the chain `({0..k}, k)`. Each index gets a
//! [`DefectReport`] with the measured defects and the truncation bounds.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::blocks::{self, EIndex};
use crate::brandt::{BrandtElement, Triple};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::l1::{self, Convolution, L1Vector};
use crate::scalar::Scalar;
use crate::splitting;

/// An element `(F, λ)` of `Γ × Λ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetIndex {
    f: BTreeSet<usize>,
    lambda: usize,
}

impl NetIndex {
    pub fn new(f: BTreeSet<usize>, lambda: usize) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::Empty("index set F"));
        }
        Ok(NetIndex { f, lambda })
    }

    /// `({0, ..., k}, k)`.
    pub fn chain(k: usize) -> Self {
        NetIndex { f: (0..=k).collect(), lambda: k }
    }

    pub fn f(&self) -> &BTreeSet<usize> {
        &self.f
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `self ≥ other` in the product order of `Γ × Λ`.
    pub fn dominates(&self, f0: &BTreeSet<usize>, lambda0: usize) -> bool {
        self.f.is_superset(f0) && self.lambda >= lambda0
    }
}

/// Chain indices `k = 1..=length`.
pub fn chain_schedule(length: usize) -> Vec<NetIndex> {
    (1..=length).map(NetIndex::chain).collect()
}

/// `(1/|G|) Σ_g δ_g ⊗ δ_{g⁻¹}` for finite `G`; an exact diagonal.
pub fn exact_diagonal<K: Scalar>(group: &Group) -> Result<L1Vector<(GroupElement, GroupElement), K>> {
    if !group.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    Ok(averaged_diagonal(group, &group.folner_set(0)))
}

/// The Følner diagonal `m_λ` over the λ-th Følner set.
pub fn folner_diagonal<K: Scalar>(group: &Group, lambda: usize) -> L1Vector<(GroupElement, GroupElement), K> {
    averaged_diagonal(group, &group.folner_set(lambda))
}

fn averaged_diagonal<K: Scalar>(
    group: &Group,
    set: &BTreeSet<GroupElement>,
) -> L1Vector<(GroupElement, GroupElement), K> {
    let weight = K::one() / K::from_count(set.len());
    set.iter()
        .map(|&g| ((g, group.inv(g).expect("Følner sets lie in the group")), weight.clone()))
        .collect()
}

/// `W = (1/#F) Σ_{i,j∈F} E^m_{(i,j,j,i)}`.
pub fn brandt_w<K: Scalar>(
    f: &BTreeSet<usize>,
    m: &L1Vector<(GroupElement, GroupElement), K>,
) -> Result<L1Vector<(Triple, Triple), K>> {
    if f.is_empty() {
        return Err(Error::Empty("index set F"));
    }
    let scaled = m.scale(&(K::one() / K::from_count(f.len())));
    let mut w = L1Vector::zero();
    for &i in f {
        for &j in f {
            for (pair, c) in blocks::embed_e(&scaled, EIndex::new(i, j, j, i)).iter() {
                w.add_term(*pair, c.clone());
            }
        }
    }
    Ok(w)
}

/// `‖a·n − n·a‖` in any of the three algebras.
pub fn commutator_defect<B: Convolution, K: Scalar>(
    group: &Group,
    a: &L1Vector<B, K>,
    n: &L1Vector<(B, B), K>,
) -> Result<K> {
    let left = l1::tensor_act_left(group, a, n)?;
    let right = l1::tensor_act_right(group, n, a)?;
    Ok((&left - &right).norm())
}

/// `‖π(n) a − a‖`.
pub fn pi_defect<B: Convolution, K: Scalar>(
    group: &Group,
    a: &L1Vector<B, K>,
    n: &L1Vector<(B, B), K>,
) -> Result<K> {
    let pa = l1::convolve(group, &l1::pi(group, n)?, a)?;
    Ok((&pa - a).norm())
}

type GroupTensorK<K> = L1Vector<(GroupElement, GroupElement), K>;

fn group_commutator<K: Scalar>(group: &Group, c: &L1Vector<GroupElement, K>, m: &GroupTensorK<K>) -> Result<K> {
    commutator_defect(group, c, m)
}

/// Blockwise right-hand side of the commutator estimate:
///
/// `Σ_{u,v∈F} ‖a_{uv}·m − m·a_{uv}‖ + Σ_{v∈F, u∉F} ‖a_{uv}·m‖ + Σ_{u∈F, v∉F} ‖m·a_{uv}‖`.
pub fn e9_bound<K: Scalar>(
    group: &Group,
    a: &L1Vector<Triple, K>,
    f: &BTreeSet<usize>,
    m: &GroupTensorK<K>,
) -> Result<K> {
    if f.is_empty() {
        return Err(Error::Empty("index set F"));
    }
    let mut total = K::zero();
    for ((u, v), c) in blocks::blocks(a) {
        let term = match (f.contains(&u), f.contains(&v)) {
            (true, true) => group_commutator(group, &c, m)?,
            (false, true) => l1::tensor_act_left(group, &c, m)?.norm(),
            (true, false) => l1::tensor_act_right(group, m, &c)?.norm(),
            (false, false) => K::zero(),
        };
        total = total + term;
    }
    Ok(total)
}

/// Blockwise right-hand side of the π estimate:
///
/// `Σ_{i∈F, v} ‖π(m) a_{iv} − a_{iv}‖ + Σ_{u∉F, v} ‖a_{uv}‖`.
pub fn e10_bound<K: Scalar>(
    group: &Group,
    a: &L1Vector<Triple, K>,
    f: &BTreeSet<usize>,
    m: &GroupTensorK<K>,
) -> Result<K> {
    let pm = l1::pi(group, m)?;
    let mut total = K::zero();
    for ((u, _), c) in blocks::blocks(a) {
        let term = if f.contains(&u) { (&l1::convolve(group, &pm, &c)? - &c).norm() } else { c.norm() };
        total = total + term;
    }
    Ok(total)
}

/// `Σ_{(u,v)∈J₀} ‖a_{uv}‖` with `J₀ = (I × (I∖F₀)) ∪ ((I∖F₀) × I)`.
pub fn tail_mass<K: Scalar>(a: &L1Vector<Triple, K>, f0: &BTreeSet<usize>) -> K {
    a.iter()
        .filter(|(t, _)| !(f0.contains(&t.i) && f0.contains(&t.j)))
        .fold(K::zero(), |acc, (_, c)| acc + c.abs())
}

/// Smallest prefix `{0..k}` whose excluded block mass is `< ε`.
pub fn tail_truncation<K: Scalar>(a: &L1Vector<Triple, K>, epsilon: &K) -> Result<BTreeSet<usize>> {
    if *epsilon <= K::zero() {
        return Err(Error::NonPositiveEpsilon);
    }
    let top = blocks::support_indices(a).last().copied().unwrap_or(0);
    for k in 0..=top {
        let prefix: BTreeSet<usize> = (0..=k).collect();
        if tail_mass(a, &prefix) < *epsilon {
            return Ok(prefix);
        }
    }
    unreachable!("the full prefix has zero tail mass")
}

/// `(Ψ⊗Ψ)(W) + δ_∘⊗δ_∘`.
pub fn lift_diagonal<K: Scalar>(w: &L1Vector<(Triple, Triple), K>) -> L1Vector<(BrandtElement, BrandtElement), K> {
    let mut out = splitting::psi_tensor(w);
    out.add_term((BrandtElement::Null, BrandtElement::Null), K::one());
    out
}

/// Measurements and bound values at one net index.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport<K> {
    pub index: NetIndex,
    /// `‖a·W − W·a‖`.
    pub commutator_defect: K,
    /// `‖π(W)a − a‖`.
    pub pi_defect: K,
    pub e9_rhs: K,
    pub e10_rhs: K,
    /// `M = sup ‖m_λ‖` over the schedule.
    pub diagonal_bound_m: K,
    pub epsilon: K,
    pub f0: BTreeSet<usize>,
    /// First schedule λ from which the `F₀`-block commutator sum stays `< ε`.
    pub lambda0: Option<usize>,
    /// Same for the `F₀`-block π sum.
    pub lambda1: Option<usize>,
}

impl<K: Scalar> DefectReport<K> {
    /// `ε + 4εM`.
    pub fn commutator_bound(&self) -> K {
        let four = K::from_count(4);
        self.epsilon.clone() + four * self.epsilon.clone() * self.diagonal_bound_m.clone()
    }

    /// `3ε + εM`.
    pub fn pi_bound(&self) -> K {
        let three = K::from_count(3);
        three * self.epsilon.clone() + self.epsilon.clone() * self.diagonal_bound_m.clone()
    }

    /// Whether this index lies beyond `(F₀, λ₀)` and `(F₀, λ₁)`.
    pub fn in_tail_regime(&self) -> bool {
        match (self.lambda0, self.lambda1) {
            (Some(l0), Some(l1)) => self.index.dominates(&self.f0, l0.max(l1)),
            _ => false,
        }
    }
}

/// Smallest schedule λ from which `defect(λ') < ε` for every later schedule λ'.
fn stable_threshold<K: Scalar>(lambdas: &[usize], defects: &[K], epsilon: &K) -> Option<usize> {
    let mut best = None;
    for (lambda, d) in lambdas.iter().zip(defects).rev() {
        if d < epsilon {
            best = Some(*lambda);
        } else {
            break;
        }
    }
    best
}

/// Sweeps `W_{F,λ}` built from Følner diagonals along `schedule` and
/// reports defects of `a` together with the truncation bounds.
///
/// Indices are evaluated in parallel; the output follows schedule order.
pub fn theorem_sweep<K: Scalar>(
    group: &Group,
    a: &L1Vector<Triple, K>,
    schedule: &[NetIndex],
    epsilon: &K,
) -> Result<Vec<DefectReport<K>>> {
    if schedule.is_empty() {
        return Err(Error::Empty("sweep schedule"));
    }
    let f0 = tail_truncation(a, epsilon)?;
    let f0_blocks: Vec<_> = blocks::blocks(a)
        .into_iter()
        .filter(|((u, v), _)| f0.contains(u) && f0.contains(v))
        .map(|(_, c)| c)
        .collect();

    let lambdas: BTreeSet<usize> = schedule.iter().map(NetIndex::lambda).collect();
    let lambdas: Vec<usize> = lambdas.into_iter().collect();
    let per_lambda = lambdas
        .par_iter()
        .map(|&lambda| {
            let m: GroupTensorK<K> = folner_diagonal(group, lambda);
            let pm = l1::pi(group, &m)?;
            let mut comm = K::zero();
            let mut pi_sum = K::zero();
            for c in &f0_blocks {
                comm = comm + group_commutator(group, c, &m)?;
                pi_sum = pi_sum + (&l1::convolve(group, &pm, c)? - c).norm();
            }
            Ok((m.norm(), comm, pi_sum))
        })
        .collect::<Result<Vec<_>>>()?;

    let bound_m = per_lambda.iter().map(|(n, _, _)| n.clone()).fold(K::zero(), |acc, n| if n > acc { n } else { acc });
    let comm: Vec<K> = per_lambda.iter().map(|(_, c, _)| c.clone()).collect();
    let pis: Vec<K> = per_lambda.iter().map(|(_, _, p)| p.clone()).collect();
    let lambda0 = stable_threshold(&lambdas, &comm, epsilon);
    let lambda1 = stable_threshold(&lambdas, &pis, epsilon);

    schedule
        .par_iter()
        .map(|index| {
            let m: GroupTensorK<K> = folner_diagonal(group, index.lambda());
            let w = brandt_w(index.f(), &m)?;
            Ok(DefectReport {
                index: index.clone(),
                commutator_defect: commutator_defect(group, a, &w)?,
                pi_defect: pi_defect(group, a, &w)?,
                e9_rhs: e9_bound(group, a, index.f(), &m)?,
                e10_rhs: e10_bound(group, a, index.f(), &m)?,
                diagonal_bound_m: bound_m.clone(),
                epsilon: epsilon.clone(),
                f0: f0.clone(),
                lambda0,
                lambda1,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use crate::{GroupTensor, GroupVector, SVector, TTensor, TVector};

    fn g(x: i64) -> GroupElement {
        GroupElement(x)
    }
    fn t(i: usize, x: i64, j: usize) -> Triple {
        Triple::new(i, g(x), j)
    }
    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn exact_diagonal_examples() {
        let z2 = Group::cyclic(2).unwrap();
        let m: GroupTensor = exact_diagonal(&z2).unwrap();
        let expected = GroupTensor::from_terms([((g(0), g(0)), rat(1, 2)), ((g(1), g(1)), rat(1, 2))]);
        assert_eq!(m, expected);
        assert_eq!(l1::pi(&z2, &m).unwrap(), GroupVector::point(g(0)));
        let triv: GroupTensor = exact_diagonal(&Group::trivial()).unwrap();
        assert_eq!(triv, GroupTensor::point((g(0), g(0))));
        let z3 = Group::cyclic(3).unwrap();
        let m: GroupTensor = exact_diagonal(&z3).unwrap();
        assert_eq!(commutator_defect(&z3, &GroupVector::point(g(1)), &m).unwrap(), rat(0, 1));
        assert_eq!(exact_diagonal::<Rational>(&Group::integers()), Err(Error::InfiniteGroup));
    }

    #[test]
    fn folner_diagonal_examples() {
        let z = Group::integers();
        let m: GroupTensor = folner_diagonal(&z, 1);
        let third = rat(1, 3);
        let expected = GroupTensor::from_terms([
            ((g(-1), g(1)), third.clone()),
            ((g(0), g(0)), third.clone()),
            ((g(1), g(-1)), third),
        ]);
        assert_eq!(m, expected);
        for n in 0..=20 {
            let m: GroupTensor = folner_diagonal(&z, n);
            assert_eq!(m.norm(), rat(1, 1));
            assert_eq!(l1::pi(&z, &m).unwrap(), GroupVector::point(g(0)));
            let d = commutator_defect(&z, &GroupVector::point(g(1)), &m).unwrap();
            assert_eq!(d, rat(2, 2 * n as i64 + 1));
        }
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(folner_diagonal::<Rational>(&s3, 9), exact_diagonal(&s3).unwrap());
    }

    #[test]
    fn w_examples() {
        let triv = Group::trivial();
        let m: GroupTensor = exact_diagonal(&triv).unwrap();
        let w = brandt_w(&set(&[0]), &m).unwrap();
        assert_eq!(w, TTensor::point((t(0, 0, 0), t(0, 0, 0))));
        assert_eq!(brandt_w(&BTreeSet::new(), &m), Err(Error::Empty("index set F")));

        let z2 = Group::cyclic(2).unwrap();
        let m: GroupTensor = exact_diagonal(&z2).unwrap();
        let w = brandt_w(&set(&[0, 1]), &m).unwrap();
        assert_eq!(w.len(), 8);
        for (_, c) in w.iter() {
            assert_eq!(*c, rat(1, 4));
        }
        for i in 0..2 {
            for j in 0..2 {
                let mass: Rational = w
                    .iter()
                    .filter(|((x, y), _)| (x.i, x.j, y.i, y.j) == (i, j, j, i))
                    .map(|(_, c)| c.clone())
                    .sum();
                assert_eq!(mass, rat(1, 2));
            }
        }
        // #F disjoint blocks of norm ‖m‖/#F each, #F² of them
        assert_eq!(w.norm(), rat(2, 1) * m.norm());
    }

    #[test]
    fn commutator_examples() {
        let z = Group::integers();
        let a = TVector::point(t(0, 1, 0));
        for n in [0usize, 1, 4, 10] {
            let w = brandt_w(&set(&[0]), &folner_diagonal(&z, n)).unwrap();
            assert_eq!(commutator_defect(&z, &a, &w).unwrap(), rat(2, 2 * n as i64 + 1));
        }
        let w = brandt_w(&set(&[0, 3]), &folner_diagonal(&z, 2)).unwrap();
        assert_eq!(commutator_defect(&z, &TVector::zero(), &w).unwrap(), rat(0, 1));
    }

    #[test]
    fn pi_defect_examples() {
        let z = Group::integers();
        let w = brandt_w(&set(&[0]), &folner_diagonal(&z, 3)).unwrap();
        assert_eq!(pi_defect(&z, &TVector::point(t(0, 4, 1)), &w).unwrap(), rat(0, 1));
        assert_eq!(pi_defect(&z, &TVector::point(t(5, 4, 1)), &w).unwrap(), rat(1, 1));
        assert_eq!(pi_defect(&z, &TVector::zero(), &w).unwrap(), rat(0, 1));
    }

    #[test]
    fn blockwise_bound_examples() {
        let z = Group::integers();
        let m: GroupTensor = folner_diagonal(&z, 3);
        let f = set(&[0, 1, 2]);
        let w = brandt_w(&f, &m).unwrap();
        let a = TVector::point(t(2, -2, 1));
        let rhs = e9_bound(&z, &a, &f, &m).unwrap();
        assert_eq!(rhs, commutator_defect(&z, &GroupVector::point(g(-2)), &m).unwrap());
        assert_eq!(rhs, commutator_defect(&z, &a, &w).unwrap());
        let off = TVector::point(t(4, 1, 7));
        assert_eq!(e9_bound(&z, &off, &f, &m).unwrap(), rat(0, 1));
        assert_eq!(commutator_defect(&z, &off, &w).unwrap(), rat(0, 1));
        assert_eq!(e9_bound(&z, &TVector::zero(), &f, &m).unwrap(), rat(0, 1));
    }

    #[test]
    fn tail_truncation_examples() {
        let eps = rat(1, 10);
        assert_eq!(tail_truncation(&TVector::point(t(0, 3, 1)), &eps).unwrap(), set(&[0, 1]));
        assert_eq!(tail_truncation(&TVector::zero(), &eps).unwrap(), set(&[0]));
        let a = &TVector::point(t(0, 0, 4)) + &TVector::point(t(4, 1, 0));
        assert_eq!(tail_truncation(&a, &rat(1, 1)).unwrap(), set(&[0, 1, 2, 3, 4]));
        assert_eq!(tail_truncation(&a, &rat(0, 1)), Err(Error::NonPositiveEpsilon));
        // a small far-out block may be left outside F₀
        let b = &TVector::point(t(0, 0, 0)) + &TVector::scaled_point(t(9, 0, 9), rat(1, 20));
        assert_eq!(tail_truncation(&b, &eps).unwrap(), set(&[0]));
    }

    #[test]
    fn sweep_defect_column() {
        let z = Group::integers();
        let a = TVector::point(t(0, 1, 0));
        let reports = theorem_sweep(&z, &a, &chain_schedule(8), &rat(1, 10)).unwrap();
        for (k, r) in (1..).zip(&reports) {
            assert_eq!(r.commutator_defect, rat(2, 2 * k + 1));
            assert!(r.commutator_defect <= r.e9_rhs);
            assert!(r.pi_defect <= r.e10_rhs);
            assert_eq!(r.diagonal_bound_m, rat(1, 1));
        }
        // 2/(2λ+1) < 1/10 first at λ = 10, outside this schedule
        assert_eq!(reports[0].lambda0, None);
        assert_eq!(reports[0].lambda1, Some(1));
        assert!(theorem_sweep(&z, &a, &[], &rat(1, 10)).is_err());
    }

    #[test]
    fn sweep_finite_group_is_exact() {
        let z2 = Group::cyclic(2).unwrap();
        let a = TVector::from_terms([(t(0, 1, 1), rat(1, 2)), (t(1, 0, 0), rat(-3, 4))]);
        for r in theorem_sweep(&z2, &a, &chain_schedule(4), &rat(1, 10)).unwrap() {
            assert_eq!(r.commutator_defect, rat(0, 1));
            assert_eq!(r.pi_defect, rat(0, 1));
            assert!(r.in_tail_regime());
        }
    }

    #[test]
    fn lift_examples() {
        let lifted = lift_diagonal(&TTensor::zero());
        assert_eq!(lifted, L1Vector::point((BrandtElement::Null, BrandtElement::Null)));
        let z3 = Group::cyclic(3).unwrap();
        let w = brandt_w(&set(&[0, 1]), &exact_diagonal(&z3).unwrap()).unwrap();
        let lifted = lift_diagonal(&w);
        let null = SVector::point(BrandtElement::Null);
        assert_eq!(commutator_defect(&z3, &null, &lifted).unwrap(), rat(0, 1));
        assert_eq!(pi_defect(&z3, &null, &lifted).unwrap(), rat(0, 1));
        let x = SVector::point(BrandtElement::triple(1, g(2), 0));
        assert_eq!(commutator_defect(&z3, &x, &lifted).unwrap(), rat(0, 1));
        assert_eq!(pi_defect(&z3, &x, &lifted).unwrap(), rat(0, 1));
    }

    #[test]
    fn net_index_validation() {
        assert!(NetIndex::new(BTreeSet::new(), 0).is_err());
        let idx = NetIndex::chain(3);
        assert!(idx.dominates(&set(&[0, 2]), 3));
        assert!(!idx.dominates(&set(&[4]), 0));
        assert!(!idx.dominates(&set(&[0]), 4));
    }
}

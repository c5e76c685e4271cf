use std::collections::BTreeSet;

use brandt_l1::blocks;
use brandt_l1::diagonals;
use brandt_l1::l1::{self, convolve};
use brandt_l1::scalar::{rat, Rational};
use brandt_l1::splitting;
use brandt_l1::{BrandtElement, Group, GroupElement, GroupTensor, L1Vector, SVector, TTensor, TVector, Triple};
use num_traits::Signed;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(1, 4)), Just(rat(-1, 4)), Just(rat(1, 2)), Just(rat(-1, 2)), Just(rat(1, 1))]
}

fn group() -> impl Strategy<Value = Group> {
    prop_oneof![
        Just(Group::integers()),
        Just(Group::cyclic(3).unwrap()),
        Just(Group::symmetric(3).unwrap()),
    ]
}

fn element(g: &Group) -> BoxedStrategy<GroupElement> {
    match g.order() {
        Some(n) => (0..n as i64).prop_map(GroupElement).boxed(),
        None => (-3i64..=3).prop_map(GroupElement).boxed(),
    }
}

fn triple(g: &Group) -> impl Strategy<Value = Triple> {
    (0usize..=5, element(g), 0usize..=5).prop_map(|(i, x, j)| Triple::new(i, x, j))
}

fn t_vec(g: &Group) -> impl Strategy<Value = TVector> {
    prop::collection::vec((triple(g), coeff()), 0..=6).prop_map(TVector::from_terms)
}

fn s_vec(g: &Group) -> impl Strategy<Value = SVector> {
    let point = prop_oneof![1 => Just(BrandtElement::Null), 4 => triple(g).prop_map(BrandtElement::Triple)];
    prop::collection::vec((point, coeff()), 0..=6).prop_map(SVector::from_terms)
}

fn g_vec(g: &Group) -> impl Strategy<Value = L1Vector<GroupElement, Rational>> {
    prop::collection::vec((element(g), coeff()), 0..=6).prop_map(L1Vector::from_terms)
}

fn tt_vec(g: &Group) -> impl Strategy<Value = TTensor> {
    prop::collection::vec(((triple(g), triple(g)), coeff()), 0..=6).prop_map(TTensor::from_terms)
}

fn with_group<S: Strategy, F: Fn(&Group) -> S>(f: F) -> impl Strategy<Value = (Group, S::Value)> {
    group().prop_flat_map(move |g| {
        let s = f(&g);
        (Just(g), s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn t_product_routes_agree((g, (a, b)) in with_group(|g| (t_vec(g), t_vec(g)))) {
        prop_assert_eq!(convolve(&g, &a, &b).unwrap(), l1::convolve_t_pointwise(&g, &a, &b).unwrap());
    }

    #[test]
    fn convolutions_associative_submultiplicative((g, (a, b, c)) in with_group(|g| (s_vec(g), s_vec(g), s_vec(g)))) {
        let ab = convolve(&g, &a, &b).unwrap();
        prop_assert_eq!(convolve(&g, &ab, &c).unwrap(), convolve(&g, &a, &convolve(&g, &b, &c).unwrap()).unwrap());
        prop_assert!(ab.norm() <= a.norm() * b.norm());
    }

    #[test]
    fn group_algebra_associative((g, (a, b, c)) in with_group(|g| (g_vec(g), g_vec(g), g_vec(g)))) {
        let lhs = convolve(&g, &convolve(&g, &a, &b).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, convolve(&g, &a, &convolve(&g, &b, &c).unwrap()).unwrap());
    }

    #[test]
    fn block_norm_decomposition((_g, a) in with_group(t_vec)) {
        let total: Rational = blocks::blocks(&a).values().map(|c| c.norm()).sum();
        prop_assert_eq!(total, a.norm());
        let rebuilt = blocks::blocks(&a)
            .iter()
            .fold(TVector::zero(), |acc, ((u, v), c)| &acc + &blocks::embed_h(c, *u, *v));
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn module_compatibility((g, (a, t, b)) in with_group(|g| (t_vec(g), tt_vec(g), t_vec(g)))) {
        let left_then_right = l1::tensor_act_right(&g, &l1::tensor_act_left(&g, &a, &t).unwrap(), &b).unwrap();
        let right_then_left = l1::tensor_act_left(&g, &a, &l1::tensor_act_right(&g, &t, &b).unwrap()).unwrap();
        prop_assert_eq!(left_then_right, right_then_left);
        let pt = l1::pi(&g, &t).unwrap();
        prop_assert_eq!(l1::pi(&g, &l1::tensor_act_left(&g, &a, &t).unwrap()).unwrap(), convolve(&g, &a, &pt).unwrap());
        prop_assert_eq!(l1::pi(&g, &l1::tensor_act_right(&g, &t, &a).unwrap()).unwrap(), convolve(&g, &pt, &a).unwrap());
    }

    #[test]
    fn splitting_maps_are_homomorphisms((g, (a, b, s, s2)) in with_group(|g| (t_vec(g), t_vec(g), s_vec(g), s_vec(g)))) {
        let ab = convolve(&g, &a, &b).unwrap();
        prop_assert_eq!(splitting::psi(&ab), convolve(&g, &splitting::psi(&a), &splitting::psi(&b)).unwrap());
        let ss = convolve(&g, &s, &s2).unwrap();
        prop_assert_eq!(splitting::phi(&ss), splitting::phi(&s) * splitting::phi(&s2));
        prop_assert_eq!(splitting::theta(&ss), convolve(&g, &splitting::theta(&s), &splitting::theta(&s2)).unwrap());
        let pair = splitting::to_pair(&s).mul(&g, &splitting::to_pair(&s2)).unwrap();
        prop_assert_eq!(splitting::from_pair(&pair), ss);
    }

    #[test]
    fn splitting_exact_and_bounded((_g, (b, s)) in with_group(|g| (t_vec(g), s_vec(g)))) {
        prop_assert_eq!(splitting::theta(&splitting::psi(&b)), b.clone());
        prop_assert_eq!(splitting::phi(&splitting::psi(&b)), rat(0, 1));
        if splitting::phi(&s) == rat(0, 1) {
            prop_assert_eq!(splitting::psi(&splitting::theta(&s)), s.clone());
        }
        let p = splitting::to_pair(&s);
        prop_assert!(p.norm() <= rat(2, 1) * s.norm());
        prop_assert!(splitting::from_pair(&p).norm() <= rat(2, 1) * p.norm());
        prop_assert_eq!(splitting::from_pair(&p), s);
    }

    #[test]
    fn w_norm_scales_with_f(
        (_g, m) in with_group(|g| prop::collection::vec(((element(g), element(g)), coeff()), 0..=6).prop_map(GroupTensor::from_terms)),
        f in prop::collection::btree_set(0usize..8, 1..5),
    ) {
        let w = diagonals::brandt_w(&f, &m).unwrap();
        prop_assert_eq!(w.norm(), rat(f.len() as i64, 1) * m.norm());
    }

    #[test]
    fn commutator_bounded_by_blockwise_sum(
        (g, a) in with_group(t_vec),
        f in prop::collection::btree_set(0usize..=5, 1..=6),
        lambda in 0usize..6,
    ) {
        let m: GroupTensor = diagonals::folner_diagonal(&g, lambda);
        let w = diagonals::brandt_w(&f, &m).unwrap();
        let d = diagonals::commutator_defect(&g, &a, &w).unwrap();
        prop_assert!(d <= diagonals::e9_bound(&g, &a, &f, &m).unwrap());
        let p = diagonals::pi_defect(&g, &a, &w).unwrap();
        prop_assert!(p <= diagonals::e10_bound(&g, &a, &f, &m).unwrap());
        // π(m_λ) = δ_e, so the π defect is the mass of rows outside F
        let outside: Rational = a.iter().filter(|(t, _)| !f.contains(&t.i)).map(|(_, c)| c.clone().abs()).sum();
        prop_assert_eq!(p, outside);
    }

    #[test]
    fn tail_truncation_is_minimal((_g, a) in with_group(t_vec), eps in prop_oneof![Just(rat(1, 10)), Just(rat(1, 2)), Just(rat(1, 1))]) {
        let f0 = diagonals::tail_truncation(&a, &eps).unwrap();
        let k = *f0.iter().last().unwrap();
        prop_assert_eq!(f0.clone(), (0..=k).collect::<BTreeSet<_>>());
        prop_assert!(diagonals::tail_mass(&a, &f0) < eps);
        if k > 0 {
            let smaller: BTreeSet<usize> = (0..k).collect();
            prop_assert!(diagonals::tail_mass(&a, &smaller) >= eps);
        }
    }
}

#[test]
fn chain_defects_vanish_over_integers() {
    // closed form: for F_k covering every index of a, the defect of each block
    // is at most Σ |c_g| · 2|g| / (2k+1)
    let z = Group::integers();
    let a = TVector::from_terms([
        (Triple::new(0, GroupElement(1), 2), rat(1, 2)),
        (Triple::new(2, GroupElement(-2), 1), rat(-1, 4)),
        (Triple::new(1, GroupElement(0), 1), rat(1, 1)),
        (Triple::new(4, GroupElement(3), 0), rat(1, 4)),
    ]);
    let weight: Rational = a.iter().map(|(t, c)| c.clone().abs() * rat(2 * t.g.0.abs(), 1)).sum();
    let reports = diagonals::theorem_sweep(&z, &a, &diagonals::chain_schedule(12), &rat(1, 10)).unwrap();
    let mut last = None;
    for (k, r) in (1i64..).zip(&reports) {
        assert!(r.commutator_defect <= r.e9_rhs);
        let outside: Rational = a.iter().filter(|(t, _)| t.i > k as usize).map(|(_, c)| c.clone().abs()).sum();
        assert_eq!(r.pi_defect, outside);
        if k >= 4 {
            assert!(r.commutator_defect <= weight.clone() / rat(2 * k + 1, 1));
            if let Some(prev) = last {
                assert!(r.commutator_defect <= prev);
            }
            last = Some(r.commutator_defect.clone());
        }
    }
    assert_eq!(reports.last().unwrap().pi_defect, rat(0, 1));
}

#[test]
fn sweep_is_schedule_ordered_and_parallel_safe() {
    let z = Group::integers();
    let a = TVector::from_terms([(Triple::new(0, GroupElement(1), 1), rat(1, 1))]);
    let schedule = diagonals::chain_schedule(6);
    let parallel = diagonals::theorem_sweep(&z, &a, &schedule, &rat(1, 10)).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| diagonals::theorem_sweep(&z, &a, &schedule, &rat(1, 10)).unwrap());
    assert_eq!(parallel, serial);
    for (r, idx) in parallel.iter().zip(&schedule) {
        assert_eq!(&r.index, idx);
    }
}

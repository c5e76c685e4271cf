//! Invariant suites over a chosen group, run by the `verify` command.
//!
//! Each suite enumerates small cases exhaustively or draws seeded random
//! sparse elements, and records every case that fails.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::blocks::{self, EIndex};
use crate::brandt::{BrandtElement, BrandtSemigroup, Triple};
use crate::diagonals;
use crate::error::Result;
use crate::group::{Group, GroupElement, GroupKind};
use crate::l1::{self, Convolution, L1Vector};
use crate::sample::{self, SparseShape};
use crate::scalar::{rat, Rational};
use crate::splitting;

const MAX_REPORTED: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    /// Enumerations use indices `0..=index_bound`.
    pub index_bound: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { index_bound: 3, samples: 200, seed: 0x5eed }
    }
}

struct Recorder {
    outcome: CheckOutcome,
}

impl Recorder {
    fn new(name: &str) -> Self {
        Recorder { outcome: CheckOutcome { check: name.into(), cases: 0, failed: 0, failures: Vec::new() } }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.outcome.cases += 1;
        if !ok {
            self.outcome.failed += 1;
            if self.outcome.failures.len() < MAX_REPORTED {
                self.outcome.failures.push(describe());
            }
        }
    }

    fn finish(self) -> CheckOutcome {
        self.outcome
    }
}

/// Group elements used in enumerations: all of a finite group (capped at 6), `-1..=1` in ℤ.
pub fn enumeration_elements(group: &Group) -> Vec<GroupElement> {
    match group.elements() {
        Some(all) => all.into_iter().take(6).collect(),
        None => (-1..=1).map(GroupElement).collect(),
    }
}

fn group_tensor_probes(group: &Group) -> Vec<L1Vector<(GroupElement, GroupElement), Rational>> {
    let elems = enumeration_elements(group);
    let mut out: Vec<_> = elems.iter().flat_map(|&g| elems.iter().map(move |&h| L1Vector::point((g, h)))).collect();
    let mut mixed = L1Vector::zero();
    for (n, &g) in elems.iter().enumerate() {
        mixed.add_term((g, elems[(n + 1) % elems.len()]), rat(1 - 2 * (n as i64 % 2), (n + 2) as i64));
    }
    out.push(mixed);
    out
}

fn group_vector_probes(group: &Group) -> Vec<L1Vector<GroupElement, Rational>> {
    let elems = enumeration_elements(group);
    let mut out: Vec<_> = elems.iter().map(|&g| L1Vector::point(g)).collect();
    out.push(elems.iter().zip(1..).map(|(&g, n)| (g, rat(n, 3))).collect());
    out
}

fn points(group: &Group, bound: usize) -> Vec<Triple> {
    let elems = enumeration_elements(group);
    let mut out = Vec::new();
    for u in 0..=bound {
        for &g in &elems {
            for v in 0..=bound {
                out.push(Triple::new(u, g, v));
            }
        }
    }
    out
}

fn quads(bound: usize) -> Vec<EIndex> {
    let r = 0..=bound;
    let mut out = Vec::new();
    for i in r.clone() {
        for j in r.clone() {
            for i2 in r.clone() {
                for j2 in r.clone() {
                    out.push(EIndex::new(i, j, i2, j2));
                }
            }
        }
    }
    out
}

pub fn group_axioms(group: &Group) -> CheckOutcome {
    let mut rec = Recorder::new("group axioms");
    match group.kind() {
        GroupKind::Finite(t) => {
            let r = t.check_axioms();
            rec.case(r.is_ok(), || r.unwrap_err().to_string());
        }
        GroupKind::Integers => {
            let xs: Vec<_> = (-3..=3).map(GroupElement).collect();
            for &a in &xs {
                let inv = group.inv(a).unwrap();
                rec.case(group.mul(a, inv).unwrap() == group.identity(), || format!("inverse of {a}"));
                for &b in &xs {
                    for &c in &xs {
                        let lhs = group.mul(group.mul(a, b).unwrap(), c).unwrap();
                        let rhs = group.mul(a, group.mul(b, c).unwrap()).unwrap();
                        rec.case(lhs == rhs, || format!("associativity at {a},{b},{c}"));
                    }
                }
            }
        }
    }
    rec.finish()
}

pub fn brandt_laws(group: &Group, cfg: &CheckConfig) -> Result<CheckOutcome> {
    let mut rec = Recorder::new("brandt semigroup laws");
    let s = BrandtSemigroup::new(group.clone());
    let bound = cfg.index_bound.min(2);
    let elems = s.enumerate(bound + 1, &enumeration_elements(group));
    for a in &elems {
        rec.case(s.mul(&BrandtElement::Null, a)? == BrandtElement::Null && s.mul(a, &BrandtElement::Null)? == BrandtElement::Null, || {
            format!("∘ not absorbing against {a}")
        });
        if let BrandtElement::Triple(t) = a {
            let inv = BrandtElement::triple(t.j, group.inv(t.g)?, t.i);
            rec.case(s.mul(&s.mul(a, &inv)?, a)? == *a, || format!("regularity at {a}"));
        }
        for b in &elems {
            let ab = s.mul(a, b)?;
            for c in &elems {
                let ok = s.mul(&ab, c)? == s.mul(a, &s.mul(b, c)?)?;
                rec.case(ok, || format!("associativity at {a},{b},{c}"));
            }
        }
    }
    Ok(rec.finish())
}

/// Specialized matrix-unit formulas against the generic computations.
pub fn matrix_unit_identities(group: &Group, cfg: &CheckConfig) -> Result<Vec<CheckOutcome>> {
    let bound = cfg.index_bound;
    let pts = points(group, bound);
    let qs = quads(bound);
    let bs = group_tensor_probes(group);
    let cs = group_vector_probes(group);

    let mut e1 = Recorder::new("matrix units: embedding norms");
    for b in &bs {
        for &q in &qs {
            e1.case(blocks::embed_e(b, q).norm() == b.norm(), || format!("‖E‖ at {q:?}"));
        }
    }
    for c in &cs {
        for u in 0..=bound {
            for v in 0..=bound {
                e1.case(blocks::embed_h(c, u, v).norm() == c.norm(), || format!("‖H‖ at ({u},{v})"));
            }
        }
    }

    let mut e2 = Recorder::new("matrix units: left action on E");
    let mut e3 = Recorder::new("matrix units: right action on E");
    let mut e5 = Recorder::new("matrix units: diagonal map on E");
    for b in &bs {
        for &q in &qs {
            let e = blocks::embed_e(b, q);
            let pe: L1Vector<Triple, Rational> = l1::pi(group, &e)?;
            e5.case(pe == blocks::pi_e_formula(group, b, q)?, || format!("π(E) at {q:?}"));
            for &p in &pts {
                let point = L1Vector::point(p);
                let left = l1::tensor_act_left(group, &point, &e)?;
                e2.case(left == blocks::point_act_e_formula(group, p, b, q)?, || format!("δ{p}·E at {q:?}"));
                let right = l1::tensor_act_right(group, &e, &point)?;
                e3.case(right == blocks::e_act_point_formula(group, b, q, p)?, || format!("E·δ{p} at {q:?}"));
            }
        }
    }

    let mut e4 = Recorder::new("matrix units: products with H");
    for c in &cs {
        for i in 0..=bound {
            for j in 0..=bound {
                let h = blocks::embed_h(c, i, j);
                for &p in &pts {
                    let point = L1Vector::point(p);
                    let left = l1::convolve(group, &point, &h)?;
                    e4.case(left == blocks::point_mul_h_formula(group, p, c, i, j)?, || format!("δ{p}H({i},{j})"));
                    let right = l1::convolve(group, &h, &point)?;
                    e4.case(right == blocks::h_mul_point_formula(group, c, i, j, p)?, || format!("H({i},{j})δ{p}"));
                }
            }
        }
    }
    Ok(vec![e1.finish(), e2.finish(), e3.finish(), e4.finish(), e5.finish()])
}

fn shape(cfg: &CheckConfig) -> SparseShape {
    SparseShape { max_index: cfg.index_bound.max(1), ..SparseShape::default() }
}

fn algebra_laws_for<B, F>(group: &Group, cfg: &CheckConfig, name: &str, mut draw: F) -> Result<CheckOutcome>
where
    B: Convolution + std::fmt::Debug,
    F: FnMut(&mut ChaCha8Rng) -> L1Vector<B, Rational>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rec = Recorder::new(name);
    for _ in 0..cfg.samples {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let ab = l1::convolve(group, &a, &b)?;
        let lhs = l1::convolve(group, &ab, &c)?;
        let rhs = l1::convolve(group, &a, &l1::convolve(group, &b, &c)?)?;
        rec.case(lhs == rhs, || format!("associativity at {a:?}, {b:?}, {c:?}"));
        rec.case(ab.norm() <= a.norm() * b.norm(), || format!("submultiplicativity at {a:?}, {b:?}"));
    }
    Ok(rec.finish())
}

pub fn convolution_suites(group: &Group, cfg: &CheckConfig) -> Result<Vec<CheckOutcome>> {
    let sh = shape(cfg);
    let mut out = vec![
        algebra_laws_for(group, cfg, "l1(G) algebra laws", |r| sample::g_vector(r, group, &sh))?,
        algebra_laws_for(group, cfg, "l1(T) algebra laws", |r| sample::t_vector(r, group, &sh))?,
        algebra_laws_for(group, cfg, "l1(S) algebra laws", |r| sample::s_vector(r, group, &sh))?,
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 1);
    let mut routes = Recorder::new("l1(T) product: Brandt route vs pointwise sum");
    let mut norms = Recorder::new("block norm decomposition");
    let mut module = Recorder::new("tensor module compatibility");
    for _ in 0..cfg.samples {
        let a = sample::t_vector(&mut rng, group, &sh);
        let b = sample::t_vector(&mut rng, group, &sh);
        let t = sample::tt_tensor(&mut rng, group, &sh);
        routes.case(l1::convolve(group, &a, &b)? == l1::convolve_t_pointwise(group, &a, &b)?, || {
            format!("{a:?} * {b:?}")
        });
        let total: Rational = blocks::blocks(&a).values().map(|c| c.norm()).sum();
        norms.case(total == a.norm(), || format!("{a:?}"));

        let at = l1::tensor_act_left(group, &a, &t)?;
        let ok = l1::tensor_act_right(group, &at, &b)? == l1::tensor_act_left(group, &a, &l1::tensor_act_right(group, &t, &b)?)?;
        module.case(ok, || format!("(a·t)·b at {a:?}, {t:?}, {b:?}"));
        let ok = l1::pi(group, &at)? == l1::convolve(group, &a, &l1::pi(group, &t)?)?;
        module.case(ok, || format!("π(a·t) at {a:?}, {t:?}"));
        let ta = l1::tensor_act_right(group, &t, &a)?;
        let ok = l1::pi(group, &ta)? == l1::convolve(group, &l1::pi(group, &t)?, &a)?;
        module.case(ok, || format!("π(t·a) at {t:?}, {a:?}"));
    }
    out.extend([routes.finish(), norms.finish(), module.finish()]);
    Ok(out)
}

pub fn splitting_suite(group: &Group, cfg: &CheckConfig) -> Result<CheckOutcome> {
    let sh = shape(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 2);
    let mut rec = Recorder::new("l1(S) ≅ l1(T) ⊕ C splitting");
    let two = rat(2, 1);
    for _ in 0..cfg.samples {
        let b = sample::t_vector(&mut rng, group, &sh);
        let b2 = sample::t_vector(&mut rng, group, &sh);
        let a = sample::s_vector(&mut rng, group, &sh);
        let a2 = sample::s_vector(&mut rng, group, &sh);
        let pb = splitting::psi(&b);
        rec.case(splitting::theta(&pb) == b, || format!("ΘΨ ≠ Id at {b:?}"));
        rec.case(splitting::phi(&pb) == rat(0, 1), || format!("ΦΨ ≠ 0 at {b:?}"));
        let ker = {
            let mut k = a.clone();
            k.add_term(BrandtElement::Null, -splitting::phi(&a));
            k
        };
        rec.case(splitting::psi(&splitting::theta(&ker)) == ker, || format!("ker Φ ⊄ im Ψ at {ker:?}"));

        let prod_t = l1::convolve(group, &b, &b2)?;
        rec.case(splitting::psi(&prod_t) == l1::convolve(group, &pb, &splitting::psi(&b2))?, || {
            format!("Ψ not multiplicative at {b:?}, {b2:?}")
        });
        let prod_s = l1::convolve(group, &a, &a2)?;
        rec.case(splitting::phi(&prod_s) == splitting::phi(&a) * splitting::phi(&a2), || {
            format!("Φ not multiplicative at {a:?}, {a2:?}")
        });
        rec.case(
            splitting::theta(&prod_s) == l1::convolve(group, &splitting::theta(&a), &splitting::theta(&a2))?,
            || format!("Θ not multiplicative at {a:?}, {a2:?}"),
        );
        let (p, p2) = (splitting::to_pair(&a), splitting::to_pair(&a2));
        rec.case(splitting::to_pair(&prod_s) == p.mul(group, &p2)?, || format!("to_pair not multiplicative at {a:?}"));
        rec.case(splitting::from_pair(&p) == a, || format!("round trip at {a:?}"));
        rec.case(p.norm() <= two.clone() * a.norm(), || format!("‖to_pair‖ bound at {a:?}"));
        rec.case(splitting::from_pair(&p).norm() <= two.clone() * p.norm(), || format!("‖from_pair‖ bound at {a:?}"));
    }
    Ok(rec.finish())
}

pub fn folner_suite(group: &Group) -> Result<CheckOutcome> {
    let mut rec = Recorder::new("Følner diagonals");
    let gens = group.default_generators();
    for lambda in 0..=20 {
        let m: L1Vector<(GroupElement, GroupElement), Rational> = diagonals::folner_diagonal(group, lambda);
        rec.case(m.norm() == rat(1, 1), || format!("‖m_{lambda}‖ ≠ 1"));
        rec.case(l1::pi(group, &m)? == L1Vector::point(group.identity()), || format!("π(m_{lambda}) ≠ δ_e"));
        let set = group.folner_set(lambda);
        for &g in &gens {
            let d = diagonals::commutator_defect(group, &L1Vector::point(g), &m)?;
            let expected: Rational = group.folner_defect(&set, &[g])?;
            rec.case(d == expected, || format!("defect of δ_{g} at λ={lambda}: {d} vs {expected}"));
        }
    }
    Ok(rec.finish())
}

pub fn estimate_suite(group: &Group, cfg: &CheckConfig) -> Result<CheckOutcome> {
    let sh = shape(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 3);
    let mut rec = Recorder::new("blockwise commutator and π estimates");
    use rand::Rng;
    for _ in 0..cfg.samples {
        let a = sample::t_vector(&mut rng, group, &sh);
        let f: std::collections::BTreeSet<usize> = (0..=sh.max_index).filter(|_| rng.gen_bool(0.5)).chain([0]).collect();
        let lambda = rng.gen_range(0..=6);
        let m = diagonals::folner_diagonal(group, lambda);
        let w = diagonals::brandt_w(&f, &m)?;
        let d = diagonals::commutator_defect(group, &a, &w)?;
        let rhs = diagonals::e9_bound(group, &a, &f, &m)?;
        rec.case(d <= rhs, || format!("{d} > {rhs} at {a:?}, F={f:?}, λ={lambda}"));
        let p = diagonals::pi_defect(group, &a, &w)?;
        let rhs = diagonals::e10_bound(group, &a, &f, &m)?;
        rec.case(p <= rhs, || format!("{p} > {rhs} at {a:?}, F={f:?}, λ={lambda}"));
    }
    Ok(rec.finish())
}

/// Finite `G`, `F = {0..=index_bound}`: the exact diagonal and its lift have zero defects.
pub fn finite_exactness(group: &Group, cfg: &CheckConfig) -> Result<Option<CheckOutcome>> {
    if !group.is_finite() {
        return Ok(None);
    }
    let bound = cfg.index_bound.min(2);
    let f = (0..=bound).collect();
    let m: L1Vector<(GroupElement, GroupElement), Rational> = diagonals::exact_diagonal(group)?;
    let w = diagonals::brandt_w(&f, &m)?;
    let lifted = diagonals::lift_diagonal(&w);
    let mut rec = Recorder::new("finite exactness of W and its lift");
    for p in points(group, bound) {
        let a = L1Vector::point(p);
        rec.case(diagonals::commutator_defect(group, &a, &w)? == rat(0, 1), || format!("commutator at {p}"));
        rec.case(diagonals::pi_defect(group, &a, &w)? == rat(0, 1), || format!("π at {p}"));
    }
    let s = BrandtSemigroup::new(group.clone());
    for x in s.enumerate(bound + 1, &enumeration_elements(group)) {
        let a = L1Vector::point(x);
        rec.case(diagonals::commutator_defect(group, &a, &lifted)? == rat(0, 1), || format!("lift commutator at {x}"));
        rec.case(diagonals::pi_defect(group, &a, &lifted)? == rat(0, 1), || format!("lift π at {x}"));
    }
    Ok(Some(rec.finish()))
}

/// Every suite, in a fixed order.
pub fn run_all(group: &Group, cfg: &CheckConfig) -> Result<Vec<CheckOutcome>> {
    let mut out = vec![group_axioms(group), brandt_laws(group, cfg)?];
    out.extend(matrix_unit_identities(group, cfg)?);
    out.extend(convolution_suites(group, cfg)?);
    out.push(splitting_suite(group, cfg)?);
    out.push(folner_suite(group)?);
    out.push(estimate_suite(group, cfg)?);
    out.extend(finite_exactness(group, cfg)?);
    Ok(out)
}

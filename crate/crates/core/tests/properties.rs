//! Property tests for the algebraic layers and the category constructions.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use chromatic_core::chromcat::{build_category, quillen_category, Level};
use chromatic_core::colim::colim_points;
use chromatic_core::elemab::SubgroupFamily;
use chromatic_core::fgl::hopf::Atom;
use chromatic_core::fgl::{honda_fgl, hurewicz_eval, mod_indecomposables, HopfExpr, Term};
use chromatic_core::fp::{ipow, FpMatrix};
use chromatic_core::poly::{default_names, PolyFp};
use chromatic_core::subring::{a4_invariants, build_cr, SubringPresentation};

use common::*;

fn poly(p: u32, nvars: usize, max_exp: u32) -> impl Strategy<Value = PolyFp> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), 0..p), 0..6).prop_map(
        move |terms| {
            terms
                .into_iter()
                .fold(PolyFp::zero(p, nvars), |acc, (e, c)| {
                    acc.add(&PolyFp::monomial(p, nvars, e, c))
                })
        },
    )
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = FpMatrix> {
    prop::collection::vec(prop::collection::vec(0..p, cols), rows)
        .prop_map(move |r| FpMatrix::from_rows(p, &r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms((a, b, c) in prime().prop_flat_map(|p| (poly(p, 2, 4), poly(p, 2, 4), poly(p, 2, 4)))) {
        let p = a.prime();
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&PolyFp::one(p, 2)), a.clone());
        prop_assert_eq!(a.scale(p), PolyFp::zero(p, 2));
    }
}

proptest! {
    #[test]
    fn frobenius_in_characteristic_p((a, b) in prime().prop_flat_map(|p| (poly(p, 2, 3), poly(p, 2, 3)))) {
        let p = a.prime();
        prop_assert_eq!(a.add(&b).pow(p), a.pow(p).add(&b.pow(p)));
    }

    #[test]
    fn substitution_is_a_ring_map(
        (a, b, m, n) in prime().prop_flat_map(|p| (poly(p, 2, 3), poly(p, 2, 3), matrix(p, 3, 2), matrix(p, 2, 3)))
    ) {
        let sa = a.substitute_linear(&m).unwrap();
        let sb = b.substitute_linear(&m).unwrap();
        prop_assert_eq!(a.mul(&b).substitute_linear(&m).unwrap(), sa.mul(&sb));
        prop_assert_eq!(a.add(&b).substitute_linear(&m).unwrap(), sa.add(&sb));
        // substituting by m and then by n is substituting by n·m
        prop_assert_eq!(sa.substitute_linear(&n).unwrap(), a.substitute_linear(&n.mul(&m)).unwrap());
    }

    #[test]
    fn render_parse_round_trip(a in prime().prop_flat_map(|p| poly(p, 3, 4))) {
        let names = default_names(3);
        let back = PolyFp::parse(&a.render(&names), &names, a.prime()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn formal_sum_commutes_and_has_unit(
        (p, n, a, b) in prop::sample::select(vec![(2u32, 1u32), (2, 2), (3, 1), (3, 2)])
            .prop_flat_map(|(p, n)| (Just(p), Just(n), poly(p, 1, 5), poly(p, 1, 5)))
    ) {
        let fgl = honda_fgl(p, n, 10).unwrap();
        let a = a.filter(|m| m.degree() > 0);
        let b = b.filter(|m| m.degree() > 0);
        prop_assert_eq!(fgl.add_series(&a, &b).unwrap(), fgl.add_series(&b, &a).unwrap());
        prop_assert_eq!(fgl.add_series(&a, &PolyFp::zero(p, 1)).unwrap(), a.truncate(10));
    }
}

#[test]
fn formal_group_laws_satisfy_the_axioms() {
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let degree = 16;
        let fgl = honda_fgl(p, n, degree).unwrap();
        fgl.check_axioms().unwrap();
        let series = fgl.p_series().unwrap();
        let height = ipow(p as u64, n) as u32;
        assert!(
            series.terms().all(|(m, _)| m.degree() >= height),
            "[{p}](x) = {series}"
        );
        assert_eq!(series.coeff(&[height]), 1, "[{p}](x) = {series}");
    }
}

fn atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (0..3u32).prop_map(Atom::grouplike),
        (0..3u32, prop::collection::vec(1..4u32, 1..4)).prop_map(|(tag, mut indices)| {
            indices.sort_unstable();
            Atom { tag, indices }
        }),
    ]
}

fn hopf_expr(p: u32) -> impl Strategy<Value = HopfExpr> {
    prop::collection::vec((prop::collection::vec(atom(), 1..4), poly(p, 2, 3)), 0..5).prop_map(
        move |terms| {
            terms
                .into_iter()
                .fold(HopfExpr::zero(p, 2, 6), |acc, (atoms, c)| {
                    let atoms = atoms
                        .into_iter()
                        .map(|a| Atom {
                            tag: a.tag % p,
                            ..a
                        })
                        .collect();
                    acc.add(&HopfExpr::from_term(p, 2, 6, Term::new(atoms), c))
                })
        },
    )
}

proptest! {
    #[test]
    fn indecomposables_projection_is_idempotent_and_linear(
        (a, b, c) in (hopf_expr(2), hopf_expr(2), 0..2u32)
    ) {
        let ma = mod_indecomposables(&a);
        prop_assert_eq!(mod_indecomposables(&ma), ma.clone());
        prop_assert_eq!(mod_indecomposables(&a.add(&b)), ma.add(&mod_indecomposables(&b)));
        let c = PolyFp::constant(2, 2, c);
        prop_assert_eq!(mod_indecomposables(&a.scale(&c)), ma.scale(&c));
    }

    #[test]
    fn indecomposables_projection_at_three(a in hopf_expr(3), b in hopf_expr(3)) {
        let ma = mod_indecomposables(&a);
        prop_assert_eq!(mod_indecomposables(&ma), ma.clone());
        prop_assert_eq!(mod_indecomposables(&a.add(&b)), ma.add(&mod_indecomposables(&b)));
    }
}

/// `x^{a+b}` on `β_t` against `Σ_{i+j=t} (x^a on β_i) ∘ (x^b on β_j)`.
#[test]
fn hurewicz_respects_products() {
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let bound = ipow(p as u64, n) as u32;
        for a in 1..bound {
            for b in 1..bound - a {
                let xa = PolyFp::monomial(p, 1, vec![a], 1);
                let xb = PolyFp::monomial(p, 1, vec![b], 1);
                let xab = PolyFp::monomial(p, 1, vec![a + b], 1);
                for t in 0..bound {
                    let mut convolved = HopfExpr::zero(p, n, t);
                    for i in 0..=t {
                        let left = hurewicz_eval(&xa, i, p, n).unwrap();
                        let right = hurewicz_eval(&xb, t - i, p, n).unwrap();
                        for (lt, lc) in left.terms() {
                            for (rt, rc) in right.terms() {
                                let l = HopfExpr::from_term(p, n, t, lt.clone(), lc.clone());
                                let r = HopfExpr::from_term(p, n, t, rt.clone(), rc.clone());
                                convolved = convolved.add(&l.circ(&r).unwrap());
                            }
                        }
                    }
                    assert_eq!(
                        hurewicz_eval(&xab, t, p, n).unwrap(),
                        mod_indecomposables(&convolved),
                        "p = {p}, n = {n}, x^{a}·x^{b} on β_{t}"
                    );
                }
            }
        }
    }
}

fn invariant_pool() -> Vec<PolyFp> {
    let (d1, d0, eta) = a4_invariants();
    vec![
        d1.clone(),
        d0.clone(),
        eta.clone(),
        d1.pow(2),
        d0.pow(2),
        d1.mul(&d0),
        eta.mul(&eta),
        eta.mul(&d1),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn restriction_category_shrinks_as_the_ring_grows(small in 0u32..256, extra in 0u32..256) {
        let fam = family("a4", 2);
        let pool = invariant_pool();
        let pick = |mask: u32| pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.clone()).collect::<Vec<_>>();
        let r = SubringPresentation::new(fam.clone(), pick(small)).unwrap();
        let s = SubringPresentation::new(fam.clone(), pick(small | extra)).unwrap();
        prop_assert!(r.restriction_well_defined().unwrap());
        let (cr, cs) = (build_cr(&r), build_cr(&s));
        prop_assert!(cs.is_subcategory_of(&cr));
        prop_assert!(quillen_category(&fam).is_subcategory_of(&cs));
        category_axioms(&cs).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn colimits_grow_with_the_level() {
    for (name, group) in bundled_up_to(32) {
        for (p, q) in [(2u32, 2u64), (2, 4), (3, 3)] {
            let fam = Arc::new(SubgroupFamily::new(group.clone(), p).unwrap());
            let top = fam.p_rank() as u32 + 1;
            let sizes: Vec<usize> = (0..=top)
                .map(|n| {
                    colim_points(&build_category(&fam, Level::Finite(n)), q)
                        .unwrap()
                        .size()
                })
                .collect();
            assert!(
                sizes.windows(2).all(|w| w[0] <= w[1]),
                "{name} p = {p} q = {q}: {sizes:?}"
            );
            let quillen = colim_points(&quillen_category(&fam), q).unwrap().size();
            assert_eq!(*sizes.last().unwrap(), quillen, "{name}");
        }
    }
}

#[test]
fn chromatic_categories_are_categories() {
    for (name, group) in bundled_up_to(32) {
        for p in [2, 3] {
            let fam = Arc::new(SubgroupFamily::new(group.clone(), p).unwrap());
            for n in [Level::Finite(1), Level::Finite(2), Level::Infinity] {
                category_axioms(&build_category(&fam, n))
                    .unwrap_or_else(|e| panic!("{name} p = {p} level {n}: {e}"));
            }
        }
    }
}

#[test]
fn empty_subring_gives_level_zero() {
    let fam = family("a4", 2);
    let empty = build_cr(&SubringPresentation::new(fam.clone(), Vec::new()).unwrap());
    assert!(empty.same_homs(&build_category(&fam, Level::Finite(0))));
}

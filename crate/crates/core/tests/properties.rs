use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use chern_gap::bp_fgl::{reduce_mod_i, TruncSeries, VMono, VPoly};
use chern_gap::chern_integral::{ChernContext, Orientation};
use chern_gap::graded_ring::{Generator, GradedSubgroup, Monomial, RingElement, RingSpec};
use chern_gap::group_rep::GnEpsilonConfig;

const TUPLES: [(u64, u32, i64); 5] = [(5, 4, 1), (5, 4, 2), (5, 5, 1), (7, 4, 1), (7, 4, 3)];

fn ring_m() -> Arc<RingSpec> {
    RingSpec::new(
        vec![Generator::new("β", 1, 5), Generator::new("γ", 1, 25)],
        8,
    )
    .unwrap()
}

fn element(ring: &Arc<RingSpec>, terms: &[(u32, u32, i64)]) -> RingElement {
    terms
        .iter()
        .filter(|(a, b, _)| a + b <= ring.max_half_degree())
        .map(|&(a, b, c)| RingElement::monomial(ring, Monomial(vec![a, b]), c as i128))
        .fold(RingElement::zero(ring), |acc, t| &acc + &t)
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..5, 0u32..5, -60i64..60), 0..6)
}

fn homogeneous(ring: &Arc<RingSpec>, d: u32, coeffs: &[i64]) -> RingElement {
    (0..=d)
        .zip(coeffs)
        .map(|(a, &c)| RingElement::monomial(ring, Monomial(vec![a, d - a]), c as i128))
        .fold(RingElement::zero(ring), |acc, t| &acc + &t)
}

fn context(idx: usize) -> ChernContext {
    let (p, n, e) = TUPLES[idx];
    ChernContext::new(
        &GnEpsilonConfig::new(p, n, e, GnEpsilonConfig::default_max_half_degree(p)).unwrap(),
    )
    .unwrap()
}

/// Every element of the subgroup spanned by `gens`, by closing `{0}` under
/// adding generators.
fn span(ring: &Arc<RingSpec>, gens: &[RingElement]) -> HashSet<RingElement> {
    let mut seen = HashSet::from([RingElement::zero(ring)]);
    let mut frontier = vec![RingElement::zero(ring)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x + g;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn series(names: &[&str], d: u32, raw: &[(u32, u32, u32, i64)]) -> TruncSeries {
    let mut s = TruncSeries::zero(names, d);
    for &(a, b, v, c) in raw {
        let coeff = VPoly::term(VMono::v(1, v), BigRational::from_integer(BigInt::from(c)));
        let t = TruncSeries::one(names, d).scale_vpoly(&coeff);
        let x = TruncSeries::var(names, d, 0).pow(a).unwrap();
        let y = TruncSeries::var(names, d, 1).pow(b).unwrap();
        s = s.add(&t.mul(&x).unwrap().mul(&y).unwrap()).unwrap();
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(), b in terms(), c in terms()) {
        let r = ring_m();
        let (a, b, c) = (element(&r, &a), element(&r, &b), element(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_a_ring_map(idx in 0usize..5, minus: bool, a in terms(), b in terms()) {
        let ctx = context(idx);
        let o = if minus { Orientation::Minus } else { Orientation::Plus };
        let f = ctx.conj_step(o).unwrap();
        let (a, b) = (element(ctx.h_m(), &a), element(ctx.h_m(), &b));
        let fa = f.apply(&a).unwrap();
        let fb = f.apply(&b).unwrap();
        prop_assert_eq!(f.apply(&(&a * &b)).unwrap(), &fa * &fb);
        prop_assert_eq!(f.apply(&(&a + &b)).unwrap(), &fa + &fb);
        prop_assert_eq!(ctx.restriction().apply(&(&a * &b)).unwrap(),
            &ctx.restriction().apply(&a).unwrap() * &ctx.restriction().apply(&b).unwrap());
    }

    #[test]
    fn subgroup_membership_matches_enumeration(
        d in 1u32..3,
        gens in prop::collection::vec(prop::collection::vec(-30i64..30, 3), 1..3),
        target in prop::collection::vec(-30i64..30, 3),
    ) {
        let r = ring_m();
        let gens: Vec<RingElement> = gens.iter().map(|c| homogeneous(&r, d, c)).collect();
        let all = span(&r, &gens);
        let sub = GradedSubgroup::new(&r, d, gens.clone()).unwrap();
        let t = homogeneous(&r, d, &target);
        prop_assert_eq!(sub.contains(&t).unwrap(), all.contains(&t));
        for x in all.iter().take(20) {
            prop_assert!(sub.contains(x).unwrap());
        }
    }

    #[test]
    fn reduction_mod_i_is_a_ring_map(
        a in prop::collection::vec((0u32..4, 0u32..4, 0u32..2, -20i64..20), 0..5),
        b in prop::collection::vec((0u32..4, 0u32..4, 0u32..2, -20i64..20), 0..5),
    ) {
        let names = ["β", "γ"];
        let (a, b) = (series(&names, 7, &a), series(&names, 7, &b));
        let (ra, rb) = (reduce_mod_i(&a, 5).unwrap(), reduce_mod_i(&b, 5).unwrap());
        prop_assert_eq!(reduce_mod_i(&a.mul(&b).unwrap(), 5).unwrap(), ra.mul(&rb).unwrap());
        prop_assert_eq!(reduce_mod_i(&a.add(&b).unwrap(), 5).unwrap(), ra.add(&rb).unwrap());
    }

    #[test]
    fn transfer_reciprocity(idx in 0usize..5, minus: bool, x in terms(), y in terms()) {
        let ctx = context(idx);
        let o = if minus { Orientation::Minus } else { Orientation::Plus };
        let (x, y0) = (element(ctx.h_m(), &x), element(ctx.h_m(), &y));
        // an invariant class: the orbit sum of y0
        let step = ctx.conj_step(o).unwrap();
        let mut y = RingElement::zero(ctx.h_m());
        let mut cur = y0.clone();
        for _ in 0..ctx.p() {
            y = &y + &cur;
            cur = step.apply(&cur).unwrap();
        }
        prop_assert_eq!(step.apply(&y).unwrap(), y.clone());
        let res_y = ctx.restriction().apply(&y).unwrap();
        prop_assert_eq!(ctx.res_cor(&(&x * &y), o).unwrap(), &ctx.res_cor(&x, o).unwrap() * &res_y);
        prop_assert_eq!(ctx.res_cor(&step.apply(&x).unwrap(), o).unwrap(), ctx.res_cor(&x, o).unwrap());
        prop_assert_eq!(
            ctx.res_cor(&(&x + &y0), o).unwrap(),
            &ctx.res_cor(&x, o).unwrap() + &ctx.res_cor(&y0, o).unwrap()
        );
    }

    #[test]
    fn res_cor_matches_closed_form(idx in 0usize..5, minus: bool, a in 0u32..12, b in 0u32..6) {
        let ctx = context(idx);
        let (p, n, _) = TUPLES[idx];
        let eps = ctx.group().config().epsilon as i128;
        prop_assume!(a + b <= ctx.h_m().max_half_degree());
        let o = if minus { Orientation::Minus } else { Orientation::Plus };
        let (beta, gamma) = (ctx.beta(), ctx.gamma());
        let got = ctx.res_cor(&(&gamma.pow(a) * &beta.pow(b)), o).unwrap();
        // Σ_i Res((γ + iεβ)^a (β + i p^{n-3} γ)^b), with i ↦ -i for the other orientation
        let t = p.pow(n - 3) as i128;
        let mut want = RingElement::zero(ctx.h_b());
        for i in 0..p as i128 {
            let i = if minus { -i } else { i };
            let g_i = &gamma + &beta.scale(i * eps);
            let b_i = &beta + &gamma.scale(i * t);
            let term = &g_i.pow(a) * &b_i.pow(b);
            want = &want + &ctx.restriction().apply(&term).unwrap();
        }
        prop_assert_eq!(got, want);
    }
}

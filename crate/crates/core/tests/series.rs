use std::sync::Arc;

use proptest::prelude::*;
use thetachar::roots::RootSystem;
use thetachar::series::{Support, Term};
use thetachar::theta::{expand_eta, expand_theta11};
use thetachar::{q, Error, GradedSeries, Matrix, Rational, WeightSpace};

fn a1_space() -> Arc<WeightSpace> {
    RootSystem::parse("A1").unwrap().weight_space().clone()
}

fn scalar_space() -> Arc<WeightSpace> {
    Arc::new(WeightSpace::scalar())
}

fn arb_series(space: Arc<WeightSpace>) -> impl Strategy<Value = GradedSeries> {
    let term = (0i64..6, -2i64..=2, -3i64..=3);
    let rank = space.rank();
    (prop::collection::vec(term, 1..6), 4i64..10).prop_map(move |(ts, t)| {
        let terms = ts.into_iter().map(|(a, w, c)| Term { q: q(a, 2), w: vec![q(w, 1); rank], coeff: q(c, 1) });
        let s = GradedSeries::polynomial(&space, terms.collect());
        s.truncated(q(t, 1))
    })
}

fn arb_invertible(space: Arc<WeightSpace>) -> impl Strategy<Value = GradedSeries> {
    (arb_series(space.clone()), 1i64..4).prop_map(move |(s, c)| {
        // Add a dominant constant term below every other degree.
        let z = vec![q(0, 1); space.rank()];
        let lead = GradedSeries::monomial(&space, q(-2, 1), z.clone(), q(c, 1));
        lead.add(&s.mul_monomial(&q(1, 1), &z, &q(1, 1), &q(0, 1))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in arb_series(a1_space()), b in arb_series(a1_space()), c in arb_series(a1_space())) {
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.agrees_with(&b.mul(&a).unwrap()));
        prop_assert!(ab.mul(&c).unwrap().agrees_with(&a.mul(&b.mul(&c).unwrap()).unwrap()));
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = ab.add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
        prop_assert!(a.add(&b).unwrap().agrees_with(&b.add(&a).unwrap()));
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn inverse_is_two_sided(a in arb_invertible(a1_space())) {
        let inv = a.invert().unwrap();
        let p = a.mul(&inv).unwrap();
        prop_assert!(p.trunc().is_some());
        prop_assert!(p.agrees_with(&GradedSeries::one(a.space())));
        prop_assert!(inv.mul(&a).unwrap().agrees_with(&GradedSeries::one(a.space())));
    }

    #[test]
    fn q_power_is_homomorphism(a in arb_series(scalar_space()), b in arb_series(scalar_space()), u in 1i64..4) {
        let lhs = a.mul(&b).unwrap().substitute_q_power(u).unwrap();
        let rhs = a.substitute_q_power(u).unwrap().mul(&b.substitute_q_power(u).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn truncation_is_sound(d in 2i64..12) {
        let sp = a1_space();
        let alpha = vec![q(2, 1)];
        let hi = expand_theta11(&sp, 1, &alpha, &q(0, 1), &q(14, 1)).invert().unwrap();
        let lo = expand_theta11(&sp, 1, &alpha, &q(0, 1), &q(d, 1)).invert().unwrap();
        let cut = hi.truncated(lo.trunc().unwrap().clone());
        prop_assert_eq!(cut.terms(), lo.terms());
    }
}

#[test]
fn additive_identities() {
    let sp = scalar_space();
    let z = vec![];
    let one_minus_q = GradedSeries::polynomial(
        &sp,
        vec![Term { q: q(0, 1), w: z.clone(), coeff: q(1, 1) }, Term { q: q(1, 1), w: z.clone(), coeff: q(-1, 1) }],
    )
    .truncated(q(10, 1));
    let qq = GradedSeries::monomial(&sp, q(1, 1), z.clone(), q(1, 1));
    let s = one_minus_q.add(&qq).unwrap();
    assert_eq!(s.as_constant(), Some(q(1, 1)));
    assert_eq!(s.trunc(), Some(&q(10, 1)));
    let eta = expand_eta(&sp, 1, &q(10, 1));
    assert!(eta.add(&eta.neg()).unwrap().is_zero());
    assert!(eta.add(&GradedSeries::zero(&sp, None)).unwrap().agrees_with(&eta));
    assert!(eta.mul(&GradedSeries::one(&sp)).unwrap().agrees_with(&eta));
}

#[test]
fn t_exponents() {
    let sp = scalar_space();
    let a = GradedSeries::one(&sp).with_t_exp(q(1, 2));
    let b = GradedSeries::one(&sp);
    assert!(matches!(a.add(&b), Err(Error::TExpMismatch(..))));
    assert_eq!(a.mul(&a).unwrap().t_exp(), &q(1, 1));
    assert_eq!(a.invert().unwrap().t_exp(), &q(-1, 2));
    let s = a.substitute_t_slot(&q(1, 3), &q(2, 1), &[]);
    assert_eq!(s.t_exp(), &q(1, 6));
    assert_eq!(s.coeff(&q(1, 1), &[]), q(1, 1));
}

#[test]
fn geometric_inverse() {
    let sp = scalar_space();
    let one_minus_q = GradedSeries::q_series(&sp, q(0, 1), q(1, 1), &[1, -1], q(20, 1));
    let inv = one_minus_q.invert().unwrap();
    for n in 0..20 {
        assert_eq!(inv.coeff(&q(n, 1), &[]), q(1, 1));
    }
    let geo = GradedSeries::q_series(&sp, q(0, 1), q(1, 1), &[1; 30], q(30, 1));
    assert_eq!(one_minus_q.mul(&geo).unwrap().as_constant(), Some(q(1, 1)));
}

#[test]
fn eta_squared_and_cubed() {
    let sp = scalar_space();
    let eta = expand_eta(&sp, 1, &q(30, 1));
    let sq = eta.mul(&eta).unwrap();
    // q^{1/12} ∏(1 − qⁿ)², multiplied out factor by factor
    let mut direct = GradedSeries::one(&sp).truncated(q(30, 1));
    for n in 1..30 {
        let f = GradedSeries::q_series(&sp, q(0, 1), q(n, 1), &[1, -1], q(60, 1));
        direct = direct.mul(&f).unwrap().mul(&f).unwrap();
    }
    let direct = direct.mul_monomial(&q(1, 12), &[], &q(1, 1), &q(0, 1));
    let diff = sq.compare(&direct);
    assert!(diff.is_equal());
    assert!(diff.checked_below.unwrap() >= q(30, 1));

    // Jacobi: η³ = Σ (−1)ⁿ (2n+1) q^{(n²+n)/2 + 1/8}
    let cube = eta.pow(3).unwrap();
    let mut terms = Vec::new();
    for n in 0..10i64 {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        terms.push(Term { q: &q(n * n + n, 2) + &q(1, 8), w: vec![], coeff: q(sign * (2 * n + 1), 1) });
    }
    let jac = GradedSeries::from_terms(&sp, terms, Some(q(30, 1)), Rational::from_integer(0), 0, Support::WeightFree);
    assert!(cube.agrees_with(&jac));
}

#[test]
fn invert_needs_unique_lowest_term() {
    let sc = scalar_space();
    let two = GradedSeries::polynomial(
        &sc,
        vec![Term { q: q(0, 1), w: vec![], coeff: q(1, 1) }, Term { q: q(0, 1), w: vec![], coeff: q(1, 1) }],
    );
    assert_eq!(two.as_constant(), Some(q(2, 1)));
    assert!(GradedSeries::zero(&sc, Some(q(3, 1))).invert().is_err());

    // x + x⁻¹ + 2 with an untilted degree: three monomials at degree 0
    let flat = Arc::new(WeightSpace::new(Matrix::from_rows(vec![vec![q(1, 2)]]), vec![q(0, 1)]));
    let x = GradedSeries::polynomial(
        &flat,
        vec![
            Term { q: q(0, 1), w: vec![q(1, 1)], coeff: q(1, 1) },
            Term { q: q(0, 1), w: vec![q(-1, 1)], coeff: q(1, 1) },
            Term { q: q(0, 1), w: vec![q(0, 1)], coeff: q(2, 1) },
        ],
    )
    .truncated(q(5, 1));
    assert!(matches!(x.invert(), Err(Error::NotInvertible(_))));
}

#[test]
fn theta11_is_invertible() {
    let sp = a1_space();
    let t = expand_theta11(&sp, 1, &[q(2, 1)], &q(0, 1), &q(10, 1));
    let inv = t.invert().unwrap();
    assert_eq!(inv.unit(), 1);
    assert!(t.mul(&inv).unwrap().agrees_with(&GradedSeries::one(&sp)));
}

#[test]
fn substitutions() {
    let sp = a1_space();
    let eta = expand_eta(&sp, 1, &q(20, 1));
    assert!(eta.substitute_q_power(1).unwrap().agrees_with(&eta));
    let e2 = eta.substitute_q_power(2).unwrap();
    assert!(e2.agrees_with(&expand_eta(&sp, 2, &q(20, 1))));
    assert_eq!(e2.coeff(&q(2, 24), &[q(0, 1)]), q(1, 1));
    assert_eq!(e2.coeff(&(&q(2, 24) + &q(2, 1)), &[q(0, 1)]), q(-1, 1));

    let m = GradedSeries::monomial(&sp, q(0, 1), vec![q(2, 1)], q(1, 1));
    assert!(m.shift_weight_by_tau(&[q(0, 1)]).unwrap().agrees_with(&m));
    let shifted = m.shift_weight_by_tau(&[q(-1, 1)]).unwrap();
    assert_eq!(shifted.coeff(&q(-1, 1), &[q(2, 1)]), q(1, 1));
}

use thetachar::affine::enumerate_boundary;
use thetachar::characters::*;
use thetachar::roots::RootSystem;
use thetachar::{q, Rational};

#[test]
fn a2_boundary_characters_match_oracle() {
    let rs = RootSystem::parse("A2").unwrap();
    let depth = q(8, 1);
    for d in enumerate_boundary(&rs, 2).unwrap() {
        let ch = boundary_character(&d, &depth).unwrap();
        let diff = ch.series.compare(&oracle_character(&d, &depth).unwrap());
        assert!(diff.is_equal() && diff.compared_terms > 0, "{:?}", d.beta);
        assert!(positivity_of_series(&d, &ch.series).is_clean());
    }
}

#[test]
fn sl2_closed_form_literal() {
    for j in 0..3 {
        let d = sl2_descriptor(3, j).unwrap();
        let f = boundary_character(&d, &q(5, 1)).unwrap().product_form;
        assert!(f.same_as(&sl2_closed_form(3, j).unwrap()));
        if j > 0 {
            assert!(!f.same_as(&sl2_closed_form(3, j - 1).unwrap()));
        }
    }
    assert!(sl2_descriptor(3, 3).is_err());
    assert!(sl2_descriptor(2, 0).is_err());
}

#[test]
fn substitution_with_wrong_beta_fails() {
    let d = sl2_descriptor(5, 2).unwrap();
    assert!(substitution_identity_check(&d, &q(12, 1)).unwrap().holds());
    let wrong = vec![Rational::from_integer(-1)];
    let rep = substitution_check_with(&d, &wrong, &q(12, 1)).unwrap();
    assert!(!rep.holds());
}

#[test]
fn half_fundamental_closed_form_n3() {
    for p in 0..2 {
        let d = half_fundamental_descriptor(3, p).unwrap();
        let a = boundary_character(&d, &q(8, 1)).unwrap().series;
        let b = half_fundamental_closed_form(3, p, &q(8, 1)).unwrap();
        assert!(a.compare(&b).is_equal(), "p={p}");
    }
    assert!(half_fundamental_descriptor(4, 0).is_err());
}

#[test]
fn denominator_for_rank_two_types() {
    for t in ["A2", "B2", "G2"] {
        let rs = RootSystem::parse(t).unwrap();
        let a = denominator(&rs, &q(10, 1)).unwrap();
        let b = thetachar::oracle::macdonald_sum(&rs, &q(10, 1)).unwrap();
        assert!(a.compare(&b).is_equal(), "{t}");
    }
}

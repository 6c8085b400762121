use thetachar::characters::sl2_descriptor;
use thetachar::oracle::gordon_andrews;
use thetachar::roots::RootSystem;
use thetachar::wreduction::*;
use thetachar::{q, Error};

#[test]
fn virasoro_u7_is_andrews_gordon() {
    for j in 0..6 {
        let s = virasoro_character(7, j, &q(25, 1)).unwrap().series;
        let lead = s.lowest_degree().unwrap();
        let ga = gordon_andrews(s.space(), 7, j, 25).unwrap().mul_monomial(&lead, &[q(0, 1)], &q(1, 1), &q(0, 1));
        assert!(s.compare(&ga).is_equal(), "j={j}");
        assert!(s.is_integral());
    }
    assert!(virasoro_character(7, 6, &q(25, 1)).unwrap().is_zero());
}

#[test]
fn conformal_weight_gaps() {
    // (2,5) conformal weights 0 and −1/5.
    let a = virasoro_character(5, 0, &q(5, 1)).unwrap().series.lowest_degree().unwrap();
    let b = virasoro_character(5, 1, &q(5, 1)).unwrap().series.lowest_degree().unwrap();
    assert_eq!(&a - &b, q(1, 5));
}

#[test]
fn routes_agree_u7() {
    let g = principal_grading(&RootSystem::parse("A1").unwrap()).unwrap();
    for j in 0..7 {
        let d = sl2_descriptor(7, j).unwrap();
        let a = reduced_character(&d, &g, &q(20, 1)).unwrap().series;
        let b = reduced_by_substitution(&d, &g, &q(20, 1)).unwrap();
        assert!(a.compare(&b).is_equal(), "j={j}");
    }
}

#[test]
fn invalid_inputs() {
    assert!(matches!(central_charge_boundary_virasoro(4), Err(Error::InvalidU { .. })));
    assert!(matches!(virasoro_character(2, 0, &q(5, 1)), Err(Error::InvalidU { .. })));
    let a2 = RootSystem::parse("A2").unwrap();
    let m = minimal_grading(&a2).unwrap();
    let d = thetachar::affine::AdmissibleDescriptor::vacuum(&a2, 2).unwrap();
    assert!(matches!(reduced_character(&d, &m, &q(5, 1)), Err(Error::InvalidInput(_))));
    let sc = std::sync::Arc::new(thetachar::WeightSpace::scalar());
    let one_minus_q = thetachar::GradedSeries::q_series(&sc, q(0, 1), q(1, 1), &[1, -1], q(6, 1));
    assert!(!one_minus_q.sqrt().unwrap().is_integral());
    assert!(matches!(one_minus_q.scale(&q(2, 1)).sqrt(), Err(Error::SquareRootNotSeries(_))));
    let sq = one_minus_q.mul(&one_minus_q).unwrap();
    assert!(sq.sqrt().unwrap().agrees_with(&one_minus_q));
}

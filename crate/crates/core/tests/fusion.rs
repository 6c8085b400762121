use thetachar::affine::enumerate_boundary;
use thetachar::characters::sl2_descriptor;
use thetachar::fusion::*;
use thetachar::roots::RootSystem;
use thetachar::Error;

#[test]
fn sl2_s_matrix_and_fusion() {
    let rs = RootSystem::parse("A1").unwrap();
    for u in [3, 5, 7] {
        let s = SMatrix::build(&rs, u, SConfig::default()).unwrap();
        assert_eq!(s.len(), u as usize);
        assert!(s.unitarity_defect() < 1e-9 && s.symmetry_defect() < 1e-9);
        assert!((s.scale - 0.5).abs() < 1e-12);
    }
    let (a, b, c) = (sl2_descriptor(5, 1).unwrap(), sl2_descriptor(5, 2).unwrap(), sl2_descriptor(5, 3).unwrap());
    assert_eq!(verlinde_fusion(&a, &b, &c).unwrap(), sl2_fusion_closed_form(5, 1, 2, 3));
}

#[test]
fn sl3_tensors_match_labels() {
    let rs = RootSystem::parse("A2").unwrap();
    for u in [2, 4] {
        let s = SMatrix::build(&rs, u, SConfig::default()).unwrap();
        assert!(s.unitarity_defect() < 1e-9);
        let labels = sl3_labels(u);
        assert_eq!(labels.len(), (u * u) as usize);
        let pos: Vec<usize> =
            labels.iter().map(|l| position_of(&s.weights, &sl3_descriptor(&rs, u, *l).unwrap()).unwrap()).collect();
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                for (k, c) in labels.iter().enumerate() {
                    assert_eq!(s.fusion(pos[i], pos[j], pos[k]).unwrap(), sl3_fusion_closed_form(u, *a, *b, *c));
                }
            }
        }
    }
}

#[test]
fn verbatim_normalization_is_not_unitary() {
    let rs = RootSystem::parse("A1").unwrap();
    let cfg = SConfig { sine: SineReading::Real, normalization: Normalization::Verbatim };
    let s = SMatrix::build(&rs, 3, cfg).unwrap();
    assert!(s.unitarity_defect() > 0.1);
}

#[test]
fn mixed_levels_are_rejected() {
    let a = sl2_descriptor(3, 0).unwrap();
    let b = sl2_descriptor(5, 0).unwrap();
    assert_eq!(verlinde_fusion(&a, &a, &b), Err(Error::LevelMismatch));
    let rs = RootSystem::parse("A1").unwrap();
    assert!(enumerate_boundary(&rs, 4).is_err());
}

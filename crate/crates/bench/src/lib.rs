//! Workloads shared by the benchmarks.

use thetachar::affine::AdmissibleDescriptor;
use thetachar::characters::sl2_descriptor;
use thetachar::fusion::sl3_descriptor;
use thetachar::fusion::Sl3Label;
use thetachar::roots::RootSystem;
use thetachar::theta::{expand_eta, expand_theta11};
use thetachar::{q, GradedSeries, Result};

/// `θ₁₁(τ, α(z))` and `η(τ)³` over `A1`, the usual denominator pieces.
pub fn a1_pieces(depth: i64) -> (GradedSeries, GradedSeries) {
    let rs = RootSystem::parse("A1").expect("A1");
    let sp = rs.weight_space();
    let t = expand_theta11(sp, 1, &rs.simple_roots[0], &q(0, 1), &q(depth, 1));
    let e = expand_eta(sp, 1, &q(depth, 1)).pow(3).expect("eta power");
    (t, e)
}

pub fn sl2_weight(u: i64, j: i64) -> Result<AdmissibleDescriptor> {
    sl2_descriptor(u, j)
}

/// `(1; 1, 1)` at `u = 4`.
pub fn sl3_weight() -> Result<AdmissibleDescriptor> {
    let rs = RootSystem::parse("A2")?;
    sl3_descriptor(&rs, 4, Sl3Label { p: 1, k1: 1, k2: 1 })
}

//! Characters of W-algebra modules obtained by quantum Hamiltonian reduction.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::affine::AdmissibleDescriptor;
use crate::characters::{boundary_character, denominator};
use crate::error::{Error, Result};
use crate::linalg::{vscale, vsub, Matrix, RVec};
use crate::rational::Rational;
use crate::roots::RootSystem;
use crate::series::{GradedSeries, Support};
use crate::theta::{evaluate_product_form, expand_eta, expand_theta01, Prefactor, ThetaFactor, ThetaProductForm};

/// Eigenspace data of `ad x` for the `x` of an `sl₂`-triple.
#[derive(Clone, Debug)]
pub struct NilpotentGrading {
    pub rs: Arc<RootSystem>,
    /// `x` in weight coordinates, so `α(x) = (α|x)`.
    pub x: RVec,
    pub delta_zero: Vec<RVec>,
    pub delta_zero_plus: Vec<RVec>,
    pub delta_half: Vec<RVec>,
    /// `(dim g₀, dim g_{1/2})`.
    pub dims: (i64, i64),
    /// Basis of `h^f`.
    pub h_f: Vec<RVec>,
}

impl NilpotentGrading {
    /// Checks `α(x) ∈ ½ℤ` and `Δ_j ⊂ Δ₊` for `j > 0`.
    pub fn new(rs: &Arc<RootSystem>, x: RVec, h_f: Vec<RVec>) -> Result<Self> {
        if x.len() != rs.rank() || h_f.iter().any(|v| v.len() != rs.rank()) {
            return Err(Error::InvalidInput(format!("vectors need {} coordinates", rs.rank())));
        }
        if x.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("grading element x is zero".into()));
        }
        let half = Rational::new(1, 2);
        let mut delta_zero_plus = Vec::new();
        let mut delta_half = Vec::new();
        for a in &rs.positive_roots {
            let ax = rs.inner(a, &x);
            if !(&ax * &Rational::from_integer(2)).is_integer() {
                return Err(Error::InvalidInput(format!("α(x) = {ax} is not in ½ℤ")));
            }
            if ax.is_negative() {
                return Err(Error::InvalidInput("a negative root has positive x-eigenvalue".into()));
            }
            if ax.is_zero() {
                delta_zero_plus.push(a.clone());
            } else if ax == half {
                delta_half.push(a.clone());
            }
        }
        let mut delta_zero = delta_zero_plus.clone();
        delta_zero.extend(delta_zero_plus.iter().map(|a| crate::linalg::vneg(a)));
        let dims = ((rs.rank() + delta_zero.len()) as i64, delta_half.len() as i64);
        Ok(NilpotentGrading { rs: rs.clone(), x, delta_zero, delta_zero_plus, delta_half, dims, h_f })
    }

    /// Exponent of `η(τ)` in `R^W`, doubled: `3ℓ − dim g₀ − dim g_{1/2}`.
    fn eta_exponent_twice(&self) -> i64 {
        3 * self.rs.rank() as i64 - self.dims.0 - self.dims.1
    }

    /// Orthogonal projection onto `h^f`.
    pub fn restriction(&self) -> Matrix {
        if self.h_f.is_empty() {
            return Matrix::zeros(self.rs.rank(), self.rs.rank());
        }
        let perp = complement(&self.rs, &self.h_f);
        self.rs.orthogonal_projection(&perp)
    }
}

/// A basis of the orthogonal complement of `span(vs)`.
fn complement(rs: &RootSystem, vs: &[RVec]) -> Vec<RVec> {
    let p = rs.orthogonal_projection(vs);
    let mut out: Vec<RVec> = Vec::new();
    for i in 0..rs.rank() {
        let c = p.col(i);
        let mut trial = out.clone();
        trial.push(c.clone());
        if Matrix::from_rows(trial).rank() > out.len() {
            out.push(c);
        }
    }
    out
}

/// `x = ρ∨`, so `αᵢ(x) = 1`; `h^f = 0`.
pub fn principal_grading(rs: &Arc<RootSystem>) -> Result<NilpotentGrading> {
    NilpotentGrading::new(rs, rs.rho_dual.clone(), Vec::new())
}

/// `x = θ/2` for `f = e_{−θ}`; `h^f = θ^⊥`.
pub fn minimal_grading(rs: &Arc<RootSystem>) -> Result<NilpotentGrading> {
    let x = vscale(&Rational::new(1, 2), &rs.theta);
    let h_f = complement(rs, std::slice::from_ref(&rs.theta));
    NilpotentGrading::new(rs, x, h_f)
}

/// `R^W(τ, z)` with `z ∈ h^f`: weights are restricted to `h^f`.
pub fn w_denominator(g: &NilpotentGrading, depth: &Rational) -> Result<GradedSeries> {
    let rs = &g.rs;
    let space = rs.weight_space();
    let p = g.restriction();
    let e2 = g.eta_exponent_twice();
    let mut form = ThetaProductForm::new(rs.rank());
    for a in &g.delta_zero_plus {
        let pa = p.apply(a);
        if pa.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidInput("a root of Δ⁰₊ vanishes on h^f".into()));
        }
        form.push(ThetaFactor::theta11(1, pa, Rational::zero(), 1));
    }
    if g.delta_half.is_empty() && e2 % 2 == 0 {
        form.push(ThetaFactor::eta(1, rs.rank(), (e2 / 2) as i32));
        return evaluate_product_form(space, &form, depth);
    }
    // Everything that carries a half power goes under one square root.
    let mut under = expand_eta(space, 1, depth).pow(e2 as i32)?;
    for a in &g.delta_half {
        under = under.mul(&expand_theta01(space, 1, &p.apply(a), &Rational::zero(), depth))?;
    }
    let root = under.sqrt()?;
    if !root.is_integral() {
        return Err(Error::SquareRootNotSeries("the product under the root is not a perfect square".into()));
    }
    evaluate_product_form(space, &form, depth)?.mul(&root)
}

#[derive(Clone, Debug)]
pub struct ReducedCharacter {
    pub descriptor: AdmissibleDescriptor,
    pub grading: NilpotentGrading,
    pub product_form: ThetaProductForm,
    /// Weight-free when `h^f = 0`; may be identically zero.
    pub series: GradedSeries,
}

impl ReducedCharacter {
    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }
}

fn check_pair(d: &AdmissibleDescriptor, g: &NilpotentGrading) -> Result<()> {
    if d.rs.cartan_type != g.rs.cartan_type {
        return Err(Error::InvalidInput("descriptor and grading belong to different algebras".into()));
    }
    if !g.h_f.is_empty() {
        return Err(Error::InvalidInput("reduced characters are implemented for h^f = 0 only".into()));
    }
    Ok(())
}

/// The closed theta-product form of `ch_{H(Λ)}` at `z = 0`.
pub fn reduced_form(d: &AdmissibleDescriptor, g: &NilpotentGrading) -> Result<ThetaProductForm> {
    check_pair(d, g)?;
    let rs = &d.rs;
    let rank = rs.rank();
    let bx = vsub(&d.beta, &g.x);
    let mut f = ThetaProductForm::new(rank);
    let mut unit = Prefactor::one(rank);
    unit.unit = (3 * rs.num_positive() as i64).rem_euclid(4) as u8;
    f.prefactor = f.prefactor.mul(&unit);
    f.prefactor.q_exp = &Rational::new(rs.h_dual, 2 * d.u) * &rs.norm2(&bx);
    f.push(ThetaFactor::eta(d.u, rank, (rank as i64 - rs.num_positive() as i64) as i32));
    let e2 = g.eta_exponent_twice();
    if g.delta_half.is_empty() && e2 % 2 == 0 {
        f.push(ThetaFactor::eta(1, rank, -(e2 / 2) as i32));
    } else {
        return Err(Error::SquareRootNotSeries("Δ_{1/2} is nonempty".into()));
    }
    let zero = vec![Rational::zero(); rank];
    for a in &rs.positive_roots {
        let c = rs.inner(&d.y.act(a), &bx);
        f.push(ThetaFactor::theta11(d.u, zero.clone(), c, 1));
    }
    Ok(f.canonical())
}

/// `ch_{H(Λ)}` from the closed product form.
pub fn reduced_character(d: &AdmissibleDescriptor, g: &NilpotentGrading, depth: &Rational) -> Result<ReducedCharacter> {
    let form = reduced_form(d, g)?;
    let series = evaluate_product_form(d.rs.weight_space(), &form, depth)?;
    Ok(ReducedCharacter { descriptor: d.clone(), grading: g.clone(), product_form: form, series })
}

/// `ch_{H(Λ)}` by substituting `z ↦ −τx`, `t ↦ τ(x|x)/2` into `R̂ ch_Λ` and
/// dividing by `R^W`.
pub fn reduced_by_substitution(
    d: &AdmissibleDescriptor,
    g: &NilpotentGrading,
    depth: &Rational,
) -> Result<GradedSeries> {
    check_pair(d, g)?;
    let rs = &d.rs;
    let half_xx = &rs.norm2(&g.x) / &Rational::from_integer(2);
    let neg_x: RVec = g.x.iter().map(|c| -c.clone()).collect();
    let mut inner = depth.clone();
    for _ in 0..8 {
        let num = denominator(rs, &inner)?.mul(&boundary_character(d, &inner)?.series)?;
        // Every term of R̂·ch_Λ sits on q = u|μ|²/(2h∨).
        let num = num.certify_support(Support::Quadratic {
            kappa: Rational::new(d.u, 2 * rs.h_dual),
            offset: Rational::zero(),
        })?;
        let s = num.shift_weight_by_tau(&neg_x)?;
        let s = s.substitute_t_slot(&Rational::zero(), &half_xx, &vec![Rational::zero(); rs.rank()]);
        let s = s.forget_weights()?;
        let deep = match s.depth() {
            Some(x) => x >= *depth,
            None => s.trunc().is_some_and(|t| t >= depth),
        };
        if deep {
            let rw = w_denominator(g, &(depth + &Rational::one()))?;
            let out = s.mul(&rw.invert()?)?;
            return Ok(out.truncated_to_depth(depth));
        }
        inner = &inner * &Rational::from_integer(2);
    }
    Err(Error::InvalidInput("substituted numerator did not reach the requested depth".into()))
}

/// `c = 1 − 3(u−2)²/u` for the `(2, u)` minimal model.
pub fn central_charge_boundary_virasoro(u: i64) -> Result<Rational> {
    if u < 3 || u % 2 == 0 {
        return Err(Error::InvalidU { u, reason: "need u odd and at least 3".into() });
    }
    Ok(&Rational::one() - &Rational::new(3 * (u - 2) * (u - 2), u))
}

/// `H(Λ_j)` for the principal reduction of `sl₂` at `k = 2/u − 2`.
pub fn virasoro_character(u: i64, j: i64, depth: &Rational) -> Result<ReducedCharacter> {
    central_charge_boundary_virasoro(u)?;
    let d = crate::characters::sl2_descriptor(u, j)?;
    let g = principal_grading(&d.rs)?;
    reduced_character(&d, &g, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::sl2_descriptor;
    use crate::oracle::gordon_andrews;
    use crate::rational::q;

    #[test]
    fn gradings() {
        let a1 = RootSystem::parse("A1").unwrap();
        let g = principal_grading(&a1).unwrap();
        assert_eq!(a1.norm2(&g.x), q(1, 2));
        assert!(g.delta_zero_plus.is_empty() && g.delta_half.is_empty() && g.h_f.is_empty());
        assert_eq!(g.dims.0 + g.dims.1, 1);
        let a2 = RootSystem::parse("A2").unwrap();
        let g = principal_grading(&a2).unwrap();
        assert!(g.delta_zero_plus.is_empty() && g.delta_half.is_empty());
        assert_eq!(g.dims, (2, 0));
        let m = minimal_grading(&a2).unwrap();
        assert_eq!(m.delta_half.len(), 2);
        assert_eq!(m.h_f.len(), 1);
        assert!(NilpotentGrading::new(&a2, vec![q(0, 1); 2], vec![]).is_err());
    }

    #[test]
    fn w_denominators() {
        for (t, e) in [("A1", 1), ("A2", 2)] {
            let rs = RootSystem::parse(t).unwrap();
            let g = principal_grading(&rs).unwrap();
            let w = w_denominator(&g, &q(20, 1)).unwrap();
            assert!(w.agrees_with(&expand_eta(rs.weight_space(), 1, &q(20, 1)).pow(e).unwrap()));
        }
        // θ₀₁(τ, a)θ₀₁(τ, −a) is a square on h^f = θ^⊥.
        let a2 = RootSystem::parse("A2").unwrap();
        let w = w_denominator(&minimal_grading(&a2).unwrap(), &q(10, 1)).unwrap();
        assert!(w.is_integral());
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge_boundary_virasoro(3).unwrap(), q(0, 1));
        assert_eq!(central_charge_boundary_virasoro(5).unwrap(), q(-22, 5));
        assert!(matches!(central_charge_boundary_virasoro(2), Err(Error::InvalidU { .. })));
    }

    #[test]
    fn virasoro_u3() {
        for j in 0..2 {
            let ch = virasoro_character(3, j, &q(40, 1)).unwrap();
            assert_eq!(ch.series.as_constant(), Some(q(1, 1)), "j={j}: {:?}", ch.series);
        }
        assert!(virasoro_character(3, 2, &q(40, 1)).unwrap().is_zero());
    }

    #[test]
    fn virasoro_u5_is_gordon_andrews() {
        for j in 0..4 {
            let ch = virasoro_character(5, j, &q(30, 1)).unwrap().series;
            let lead = ch.lowest_degree().unwrap();
            let ga = gordon_andrews(ch.space(), 5, j, 30).unwrap();
            let shifted = ga.mul_monomial(&lead, &[q(0, 1)], &q(1, 1), &q(0, 1));
            assert!(ch.compare(&shifted).is_equal(), "j={j}");
        }
        assert!(virasoro_character(5, 4, &q(30, 1)).unwrap().is_zero());
    }

    #[test]
    fn two_routes_agree() {
        for (u, j) in [(3, 0), (3, 1), (3, 2), (5, 0), (5, 2), (5, 4)] {
            let d = sl2_descriptor(u, j).unwrap();
            let g = principal_grading(&d.rs).unwrap();
            let a = reduced_character(&d, &g, &q(20, 1)).unwrap().series;
            let b = reduced_by_substitution(&d, &g, &q(20, 1)).unwrap();
            let diff = a.compare(&b);
            assert!(diff.is_equal() && a.is_zero() == b.is_zero(), "u={u} j={j}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn two_routes_agree_a2() {
        let rs = RootSystem::parse("A2").unwrap();
        let g = principal_grading(&rs).unwrap();
        for d in crate::affine::enumerate_boundary(&rs, 2).unwrap() {
            let a = reduced_character(&d, &g, &q(6, 1)).unwrap().series;
            let b = reduced_by_substitution(&d, &g, &q(6, 1)).unwrap();
            assert!(a.compare(&b).is_equal() && a.is_zero() == b.is_zero(), "{:?}: {a:?} vs {b:?}", d.beta);
        }
    }
}

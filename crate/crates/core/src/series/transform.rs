//! Argument substitutions: `τ ↦ uτ`, `z ↦ Mz + τβ`, restriction of `z`.
//!
//! All of them send a monomial `q^a e^μ` to `q^{u·a + (Mμ|β)} e^{Mμ}` for a
//! norm-nonincreasing linear map `M` (a Weyl group element or an orthogonal
//! projection). Such a map changes the degree functional, so the new
//! truncation is derived from the series' support bound: every truncated term
//! satisfies `a − (μ|ξ) ≥ T` and `a ≥ κ|μ|² + e₀`, and for any `λ ∈ [0, u)`
//!
//! ```text
//!   u·a − (μ|η) ≥ λT + (u−λ)e₀ − |λξ − η|² / (4(u−λ)κ).
//! ```

use num_traits::One;

use super::{GradedSeries, Support, Term, WeightSpace};
use crate::error::{Error, Result};
use crate::linalg::{vsub, Matrix, RVec};
use crate::rational::Rational;

/// Linear action on weight exponents.
#[derive(Clone, Copy, Debug)]
pub enum WeightMap<'a> {
    Identity,
    /// Must not increase norms: Weyl group matrices, orthogonal projections.
    Linear(&'a Matrix),
}

impl WeightMap<'_> {
    fn apply(&self, w: &[Rational]) -> RVec {
        match self {
            WeightMap::Identity => w.to_vec(),
            WeightMap::Linear(m) => m.apply(w),
        }
    }

    fn apply_transpose(&self, w: &[Rational]) -> RVec {
        match self {
            WeightMap::Identity => w.to_vec(),
            WeightMap::Linear(m) => m.transpose().apply(w),
        }
    }
}

/// Best lower bound on the transformed degree of truncated terms.
fn transformed_trunc(
    space: &WeightSpace,
    t: &Rational,
    u: &Rational,
    eta: &[Rational],
    kappa: &Rational,
    offset: &Rational,
) -> Rational {
    let xi = space.tilt_dual();
    let mut best: Option<Rational> = None;
    let mut candidates: Vec<Rational> = (0..32).map(|j| u * &Rational::new(j, 32)).collect();
    for k in 1..=40 {
        candidates.push(u * &(Rational::one() - Rational::new(1, 1i64 << k.min(62))));
    }
    for lam in candidates {
        let rest = u - &lam;
        if !rest.is_positive() {
            continue;
        }
        let diff: RVec = xi.iter().zip(eta).map(|(x, e)| &(&lam * x) - e).collect();
        let penalty = &space.dual_norm2(&diff) / &(&Rational::from_integer(4) * &(&rest * kappa));
        let val = &(&(&lam * t) + &(&rest * offset)) - &penalty;
        if best.as_ref().is_none_or(|b| val > *b) {
            best = Some(val);
        }
    }
    best.expect("at least one candidate").floor_to_denominator(2520)
}

impl GradedSeries {
    /// Sends `q^a e^μ` to `q^{u·a + (Mμ|β)} e^{Mμ}`.
    pub fn transform(&self, u: i64, map: WeightMap<'_>, beta: Option<&[Rational]>) -> Result<GradedSeries> {
        assert!(u >= 1, "q-power substitution needs u >= 1");
        let space = self.space.clone();
        let ur = Rational::from_integer(u);
        let beta_vec: Option<RVec> = beta.filter(|b| !WeightSpace::is_zero_vec(b)).map(|b| b.to_vec());

        let trunc = match &self.trunc {
            None => None,
            Some(t) => {
                let xi = space.tilt_dual().to_vec();
                let target = match &beta_vec {
                    Some(b) => vsub(&xi, &space.gram().apply(b)),
                    None => xi.clone(),
                };
                let eta = map.apply_transpose(&target);
                let u_xi: RVec = xi.iter().map(|x| x * &ur).collect();
                if eta == u_xi || matches!(self.support, Support::WeightFree) {
                    Some(t * &ur)
                } else {
                    match &self.support {
                        Support::Quadratic { kappa, offset } => {
                            Some(transformed_trunc(&space, t, &ur, &eta, kappa, offset))
                        }
                        _ => return Err(Error::UnboundedSupport),
                    }
                }
            }
        };

        let support = match &self.support {
            Support::WeightFree => Support::WeightFree,
            Support::Unknown => Support::Unknown,
            Support::Quadratic { kappa, offset } => match &beta_vec {
                None => Support::Quadratic { kappa: kappa * &ur, offset: offset * &ur },
                Some(b) => {
                    let uk = kappa * &ur;
                    Support::Quadratic {
                        kappa: &uk / &Rational::from_integer(2),
                        offset: &(offset * &ur) - &(&space.norm2(b) / &(&Rational::from_integer(2) * &uk)),
                    }
                }
            },
        };

        let terms = self.terms().into_iter().map(|t| {
            let w = map.apply(&t.w);
            let mut qe = &t.q * &ur;
            if let Some(b) = &beta_vec {
                qe += &space.inner(&w, b);
            }
            Term { q: qe, w, coeff: t.coeff }
        });
        Ok(GradedSeries::from_terms(&space, terms, trunc, self.t_exp.clone(), self.unit, support))
    }

    /// `τ ↦ uτ`.
    pub fn substitute_q_power(&self, u: i64) -> Result<GradedSeries> {
        self.transform(u, WeightMap::Identity, None)
    }

    /// `z ↦ z + τβ`: each `e^{μ}` picks up `q^{(μ|β)}`.
    pub fn shift_weight_by_tau(&self, beta: &[Rational]) -> Result<GradedSeries> {
        self.transform(1, WeightMap::Identity, Some(beta))
    }

    /// Applies a linear map to every weight exponent.
    pub fn act_on_weights(&self, m: &Matrix) -> Result<GradedSeries> {
        self.transform(1, WeightMap::Linear(m), None)
    }

    /// Substitutes `t ↦ s·t + c·τ + (z|γ)`: the factor `e^{2πi·t_exp·t}`
    /// becomes `e^{2πi·s·t_exp·t} q^{t_exp·c} e^{t_exp·γ}`.
    pub fn substitute_t_slot(&self, s: &Rational, c: &Rational, gamma: &[Rational]) -> GradedSeries {
        let te = self.t_exp.clone();
        let w: RVec = gamma.iter().map(|g| g * &te).collect();
        let dt = &(&te * s) - &te;
        self.mul_monomial(&(&te * c), &w, &Rational::one(), &dt)
    }

    /// Whether the series has no weight dependence among its stored terms.
    pub fn is_weight_free(&self) -> bool {
        self.terms.keys().all(|m| m.w.iter().all(|x| *x == 0))
    }

    /// Returns the same series with the support marked weight-free if every
    /// stored weight is zero and the bound already forces it.
    pub fn support_is_weight_free(&self) -> bool {
        matches!(self.support, Support::WeightFree)
    }

    /// Drops the weight dependence after a projection to the zero subspace.
    pub fn forget_weights(&self) -> Result<GradedSeries> {
        let zero = Matrix::zeros(self.rank(), self.rank());
        let mut out = self.transform(1, WeightMap::Linear(&zero), None)?;
        out.support = Support::WeightFree;
        Ok(out)
    }
}

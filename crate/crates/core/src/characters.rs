//! Normalized denominator, boundary-level characters as theta products, and
//! the checks tying them to the sum side.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::affine::AdmissibleDescriptor;
use crate::error::{Error, Result};
use crate::linalg::{vneg, vscale, RVec};
use crate::oracle::{alternating_orbit_sum, macdonald_sum};
use crate::rational::Rational;
use crate::roots::RootSystem;
use crate::series::{GradedSeries, SeriesDiff, Support, WeightMap};
use crate::theta::{evaluate_product_form, Prefactor, ThetaFactor, ThetaProductForm};

#[derive(Clone, Debug)]
pub struct CharacterResult {
    pub descriptor: AdmissibleDescriptor,
    pub product_form: ThetaProductForm,
    pub series: GradedSeries,
    pub m_lambda: Rational,
}

/// `(−i)^{|Δ₊|} e^{2πih∨t} η(τ)^{(3ℓ−dim)/2} ∏_{α>0} θ₁₁(τ, α(z))`.
pub fn denominator_form(rs: &RootSystem) -> ThetaProductForm {
    let n = rs.num_positive() as i64;
    let mut f = ThetaProductForm::new(rs.rank());
    f.prefactor.t_exp = Rational::from_integer(rs.h_dual);
    f.prefactor = f.prefactor.mul(&unit_prefactor(rs.rank(), 3 * n));
    f.push(ThetaFactor::eta(1, rs.rank(), eta_exponent(rs)));
    for a in &rs.positive_roots {
        f.push(ThetaFactor::theta11(1, a.clone(), Rational::zero(), 1));
    }
    f
}

/// `(3ℓ − dim g)/2 = ℓ − |Δ₊|`.
fn eta_exponent(rs: &RootSystem) -> i32 {
    (rs.rank() as i64 - rs.num_positive() as i64) as i32
}

fn unit_prefactor(rank: usize, power: i64) -> Prefactor {
    let mut p = Prefactor::one(rank);
    p.unit = power.rem_euclid(4) as u8;
    p.pow(1)
}

/// `R̂` expanded `depth` above its lowest term.
pub fn denominator(rs: &RootSystem, depth: &Rational) -> Result<GradedSeries> {
    let s = evaluate_product_form(rs.weight_space(), &denominator_form(rs), depth)?;
    // Same terms as the Macdonald sum, all on q = |μ|²/(2h∨) − |ρ|²/(2h∨) + dim/24.
    s.certify_support(Support::Quadratic { kappa: Rational::new(1, 2 * rs.h_dual), offset: Rational::zero() })
}

/// The product form of a boundary character, written out factor by factor.
pub fn boundary_form(d: &AdmissibleDescriptor) -> ThetaProductForm {
    let rs = &d.rs;
    let hu = Rational::new(rs.h_dual, d.u);
    let mut f = ThetaProductForm::new(rs.rank());
    f.prefactor.t_exp = d.level.clone();
    f.prefactor.w_exp = vscale(&hu, &d.beta);
    f.prefactor.q_exp = &(&hu * &rs.norm2(&d.beta)) / &Rational::from_integer(2);
    let e = eta_exponent(rs);
    f.push(ThetaFactor::eta(d.u, rs.rank(), e));
    f.push(ThetaFactor::eta(1, rs.rank(), -e));
    for a in &rs.positive_roots {
        let ya = d.y.act(a);
        let c = rs.inner(&ya, &d.beta);
        if rs.root_sign(&ya) == Some(true) {
            f.push(ThetaFactor::theta11(d.u, ya, c, 1));
        } else {
            // θ₁₁ is odd in its second argument.
            f.prefactor.scalar = -f.prefactor.scalar.clone();
            f.push(ThetaFactor::theta11(d.u, vneg(&ya), -c, 1));
        }
        f.push(ThetaFactor::theta11(1, a.clone(), Rational::zero(), -1));
    }
    f.canonical()
}

pub fn boundary_character(d: &AdmissibleDescriptor, depth: &Rational) -> Result<CharacterResult> {
    let form = boundary_form(d);
    let series = evaluate_product_form(d.rs.weight_space(), &form, depth)?;
    Ok(CharacterResult { descriptor: d.clone(), product_form: form, series, m_lambda: d.m_lambda() })
}

/// Literal `e^{2πi(kt − jz/u)} q^{j²/2u} θ₁₁(uτ, z − jτ)/θ₁₁(τ, z)` for `sl₂`,
/// with `z` standing for `α₁(z)`.
pub fn sl2_closed_form(u: i64, j: i64) -> Result<ThetaProductForm> {
    let rs = RootSystem::parse("A1")?;
    let k = crate::affine::boundary_level(&rs, u)?;
    if !(0..u).contains(&j) {
        return Err(Error::InvalidInput(format!("j must lie in 0..{u}")));
    }
    let alpha = rs.simple_roots[0].clone();
    let mut f = ThetaProductForm::new(1);
    f.prefactor.t_exp = k;
    f.prefactor.w_exp = vscale(&Rational::new(-j, u), &alpha);
    f.prefactor.q_exp = Rational::new(j * j, 2 * u);
    f.push(ThetaFactor::theta11(u, alpha.clone(), Rational::from_integer(-j), 1));
    f.push(ThetaFactor::theta11(1, alpha, Rational::zero(), -1));
    Ok(f.canonical())
}

/// `Λ_j = t_{−jα/2}.(kΛ₀)` for `sl₂`, `0 ≤ j < u`.
pub fn sl2_descriptor(u: i64, j: i64) -> Result<AdmissibleDescriptor> {
    let rs = RootSystem::parse("A1")?;
    crate::affine::boundary_level(&rs, u)?;
    if !(0..u).contains(&j) {
        return Err(Error::InvalidInput(format!("j must lie in 0..{u}")));
    }
    let id = rs.weyl_elements()?[0].clone();
    AdmissibleDescriptor::new(&rs, u, vec![Rational::from_integer(-j)], id)
}

/// `Σ_{w∈Ŵ(Λ)} ε(w) e^{w(Λ+ρ̂)}` divided by the Macdonald sum.
pub fn oracle_character(d: &AdmissibleDescriptor, depth: &Rational) -> Result<GradedSeries> {
    let rs = &d.rs;
    let numerator = oracle_numerator(d, depth)?;
    let den = macdonald_sum(rs, depth)?;
    numerator.mul(&den.invert()?)
}

/// `R̂ · ch_Λ` on the sum side.
pub fn oracle_numerator(d: &AdmissibleDescriptor, depth: &Rational) -> Result<GradedSeries> {
    let rs = &d.rs;
    let level = &d.level + &Rational::from_integer(rs.h_dual);
    let q_shift = &d.m_lambda() + &Rational::new(rs.dim(), 24);
    alternating_orbit_sum(rs, Some(&d.element()), d.u, &level, &q_shift, depth)
}

/// Both sides of `(R̂ ch_Λ)(τ,z,t) = R̂(uτ, y⁻¹(z+τβ), (t + (z|β) + τ|β|²/2)/u)`.
#[derive(Clone, Debug)]
pub struct SubstitutionReport {
    pub target_depth: Rational,
    pub lhs_depth: Option<Rational>,
    pub rhs_depth: Option<Rational>,
    pub diff: SeriesDiff,
}

impl SubstitutionReport {
    pub fn holds(&self) -> bool {
        let deep = |d: &Option<Rational>| d.as_ref().is_some_and(|x| *x >= self.target_depth);
        self.diff.is_equal() && self.diff.compared_terms > 0 && deep(&self.lhs_depth) && deep(&self.rhs_depth)
    }
}

/// Right-hand side: `R̂` pushed through `τ ↦ uτ`, `z ↦ y⁻¹(z + τβ)` and the t-slot.
pub fn substituted_denominator(
    rs: &RootSystem,
    u: i64,
    y_matrix: &crate::linalg::Matrix,
    beta: &[Rational],
    depth: &Rational,
) -> Result<GradedSeries> {
    let ur = Rational::from_integer(u);
    let c = &rs.norm2(beta) / &(&Rational::from_integer(2) * &ur);
    let gamma = vscale(&ur.recip(), beta);
    let mut inner = depth.clone();
    for _ in 0..8 {
        let r = denominator(rs, &inner)?;
        let t = r.transform(u, WeightMap::Linear(y_matrix), Some(beta))?;
        let t = t.substitute_t_slot(&ur.recip(), &c, &gamma);
        if t.depth().is_some_and(|x| x >= *depth) {
            return Ok(t);
        }
        inner = &inner * &Rational::from_integer(2);
    }
    Err(Error::InvalidInput("transformed denominator did not reach the requested depth".into()))
}

pub fn substitution_identity_check(d: &AdmissibleDescriptor, depth: &Rational) -> Result<SubstitutionReport> {
    substitution_check_with(d, &d.beta, depth)
}

/// As above, with `β` on the right-hand side replaced (negative controls).
pub fn substitution_check_with(
    d: &AdmissibleDescriptor,
    beta: &[Rational],
    depth: &Rational,
) -> Result<SubstitutionReport> {
    let rs = &d.rs;
    let ch = boundary_character(d, depth)?.series;
    let lhs = denominator(rs, depth)?.mul(&ch)?;
    let rhs = substituted_denominator(rs, d.u, &d.y.matrix, beta, depth)?;
    Ok(SubstitutionReport {
        target_depth: depth.clone(),
        lhs_depth: lhs.depth(),
        rhs_depth: rhs.depth(),
        diff: lhs.compare(&rhs),
    })
}

/// `Λ_{N,p} = −(N/2)Λ_p` for `sl_N`, `N` odd, `u = 2`.
pub fn half_fundamental_descriptor(n: i64, p: i64) -> Result<AdmissibleDescriptor> {
    check_half_fundamental(n, p)?;
    let rs = RootSystem::parse(&format!("A{}", n - 1))?;
    let mut beta = vec![Rational::zero(); rs.rank()];
    if p > 0 {
        beta[(p - 1) as usize] = -Rational::one();
    }
    let id = rs.weyl_elements()?[0].clone();
    AdmissibleDescriptor::new(&rs, 2, beta, id)
}

fn check_half_fundamental(n: i64, p: i64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidInput(format!("N must be odd and at least 3, got {n}")));
    }
    if !(0..n).contains(&p) {
        return Err(Error::InvalidInput(format!("p must lie in 0..{n}, got {p}")));
    }
    Ok(())
}

/// The `θ₀₁` closed form for `ch_{Λ_{N,p}}`: no q-power or
/// weight prefactor beyond `i^{p(N−p)} e^{−πiNt}`.
pub fn half_fundamental_form(n: i64, p: i64) -> Result<ThetaProductForm> {
    check_half_fundamental(n, p)?;
    let rank = (n - 1) as usize;
    let rs = RootSystem::parse(&format!("A{rank}"))?;
    let mut f = ThetaProductForm::new(rank);
    f.prefactor = f.prefactor.mul(&unit_prefactor(rank, p * (n - p)));
    f.prefactor.t_exp = Rational::new(-n, 2);
    let e = ((n - 1) * (n - 2) / 2) as i32;
    f.push(ThetaFactor::eta(2, rank, -e));
    f.push(ThetaFactor::eta(1, rank, e));
    for i in 1..n {
        for j in i..n {
            let mut alpha = vec![Rational::zero(); rank];
            for m in i..=j {
                for (x, s) in alpha.iter_mut().zip(&rs.simple_roots[(m - 1) as usize]) {
                    *x += s;
                }
            }
            if i <= p && p <= j {
                f.push(ThetaFactor::theta01(2, alpha.clone(), Rational::zero(), 1));
            } else {
                f.push(ThetaFactor::theta11(2, alpha.clone(), Rational::zero(), 1));
            }
            f.push(ThetaFactor::theta11(1, alpha, Rational::zero(), -1));
        }
    }
    Ok(f.canonical())
}

pub fn half_fundamental_closed_form(n: i64, p: i64, depth: &Rational) -> Result<GradedSeries> {
    let form = half_fundamental_form(n, p)?;
    let rs = RootSystem::parse(&format!("A{}", n - 1))?;
    evaluate_product_form(rs.weight_space(), &form, depth)
}

/// One coefficient of `e^{−Λ} ch_Λ` that is not allowed in a highest-weight module.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub q: String,
    pub weight: Vec<String>,
    pub coeff: String,
    pub reason: &'static str,
}

#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub checked_terms: usize,
    pub violations: Vec<Violation>,
}

impl PositivityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.checked_terms > 0
    }
}

pub fn positivity_report(d: &AdmissibleDescriptor, depth: &Rational) -> Result<PositivityReport> {
    let ch = boundary_character(d, depth)?;
    Ok(positivity_of_series(d, &ch.series))
}

/// Checks that `q^{−m_Λ + Λ(d)} e^{−Λ̄} ch` only has monomials `q^{n₀} e^{−γ}`
/// with `n₀δ + γ ∈ Q̂₊`, non-negative integer coefficients, and constant term 1.
pub fn positivity_of_series(d: &AdmissibleDescriptor, series: &GradedSeries) -> PositivityReport {
    let rs = &d.rs;
    let shift = &d.lambda.delta - &d.m_lambda();
    let s = series.mul_monomial(&shift, &vneg(&d.lambda.finite), &Rational::one(), &Rational::zero());
    let theta_coeffs: RVec = rs.theta_coeffs.iter().map(|&x| Rational::from_integer(x)).collect();
    let mut violations = Vec::new();
    let terms = s.terms();
    let mut push = |t: &crate::series::Term, reason| {
        violations.push(Violation {
            q: t.q.to_string(),
            weight: t.w.iter().map(|x| x.to_string()).collect(),
            coeff: t.coeff.to_string(),
            reason,
        })
    };
    if s.unit() != 0 {
        if let Some(t) = terms.first() {
            push(t, "imaginary unit on the character");
        }
    }
    let mut top = Rational::zero();
    for t in &terms {
        if crate::series::WeightSpace::is_zero_vec(&t.w) && t.q.is_zero() {
            top = t.coeff.clone();
        }
        if !t.q.is_integer() || t.q.is_negative() {
            push(t, "q-exponent outside Z≥0");
            continue;
        }
        // −weight = γ in root coordinates; need γ + n₀θ ∈ Q₊.
        let gamma = rs.root_coefficients(&vneg(&t.w));
        let ok = gamma.iter().zip(&theta_coeffs).all(|(g, th)| {
            let v = g + &(&t.q * th);
            v.is_integer() && !v.is_negative()
        });
        if !ok {
            push(t, "weight not below the highest weight");
        }
        if !t.coeff.is_integer() {
            push(t, "non-integer multiplicity");
        } else if t.coeff.is_negative() {
            push(t, "negative multiplicity");
        }
    }
    if top != Rational::one() {
        let fake = crate::series::Term { q: Rational::zero(), w: vec![Rational::zero(); rs.rank()], coeff: top };
        push(&fake, "highest-weight multiplicity is not 1");
    }
    PositivityReport { checked_terms: terms.len(), violations }
}

/// The root system a descriptor lives on.
pub fn root_system_of(d: &AdmissibleDescriptor) -> &Arc<RootSystem> {
    &d.rs
}

//! Affine weights `λ̄ + kΛ₀ + aδ`, the affine Weyl group action, and boundary
//! principal admissible weights.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vadd, vneg, vscale, vsub, Matrix, RVec};
use crate::rational::Rational;
use crate::roots::{RootSystem, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    pub finite: RVec,
    /// Coefficient of `Λ₀`, equal to `λ(K)`.
    pub level: Rational,
    /// Coefficient of `δ`.
    pub delta: Rational,
}

impl AffineWeight {
    pub fn new(finite: RVec, level: Rational, delta: Rational) -> Self {
        AffineWeight { finite, level, delta }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Rational::zero(); rank], Rational::zero(), Rational::zero())
    }

    /// `kΛ₀`.
    pub fn level_only(rank: usize, k: Rational) -> Self {
        Self::new(vec![Rational::zero(); rank], k, Rational::zero())
    }

    pub fn delta_only(rank: usize, a: Rational) -> Self {
        Self::new(vec![Rational::zero(); rank], Rational::zero(), a)
    }

    pub fn add(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(vadd(&self.finite, &o.finite), &self.level + &o.level, &self.delta + &o.delta)
    }

    pub fn sub(&self, o: &AffineWeight) -> AffineWeight {
        AffineWeight::new(vsub(&self.finite, &o.finite), &self.level - &o.level, &self.delta - &o.delta)
    }

    /// `(λ|μ)` with `(Λ₀|δ) = 1`, `(Λ₀|Λ₀) = (δ|δ) = 0`.
    pub fn inner(&self, rs: &RootSystem, o: &AffineWeight) -> Rational {
        &rs.inner(&self.finite, &o.finite) + &(&(&self.level * &o.delta) + &(&self.delta * &o.level))
    }

    pub fn norm2(&self, rs: &RootSystem) -> Rational {
        self.inner(rs, self)
    }
}

/// `ρ̂ = h∨Λ₀ + ρ`.
pub fn rho_hat(rs: &RootSystem) -> AffineWeight {
    AffineWeight::new(rs.rho.clone(), Rational::from_integer(rs.h_dual), Rational::zero())
}

/// `t_β(λ) = λ + λ(K)β − ((λ|β) + ½λ(K)|β|²)δ`.
pub fn translate(rs: &RootSystem, lambda: &AffineWeight, beta: &[Rational]) -> Result<AffineWeight> {
    if !rs.in_dual_lattice(beta) {
        return Err(Error::NotInDualLattice);
    }
    Ok(translate_unchecked(rs, lambda, beta))
}

fn translate_unchecked(rs: &RootSystem, lambda: &AffineWeight, beta: &[Rational]) -> AffineWeight {
    let k = &lambda.level;
    let finite = vadd(&lambda.finite, &vscale(k, beta));
    let shift = &rs.inner(&lambda.finite, beta) + &(&(k * &rs.norm2(beta)) / &Rational::from_integer(2));
    AffineWeight::new(finite, k.clone(), &lambda.delta - &shift)
}

/// Real affine root `α + nδ` (or `nδ` when `finite` is zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub finite: RVec,
    pub n: i64,
}

impl AffineRoot {
    pub fn is_real(&self) -> bool {
        self.finite.iter().any(|x| !x.is_zero())
    }

    /// `α + nδ > 0` iff `n ≥ 1`, or `n = 0` and `α > 0`.
    pub fn is_positive(&self, rs: &RootSystem) -> bool {
        self.n >= 1 || (self.n == 0 && rs.root_sign(&self.finite) == Some(true))
    }

    pub fn as_weight(&self) -> AffineWeight {
        AffineWeight::new(self.finite.clone(), Rational::zero(), Rational::from_integer(self.n))
    }
}

/// `t_β ∘ y` with `β ∈ Q*`, `y ∈ W`.
#[derive(Clone, Debug)]
pub struct AffineElement {
    pub beta: RVec,
    pub y: WeylElement,
}

impl AffineElement {
    pub fn new(rs: &RootSystem, beta: RVec, y: WeylElement) -> Result<Self> {
        if !rs.in_dual_lattice(&beta) {
            return Err(Error::NotInDualLattice);
        }
        Ok(AffineElement { beta, y })
    }

    pub fn act(&self, rs: &RootSystem, lambda: &AffineWeight) -> AffineWeight {
        let yl = AffineWeight::new(self.y.act(&lambda.finite), lambda.level.clone(), lambda.delta.clone());
        translate_unchecked(rs, &yl, &self.beta)
    }

    /// `w.Λ = w(Λ + ρ̂) − ρ̂`.
    pub fn shifted_act(&self, rs: &RootSystem, lambda: &AffineWeight) -> AffineWeight {
        let rh = rho_hat(rs);
        self.act(rs, &lambda.add(&rh)).sub(&rh)
    }

    /// `t_β y(α + nδ) = yα + (n − (yα|β))δ`.
    pub fn act_on_root(&self, rs: &RootSystem, r: &AffineRoot) -> AffineRoot {
        let ya = self.y.act(&r.finite);
        let shift = rs.inner(&ya, &self.beta).to_integer().expect("β ∈ Q* pairs integrally with roots");
        AffineRoot { finite: ya, n: r.n - shift }
    }
}

/// `Π̂_u = {uδ − θ, α₁, …, α_ℓ}`.
pub fn pi_hat_u(rs: &RootSystem, u: i64) -> Vec<AffineRoot> {
    assert!(u >= 1);
    let mut out = vec![AffineRoot { finite: vneg(&rs.theta), n: u }];
    out.extend(rs.simple_roots.iter().map(|a| AffineRoot { finite: a.clone(), n: 0 }));
    out
}

/// Checks the boundary conditions `gcd(u, h∨) = gcd(u, r∨) = 1` and returns `k = h∨/u − h∨`.
pub fn boundary_level(rs: &RootSystem, u: i64) -> Result<Rational> {
    if u < 1 {
        return Err(Error::InvalidU { u, reason: "u must be a positive integer".into() });
    }
    if u.gcd(&rs.h_dual) != 1 {
        return Err(Error::InvalidU {
            u,
            reason: format!("gcd(u, h∨) = gcd({u}, {}) = {} ≠ 1", rs.h_dual, u.gcd(&rs.h_dual)),
        });
    }
    if u.gcd(&rs.r_dual) != 1 {
        return Err(Error::InvalidU {
            u,
            reason: format!("gcd(u, r∨) = gcd({u}, {}) = {} ≠ 1", rs.r_dual, u.gcd(&rs.r_dual)),
        });
    }
    Ok(&Rational::new(rs.h_dual, u) - &Rational::from_integer(rs.h_dual))
}

/// A boundary principal admissible weight `Λ = (t_β y).(kΛ₀)`.
#[derive(Clone, Debug)]
pub struct AdmissibleDescriptor {
    pub rs: Arc<RootSystem>,
    pub u: i64,
    pub beta: RVec,
    pub y: WeylElement,
    pub level: Rational,
    pub lambda: AffineWeight,
}

/// Serialized form: `{type, u, beta, yWord}` with `beta` as `[num, den]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorRecord {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub u: i64,
    pub beta: Vec<(i64, i64)>,
    #[serde(rename = "yWord")]
    pub y_word: Vec<usize>,
}

impl AdmissibleDescriptor {
    /// Validates `(β, y)` and builds the descriptor.
    pub fn new(rs: &Arc<RootSystem>, u: i64, beta: RVec, y: WeylElement) -> Result<Self> {
        let level = boundary_level(rs, u)?;
        let w = AffineElement::new(rs, beta.clone(), y.clone())?;
        for r in pi_hat_u(rs, u) {
            if !w.act_on_root(rs, &r).is_positive(rs) {
                return Err(Error::InvalidInput(format!(
                    "(t_β y) does not map Π̂_{u} into positive roots (fails on {:?} + {}δ)",
                    r.finite, r.n
                )));
            }
        }
        let lambda = w.shifted_act(rs, &AffineWeight::level_only(rs.rank(), level.clone()));
        Ok(AdmissibleDescriptor { rs: rs.clone(), u, beta, y, level, lambda })
    }

    /// The vacuum `kΛ₀`.
    pub fn vacuum(rs: &Arc<RootSystem>, u: i64) -> Result<Self> {
        let id = rs.weyl_elements()?[0].clone();
        Self::new(rs, u, vec![Rational::zero(); rs.rank()], id)
    }

    pub fn element(&self) -> AffineElement {
        AffineElement { beta: self.beta.clone(), y: self.y.clone() }
    }

    pub fn is_vacuum(&self) -> bool {
        self.lambda == AffineWeight::level_only(self.rs.rank(), self.level.clone())
    }

    pub fn m_lambda(&self) -> Rational {
        m_normalization(&self.rs, &self.lambda).expect("boundary level is never critical")
    }

    pub fn to_record(&self) -> DescriptorRecord {
        DescriptorRecord {
            cartan_type: self.rs.cartan_type.to_string(),
            u: self.u,
            beta: self.beta.iter().map(|b| b.to_i64_pair().expect("small coordinates")).collect(),
            y_word: self.y.word.clone(),
        }
    }

    pub fn from_record(rec: &DescriptorRecord) -> Result<Self> {
        let rs = RootSystem::parse(&rec.cartan_type)?;
        if rec.beta.len() != rs.rank() {
            return Err(Error::InvalidInput(format!("beta needs {} coordinates", rs.rank())));
        }
        if rec.beta.iter().any(|&(_, d)| d == 0) {
            return Err(Error::InvalidInput("zero denominator in beta".into()));
        }
        let beta = rec.beta.iter().map(|&(n, d)| Rational::new(n, d)).collect();
        let y = rs.weyl_from_word(&rec.y_word)?;
        Self::new(&rs, rec.u, beta, y)
    }
}

/// `m_Λ = |Λ+ρ̂|²/(2(k+h∨)) − dim g/24`.
pub fn m_normalization(rs: &RootSystem, lambda: &AffineWeight) -> Result<Rational> {
    let kh = &lambda.level + &Rational::from_integer(rs.h_dual);
    if kh.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let lr = lambda.add(&rho_hat(rs));
    Ok(&(&lr.norm2(rs) / &(&Rational::from_integer(2) * &kh)) - &Rational::new(rs.dim(), 24))
}

/// All boundary principal admissible weights with denominator `u`.
///
/// With `γ = y⁻¹β` and `cᵢ = (αᵢ|γ) ∈ ℤ`, the condition `(t_β y)Π̂_u ⊂ Δ̂₊`
/// reads `cᵢ ≤ −[yαᵢ < 0]` and `Σ mᵢ(−cᵢ) ≤ u − 1 + [yθ < 0]`, where
/// `θ = Σ mᵢαᵢ`. The solutions form a finite simplex per `y`. Pairs giving
/// the same `Λ` are merged; the first pair in (Weyl order, lexicographic)
/// order is kept.
pub fn enumerate_boundary(rs: &Arc<RootSystem>, u: i64) -> Result<Vec<AdmissibleDescriptor>> {
    let level = boundary_level(rs, u)?;
    let n = rs.rank();
    let coweights = rs.dual_lattice_basis();
    let k_lambda0 = AffineWeight::level_only(n, level.clone());
    let mut out: Vec<AdmissibleDescriptor> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for y in rs.weyl_elements()? {
        let lower: Vec<i64> =
            rs.simple_roots.iter().map(|a| i64::from(rs.root_sign(&y.act(a)) == Some(false))).collect();
        let budget = u - 1 + i64::from(rs.root_sign(&y.act(&rs.theta)) == Some(false));
        let mut sols = Vec::new();
        simplex_points(&rs.theta_coeffs, &lower, budget, &mut vec![0; n], 0, &mut sols);
        for e in sols {
            let gamma = (0..n).fold(vec![Rational::zero(); n], |acc, i| {
                vadd(&acc, &vscale(&Rational::from_integer(-e[i]), &coweights[i]))
            });
            let beta = y.act(&gamma);
            let w = AffineElement { beta: beta.clone(), y: y.clone() };
            let lambda = w.shifted_act(rs, &k_lambda0);
            if seen.insert(lambda.clone()) {
                out.push(AdmissibleDescriptor { rs: rs.clone(), u, beta, y: y.clone(), level: level.clone(), lambda });
            }
        }
    }
    Ok(out)
}

fn simplex_points(m: &[i64], lower: &[i64], budget: i64, cur: &mut Vec<i64>, i: usize, out: &mut Vec<Vec<i64>>) {
    if i == m.len() {
        out.push(cur.clone());
        return;
    }
    let rest_min: i64 = (i + 1..m.len()).map(|j| m[j] * lower[j]).sum();
    let mut e = lower[i];
    while m[i] * e + rest_min <= budget {
        cur[i] = e;
        simplex_points(m, lower, budget - m[i] * e, cur, i + 1, out);
        e += 1;
    }
    cur[i] = 0;
}

/// Admissibility test for `Λ`: condition (i) exactly, condition (ii) as a
/// rank computation over integral roots `α + nδ` with `|n| ≤ height_cutoff`.
pub fn check_admissible(rs: &RootSystem, lambda: &AffineWeight, height_cutoff: i64) -> bool {
    let lr = vadd(&lambda.finite, &rs.rho);
    let kh = &lambda.level + &Rational::from_integer(rs.h_dual);
    let two = Rational::from_integer(2);
    // (Λ+ρ̂ | (α+nδ)∨) = a + b·n
    let pairing = |alpha: &[Rational]| {
        let s = &two / &rs.norm2(alpha);
        (&s * &rs.inner(&lr, alpha), &s * &kh)
    };
    let mut roots: Vec<RVec> = rs.positive_roots.clone();
    roots.extend(rs.positive_roots.iter().map(|a| vneg(a)));

    // (i): positive real roots are α + nδ with n ≥ 1 for every α, and α > 0 with n = 0.
    for (idx, alpha) in roots.iter().enumerate() {
        let (a, b) = pairing(alpha);
        let n0 = if idx < rs.positive_roots.len() { 0 } else { 1 };
        if hits_nonpositive_integer(&a, &b, n0) {
            return false;
        }
    }

    // (ii)
    let mut integral = Vec::new();
    for alpha in &roots {
        let (a, b) = pairing(alpha);
        for n in -height_cutoff..=height_cutoff {
            if (&a + &(&b * &Rational::from_integer(n))).is_integer() {
                let mut v = alpha.clone();
                v.push(Rational::from_integer(n));
                integral.push(v);
            }
        }
    }
    if integral.is_empty() {
        return false;
    }
    Matrix::from_rows(integral).rank() == rs.rank() + 1
}

/// Whether `a + b·n ∈ ℤ_{≤0}` for some integer `n ≥ n0`.
fn hits_nonpositive_integer(a: &Rational, b: &Rational, n0: i64) -> bool {
    if b.is_zero() {
        return a.is_integer() && !a.is_positive();
    }
    // Integrality recurs with period den(b); find the first hit at or after n0.
    let period = b.den_i64();
    let first = (n0..n0 + period).find(|&n| (a + &(b * &Rational::from_integer(n))).is_integer());
    let Some(n1) = first else { return false };
    if b.is_negative() {
        return true;
    }
    !(a + &(b * &Rational::from_integer(n1))).is_positive()
}

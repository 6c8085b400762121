//! Expansions of `η`, `θ₁₁`, `θ₀₁` at arguments `(uτ, μ(z) + cτ)` and
//! symbolic products of them.
//!
//! ```text
//!   η(τ)     = q^{1/24} ∏ (1 − qⁿ)
//!   θ₁₁(τ,ζ) = −i q^{1/8} X^{−1/2} ∏ (1 − qⁿ)(1 − X⁻¹qⁿ)(1 − Xq^{n−1})
//!   θ₀₁(τ,ζ) = ∏ (1 − qⁿ)(1 − Xq^{n−½})(1 − X⁻¹q^{n−½})
//! ```
//!
//! with `X = e^{2πiζ}`. A factor `1 − M` whose monomial has negative degree
//! is rewritten as `−M(1 − M⁻¹)` so every remaining factor starts at 1.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::Result;
use crate::linalg::{vadd, vneg, vscale, RVec};
use crate::rational::Rational;
use crate::series::{GradedSeries, Support, Term, WeightSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThetaKind {
    Eta,
    Theta11,
    Theta01,
}

/// `kind(uτ, μ(z) + cτ)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaFactor {
    pub kind: ThetaKind,
    pub tau_scale: i64,
    pub arg: RVec,
    pub tau_shift: Rational,
    pub exponent: i32,
}

impl ThetaFactor {
    pub fn eta(u: i64, rank: usize, exponent: i32) -> Self {
        ThetaFactor {
            kind: ThetaKind::Eta,
            tau_scale: u,
            arg: vec![Rational::zero(); rank],
            tau_shift: Rational::zero(),
            exponent,
        }
    }

    pub fn theta11(u: i64, arg: RVec, tau_shift: Rational, exponent: i32) -> Self {
        ThetaFactor { kind: ThetaKind::Theta11, tau_scale: u, arg, tau_shift, exponent }
    }

    pub fn theta01(u: i64, arg: RVec, tau_shift: Rational, exponent: i32) -> Self {
        ThetaFactor { kind: ThetaKind::Theta01, tau_scale: u, arg, tau_shift, exponent }
    }

    fn same_base(&self, o: &ThetaFactor) -> bool {
        self.kind == o.kind && self.tau_scale == o.tau_scale && self.arg == o.arg && self.tau_shift == o.tau_shift
    }
}

/// `scalar · i^unit · e^{2πi·t_exp·t} · q^{q_exp} · e^{w_exp}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prefactor {
    pub t_exp: Rational,
    pub q_exp: Rational,
    pub w_exp: RVec,
    pub unit: u8,
    pub scalar: Rational,
}

impl Prefactor {
    pub fn one(rank: usize) -> Self {
        Prefactor {
            t_exp: Rational::zero(),
            q_exp: Rational::zero(),
            w_exp: vec![Rational::zero(); rank],
            unit: 0,
            scalar: Rational::one(),
        }
    }

    pub fn mul(&self, o: &Prefactor) -> Prefactor {
        let mut p = Prefactor {
            t_exp: &self.t_exp + &o.t_exp,
            q_exp: &self.q_exp + &o.q_exp,
            w_exp: vadd(&self.w_exp, &o.w_exp),
            unit: (self.unit + o.unit) % 4,
            scalar: &self.scalar * &o.scalar,
        };
        p.normalize();
        p
    }

    pub fn pow(&self, e: i32) -> Prefactor {
        let er = Rational::from_integer(e as i64);
        let mut p = Prefactor {
            t_exp: &self.t_exp * &er,
            q_exp: &self.q_exp * &er,
            w_exp: vscale(&er, &self.w_exp),
            unit: ((self.unit as i64 * e as i64).rem_euclid(4)) as u8,
            scalar: self.scalar.pow(e),
        };
        p.normalize();
        p
    }

    /// Keeps `unit ∈ {0, 1}` by moving `−1` into the scalar.
    fn normalize(&mut self) {
        if self.unit >= 2 {
            self.unit -= 2;
            self.scalar = -self.scalar.clone();
        }
    }

    pub fn to_series(&self, space: &Arc<WeightSpace>) -> GradedSeries {
        GradedSeries::monomial(space, self.q_exp.clone(), self.w_exp.clone(), self.scalar.clone())
            .with_t_exp(self.t_exp.clone())
            .mul_unit(self.unit)
    }
}

/// Monomial prefactor times a product of theta factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaProductForm {
    pub prefactor: Prefactor,
    pub factors: Vec<ThetaFactor>,
}

impl ThetaProductForm {
    pub fn new(rank: usize) -> Self {
        ThetaProductForm { prefactor: Prefactor::one(rank), factors: Vec::new() }
    }

    pub fn push(&mut self, f: ThetaFactor) {
        if f.exponent != 0 {
            self.factors.push(f);
        }
    }

    pub fn mul(&self, o: &ThetaProductForm) -> ThetaProductForm {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        ThetaProductForm { prefactor: self.prefactor.mul(&o.prefactor), factors: f }.canonical()
    }

    /// Factors sorted, equal bases merged, zero exponents dropped.
    pub fn canonical(&self) -> ThetaProductForm {
        let mut fs = self.factors.clone();
        fs.sort();
        let mut out: Vec<ThetaFactor> = Vec::new();
        for f in fs {
            match out.last_mut() {
                Some(last) if last.same_base(&f) => last.exponent += f.exponent,
                _ => out.push(f),
            }
        }
        out.retain(|f| f.exponent != 0);
        ThetaProductForm { prefactor: self.prefactor.clone(), factors: out }
    }

    /// Structural equality up to factor order.
    pub fn same_as(&self, o: &ThetaProductForm) -> bool {
        self.canonical() == o.canonical()
    }

    /// Rewrites every `θ₁₁` factor with `c/u ∈ ½ℤ` to shift 0, using the
    /// elliptic transformation, and the half-period shift `θ₁₁ → θ₀₁`.
    pub fn reduce_shifts(&self) -> ThetaProductForm {
        let mut pre = self.prefactor.clone();
        let mut fs = Vec::new();
        for f in &self.factors {
            if f.kind != ThetaKind::Theta11 {
                fs.push(f.clone());
                continue;
            }
            let ratio = &f.tau_shift / &Rational::from_integer(f.tau_scale);
            let twice = &ratio * &Rational::from_integer(2);
            if !twice.is_integer() {
                fs.push(f.clone());
                continue;
            }
            let m = ratio.floor_i64();
            let half = !ratio.is_integer();
            let base_shift = if half { Rational::new(f.tau_scale, 2) } else { Rational::zero() };
            // θ₁₁(uτ, ζ₀ + m·uτ) with ζ₀ = μ(z) + base_shift·τ
            let (sign, dq, dw) = elliptic_transform(f.tau_scale, &f.arg, &base_shift, m, 0);
            let mut step = Prefactor::one(f.arg.len());
            step.q_exp = dq;
            step.w_exp = dw;
            step.scalar = Rational::from_integer(sign as i64);
            let mut kind = ThetaKind::Theta11;
            if half {
                let (unit, dq2, dw2) = half_period_shift(f.tau_scale, &f.arg, &Rational::zero());
                let mut h = Prefactor::one(f.arg.len());
                h.unit = unit;
                h.q_exp = dq2;
                h.w_exp = dw2;
                step = step.mul(&h);
                kind = ThetaKind::Theta01;
            }
            pre = pre.mul(&step.pow(f.exponent));
            fs.push(ThetaFactor {
                kind,
                tau_scale: f.tau_scale,
                arg: f.arg.clone(),
                tau_shift: Rational::zero(),
                exponent: f.exponent,
            });
        }
        ThetaProductForm { prefactor: pre, factors: fs }.canonical()
    }
}

impl fmt::Display for ThetaProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.prefactor;
        write!(f, "({}) i^{} e^{{2πi({})t}} q^{} e^{:?}", p.scalar, p.unit, p.t_exp, p.q_exp, fmt_vec(&p.w_exp))?;
        for t in &self.factors {
            let name = match t.kind {
                ThetaKind::Eta => "η",
                ThetaKind::Theta11 => "θ11",
                ThetaKind::Theta01 => "θ01",
            };
            if t.kind == ThetaKind::Eta {
                write!(f, " · η({}τ)^{}", t.tau_scale, t.exponent)?;
            } else {
                write!(f, " · {name}({}τ, {:?}(z) + ({})τ)^{}", t.tau_scale, fmt_vec(&t.arg), t.tau_shift, t.exponent)?;
            }
        }
        Ok(())
    }
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `θ₁₁(uτ, ζ + m·uτ + n) = (−1)^{m+n} q^{−um²/2 − mc} e^{−mμ} θ₁₁(uτ, ζ)` for
/// `ζ = μ(z) + cτ`; returns the sign, q-shift and weight shift.
pub fn elliptic_transform(u: i64, mu: &[Rational], c: &Rational, m: i64, n: i64) -> (i8, Rational, RVec) {
    let sign = if (m + n).rem_euclid(2) == 0 { 1 } else { -1 };
    let mr = Rational::from_integer(m);
    let dq = &Rational::new(-u * m * m, 2) - &(&mr * c);
    (sign, dq, vscale(&-mr, mu))
}

/// `θ₁₁(uτ, ζ + uτ/2) = −i q^{−u/8 − c/2} e^{−μ/2} θ₀₁(uτ, ζ)`; returns the
/// power of `i`, q-shift and weight shift.
pub fn half_period_shift(u: i64, mu: &[Rational], c: &Rational) -> (u8, Rational, RVec) {
    let dq = &Rational::new(-u, 8) - &(c / &Rational::from_integer(2));
    (3, dq, vscale(&Rational::new(-1, 2), mu))
}

#[derive(Clone, Debug)]
struct Mono {
    q: Rational,
    w: RVec,
}

impl Mono {
    fn degree(&self, space: &WeightSpace) -> Rational {
        &self.q - &space.tilt_of(&self.w)
    }

    fn is_one(&self) -> bool {
        self.q.is_zero() && WeightSpace::is_zero_vec(&self.w)
    }

    fn inv(&self) -> Mono {
        Mono { q: -self.q.clone(), w: vneg(&self.w) }
    }
}

/// `prefactor · ∏ (1 − M)` over the given monomials, to `depth` above the lowest term.
fn product_expansion(
    space: &Arc<WeightSpace>,
    mut pre: Mono,
    pre_coeff: Rational,
    monos: Vec<Mono>,
    depth: &Rational,
) -> GradedSeries {
    let mut coeff = pre_coeff;
    let mut factors = Vec::new();
    let mut zero = false;
    for m in monos {
        if m.is_one() {
            zero = true;
            continue;
        }
        let d = m.degree(space);
        let m = if d.is_negative() {
            coeff = -coeff;
            pre = Mono { q: &pre.q + &m.q, w: vadd(&pre.w, &m.w) };
            m.inv()
        } else {
            m
        };
        if m.degree(space) < *depth {
            factors.push(m);
        }
    }
    let pre_deg = pre.degree(space);
    if zero {
        return GradedSeries::zero(space, Some(&pre_deg + depth));
    }
    let zero_w = vec![Rational::zero(); space.rank()];
    let mut acc = GradedSeries::one(space).truncated(depth.clone());
    // Multiply low-degree factors first so truncation prunes early.
    factors.sort_by_key(|m| m.degree(space));
    for m in factors {
        let f = GradedSeries::polynomial(
            space,
            vec![
                Term { q: Rational::zero(), w: zero_w.clone(), coeff: Rational::one() },
                Term { q: m.q, w: m.w, coeff: -Rational::one() },
            ],
        );
        acc = acc.mul(&f).expect("same space");
    }
    acc.mul_monomial(&pre.q, &pre.w, &coeff, &Rational::zero())
}

fn theta_support(space: &WeightSpace, u: i64, mu: &[Rational], c: &Rational) -> Support {
    if WeightSpace::is_zero_vec(mu) {
        return Support::WeightFree;
    }
    let n2 = space.norm2(mu);
    let ur = Rational::from_integer(u);
    if c.is_zero() {
        Support::Quadratic { kappa: &ur / &(&Rational::from_integer(2) * &n2), offset: Rational::zero() }
    } else {
        Support::Quadratic { kappa: &ur / &(&Rational::from_integer(4) * &n2), offset: -(&(c * c) / &ur) }
    }
}

/// `η(uτ) = q^{u/24} ∏ (1 − q^{un})` to `depth` above `q^{u/24}`.
pub fn expand_eta(space: &Arc<WeightSpace>, u: i64, depth: &Rational) -> GradedSeries {
    assert!(u >= 1);
    let zero_w = vec![Rational::zero(); space.rank()];
    let mut monos = Vec::new();
    let mut n = 1;
    while Rational::from_integer(u * n) < *depth {
        monos.push(Mono { q: Rational::from_integer(u * n), w: zero_w.clone() });
        n += 1;
    }
    let pre = Mono { q: Rational::new(u, 24), w: zero_w };
    product_expansion(space, pre, Rational::one(), monos, depth)
}

/// `θ₁₁(uτ, μ(z) + cτ)` to `depth` above its lowest term.
pub fn expand_theta11(
    space: &Arc<WeightSpace>,
    u: i64,
    mu: &[Rational],
    c: &Rational,
    depth: &Rational,
) -> GradedSeries {
    assert!(u >= 1);
    let x = Mono { q: c.clone(), w: mu.to_vec() };
    let ur = Rational::from_integer(u);
    let zero_w = vec![Rational::zero(); space.rank()];
    let mut monos = Vec::new();
    let mut n = 1i64;
    loop {
        let nr = Rational::from_integer(n);
        let qn = Mono { q: &ur * &nr, w: zero_w.clone() };
        let a = Mono { q: &(&ur * &nr) - &x.q, w: vneg(&x.w) };
        let b = Mono { q: &(&ur * &(&nr - &Rational::one())) + &x.q, w: x.w.clone() };
        let done = [&qn, &a, &b].iter().all(|m| m.degree(space) >= *depth);
        monos.extend([qn, a, b]);
        if done {
            break;
        }
        n += 1;
    }
    let pre =
        Mono { q: &Rational::new(u, 8) - &(&x.q / &Rational::from_integer(2)), w: vscale(&Rational::new(-1, 2), &x.w) };
    let s = product_expansion(space, pre, Rational::one(), monos, depth).mul_unit(3);
    let support = theta_support(space, u, mu, c);
    s.certify_support(support).expect("analytic theta support")
}

/// `θ₀₁(uτ, μ(z) + cτ)` to `depth` above its lowest term.
pub fn expand_theta01(
    space: &Arc<WeightSpace>,
    u: i64,
    mu: &[Rational],
    c: &Rational,
    depth: &Rational,
) -> GradedSeries {
    assert!(u >= 1);
    let x = Mono { q: c.clone(), w: mu.to_vec() };
    let ur = Rational::from_integer(u);
    let zero_w = vec![Rational::zero(); space.rank()];
    let mut monos = Vec::new();
    let mut n = 1i64;
    loop {
        let nr = Rational::from_integer(n);
        let half = &nr - &Rational::new(1, 2);
        let qn = Mono { q: &ur * &nr, w: zero_w.clone() };
        let a = Mono { q: &(&ur * &half) + &x.q, w: x.w.clone() };
        let b = Mono { q: &(&ur * &half) - &x.q, w: vneg(&x.w) };
        let done = [&qn, &a, &b].iter().all(|m| m.degree(space) >= *depth);
        monos.extend([qn, a, b]);
        if done {
            break;
        }
        n += 1;
    }
    let pre = Mono { q: Rational::zero(), w: zero_w };
    let s = product_expansion(space, pre, Rational::one(), monos, depth);
    let support = theta_support(space, u, mu, c);
    s.certify_support(support).expect("analytic theta support")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CacheKey {
    space: u64,
    kind: ThetaKind,
    u: i64,
    arg: RVec,
    shift: Rational,
    depth: Rational,
}

/// Memoized expansions, shared across threads.
#[derive(Default)]
pub struct ThetaCache {
    map: Mutex<HashMap<CacheKey, GradedSeries>>,
}

impl ThetaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static ThetaCache {
        static CACHE: OnceLock<ThetaCache> = OnceLock::new();
        CACHE.get_or_init(ThetaCache::new)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.lock().expect("cache lock").clear();
    }

    /// Expansion of a factor's base (exponent ignored).
    pub fn expand(&self, space: &Arc<WeightSpace>, f: &ThetaFactor, depth: &Rational) -> GradedSeries {
        let key = CacheKey {
            space: space.id(),
            kind: f.kind,
            u: f.tau_scale,
            arg: f.arg.clone(),
            shift: f.tau_shift.clone(),
            depth: depth.clone(),
        };
        if let Some(s) = self.map.lock().expect("cache lock").get(&key) {
            return s.clone();
        }
        let s = match f.kind {
            ThetaKind::Eta => expand_eta(space, f.tau_scale, depth),
            ThetaKind::Theta11 => expand_theta11(space, f.tau_scale, &f.arg, &f.tau_shift, depth),
            ThetaKind::Theta01 => expand_theta01(space, f.tau_scale, &f.arg, &f.tau_shift, depth),
        };
        self.map.lock().expect("cache lock").insert(key, s.clone());
        s
    }
}

/// Expands a product form to `depth` above its lowest term.
pub fn evaluate_product_form(
    space: &Arc<WeightSpace>,
    form: &ThetaProductForm,
    depth: &Rational,
) -> Result<GradedSeries> {
    evaluate_with_cache(space, form, depth, ThetaCache::global())
}

pub fn evaluate_with_cache(
    space: &Arc<WeightSpace>,
    form: &ThetaProductForm,
    depth: &Rational,
    cache: &ThetaCache,
) -> Result<GradedSeries> {
    let form = form.canonical();
    let mut parts = Vec::with_capacity(form.factors.len());
    for f in &form.factors {
        let base = cache.expand(space, f, depth);
        parts.push(base.pow(f.exponent)?);
    }
    let prod = GradedSeries::product(space, parts.iter())?;
    let prod = if form.factors.is_empty() { prod.truncated_to_depth(depth) } else { prod };
    prod.mul(&form.prefactor.to_series(space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::roots::RootSystem;

    fn a1() -> Arc<RootSystem> {
        RootSystem::parse("A1").unwrap()
    }

    #[test]
    fn eta_leading_terms() {
        let rs = a1();
        let sp = rs.weight_space();
        let e = expand_eta(sp, 1, &q(8, 1));
        let coeffs: Vec<(Rational, Rational)> = e.terms().into_iter().map(|t| (t.q, t.coeff)).collect();
        let expect = [(1, 1), (25, -1), (49, -1), (121, 1), (169, 1)];
        assert_eq!(coeffs.len(), expect.len());
        for ((qq, c), (num, ec)) in coeffs.iter().zip(expect) {
            assert_eq!(*qq, q(num, 24));
            assert_eq!(*c, q(ec, 1));
        }
        let e2 = expand_eta(sp, 2, &q(8, 1));
        assert_eq!(e2.lowest_degree(), Some(q(1, 12)));
        assert!(e2.agrees_with(&e.substitute_q_power(2).unwrap()));
    }

    #[test]
    fn theta11_lowest_stratum_and_oddness() {
        let rs = a1();
        let sp = rs.weight_space();
        let alpha = rs.simple_roots[0].clone();
        let t = expand_theta11(sp, 1, &alpha, &q(0, 1), &q(6, 1));
        assert_eq!(t.unit(), 1);
        // i q^{1/8}(e^{α/2} − e^{−α/2})
        assert_eq!(t.coeff(&q(1, 8), &[q(1, 1)]), q(1, 1));
        assert_eq!(t.coeff(&q(1, 8), &[q(-1, 1)]), q(-1, 1));
        let tneg = expand_theta11(sp, 1, &vneg(&alpha), &q(0, 1), &q(6, 1));
        assert!(tneg.agrees_with(&t.neg()));
    }

    #[test]
    fn shifts_agree_with_transforms() {
        let rs = RootSystem::parse("A2").unwrap();
        let sp = rs.weight_space();
        let depth = q(6, 1);
        for alpha in &rs.positive_roots {
            let base = expand_theta11(sp, 3, alpha, &q(0, 1), &q(14, 1));
            for j in 0..3i64 {
                let beta = vscale(&q(-j, 2), &rs.simple_roots[0]);
                let direct = expand_theta11(sp, 3, alpha, &rs.inner(alpha, &beta), &depth);
                let shifted = base.shift_weight_by_tau(&beta).unwrap();
                assert!(shifted.depth().unwrap() >= depth, "{:?}", shifted.depth());
                assert!(direct.agrees_with(&shifted));
            }
            let scaled = expand_theta11(sp, 1, alpha, &q(0, 1), &q(10, 1)).substitute_q_power(3).unwrap();
            assert!(base.agrees_with(&scaled));
        }
    }

    #[test]
    fn elliptic_transform_identity() {
        let rs = RootSystem::parse("A2").unwrap();
        let sp = rs.weight_space();
        let depth = q(10, 1);
        for alpha in &rs.positive_roots {
            for u in [1i64, 2] {
                for m in -2i64..=2 {
                    let lhs = expand_theta11(sp, u, alpha, &q(u * m, 1), &depth);
                    let (sign, dq, dw) = elliptic_transform(u, alpha, &q(0, 1), m, 0);
                    let rhs = expand_theta11(sp, u, alpha, &q(0, 1), &q(30, 1)).mul_monomial(
                        &dq,
                        &dw,
                        &q(sign as i64, 1),
                        &q(0, 1),
                    );
                    assert!(lhs.agrees_with(&rhs), "u={u} m={m}");
                }
                let lhs = expand_theta11(sp, u, alpha, &q(u, 2), &depth);
                let (unit, dq, dw) = half_period_shift(u, alpha, &q(0, 1));
                let rhs = expand_theta01(sp, u, alpha, &q(0, 1), &q(30, 1))
                    .mul_monomial(&dq, &dw, &q(1, 1), &q(0, 1))
                    .mul_unit(unit);
                assert!(lhs.agrees_with(&rhs));
            }
        }
        assert_eq!(elliptic_transform(1, &[q(1, 1)], &q(0, 1), 0, 0), (1, q(0, 1), vec![q(0, 1)]));
    }

    #[test]
    fn theta01_even_and_at_zero() {
        let rs = a1();
        let sp = rs.weight_space();
        let a = rs.simple_roots[0].clone();
        let t = expand_theta01(sp, 1, &a, &q(0, 1), &q(8, 1));
        assert!(t.agrees_with(&expand_theta01(sp, 1, &vneg(&a), &q(0, 1), &q(8, 1))));
        let t0 = expand_theta01(sp, 1, &[q(0, 1)], &q(0, 1), &q(10, 1));
        // ∏(1−qⁿ)(1−q^{n−½})²
        let mut prod = GradedSeries::one(sp).truncated(q(10, 1));
        for n in 1..=20i64 {
            for (e, p) in [(q(n, 1), 1), (q(2 * n - 1, 2), 2)] {
                let f = GradedSeries::q_series(sp, q(0, 1), e, &[1, -1], q(100, 1));
                for _ in 0..p {
                    prod = prod.mul(&f).unwrap();
                }
            }
        }
        assert!(t0.agrees_with(&prod));
    }

    #[test]
    fn product_forms() {
        let rs = a1();
        let sp = rs.weight_space();
        let depth = q(5, 1);
        let empty = ThetaProductForm::new(1);
        assert_eq!(evaluate_product_form(sp, &empty, &depth).unwrap().as_constant(), Some(q(1, 1)));
        let mut f = ThetaProductForm::new(1);
        f.push(ThetaFactor::theta11(1, rs.simple_roots[0].clone(), q(0, 1), 1));
        f.push(ThetaFactor::theta11(1, rs.simple_roots[0].clone(), q(0, 1), -1));
        assert!(f.canonical().factors.is_empty());
        let s = evaluate_product_form(sp, &f, &depth).unwrap();
        assert_eq!(s.as_constant(), Some(q(1, 1)));
        let mut g = ThetaProductForm::new(1);
        g.push(ThetaFactor::theta11(3, rs.simple_roots[0].clone(), q(0, 1), 1));
        g.push(ThetaFactor::theta11(1, rs.simple_roots[0].clone(), q(0, 1), -1));
        let s = evaluate_product_form(sp, &g, &depth).unwrap();
        assert_eq!(s.unit(), 0);
        assert!(s.depth().unwrap() >= depth);
    }

    #[test]
    fn vanishing_argument_gives_zero() {
        let rs = a1();
        let sp = rs.weight_space();
        let z = expand_theta11(sp, 3, &[q(0, 1)], &q(-3, 1), &q(5, 1));
        assert!(z.is_zero());
        assert!(z.trunc().is_some());
    }
}

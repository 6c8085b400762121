//! Sum-side expansions, computed without the product formulas.
//!
//! Each function here enumerates terms of a lattice sum directly and is used
//! only to cross-check the product-side code in `theta` and `characters`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::affine::{AffineElement, AffineWeight};
use crate::error::{Error, Result};
use crate::linalg::{vadd, vscale, Matrix, RVec};
use crate::rational::Rational;
use crate::roots::RootSystem;
use crate::series::{GradedSeries, Support, Term, WeightSpace};

/// Euler: `η(uτ) = Σ (−1)ᵏ q^{u(k(3k−1)/2 + 1/24)}`.
pub fn eta_pentagonal(space: &Arc<WeightSpace>, u: i64, depth: &Rational) -> GradedSeries {
    let zero_w = vec![Rational::zero(); space.rank()];
    let base = Rational::new(u, 24);
    let mut terms = Vec::new();
    for k in -200i64..=200 {
        let e = Rational::from_integer(u * k * (3 * k - 1) / 2);
        if e < *depth {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            terms.push(Term { q: &base + &e, w: zero_w.clone(), coeff: Rational::from_integer(sign) });
        }
    }
    GradedSeries::from_terms(space, terms, Some(&base + depth), Rational::zero(), 0, Support::WeightFree)
}

/// Terms `coeff(n) · q^{u·e(n)/2 + e(n)c} e^{e(n)μ}` with `e(n) = n + shift`,
/// kept while the tilted degree stays within `depth` of the smallest.
fn quadratic_line_sum(
    space: &Arc<WeightSpace>,
    u: i64,
    mu: &[Rational],
    c: &Rational,
    shift: &Rational,
    depth: &Rational,
    coeff: impl Fn(i64) -> Rational,
) -> (Vec<Term>, Rational) {
    let ur = Rational::from_integer(u);
    let tilt = space.tilt_of(mu);
    let term = |n: i64| {
        let e = &Rational::from_integer(n) + shift;
        let qe = &(&(&ur * &(&e * &e)) / &Rational::from_integer(2)) + &(&e * c);
        let deg = &qe - &(&e * &tilt);
        (qe, vscale(&e, mu), deg)
    };
    // Degree is a convex quadratic in n; its real minimum sits at e = (tilt − c)/u.
    let center = (&(&(&tilt - c) / &ur) - shift).floor_i64();
    let lowest = (center - 2..=center + 2).map(|n| term(n).2).min().expect("nonempty");
    let limit = &lowest + depth;
    let mut terms = Vec::new();
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { center } else { center - 1 };
        loop {
            let (qe, w, deg) = term(n);
            if deg >= limit {
                break;
            }
            terms.push(Term { q: qe, w, coeff: coeff(n) });
            n += dir;
        }
    }
    (terms, limit)
}

/// Triple-product sum `θ₁₁(uτ, ζ) = i Σ (−1)ⁿ Q^{(n+½)²/2} X^{n+½}`, `Q = q^u`,
/// `X = q^c e^μ`.
pub fn theta11_sum(space: &Arc<WeightSpace>, u: i64, mu: &[Rational], c: &Rational, depth: &Rational) -> GradedSeries {
    let sign = |n: i64| Rational::from_integer(if n.rem_euclid(2) == 0 { 1 } else { -1 });
    let (terms, limit) = quadratic_line_sum(space, u, mu, c, &Rational::new(1, 2), depth, sign);
    GradedSeries::from_terms(space, terms, Some(limit), Rational::zero(), 1, Support::Unknown)
}

/// `θ₀₁(uτ, ζ) = Σ (−1)ⁿ Q^{n²/2} Xⁿ`.
pub fn theta01_sum(space: &Arc<WeightSpace>, u: i64, mu: &[Rational], c: &Rational, depth: &Rational) -> GradedSeries {
    let sign = |n: i64| Rational::from_integer(if n.rem_euclid(2) == 0 { 1 } else { -1 });
    let (terms, limit) = quadratic_line_sum(space, u, mu, c, &Rational::zero(), depth, sign);
    GradedSeries::from_terms(space, terms, Some(limit), Rational::zero(), 0, Support::Unknown)
}

/// `∏_{n ≢ 0, ±(j+1) mod u} (1 − qⁿ)⁻¹`, counted as partitions into allowed parts.
pub fn gordon_andrews(space: &Arc<WeightSpace>, u: i64, j: i64, depth: i64) -> Result<GradedSeries> {
    if u < 3 || j < 0 || j + 1 >= u {
        return Err(Error::InvalidInput(format!("need u ≥ 3 and 0 ≤ j ≤ u − 2, got u = {u}, j = {j}")));
    }
    let banned = |n: i64| {
        let r = n.rem_euclid(u);
        r == 0 || r == (j + 1).rem_euclid(u) || r == (-(j + 1)).rem_euclid(u)
    };
    let len = depth.max(0) as usize;
    let mut counts = vec![0u128; len];
    if len > 0 {
        counts[0] = 1;
    }
    for part in 1..depth {
        if banned(part) {
            continue;
        }
        let p = part as usize;
        for n in p..len {
            counts[n] += counts[n - p];
        }
    }
    let zero_w = vec![Rational::zero(); space.rank()];
    let terms = counts.iter().enumerate().map(|(n, &c)| Term {
        q: Rational::from_integer(n as i64),
        w: zero_w.clone(),
        coeff: Rational::from_integer(i64::try_from(c).expect("partition count fits")),
    });
    Ok(GradedSeries::from_terms(
        space,
        terms,
        Some(Rational::from_integer(depth)),
        Rational::zero(),
        0,
        Support::WeightFree,
    ))
}

/// Quadratic `f(n) = ½ nᵀHn + gᵀn + c₀` recovered from exact samples.
struct QuadraticFit {
    h: Matrix,
    g: RVec,
    c0: Rational,
}

impl QuadraticFit {
    fn sample(rank: usize, f: &dyn Fn(&[i64]) -> Rational) -> QuadraticFit {
        let unit = |i: usize, k: i64| {
            let mut v = vec![0i64; rank];
            v[i] = k;
            v
        };
        let c0 = f(&vec![0; rank]);
        let f1: Vec<Rational> = (0..rank).map(|i| f(&unit(i, 1))).collect();
        let f2: Vec<Rational> = (0..rank).map(|i| f(&unit(i, 2))).collect();
        let mut h = Matrix::zeros(rank, rank);
        let mut g = vec![Rational::zero(); rank];
        for i in 0..rank {
            h[(i, i)] = &(&f2[i] - &(&Rational::from_integer(2) * &f1[i])) + &c0;
            g[i] = &(&f1[i] - &c0) - &(&h[(i, i)] / &Rational::from_integer(2));
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                let mut v = vec![0i64; rank];
                v[i] = 1;
                v[j] = 1;
                let fij = f(&v);
                let half_diag = &(&h[(i, i)] + &h[(j, j)]) / &Rational::from_integer(2);
                let hij = &(&(&(&fij - &c0) - &half_diag) - &g[i]) - &g[j];
                h[(i, j)] = hij.clone();
                h[(j, i)] = hij;
            }
        }
        QuadraticFit { h, g, c0 }
    }

    /// Real minimizer and minimum.
    fn minimum(&self) -> Result<(RVec, Rational, Matrix)> {
        let hinv = self.h.inverse().ok_or_else(|| Error::InvalidInput("degenerate lattice sum".into()))?;
        let n0: RVec = hinv.apply(&self.g).into_iter().map(|x| -x).collect();
        let gn: Rational = self.g.iter().zip(&n0).map(|(a, b)| a * b).fold(Rational::zero(), |s, x| &s + &x);
        let fmin = &self.c0 + &(&gn / &Rational::from_integer(2));
        Ok((n0, fmin, hinv))
    }
}

/// Integer points of `{n : f(n) < threshold}`, via a bounding box of the ellipsoid.
fn ellipsoid_points(fit: &QuadraticFit, threshold: &Rational) -> Result<Vec<Vec<i64>>> {
    let (n0, fmin, hinv) = fit.minimum()?;
    let rank = n0.len();
    let slack = threshold - &fmin;
    if slack.is_negative() {
        return Ok(Vec::new());
    }
    let mut lo = Vec::with_capacity(rank);
    let mut hi = Vec::with_capacity(rank);
    for i in 0..rank {
        let r = (2.0 * slack.to_f64() * hinv[(i, i)].to_f64()).max(0.0).sqrt() + 1e-6;
        let c = n0[i].to_f64();
        lo.push((c - r).floor() as i64);
        hi.push((c + r).ceil() as i64);
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    if rank == 0 {
        return Ok(vec![Vec::new()]);
    }
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            cur[i] += 1;
            if cur[i] <= hi[i] {
                break;
            }
            cur[i] = lo[i];
            i += 1;
            if i == rank {
                return Ok(out);
            }
        }
    }
}

/// `Σ_{w∈W, γ∈Q∨} ε(w) e^{outer·t_{uγ}·w(ρ + LΛ₀)}` as a series with `t_exp = L`,
/// each term `e^{λ}` written `q^{q_shift − λ(d)} e^{λ̄}`.
///
/// The sum is truncated `depth` above its lowest term.
pub fn alternating_orbit_sum(
    rs: &RootSystem,
    outer: Option<&AffineElement>,
    u: i64,
    level: &Rational,
    q_shift: &Rational,
    depth: &Rational,
) -> Result<GradedSeries> {
    let space = rs.weight_space();
    let rank = rs.rank();
    let coroots = rs.coroot_lattice_basis();
    let ur = Rational::from_integer(u);
    let weyl = rs.weyl_elements()?;

    let point = |w_rho: &RVec, n: &[i64]| -> AffineWeight {
        let mut gamma = vec![Rational::zero(); rank];
        for (ni, a) in n.iter().zip(&coroots) {
            gamma = vadd(&gamma, &vscale(&(&Rational::from_integer(*ni) * &ur), a));
        }
        let start = AffineWeight::new(w_rho.clone(), level.clone(), Rational::zero());
        let t = AffineElement { beta: gamma, y: weyl[0].clone() }.act(rs, &start);
        match outer {
            Some(o) => o.act(rs, &t),
            None => t,
        }
    };
    let degree = |lam: &AffineWeight| &(q_shift - &lam.delta) - &space.tilt_of(&lam.finite);

    let mut fits = Vec::with_capacity(weyl.len());
    let mut global_min: Option<Rational> = None;
    for w in weyl {
        let w_rho = w.act(&rs.rho);
        let fit = QuadraticFit::sample(rank, &|n: &[i64]| degree(&point(&w_rho, n)));
        let (_, fmin, _) = fit.minimum()?;
        if global_min.as_ref().is_none_or(|g| fmin < *g) {
            global_min = Some(fmin.clone());
        }
        fits.push((w, w_rho, fit));
    }
    let global_min = global_min.expect("W is nonempty");

    // Lowest actual term: widen the window until a lattice point falls in.
    let mut window = Rational::one();
    let lowest = loop {
        let thr = &global_min + &window;
        let mut best: Option<Rational> = None;
        for (_, w_rho, fit) in &fits {
            for n in ellipsoid_points(fit, &thr)? {
                let d = degree(&point(w_rho, &n));
                if d < thr && best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
        if let Some(b) = best {
            break b;
        }
        window = &window * &Rational::from_integer(2);
    };

    let limit = &lowest + depth;
    let mut terms = Vec::new();
    for (w, w_rho, fit) in &fits {
        for n in ellipsoid_points(fit, &limit)? {
            let lam = point(w_rho, &n);
            if degree(&lam) < limit {
                terms.push(Term {
                    q: q_shift - &lam.delta,
                    w: lam.finite,
                    coeff: Rational::from_integer(w.sign as i64),
                });
            }
        }
    }
    // All terms lie on the paraboloid q = (|μ|² − |λ|²)/(2L) + q_shift.
    let two_l = &Rational::from_integer(2) * level;
    let start = AffineWeight::new(rs.rho.clone(), level.clone(), Rational::zero());
    let kappa = two_l.recip();
    let offset = q_shift - &(&start.norm2(rs) / &two_l);
    let s = GradedSeries::from_terms(space, terms, Some(limit), level.clone(), 0, Support::Unknown);
    s.certify_support(Support::Quadratic { kappa, offset })
}

/// Macdonald's side of the denominator identity: `Σ_{w∈Ŵ} ε(w) e^{w(ρ̂)}`,
/// normalized by `q^{dim g/24}`.
pub fn macdonald_sum(rs: &RootSystem, depth: &Rational) -> Result<GradedSeries> {
    let hd = Rational::from_integer(rs.h_dual);
    alternating_orbit_sum(rs, None, 1, &hd, &Rational::new(rs.dim(), 24), depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::theta::{expand_eta, expand_theta01, expand_theta11};

    #[test]
    fn pentagonal_matches_product() {
        let sp = Arc::new(WeightSpace::scalar());
        for u in 1..=3 {
            assert!(eta_pentagonal(&sp, u, &q(40, 1)).agrees_with(&expand_eta(&sp, u, &q(40, 1))));
        }
    }

    #[test]
    fn triple_product() {
        let rs = RootSystem::parse("A2").unwrap();
        let sp = rs.weight_space();
        for alpha in &rs.positive_roots {
            for (u, c) in [(1, q(0, 1)), (2, q(1, 1)), (3, q(-2, 1)), (2, q(1, 2))] {
                let prod = expand_theta11(sp, u, alpha, &c, &q(30, 1));
                let sum = theta11_sum(sp, u, alpha, &c, &q(30, 1));
                assert!(prod.agrees_with(&sum), "θ11 u={u} c={c}");
                let prod = expand_theta01(sp, u, alpha, &c, &q(30, 1));
                let sum = theta01_sum(sp, u, alpha, &c, &q(30, 1));
                assert!(prod.agrees_with(&sum), "θ01 u={u} c={c}");
            }
        }
    }

    #[test]
    fn rogers_ramanujan_start() {
        let sp = Arc::new(WeightSpace::scalar());
        // j = 0 keeps parts ≡ ±2 mod 5, j = 1 keeps parts ≡ ±1 mod 5
        let cases = [(0, [1, 0, 1, 1, 1, 1, 2, 2, 3, 3]), (1, [1, 1, 1, 1, 2, 2, 3, 3, 4, 5])];
        for (j, expect) in cases {
            let g = gordon_andrews(&sp, 5, j, 12).unwrap();
            for (n, e) in expect.iter().enumerate() {
                assert_eq!(g.coeff(&q(n as i64, 1), &[]), q(*e, 1), "j={j} n={n}");
            }
        }
        assert!(gordon_andrews(&sp, 5, 4, 10).is_err());
    }

    #[test]
    fn macdonald_leading_stratum() {
        // e^{ρ}∏(1 − e^{−α}) at q^{dim/24}, up to the Weyl denominator.
        let rs = RootSystem::parse("A1").unwrap();
        let s = macdonald_sum(&rs, &q(4, 1)).unwrap();
        assert_eq!(s.t_exp(), &q(2, 1));
        assert_eq!(s.coeff(&q(1, 8), &[q(1, 1)]), q(1, 1));
        assert_eq!(s.coeff(&q(1, 8), &[q(-1, 1)]), q(-1, 1));
    }
}

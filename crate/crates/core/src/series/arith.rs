//! Ring operations on [`GradedSeries`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{FxHashMap, FxHashSet, GradedSeries, Monomial, Support};
use crate::error::{Error, Result};
use crate::rational::{lcm, Rational};

fn min_opt(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

fn add_opt(a: &Option<Rational>, b: &Rational) -> Option<Rational> {
    a.as_ref().map(|x| x + b)
}

impl GradedSeries {
    fn check_space(&self, other: &GradedSeries) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    fn aligned(&self, other: &GradedSeries) -> (GradedSeries, GradedSeries) {
        let qden = lcm(self.qden, other.qden);
        let wden = lcm(self.wden, other.wden);
        (self.rescaled(qden, wden), other.rescaled(qden, wden))
    }

    /// Lower bound on `q` for weight-free series (stored or truncated terms).
    fn min_q(&self) -> Option<Rational> {
        self.lowest_possible_degree()
    }

    pub fn add(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check_space(other)?;
        if self.is_zero() && self.is_exact() {
            return Ok(other.clone());
        }
        if other.is_zero() && other.is_exact() {
            return Ok(self.clone());
        }
        let t_exp = if self.is_zero() {
            other.t_exp.clone()
        } else if other.is_zero() || self.t_exp == other.t_exp {
            self.t_exp.clone()
        } else {
            return Err(Error::TExpMismatch(self.t_exp.to_string(), other.t_exp.to_string()));
        };
        let unit = if self.is_zero() {
            other.unit
        } else if other.is_zero() || self.unit == other.unit {
            self.unit
        } else {
            return Err(Error::UnitMismatch(self.unit, other.unit));
        };
        let support = match (&self.support, &other.support) {
            (Support::WeightFree, Support::WeightFree) => Support::WeightFree,
            (Support::Unknown, _) | (_, Support::Unknown) => Support::Unknown,
            (Support::Quadratic { kappa: k1, offset: o1 }, Support::Quadratic { kappa: k2, offset: o2 }) => {
                Support::Quadratic { kappa: k1.clone().min(k2.clone()), offset: o1.clone().min(o2.clone()) }
            }
            (Support::Quadratic { kappa, offset }, Support::WeightFree) => Support::Quadratic {
                kappa: kappa.clone(),
                offset: other.min_q().map_or(offset.clone(), |m| m.min(offset.clone())),
            },
            (Support::WeightFree, Support::Quadratic { kappa, offset }) => Support::Quadratic {
                kappa: kappa.clone(),
                offset: self.min_q().map_or(offset.clone(), |m| m.min(offset.clone())),
            },
        };
        let (a, b) = self.aligned(other);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            let e = terms.entry(m).or_insert_with(Rational::zero);
            *e += &c;
        }
        // Units are canonical (0 or 1) on both sides, so coefficients add directly.
        Ok(GradedSeries::from_raw(
            a.space,
            a.qden,
            a.wden,
            terms,
            min_opt(&self.trunc, &other.trunc),
            t_exp,
            unit,
            support,
        ))
    }

    pub fn neg(&self) -> GradedSeries {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GradedSeries) -> Result<GradedSeries> {
        self.check_space(other)?;
        let (a, b) = self.aligned(other);
        let t_exp = &a.t_exp + &b.t_exp;
        let unit = (a.unit + b.unit) % 4;
        let la = a.lowest_possible_degree();
        let lb = b.lowest_possible_degree();
        // An exact zero annihilates everything.
        if (a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact()) {
            let mut z = GradedSeries::zero(&a.space, None);
            z.t_exp = t_exp;
            return Ok(z);
        }
        let lb = lb.expect("nonzero or truncated");
        let la = la.expect("nonzero or truncated");
        let trunc = min_opt(&add_opt(&a.trunc, &lb), &add_opt(&b.trunc, &la));
        let support = match (&a.support, &b.support) {
            (Support::WeightFree, Support::WeightFree) => Support::WeightFree,
            (Support::Unknown, _) | (_, Support::Unknown) => Support::Unknown,
            (Support::Quadratic { kappa: k1, offset: o1 }, Support::Quadratic { kappa: k2, offset: o2 }) => {
                Support::Quadratic { kappa: &(k1 * k2) / &(k1 + k2), offset: o1 + o2 }
            }
            (Support::Quadratic { kappa, offset }, Support::WeightFree) => {
                Support::Quadratic { kappa: kappa.clone(), offset: offset + &lb }
            }
            (Support::WeightFree, Support::Quadratic { kappa, offset }) => {
                Support::Quadratic { kappa: kappa.clone(), offset: offset + &la }
            }
        };

        let ds = a.degree_scale();
        let lim = trunc.as_ref().map(|t| ds.limit(t));
        let mut av: Vec<(i128, &Monomial, &Rational)> = a.terms.iter().map(|(m, c)| (ds.of(m), m, c)).collect();
        let mut bv: Vec<(i128, &Monomial, &Rational)> = b.terms.iter().map(|(m, c)| (ds.of(m), m, c)).collect();
        av.sort_by_key(|x| x.0);
        bv.sort_by_key(|x| x.0);
        let mut acc: FxHashMap<Monomial, Rational> = FxHashMap::default();
        acc.reserve(av.len().max(bv.len()) * 2);
        for (da, ma, ca) in &av {
            for (db, mb, cb) in &bv {
                if let Some(l) = lim {
                    if da + db >= l {
                        break;
                    }
                }
                let p = *ca * *cb;
                let key = ma.add(mb);
                match acc.get_mut(&key) {
                    Some(v) => *v += &p,
                    None => {
                        acc.insert(key, p);
                    }
                }
            }
        }
        Ok(GradedSeries::from_raw(a.space.clone(), a.qden, a.wden, acc, trunc, t_exp, unit, support))
    }

    /// Multiplicative inverse; needs a unique lowest-degree monomial.
    ///
    /// Exact inputs with more than one term have infinite inverses; truncate
    /// them first.
    pub fn invert(&self) -> Result<GradedSeries> {
        let ds = self.degree_scale();
        let Some(min) = self.terms.keys().map(|m| ds.of(m)).min() else {
            return Err(Error::NotInvertible("series is zero through its truncation".into()));
        };
        if let Some(t) = &self.trunc {
            if min >= ds.limit(t) {
                return Err(Error::NotInvertible("lowest term is not known".into()));
            }
        }
        let leads: Vec<(&Monomial, &Rational)> = self.terms.iter().filter(|(m, _)| ds.of(m) == min).collect();
        if leads.len() != 1 {
            return Err(Error::NotInvertible(format!("{} monomials share the lowest degree", leads.len())));
        }
        let (lead_m, lead_c) = (leads[0].0.clone(), leads[0].1.clone());
        let lead_inv = lead_c.recip();
        let d0 = ds.to_rational(min);

        // r = a / (c0 m0) − 1, all of positive degree.
        let r: Vec<(i128, Monomial, Rational)> = self
            .terms
            .iter()
            .filter(|(m, _)| **m != lead_m)
            .map(|(m, c)| {
                let rel = m.sub(&lead_m);
                (ds.of(&rel), rel, c * &lead_inv)
            })
            .collect();

        let trunc = match &self.trunc {
            Some(t) => Some(t - &(&d0 + &d0)),
            None if r.is_empty() => None,
            None => return Err(Error::NotInvertible("exact series with several terms has an infinite inverse".into())),
        };
        // 1/(1+r) is needed below relative degree trunc + d0.
        let rel_lim = trunc.as_ref().map(|t| ds.limit(&(t + &d0)));

        let zero_key = Monomial { q: 0, w: lead_m.w.iter().map(|_| 0).collect() };
        let mut c: FxHashMap<Monomial, Rational> = FxHashMap::default();
        c.insert(zero_key.clone(), Rational::one());
        if let Some(rel_lim) = rel_lim {
            let mut seen: FxHashSet<Monomial> = FxHashSet::default();
            let mut heap: BinaryHeap<Reverse<(i128, Monomial)>> = BinaryHeap::new();
            seen.insert(zero_key.clone());
            for (d, m, _) in &r {
                if *d < rel_lim && seen.insert(m.clone()) {
                    heap.push(Reverse((*d, m.clone())));
                }
            }
            while let Some(Reverse((dm, m))) = heap.pop() {
                let mut s = Rational::zero();
                for (_, rm, rc) in &r {
                    if let Some(prev) = c.get(&m.sub(rm)) {
                        s -= &(rc * prev);
                    }
                }
                if !s.is_zero() {
                    c.insert(m.clone(), s);
                }
                for (d, rm, _) in &r {
                    let nd = dm + d;
                    if nd < rel_lim {
                        let nm = m.add(rm);
                        if seen.insert(nm.clone()) {
                            heap.push(Reverse((nd, nm)));
                        }
                    }
                }
            }
        }
        let inv_lead = lead_m.neg();
        let terms: FxHashMap<Monomial, Rational> =
            c.into_iter().map(|(m, v)| (m.add(&inv_lead), &v * &lead_inv)).collect();
        let unit = (4 - self.unit) % 4;
        let support = match self.support {
            Support::WeightFree => Support::WeightFree,
            _ => Support::Unknown,
        };
        Ok(GradedSeries::from_raw(
            self.space.clone(),
            self.qden,
            self.wden,
            terms,
            trunc,
            -self.t_exp.clone(),
            unit,
            support,
        ))
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, n: i32) -> Result<GradedSeries> {
        if n == 0 {
            return Ok(GradedSeries::one(&self.space));
        }
        let base = if n < 0 { self.invert()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<GradedSeries> = None;
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(acc.expect("n != 0"))
    }

    /// Square root with leading coefficient `+√c`; the series must have
    /// no odd unit and a single lowest term whose coefficient is a square.
    pub fn sqrt(&self) -> Result<GradedSeries> {
        if self.unit != 0 {
            return Err(Error::SquareRootNotSeries("odd power of i".into()));
        }
        let terms = self.terms();
        let Some(min) = terms.iter().map(|t| self.degree_of(&t.q, &t.w)).min() else {
            return Err(Error::SquareRootNotSeries("series is zero through its truncation".into()));
        };
        let leads: Vec<_> = terms.iter().filter(|t| self.degree_of(&t.q, &t.w) == min).collect();
        if leads.len() != 1 {
            return Err(Error::SquareRootNotSeries(format!("{} monomials share the lowest degree", leads.len())));
        }
        let lead = leads[0];
        let root_c = lead
            .coeff
            .sqrt_exact()
            .ok_or_else(|| Error::SquareRootNotSeries(format!("leading coefficient {} is not a square", lead.coeff)))?;
        let neg_w: Vec<Rational> = lead.w.iter().map(|x| -x.clone()).collect();
        let r = self
            .mul_monomial(&-lead.q.clone(), &neg_w, &lead.coeff.recip(), &-self.t_exp.clone())
            .sub(&GradedSeries::one(&self.space))?;
        // (1 + r)^{1/2} = Σ C(1/2, n) rⁿ; every rⁿ starts above degree 0.
        let mut acc = GradedSeries::one(&self.space);
        let mut rn = GradedSeries::one(&self.space);
        let mut binom = Rational::one();
        let half = Rational::new(1, 2);
        let cap = r.trunc.clone();
        if cap.is_none() && !r.is_zero() {
            return Err(Error::SquareRootNotSeries("exact series with several terms has an infinite root".into()));
        }
        for n in 1.. {
            rn = rn.mul(&r)?;
            if let Some(t) = &cap {
                rn = rn.truncated(t.clone());
            }
            if rn.is_zero() {
                break;
            }
            binom = &binom * &(&(&half - &Rational::from_integer(n - 1)) / &Rational::from_integer(n));
            acc = acc.add(&rn.scale(&binom))?;
        }
        let half_w: Vec<Rational> = lead.w.iter().map(|x| x * &half).collect();
        let out = acc.mul_monomial(&(&lead.q * &half), &half_w, &root_c, &(&self.t_exp * &half));
        Ok(match self.support {
            Support::WeightFree => out,
            _ => out.with_unknown_support(),
        })
    }

    /// Product of many series, multiplying the sparsest first.
    pub fn product<'a, I>(space: &Arc<super::WeightSpace>, items: I) -> Result<GradedSeries>
    where
        I: IntoIterator<Item = &'a GradedSeries>,
    {
        let mut v: Vec<&GradedSeries> = items.into_iter().collect();
        v.sort_by_key(|s| s.len());
        let mut acc = GradedSeries::one(space);
        for s in v {
            acc = acc.mul(s)?;
        }
        Ok(acc)
    }
}

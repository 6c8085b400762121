//! Truncated formal series in `q^{1/D}` with weight-lattice exponents.
//!
//! A [`GradedSeries`] represents
//!
//! ```text
//!   i^unit · e^{2πi·t_exp·t} · Σ c · q^a · e^{2πi μ(z)}
//! ```
//!
//! with exact rational coefficients. Exponents `a` are stored as integers over
//! a series-wide denominator `qden`, weights `μ` as integer vectors over
//! `wden`. Truncation is by the tilted degree `a − (μ|ξ)` of the ambient
//! [`WeightSpace`]: every monomial of degree below `trunc` is known exactly,
//! nothing at or above it is stored. Characters of non-integrable modules
//! have infinitely many weights at each power of `q`, so truncating in `q`
//! alone would not give finite objects.

mod arith;
mod hash;
mod space;
mod transform;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::linalg::RVec;
use crate::rational::{lcm, Rational};

pub use hash::{FxHashMap, FxHashSet};
pub use space::WeightSpace;
pub use transform::WeightMap;

pub type WKey = SmallVec<[i64; 4]>;

/// Exponent pair of a single term, over the owning series' denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: i64,
    pub w: WKey,
}

impl Monomial {
    pub fn add(&self, other: &Monomial) -> Monomial {
        Monomial { q: self.q + other.q, w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Monomial) -> Monomial {
        Monomial { q: self.q - other.q, w: self.w.iter().zip(&other.w).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Monomial {
        Monomial { q: -self.q, w: self.w.iter().map(|a| -a).collect() }
    }

    fn is_unit(&self) -> bool {
        self.q == 0 && self.w.iter().all(|&x| x == 0)
    }
}

/// What is known about where terms can live, including terms beyond the
/// truncation. Needed whenever a transform changes the degree functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    /// Every weight is zero.
    WeightFree,
    /// Every term satisfies `qExp ≥ kappa·|μ|² + offset`, `kappa > 0`.
    Quadratic {
        kappa: Rational,
        offset: Rational,
    },
    Unknown,
}

/// One term with exponents as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub q: Rational,
    pub w: RVec,
    pub coeff: Rational,
}

#[derive(Clone)]
pub struct GradedSeries {
    space: Arc<WeightSpace>,
    qden: i64,
    wden: i64,
    terms: FxHashMap<Monomial, Rational>,
    trunc: Option<Rational>,
    t_exp: Rational,
    unit: u8,
    support: Support,
}

/// Integer form of the degree functional for fixed denominators.
pub(crate) struct DegreeScale {
    l: i64,
    qmul: i128,
    wmul: SmallVec<[i128; 4]>,
}

impl DegreeScale {
    fn new(space: &WeightSpace, qden: i64, wden: i64) -> Self {
        let tden = space.tilt_den();
        let l = lcm(qden, tden * wden);
        let per_w = (l / (tden * wden)) as i128;
        DegreeScale { l, qmul: (l / qden) as i128, wmul: space.tilt_num().iter().map(|&t| t as i128 * per_w).collect() }
    }

    #[inline]
    pub(crate) fn of(&self, m: &Monomial) -> i128 {
        let mut d = m.q as i128 * self.qmul;
        for (w, k) in m.w.iter().zip(&self.wmul) {
            d -= *w as i128 * k;
        }
        d
    }

    /// Smallest integer degree that is *not* below `t`.
    pub(crate) fn limit(&self, t: &Rational) -> i128 {
        let scaled = t * &Rational::from_integer(self.l);
        num_traits::ToPrimitive::to_i128(&scaled.ceil()).expect("truncation out of range")
    }

    pub(crate) fn to_rational(&self, d: i128) -> Rational {
        Rational::new(i64::try_from(d).expect("degree out of range"), self.l)
    }
}

fn rat_to_scaled(x: &Rational, den: i64) -> i64 {
    (x * &Rational::from_integer(den)).to_integer().expect("exponent not representable over series denominator")
}

impl GradedSeries {
    /// Builds a series from rational-exponent terms; duplicates are summed,
    /// zeros and terms at or above `trunc` dropped.
    pub fn from_terms<I>(
        space: &Arc<WeightSpace>,
        terms: I,
        trunc: Option<Rational>,
        t_exp: Rational,
        unit: u8,
        support: Support,
    ) -> Self
    where
        I: IntoIterator<Item = Term>,
    {
        let terms: Vec<Term> = terms.into_iter().collect();
        let mut qden = 1;
        let mut wden = 1;
        for t in &terms {
            assert_eq!(t.w.len(), space.rank(), "weight has wrong rank");
            qden = lcm(qden, t.q.den_i64());
            for x in &t.w {
                wden = lcm(wden, x.den_i64());
            }
        }
        let mut out =
            GradedSeries { space: space.clone(), qden, wden, terms: FxHashMap::default(), trunc, t_exp, unit, support };
        for t in terms {
            if t.coeff.is_zero() {
                continue;
            }
            let key =
                Monomial { q: rat_to_scaled(&t.q, qden), w: t.w.iter().map(|x| rat_to_scaled(x, wden)).collect() };
            let e = out.terms.entry(key).or_insert_with(Rational::zero);
            *e += &t.coeff;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out.drop_above_trunc();
        out.normalize_unit();
        out
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_raw(
        space: Arc<WeightSpace>,
        qden: i64,
        wden: i64,
        terms: FxHashMap<Monomial, Rational>,
        trunc: Option<Rational>,
        t_exp: Rational,
        unit: u8,
        support: Support,
    ) -> Self {
        let mut s = GradedSeries { space, qden, wden, terms, trunc, t_exp, unit, support };
        s.terms.retain(|_, c| !c.is_zero());
        s.drop_above_trunc();
        s.normalize_unit();
        s
    }

    /// The constant 1, exact.
    pub fn one(space: &Arc<WeightSpace>) -> Self {
        Self::monomial(space, Rational::zero(), vec![Rational::zero(); space.rank()], Rational::one())
    }

    /// The zero series, known below degree `trunc`.
    pub fn zero(space: &Arc<WeightSpace>, trunc: Option<Rational>) -> Self {
        Self::from_terms(space, [], trunc, Rational::zero(), 0, Support::WeightFree)
    }

    /// Exact single term `coeff · q^q · e^w`.
    pub fn monomial(space: &Arc<WeightSpace>, q: Rational, w: RVec, coeff: Rational) -> Self {
        let support = if WeightSpace::is_zero_vec(&w) {
            Support::WeightFree
        } else {
            Support::Quadratic { kappa: Rational::one(), offset: &q - &space.norm2(&w) }
        };
        Self::from_terms(space, [Term { q, w, coeff }], None, Rational::zero(), 0, support)
    }

    /// Exact finite sum of terms; the support bound is computed from the terms.
    pub fn polynomial(space: &Arc<WeightSpace>, terms: Vec<Term>) -> Self {
        let support = if terms.iter().all(|t| WeightSpace::is_zero_vec(&t.w)) {
            Support::WeightFree
        } else {
            let offset = terms.iter().map(|t| &t.q - &space.norm2(&t.w)).min().unwrap_or_else(Rational::zero);
            Support::Quadratic { kappa: Rational::one(), offset }
        };
        Self::from_terms(space, terms, None, Rational::zero(), 0, support)
    }

    /// Pure `q`-series from integer-indexed coefficients: `Σ coeffs[n] q^{(offset + n·step)}`.
    pub fn q_series(
        space: &Arc<WeightSpace>,
        offset: Rational,
        step: Rational,
        coeffs: &[i64],
        trunc: Rational,
    ) -> Self {
        let zero_w = vec![Rational::zero(); space.rank()];
        let terms = coeffs.iter().enumerate().map(|(n, &c)| Term {
            q: &offset + &(&step * &Rational::from_integer(n as i64)),
            w: zero_w.clone(),
            coeff: Rational::from_integer(c),
        });
        Self::from_terms(space, terms, Some(trunc), Rational::zero(), 0, Support::WeightFree)
    }

    fn degree_scale(&self) -> DegreeScale {
        DegreeScale::new(&self.space, self.qden, self.wden)
    }

    fn drop_above_trunc(&mut self) {
        if let Some(t) = &self.trunc {
            let ds = self.degree_scale();
            let lim = ds.limit(t);
            self.terms.retain(|m, _| ds.of(m) < lim);
        }
    }

    fn normalize_unit(&mut self) {
        self.unit %= 4;
        if self.terms.is_empty() {
            self.unit = 0;
        }
        if self.unit >= 2 {
            self.unit -= 2;
            for c in self.terms.values_mut() {
                *c = -c.clone();
            }
        }
    }

    /// Re-expresses keys over larger denominators (multiples of the current ones).
    pub(crate) fn rescaled(&self, qden: i64, wden: i64) -> GradedSeries {
        if qden == self.qden && wden == self.wden {
            return self.clone();
        }
        assert!(qden % self.qden == 0 && wden % self.wden == 0);
        let (fq, fw) = (qden / self.qden, wden / self.wden);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial { q: m.q * fq, w: m.w.iter().map(|x| x * fw).collect() }, c.clone()))
            .collect();
        GradedSeries { terms, qden, wden, ..self.clone_meta() }
    }

    fn clone_meta(&self) -> GradedSeries {
        GradedSeries {
            space: self.space.clone(),
            qden: self.qden,
            wden: self.wden,
            terms: FxHashMap::default(),
            trunc: self.trunc.clone(),
            t_exp: self.t_exp.clone(),
            unit: self.unit,
            support: self.support.clone(),
        }
    }

    pub fn space(&self) -> &Arc<WeightSpace> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn q_denominator(&self) -> i64 {
        self.qden
    }

    pub fn w_denominator(&self) -> i64 {
        self.wden
    }

    /// Degree bound below which the series is exact; `None` for exact (finite) series.
    pub fn trunc(&self) -> Option<&Rational> {
        self.trunc.as_ref()
    }

    pub fn t_exp(&self) -> &Rational {
        &self.t_exp
    }

    /// Power of `i` multiplying the series, 0 or 1.
    pub fn unit(&self) -> u8 {
        self.unit
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// No stored terms; same as [`is_zero`](Self::is_zero).
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn raw_terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn term_of(&self, m: &Monomial, c: &Rational) -> Term {
        Term {
            q: Rational::new(m.q, self.qden),
            w: m.w.iter().map(|&x| Rational::new(x, self.wden)).collect(),
            coeff: c.clone(),
        }
    }

    /// Terms in ascending `qExp`, then lexicographic weight order.
    pub fn terms(&self) -> Vec<Term> {
        let mut v: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v.into_iter().map(|(m, c)| self.term_of(m, c)).collect()
    }

    pub fn coeff(&self, q: &Rational, w: &[Rational]) -> Rational {
        let scaled_q = q * &Rational::from_integer(self.qden);
        let Some(qi) = scaled_q.to_integer() else { return Rational::zero() };
        let mut wk = WKey::new();
        for x in w {
            match (x * &Rational::from_integer(self.wden)).to_integer() {
                Some(v) => wk.push(v),
                None => return Rational::zero(),
            }
        }
        self.terms.get(&Monomial { q: qi, w: wk }).cloned().unwrap_or_else(Rational::zero)
    }

    /// Tilted degree `q − (μ|ξ)` of an exponent pair.
    pub fn degree_of(&self, q: &Rational, w: &[Rational]) -> Rational {
        q - &self.space.tilt_of(w)
    }

    /// Lowest degree among stored terms.
    pub fn lowest_degree(&self) -> Option<Rational> {
        let ds = self.degree_scale();
        self.terms.keys().map(|m| ds.of(m)).min().map(|d| ds.to_rational(d))
    }

    /// Lower bound for the degree of every term, stored or truncated.
    pub fn lowest_possible_degree(&self) -> Option<Rational> {
        match (self.lowest_degree(), &self.trunc) {
            (Some(a), Some(t)) => Some(a.min(t.clone())),
            (Some(a), None) => Some(a),
            (None, t) => t.clone(),
        }
    }

    /// All terms of lowest degree.
    pub fn leading_terms(&self) -> Vec<Term> {
        let ds = self.degree_scale();
        let Some(min) = self.terms.keys().map(|m| ds.of(m)).min() else { return Vec::new() };
        let mut v: Vec<_> = self.terms.iter().filter(|(m, _)| ds.of(m) == min).collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v.into_iter().map(|(m, c)| self.term_of(m, c)).collect()
    }

    /// Number of degree units known above the lowest term.
    pub fn depth(&self) -> Option<Rational> {
        match (&self.trunc, self.lowest_degree()) {
            (Some(t), Some(l)) => Some(t - &l),
            _ => None,
        }
    }

    /// Drops everything at or above degree `t`.
    pub fn truncated(&self, t: Rational) -> GradedSeries {
        let new_t = match &self.trunc {
            Some(old) if *old <= t => old.clone(),
            _ => t,
        };
        let mut out = self.clone();
        out.trunc = Some(new_t);
        out.drop_above_trunc();
        out
    }

    /// Keeps `depth` degree units above the lowest possible degree.
    pub fn truncated_to_depth(&self, depth: &Rational) -> GradedSeries {
        match self.lowest_possible_degree() {
            Some(l) => self.truncated(&l + depth),
            None => self.clone(),
        }
    }

    pub fn with_t_exp(mut self, t: Rational) -> GradedSeries {
        self.t_exp = t;
        self
    }

    pub fn with_unit(mut self, unit: u8) -> GradedSeries {
        self.unit = unit;
        self.normalize_unit();
        self
    }

    pub(crate) fn with_unknown_support(mut self) -> GradedSeries {
        self.support = Support::Unknown;
        self
    }

    /// Replaces the support bound after checking it against every stored term.
    ///
    /// The caller vouches for terms beyond the truncation.
    pub fn certify_support(mut self, support: Support) -> crate::Result<GradedSeries> {
        for t in self.terms() {
            let ok = match &support {
                Support::WeightFree => WeightSpace::is_zero_vec(&t.w),
                Support::Quadratic { kappa, offset } => t.q >= kappa * &self.space.norm2(&t.w) + offset,
                Support::Unknown => true,
            };
            if !ok {
                return Err(crate::Error::InvalidInput(format!(
                    "term q^{} e^{:?} violates the certified support {:?}",
                    t.q, t.w, support
                )));
            }
        }
        self.support = support;
        Ok(self)
    }

    /// Multiplies by `i^m`.
    pub fn mul_unit(mut self, m: u8) -> GradedSeries {
        self.unit = (self.unit + m % 4) % 4;
        self.normalize_unit();
        self
    }

    pub fn scale(&self, c: &Rational) -> GradedSeries {
        if c.is_zero() {
            let mut z = GradedSeries::zero(&self.space, self.trunc.clone());
            z.t_exp = self.t_exp.clone();
            return z;
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    /// Multiplies by the exact monomial `c · q^dq · e^dw` and adds `dt` to the t-exponent.
    pub fn mul_monomial(&self, dq: &Rational, dw: &[Rational], c: &Rational, dt: &Rational) -> GradedSeries {
        let m = GradedSeries::monomial(&self.space, dq.clone(), dw.to_vec(), c.clone()).with_t_exp(dt.clone());
        self.mul(&m).expect("same space")
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Constant term (`q^0 e^0`), if the series is exactly that.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries(i^{} e^{{{}t}} [", self.unit, self.t_exp)?;
        for (n, t) in self.terms().iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if n >= 12 {
                write!(f, "…({} terms)", self.terms.len())?;
                break;
            }
            write!(f, "({}) q^{} e^{:?}", t.coeff, t.q, t.w)?;
        }
        match &self.trunc {
            Some(t) => write!(f, "] + O(deg {t}))"),
            None => write!(f, "])"),
        }
    }
}

/// Outcome of comparing two series below their common truncation.
#[derive(Clone, Debug)]
pub struct SeriesDiff {
    /// Degree bound up to which the comparison was made (`None`: both exact).
    pub checked_below: Option<Rational>,
    pub compared_terms: usize,
    pub mismatches: Vec<(Term, Rational, Rational)>,
    pub t_exp_mismatch: Option<(Rational, Rational)>,
    pub unit_mismatch: Option<(u8, u8)>,
}

impl SeriesDiff {
    pub fn is_equal(&self) -> bool {
        self.mismatches.is_empty() && self.t_exp_mismatch.is_none() && self.unit_mismatch.is_none()
    }
}

impl GradedSeries {
    /// Coefficient-exact comparison below `min(trunc)`.
    pub fn compare(&self, other: &GradedSeries) -> SeriesDiff {
        assert!(Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space, "different weight spaces");
        let qden = lcm(self.qden, other.qden);
        let wden = lcm(self.wden, other.wden);
        let a = self.rescaled(qden, wden);
        let b = other.rescaled(qden, wden);
        let checked_below = match (&a.trunc, &b.trunc) {
            (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };
        let ds = a.degree_scale();
        let lim = checked_below.as_ref().map(|t| ds.limit(t));
        let below = |m: &Monomial| lim.is_none_or(|l| ds.of(m) < l);
        let mut keys: FxHashSet<&Monomial> = a.terms.keys().filter(|m| below(m)).collect();
        keys.extend(b.terms.keys().filter(|m| below(m)));
        let mut mismatches = Vec::new();
        let mut sorted: Vec<&Monomial> = keys.iter().copied().collect();
        sorted.sort();
        for m in &sorted {
            let x = a.terms.get(m).cloned().unwrap_or_else(Rational::zero);
            let y = b.terms.get(m).cloned().unwrap_or_else(Rational::zero);
            if x != y {
                mismatches.push((a.term_of(m, &x), x, y));
            }
        }
        let nonzero = !a.terms.is_empty() && !b.terms.is_empty();
        SeriesDiff {
            checked_below,
            compared_terms: sorted.len(),
            mismatches,
            t_exp_mismatch: (nonzero && a.t_exp != b.t_exp).then(|| (a.t_exp.clone(), b.t_exp.clone())),
            unit_mismatch: (nonzero && a.unit != b.unit).then_some((a.unit, b.unit)),
        }
    }

    /// Shorthand for `compare(..).is_equal()`.
    pub fn agrees_with(&self, other: &GradedSeries) -> bool {
        self.compare(other).is_equal()
    }
}

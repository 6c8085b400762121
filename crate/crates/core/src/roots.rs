//! Finite root systems in the fundamental-weight basis.
//!
//! Weights are coordinate vectors `λ = Σ λᵢ ωᵢ`, so `λᵢ = (λ|αᵢ∨)`. The
//! invariant form is normalized by `(θ|θ) = 2`. Simple root `αⱼ` has
//! coordinates `aᵢⱼ` (column `j` of the Cartan matrix).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{vadd, vscale, Matrix, RVec};
use crate::rational::Rational;
use crate::series::WeightSpace;

pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank).map_err(|_| bad())
    }
}

/// Cartan matrix and half squared lengths `dᵢ = (αᵢ|αᵢ)/2`.
fn cartan_data(ct: CartanType) -> (Vec<Vec<i64>>, Vec<Rational>) {
    let n = ct.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let one = Rational::one();
    let half = Rational::new(1, 2);
    let mut d = vec![one.clone(); n];
    match ct.family {
        Family::A => {
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
            a[n - 1][n - 2] = -2;
            d[n - 1] = half;
        }
        Family::C => {
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
            a[n - 2][n - 1] = -2;
            for x in d.iter_mut().take(n - 1) {
                *x = half.clone();
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                chain(&mut a, i, i + 1);
            }
            chain(&mut a, n - 3, n - 1);
        }
        Family::E => {
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
            chain(&mut a, 0, 2);
            chain(&mut a, 1, 3);
            for i in 2..n - 1 {
                chain(&mut a, i, i + 1);
            }
        }
        Family::F => {
            chain(&mut a, 0, 1);
            chain(&mut a, 1, 2);
            chain(&mut a, 2, 3);
            a[2][1] = -2;
            d[2] = half.clone();
            d[3] = half;
        }
        Family::G => {
            // α₁ long, α₂ short.
            a[0][1] = -1;
            a[1][0] = -3;
            d[1] = Rational::new(1, 3);
        }
    }
    (a, d)
}

fn weyl_order(ct: CartanType) -> u128 {
    let n = ct.rank as u128;
    let fact = |k: u128| (1..=k).product::<u128>();
    match ct.family {
        Family::A => fact(n + 1),
        Family::B | Family::C => (1u128 << n) * fact(n),
        Family::D => (1u128 << (n - 1)) * fact(n),
        Family::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

/// Element of the Weyl group acting on weight coordinates.
#[derive(Clone, Debug)]
pub struct WeylElement {
    /// Reduced word: `w = s_{word[0]} s_{word[1]} ⋯`.
    pub word: Vec<usize>,
    pub matrix: Matrix,
    pub sign: i8,
}

impl WeylElement {
    pub fn act(&self, mu: &[Rational]) -> RVec {
        self.matrix.apply(mu)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

#[derive(Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub cartan: Vec<Vec<i64>>,
    /// `(αᵢ|αᵢ)/2`.
    pub half_norms: Vec<Rational>,
    /// Simple roots in weight coordinates.
    pub simple_roots: Vec<RVec>,
    /// Positive roots as simple-root coefficient vectors, by height.
    pub positive_coeffs: Vec<Vec<i64>>,
    /// Positive roots in weight coordinates, same order.
    pub positive_roots: Vec<RVec>,
    pub rho: RVec,
    pub rho_dual: RVec,
    pub theta: RVec,
    pub theta_coeffs: Vec<i64>,
    pub h_dual: i64,
    pub r_dual: i64,
    pub coxeter: i64,
    gram: Matrix,
    space: Arc<WeightSpace>,
    weyl: std::sync::OnceLock<std::result::Result<Vec<WeylElement>, (usize, usize)>>,
}

impl RootSystem {
    pub fn build(ct: CartanType) -> Result<Arc<RootSystem>> {
        let (cartan, d) = cartan_data(ct);
        let n = ct.rank;
        let a = Matrix::from_int_rows(&cartan);
        let simple_roots: Vec<RVec> = (0..n).map(|j| a.col(j)).collect();
        // (αᵢ|αⱼ) = dᵢ aᵢⱼ; in weight coordinates G = A⁻ᵀ B A⁻¹.
        let b = Matrix::from_rows((0..n).map(|i| (0..n).map(|j| &d[i] * &a[(i, j)]).collect()).collect());
        let a_inv = a.inverse().expect("Cartan matrix is invertible");
        let gram = a_inv.transpose().mul(&b).mul(&a_inv);

        let positive_coeffs = positive_roots(&cartan);
        let positive_roots: Vec<RVec> = positive_coeffs.iter().map(|c| combine(&simple_roots, c)).collect();
        let theta_coeffs = positive_coeffs.last().expect("nonempty").clone();
        let theta = positive_roots.last().expect("nonempty").clone();
        let rho = vec![Rational::one(); n];
        let rho_dual: RVec = d.iter().map(|x| x.recip()).collect();
        let coxeter = theta_coeffs.iter().sum::<i64>() + 1;
        // θ∨ = Σ (dᵢ mᵢ) αᵢ∨ since θ is long.
        let h_dual_r: Rational = theta_coeffs.iter().zip(&d).map(|(m, di)| di * &Rational::from_integer(*m)).sum();
        let h_dual = h_dual_r.to_integer().expect("integral") + 1;
        let dmax = d.iter().max().unwrap().clone();
        let dmin = d.iter().min().unwrap().clone();
        let r_dual = (&dmax / &dmin).to_integer().expect("integral lacing number");

        let tilt = vscale(&Rational::new(1, coxeter), &rho_dual);
        let space = Arc::new(WeightSpace::new(gram.clone(), tilt));
        let rs = RootSystem {
            cartan_type: ct,
            cartan,
            half_norms: d,
            simple_roots,
            positive_coeffs,
            positive_roots,
            rho,
            rho_dual,
            theta,
            theta_coeffs,
            h_dual,
            r_dual,
            coxeter,
            gram,
            space,
            weyl: std::sync::OnceLock::new(),
        };
        debug_assert_eq!(rs.norm2(&rs.theta), Rational::from_integer(2));
        Ok(Arc::new(rs))
    }

    pub fn parse(s: &str) -> Result<Arc<RootSystem>> {
        Self::build(s.parse()?)
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn dim(&self) -> i64 {
        (self.rank() + 2 * self.positive_roots.len()) as i64
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Gram matrix of the fundamental weights.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Weight space shared by every series built over this root system.
    pub fn weight_space(&self) -> &Arc<WeightSpace> {
        &self.space
    }

    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.gram.form(a, b)
    }

    pub fn norm2(&self, a: &[Rational]) -> Rational {
        self.inner(a, a)
    }

    /// `α∨ = 2α/(α|α)`.
    pub fn coroot(&self, alpha: &[Rational]) -> Result<RVec> {
        let n = self.norm2(alpha);
        if n.is_zero() {
            return Err(Error::ZeroRoot);
        }
        Ok(vscale(&(&Rational::from_integer(2) / &n), alpha))
    }

    /// Whether `μ` is a root, positive or negative.
    pub fn is_root(&self, mu: &[Rational]) -> bool {
        self.positive_roots.iter().any(|a| a == mu || a.iter().zip(mu).all(|(x, y)| *x == -y))
    }

    /// Whether a root is positive; `None` if `μ` is not a root.
    pub fn root_sign(&self, mu: &[Rational]) -> Option<bool> {
        for a in &self.positive_roots {
            if a == mu {
                return Some(true);
            }
            if a.iter().zip(mu).all(|(x, y)| *x == -y) {
                return Some(false);
            }
        }
        None
    }

    /// Simple-root coefficients of a vector in the root lattice span.
    pub fn root_coefficients(&self, mu: &[Rational]) -> RVec {
        let a = Matrix::from_int_rows(&self.cartan);
        a.inverse().expect("invertible").apply(mu)
    }

    /// Fundamental coweights `ωᵢ∨ = ωᵢ/dᵢ`: a basis of `Q*`.
    pub fn dual_lattice_basis(&self) -> Vec<RVec> {
        (0..self.rank())
            .map(|i| {
                let mut v = vec![Rational::zero(); self.rank()];
                v[i] = self.half_norms[i].recip();
                v
            })
            .collect()
    }

    /// Simple coroots: a basis of `Q∨`.
    pub fn coroot_lattice_basis(&self) -> Vec<RVec> {
        self.simple_roots.iter().zip(&self.half_norms).map(|(a, d)| vscale(&d.recip(), a)).collect()
    }

    /// `h ∈ Q*` iff `(h|αⱼ) ∈ ℤ` for every simple root.
    pub fn in_dual_lattice(&self, h: &[Rational]) -> bool {
        h.iter().zip(&self.half_norms).all(|(x, d)| (x * d).is_integer())
    }

    /// `h ∈ Q∨` iff its simple-coroot coefficients are integers.
    pub fn in_coroot_lattice(&self, h: &[Rational]) -> bool {
        let basis = Matrix::from_rows(self.coroot_lattice_basis()).transpose();
        basis.inverse().expect("basis").apply(h).iter().all(|x| x.is_integer())
    }

    pub fn simple_reflection(&self, i: usize) -> Matrix {
        let n = self.rank();
        let mut m = Matrix::identity(n);
        for r in 0..n {
            m[(r, i)] -= &self.simple_roots[i][r];
        }
        m
    }

    /// Reflection `r_α(λ) = λ − (λ|α∨)α`.
    pub fn reflection(&self, alpha: &[Rational]) -> Result<Matrix> {
        let cv = self.coroot(alpha)?;
        let n = self.rank();
        let gc = self.gram.apply(&cv);
        let mut m = Matrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= &(&alpha[r] * &gc[c]);
            }
        }
        Ok(m)
    }

    /// All Weyl group elements in breadth-first (length) order, identity first.
    pub fn weyl_elements(&self) -> Result<&[WeylElement]> {
        self.weyl_elements_bounded(DEFAULT_WEYL_BOUND)
    }

    pub fn weyl_elements_bounded(&self, bound: usize) -> Result<&[WeylElement]> {
        let order = weyl_order(self.cartan_type);
        if order > bound as u128 {
            return Err(Error::GroupTooLarge { order: order.min(usize::MAX as u128) as usize, bound });
        }
        let res = self.weyl.get_or_init(|| Ok(self.enumerate_weyl()));
        match res {
            Ok(v) => Ok(v),
            Err((o, b)) => Err(Error::GroupTooLarge { order: *o, bound: *b }),
        }
    }

    fn enumerate_weyl(&self) -> Vec<WeylElement> {
        let n = self.rank();
        let gens: Vec<Matrix> = (0..n).map(|i| self.simple_reflection(i)).collect();
        let id = WeylElement { word: Vec::new(), matrix: Matrix::identity(n), sign: 1 };
        let mut seen: HashMap<Matrix, usize> = HashMap::new();
        seen.insert(id.matrix.clone(), 0);
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            for (i, g) in gens.iter().enumerate() {
                let m = out[head].matrix.mul(g);
                if !seen.contains_key(&m) {
                    let mut word = out[head].word.clone();
                    word.push(i);
                    seen.insert(m.clone(), out.len());
                    let sign = -out[head].sign;
                    out.push(WeylElement { word, matrix: m, sign });
                }
            }
            head += 1;
        }
        out
    }

    /// The element with the given word (need not be reduced).
    pub fn weyl_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut m = Matrix::identity(self.rank());
        for &i in word {
            if i >= self.rank() {
                return Err(Error::InvalidInput(format!("simple reflection index {i} out of range")));
            }
            m = m.mul(&self.simple_reflection(i));
        }
        self.weyl_from_matrix(&m)
    }

    /// Looks up an enumerated element by its matrix.
    pub fn weyl_from_matrix(&self, m: &Matrix) -> Result<WeylElement> {
        self.weyl_elements()?
            .iter()
            .find(|w| w.matrix == *m)
            .cloned()
            .ok_or_else(|| Error::InvalidInput("matrix is not a Weyl group element".into()))
    }

    pub fn weyl_inverse(&self, w: &WeylElement) -> Result<WeylElement> {
        let inv = w.matrix.inverse().expect("invertible");
        self.weyl_from_matrix(&inv)
    }

    pub fn weyl_act(&self, w: &WeylElement, mu: &[Rational]) -> RVec {
        w.act(mu)
    }

    /// Orthogonal projection onto the orthogonal complement of `span(vs)`.
    pub fn orthogonal_projection(&self, vs: &[RVec]) -> Matrix {
        let n = self.rank();
        // P = I − V (Vᵀ G V)⁻¹ Vᵀ G
        if vs.is_empty() {
            return Matrix::identity(n);
        }
        let v = Matrix::from_rows(vs.to_vec()).transpose();
        let vtg = v.transpose().mul(&self.gram);
        let inner = vtg.mul(&v).inverse().expect("independent vectors");
        let corr = v.mul(&inner).mul(&vtg);
        let mut p = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] -= &corr[(i, j)];
            }
        }
        p
    }

    /// `(ρ|α)` for each positive root.
    pub fn heights(&self) -> Vec<Rational> {
        self.positive_roots.iter().map(|a| self.inner(&self.rho, a)).collect()
    }
}

fn combine(basis: &[RVec], coeffs: &[i64]) -> RVec {
    let n = basis[0].len();
    let mut out = vec![Rational::zero(); n];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            out = vadd(&out, &vscale(&Rational::from_integer(c), b));
        }
    }
    out
}

/// Positive roots by the string algorithm, in order of height.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for r in &layer {
            for i in 0..n {
                // ⟨r, αᵢ∨⟩ = Σⱼ aᵢⱼ cⱼ
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let mut p = 0;
                let mut down = r.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = r.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::rational::q;
    use proptest::prelude::*;

    fn all_types() -> Vec<&'static str> {
        vec!["A1", "A2", "A3", "A4", "A5", "B2", "B3", "C3", "D4", "G2", "F4", "E6"]
    }

    #[test]
    fn classical_constants() {
        let cases = [
            ("A1", 1, 2, 1, 2),
            ("A2", 3, 3, 1, 3),
            ("A5", 15, 6, 1, 6),
            ("B2", 4, 3, 2, 4),
            ("B3", 9, 5, 2, 6),
            ("C3", 9, 4, 2, 6),
            ("D4", 12, 6, 1, 6),
            ("G2", 6, 4, 3, 6),
            ("F4", 24, 9, 2, 12),
            ("E6", 36, 12, 1, 12),
        ];
        for (name, npos, hd, rd, h) in cases {
            let rs = RootSystem::parse(name).unwrap();
            assert_eq!(rs.num_positive(), npos, "{name}");
            assert_eq!(rs.h_dual, hd, "{name}");
            assert_eq!(rs.r_dual, rd, "{name}");
            assert_eq!(rs.coxeter, h, "{name}");
        }
    }

    #[test]
    fn invariants_hold() {
        for name in all_types() {
            let rs = RootSystem::parse(name).unwrap();
            assert_eq!(rs.norm2(&rs.theta), q(2, 1), "{name}");
            for a in &rs.simple_roots {
                assert_eq!(rs.inner(&rs.rho, &rs.coroot(a).unwrap()), q(1, 1));
            }
            let sum = rs.positive_roots.iter().fold(vec![Rational::zero(); rs.rank()], |acc, a| vadd(&acc, a));
            assert_eq!(vscale(&q(1, 2), &sum), rs.rho);
            assert_eq!(Rational::from_integer(rs.h_dual), &rs.inner(&rs.rho, &rs.theta) + &q(1, 1));
            // Freudenthal–de Vries: |ρ|² = h∨ dim / 12.
            assert_eq!(rs.norm2(&rs.rho), q(rs.h_dual * rs.dim(), 12), "{name}");
        }
    }

    #[test]
    fn examples_from_text() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.inner(&a1.simple_roots[0], &a1.simple_roots[0]), q(2, 1));
        assert_eq!(a1.inner(&a1.rho, &a1.simple_roots[0]), q(1, 1));
        for n in 2..=6 {
            let rs = RootSystem::parse(&format!("A{}", n - 1)).unwrap();
            assert_eq!(rs.h_dual, n as i64);
            assert_eq!(rs.coroot(&rs.theta).unwrap(), rs.theta);
        }
        assert_eq!(RootSystem::parse("G2").unwrap().r_dual, 3);
        assert!(matches!(RootSystem::parse("X3"), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootSystem::parse("D3"), Err(Error::UnsupportedType(_))));
        assert!(matches!(a1.coroot(&[q(0, 1)]), Err(Error::ZeroRoot)));
    }

    #[test]
    fn weyl_groups() {
        for (name, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("C3", 48)] {
            let rs = RootSystem::parse(name).unwrap();
            let w = rs.weyl_elements().unwrap();
            assert_eq!(w.len(), order, "{name}");
            for e in w {
                assert_eq!(e.sign as i32, if e.word.len() % 2 == 0 { 1 } else { -1 });
                assert_eq!(Rational::from_integer(e.sign as i64), e.matrix.det());
                for a in &rs.positive_roots {
                    assert!(rs.is_root(&e.act(a)));
                }
            }
        }
        let a2 = RootSystem::parse("A2").unwrap();
        let r_theta = a2.weyl_from_matrix(&a2.reflection(&a2.theta).unwrap()).unwrap();
        assert_eq!(r_theta.sign, -1);
        let e8 = RootSystem::parse("E8").unwrap();
        assert!(matches!(e8.weyl_elements(), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn dual_lattice() {
        let a1 = RootSystem::parse("A1").unwrap();
        assert_eq!(a1.dual_lattice_basis(), vec![vscale(&q(1, 2), &a1.simple_roots[0])]);
        assert!(!a1.in_dual_lattice(&vscale(&q(1, 3), &a1.simple_roots[0])));
        let a2 = RootSystem::parse("A2").unwrap();
        for k1 in -3..=3 {
            for k2 in -3..=3 {
                let beta = vec![q(-k1, 1), q(-k2, 1)];
                assert!(a2.in_dual_lattice(&beta));
            }
        }
        for name in all_types() {
            let rs = RootSystem::parse(name).unwrap();
            for h in rs.dual_lattice_basis() {
                for a in &rs.positive_roots {
                    assert!(rs.inner(&h, a).is_integer());
                }
            }
            for c in rs.coroot_lattice_basis() {
                assert!(rs.in_dual_lattice(&c));
                assert!(rs.in_coroot_lattice(&c));
            }
        }
    }

    #[test]
    fn projection_is_orthogonal() {
        let a2 = RootSystem::parse("A2").unwrap();
        let p = a2.orthogonal_projection(std::slice::from_ref(&a2.theta));
        let v = p.apply(&a2.simple_roots[0]);
        assert_eq!(a2.inner(&v, &a2.theta), Rational::zero());
        assert_eq!(p.mul(&p), p);
    }

    proptest! {
        #[test]
        fn weyl_preserves_form(a in prop::collection::vec(-5i64..5, 2), b in prop::collection::vec(-5i64..5, 2), name in prop::sample::select(vec!["A2", "B2", "G2"])) {
            let rs = RootSystem::parse(name).unwrap();
            let (a, b) = (int_vec(&a), int_vec(&b));
            for w in rs.weyl_elements().unwrap() {
                prop_assert_eq!(rs.inner(&w.act(&a), &w.act(&b)), rs.inner(&a, &b));
            }
        }
    }
}

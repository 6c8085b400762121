use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::Zero;

use crate::linalg::{dot, Matrix, RVec};
use crate::rational::{lcm, Rational};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// The real span of the weight lattice in which series exponents live.
///
/// Coordinates are with respect to a fixed basis (the fundamental weights
/// for spaces built from a root system). `gram` is the invariant form in that
/// basis. `tilt` is the grading vector ξ: a monomial `q^a e^μ` has degree
/// `a − (μ|ξ)`, and truncation is by this degree.
#[derive(Debug)]
pub struct WeightSpace {
    id: u64,
    rank: usize,
    gram: Matrix,
    gram_inv: Matrix,
    tilt: RVec,
    tilt_dual: RVec,
    /// `tilt_dual = tilt_num / tilt_den` with integer `tilt_num`.
    tilt_num: Vec<i64>,
    tilt_den: i64,
}

impl WeightSpace {
    pub fn new(gram: Matrix, tilt: RVec) -> Self {
        assert_eq!(gram.rows, gram.cols);
        assert_eq!(gram.rows, tilt.len());
        let gram_inv = gram.inverse().expect("weight-space form must be nondegenerate");
        let tilt_dual = gram.apply(&tilt);
        let tilt_den = tilt_dual.iter().fold(1, |acc, t| lcm(acc, t.den_i64()));
        let tilt_num =
            tilt_dual.iter().map(|t| (t * &Rational::from_integer(tilt_den)).to_integer().expect("integral")).collect();
        WeightSpace {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            rank: gram.rows,
            gram,
            gram_inv,
            tilt,
            tilt_dual,
            tilt_num,
            tilt_den,
        }
    }

    /// A zero-dimensional space, for pure q-series.
    pub fn scalar() -> Self {
        Self::new(Matrix::zeros(0, 0), Vec::new())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    pub fn tilt(&self) -> &[Rational] {
        &self.tilt
    }

    /// Covector `G ξ`, so that `(μ|ξ) = μ · tilt_dual`.
    pub fn tilt_dual(&self) -> &[Rational] {
        &self.tilt_dual
    }

    pub(crate) fn tilt_num(&self) -> &[i64] {
        &self.tilt_num
    }

    pub(crate) fn tilt_den(&self) -> i64 {
        self.tilt_den
    }

    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        self.gram.form(a, b)
    }

    pub fn norm2(&self, a: &[Rational]) -> Rational {
        self.inner(a, a)
    }

    /// Squared norm of a covector, `ℓᵀ G⁻¹ ℓ`.
    pub fn dual_norm2(&self, l: &[Rational]) -> Rational {
        self.gram_inv.form(l, l)
    }

    /// `(μ|ξ)`.
    pub fn tilt_of(&self, mu: &[Rational]) -> Rational {
        dot(mu, &self.tilt_dual)
    }

    pub fn is_zero_vec(v: &[Rational]) -> bool {
        v.iter().all(|x| x.is_zero())
    }
}

impl PartialEq for WeightSpace {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id || (self.gram == other.gram && self.tilt == other.tilt)
    }
}

//! Small dense exact linear algebra over `Rational`.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type RVec = Vec<Rational>;

pub fn zero_vec(n: usize) -> RVec {
    vec![Rational::zero(); n]
}

pub fn int_vec(v: &[i64]) -> RVec {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

pub fn vadd(a: &[Rational], b: &[Rational]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rational], b: &[Rational]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(s: &Rational, a: &[Rational]) -> RVec {
    a.iter().map(|x| s * x).collect()
}

pub fn vneg(a: &[Rational]) -> RVec {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<RVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> RVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Bilinear form `aᵀ M b`.
    pub fn form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        dot(a, &self.apply(b))
    }

    fn row_reduce(&self) -> (Matrix, usize, Rational) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut det = Rational::one();
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                det = Rational::zero();
                continue;
            };
            if p != rank {
                for j in 0..m.cols {
                    let tmp = m[(p, j)].clone();
                    m[(p, j)] = m[(rank, j)].clone();
                    m[(rank, j)] = tmp;
                }
                det = -det;
            }
            let piv = m[(rank, c)].clone();
            det = &det * &piv;
            let inv = piv.recip();
            for j in 0..m.cols {
                m[(rank, j)] = &m[(rank, j)] * &inv;
            }
            for r in 0..m.rows {
                if r != rank && !m[(r, c)].is_zero() {
                    let f = m[(r, c)].clone();
                    for j in 0..m.cols {
                        let t = &f * &m[(rank, j)];
                        m[(r, j)] -= &t;
                    }
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        (m, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let (_, rank, det) = self.row_reduce();
        if rank < self.rows {
            Rational::zero()
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (red, _, _) = aug.row_reduce();
        for i in 0..n {
            if red[(i, i)] != Rational::one() {
                return None;
            }
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Rational upper bound for `sqrt(x)`, `x >= 0`.
pub fn sqrt_upper(x: &Rational) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let approx = x.to_f64().sqrt();
    let mut r = Rational::new((approx * 1024.0).ceil() as i64 + 1, 1024);
    while &(&r * &r) < x {
        r = &r * &Rational::new(2, 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_int_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(m.det(), q(3, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(inv[(0, 0)], q(2, 3));
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.rank(), 1);
        assert_eq!(sing.det(), Rational::zero());
    }

    #[test]
    fn sqrt_upper_bounds() {
        for n in [0i64, 1, 2, 3, 10, 1000, 123456789] {
            let x = q(n, 7);
            let r = sqrt_upper(&x);
            assert!(&r * &r >= x);
            assert!(r.to_f64() < (n as f64 / 7.0).sqrt() + 0.01);
        }
    }
}

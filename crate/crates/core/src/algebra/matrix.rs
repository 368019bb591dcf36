//! Dense exact linear algebra over a [`Field`], plus fraction-free elimination
//! for matrices whose entries are polynomials.

use std::fmt;

use super::poly::Poly;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::RingMismatch("matrix entry from another field".into()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v, self.field))
            .collect()
    }

    /// Reduced row-echelon form with zero rows removed, and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = &f * &m[(r, j)];
                        m[(i, j)] = &m[(i, j)] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}` as row vectors.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(i, f)];
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().unwrap();
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..m.cols {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] = &m[(i, j)] - &t;
                }
            }
        }
        det
    }

    /// Solves `x * self = b` for a row vector `x` (i.e. expresses `b` in the rows).
    pub fn solve_left(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let t = self.transpose();
        let mut aug = Matrix::zeros(self.field, t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug[(i, j)] = t[(i, j)].clone();
            }
            aug[(i, t.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&t.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); t.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, t.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

/// Minimal ring interface for fraction-free elimination.
pub trait RingElement: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, other: &Self) -> Result<Self>;
}

impl RingElement for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
}

impl RingElement for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.ring())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        self.div_exact(o)?
            .ok_or_else(|| Error::Anomaly("inexact division in Bareiss elimination".into()))
    }
}

/// Bareiss elimination on a square or rectangular matrix over an integral domain.
/// Returns the rank over the fraction field and, for square input, the determinant.
pub fn bareiss<T: RingElement>(rows: &[Vec<T>]) -> Result<(usize, Option<T>)> {
    let n = rows.len();
    if n == 0 {
        return Ok((0, None));
    }
    let m = rows[0].len();
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let zero = a[0][0].zero_like();
    let mut prev: Option<T> = None;
    let mut sign_flip = false;
    let mut rank = 0;
    let mut col = 0;
    while rank < n && col < m {
        let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign_flip = !sign_flip;
        }
        for i in rank + 1..n {
            for j in col + 1..m {
                let v = a[rank][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[rank][j]));
                a[i][j] = match &prev {
                    Some(d) => v.exact_div(d)?,
                    None => v,
                };
            }
            a[i][col] = zero.clone();
        }
        prev = Some(a[rank][col].clone());
        rank += 1;
        col += 1;
    }
    let det = if n == m {
        if rank < n {
            Some(zero)
        } else {
            let d = a[n - 1][n - 1].clone();
            Some(if sign_flip { zero.sub(&d) } else { d })
        }
    } else {
        None
    };
    Ok((rank, det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialOrder, Ring};

    #[test]
    fn rank_and_nullspace() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn determinant_matches_bareiss() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        let (rank, det) = bareiss(&m.row_vecs()).unwrap();
        assert_eq!(rank, 3);
        assert_eq!(det.unwrap(), m.determinant());
        assert_eq!(m.determinant(), q.from_i64(-54));
    }

    #[test]
    fn bareiss_over_polynomials() {
        let r = Ring::new(&["a", "b"], Field::Rational, MonomialOrder::GrevLex);
        let p = |s: &str| r.parse(s).unwrap();
        let rows = vec![vec![p("a"), p("b")], vec![p("b"), p("a")]];
        let (rank, det) = bareiss(&rows).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(det.unwrap(), p("a^2 - b^2"));
        let rows = vec![vec![p("a"), p("a*b")], vec![p("1"), p("b")]];
        assert_eq!(bareiss(&rows).unwrap().0, 1);
    }

    #[test]
    fn solve_left_expresses_in_rows() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1, 0, 1], &[0, 1, 1]]);
        let b: Vec<Scalar> = [2, 3, 5].iter().map(|&x| q.from_i64(x)).collect();
        assert_eq!(m.solve_left(&b).unwrap(), vec![q.from_i64(2), q.from_i64(3)]);
        let c: Vec<Scalar> = [1, 1, 1].iter().map(|&x| q.from_i64(x)).collect();
        assert!(m.solve_left(&c).is_none());
    }
}

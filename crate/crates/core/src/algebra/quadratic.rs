//! Gram matrices of quadratic forms and their ranks.

use std::sync::Arc;

use super::matrix::{bareiss, Matrix, RingElement};
use super::poly::{Poly, Ring};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Symmetric `n x n` matrix, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: RingElement> SymMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> SymMatrix<T> {
        let mut entries: Vec<T> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if j < i {
                    entries[j * n + i].clone()
                } else {
                    f(i, j)
                });
            }
        }
        SymMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Rank over the fraction field of the entry ring.
    pub fn rank(&self) -> Result<usize> {
        Ok(bareiss(&self.rows())?.0)
    }

    pub fn determinant(&self) -> Result<T> {
        if self.n == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        Ok(bareiss(&self.rows())?.1.expect("square"))
    }
}

impl SymMatrix<Scalar> {
    pub fn to_matrix(&self, field: Field) -> Matrix {
        Matrix::from_rows(field, self.rows()).expect("square")
    }

    /// Restriction `B M B^T` to the row span of `basis`.
    pub fn restrict(&self, basis: &Matrix) -> SymMatrix<Scalar> {
        let m = self.to_matrix(basis.field());
        let r = basis.mul(&m).mul(&basis.transpose());
        SymMatrix::from_fn(basis.nrows(), |i, j| r[(i, j)].clone())
    }

    /// Value of the form at `v`.
    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        let f = v[0].field();
        let mut acc = f.zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc = &acc + &(&(&v[i] * self.get(i, j)) * &v[j]);
            }
        }
        acc
    }
}

impl SymMatrix<Poly> {
    /// Rebuilds `x^T M x` in `ring` for the named variables.
    pub fn quadratic_form(&self, ring: &Arc<Ring>, vars: &[&str]) -> Result<Poly> {
        let mut acc = ring.zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let m = self.get(i, j).to_ring(ring)?;
                acc = &acc + &(&(&m * &ring.var(vars[i])?) * &ring.var(vars[j])?);
            }
        }
        Ok(acc)
    }

    /// Entries as scalars when none involves a parameter.
    pub fn to_scalars(&self) -> Option<SymMatrix<Scalar>> {
        if self.entries.iter().all(|p| p.is_constant()) {
            Some(SymMatrix {
                n: self.n,
                entries: self.entries.iter().map(|p| p.constant_term()).collect(),
            })
        } else {
            None
        }
    }
}

/// Gram matrix `M` with `q = x^T M x` in the variables `vars`, and its rank.
///
/// Other variables of the ring may appear in `q` as parameters; the rank is then
/// taken over the fraction field of the parameter ring.
pub fn gram_and_rank(q: &Poly, vars: &[&str]) -> Result<(SymMatrix<Poly>, usize)> {
    let ring = q.ring();
    if ring.field().characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let idx: Vec<usize> = vars
        .iter()
        .map(|v| ring.var_index(v))
        .collect::<Result<_>>()?;
    let n = idx.len();
    let parts = q.coefficients_in(&idx);
    for (e, _) in &parts {
        let d: u32 = e.iter().map(|&x| x as u32).sum();
        if d != 2 {
            return Err(Error::NotQuadratic(q.to_string()));
        }
    }
    let half = ring.field().from_ratio(1, 2)?;
    let coeff = |i: usize, j: usize| -> Poly {
        let mut key = vec![0u16; n];
        key[i] += 1;
        key[j] += 1;
        let c = parts
            .iter()
            .find(|(e, _)| *e == key)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| ring.zero());
        if i == j {
            c
        } else {
            c.scale(&half)
        }
    };
    let m = SymMatrix::from_fn(n, coeff);
    let rank = if n == 0 { 0 } else { m.rank()? };
    Ok((m, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialOrder;
    use crate::grassmann::pluecker_ring;

    #[test]
    fn zero_form_has_rank_zero() {
        let r = Ring::new(&["x", "y"], Field::Rational, MonomialOrder::GrevLex);
        let (_, rank) = gram_and_rank(&r.zero(), &["x", "y"]).unwrap();
        assert_eq!(rank, 0);
    }

    #[test]
    fn specialized_chart_quadric_has_rank_two() {
        let r = pluecker_ring(Field::Rational);
        let q = r.parse("-p02*p14").unwrap();
        let (_, rank) = gram_and_rank(&q, &["p01", "p02", "p04", "p14"]).unwrap();
        assert_eq!(rank, 2);
    }

    #[test]
    fn pluecker_quadric_has_rank_six() {
        let r = pluecker_ring(Field::Rational);
        let q = r.parse("p01*p23 - p02*p13 + p03*p12").unwrap();
        let vars = ["p01", "p02", "p03", "p12", "p13", "p23"];
        let (m, rank) = gram_and_rank(&q, &vars).unwrap();
        assert_eq!(rank, 6);
        assert_eq!(m.quadratic_form(&r, &vars).unwrap(), q);
    }

    #[test]
    fn rejects_char_two_and_non_quadratic() {
        let r2 = Ring::new(&["x"], Field::Prime(2), MonomialOrder::GrevLex);
        assert_eq!(
            gram_and_rank(&r2.parse("x^2").unwrap(), &["x"]).unwrap_err(),
            Error::CharacteristicTwo
        );
        let r = Ring::new(&["x", "y"], Field::Rational, MonomialOrder::GrevLex);
        assert!(matches!(
            gram_and_rank(&r.parse("x^2 + y").unwrap(), &["x", "y"]),
            Err(Error::NotQuadratic(_))
        ));
    }
}

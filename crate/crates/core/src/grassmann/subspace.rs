use std::fmt;

use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `k^n`, stored by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Row span of `rows`; the rows must be linearly independent.
    pub fn new(field: Field, ambient: usize, rows: Vec<Vec<Scalar>>) -> Result<Subspace> {
        let s = Subspace::span(field, ambient, rows.clone())?;
        if s.dim() != rows.len() {
            return Err(Error::InvalidInput(format!(
                "{} rows span only a {}-dimensional space",
                rows.len(),
                s.dim()
            )));
        }
        Ok(s)
    }

    /// Row span of arbitrary (possibly dependent) rows.
    pub fn span(field: Field, ambient: usize, rows: Vec<Vec<Scalar>>) -> Result<Subspace> {
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(Error::InvalidInput(format!("rows must have length {ambient}")));
        }
        let m = if rows.is_empty() {
            Matrix::zeros(field, 0, ambient)
        } else {
            Matrix::from_rows(field, rows)?
        };
        Ok(Subspace {
            ambient,
            basis: m.rref().0,
        })
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Subspace> {
        let n = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Subspace::new(field, n, rows)
    }

    /// Span of standard basis vectors given as `e0,e2,e3`.
    pub fn from_names(field: Field, ambient: usize, names: &str) -> Result<Subspace> {
        let mut rows = Vec::new();
        for tok in names.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .strip_prefix('e')
                .and_then(|d| d.parse().ok())
                .filter(|&i| i < ambient)
                .ok_or_else(|| Error::Parse(format!("bad basis vector name `{tok}`")))?;
            let mut r = vec![field.zero(); ambient];
            r[i] = field.one();
            rows.push(r);
        }
        Subspace::new(field, ambient, rows)
    }

    /// Accepts either basis names (`e0,e1`) or a row-major matrix (`1,0,0;0,1/2,3`).
    pub fn parse(field: Field, ambient: usize, s: &str) -> Result<Subspace> {
        if s.trim_start().starts_with('e') {
            return Subspace::from_names(field, ambient, s);
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| Scalar::parse_in(x.trim(), field))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(field, ambient, rows)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// The canonical (reduced row-echelon) basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        if self.dim() == 0 {
            return false;
        }
        self.basis.solve_left(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.rows().iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows();
        rows.extend(other.rows());
        Subspace::span(self.field(), self.ambient, rows).expect("same ambient")
    }

    /// Linear forms vanishing on the subspace, as row vectors.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        if self.dim() == 0 {
            return Matrix::identity(self.field(), self.ambient).row_vecs();
        }
        self.basis.nullspace()
    }

    /// Subspace cut out by the given linear forms.
    pub fn from_equations(field: Field, ambient: usize, forms: Vec<Vec<Scalar>>) -> Result<Subspace> {
        if forms.is_empty() {
            return Subspace::span(field, ambient, Matrix::identity(field, ambient).row_vecs());
        }
        let m = Matrix::from_rows(field, forms)?;
        Subspace::span(field, ambient, m.nullspace())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut forms = self.annihilator();
        forms.extend(other.annihilator());
        Subspace::from_equations(self.field(), self.ambient, forms).expect("same ambient")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_row_span_equality() {
        let q = Field::Rational;
        let a = Subspace::from_i64(q, &[&[1, 1, 0], &[0, 1, 0]]).unwrap();
        let b = Subspace::from_names(q, 3, "e0,e1").unwrap();
        assert_eq!(a, b);
        assert!(Subspace::from_i64(q, &[&[1, 1, 0], &[2, 2, 0]]).is_err());
    }

    #[test]
    fn meet_and_join() {
        let q = Field::Rational;
        let a = Subspace::from_names(q, 4, "e0,e1,e2").unwrap();
        let b = Subspace::from_names(q, 4, "e1,e2,e3").unwrap();
        assert_eq!(a.intersect(&b), Subspace::from_names(q, 4, "e1,e2").unwrap());
        assert_eq!(a.sum(&b).dim(), 4);
        let c = Subspace::parse(q, 4, "1,0,0,1/2").unwrap();
        assert_eq!(c.intersect(&a).dim(), 0);
    }
}

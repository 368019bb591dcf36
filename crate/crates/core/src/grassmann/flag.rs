use serde::Serialize;

use super::pluecker::{linear_values, wedge, PlueckerVector};
use super::Subspace;
use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

/// A line of `Gr(2,5)`: the pencil of 2-planes `V1 ⊂ V2 ⊂ V3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagLine {
    v1: Subspace,
    v3: Subspace,
}

impl FlagLine {
    pub fn new(v1: Subspace, v3: Subspace) -> Result<FlagLine> {
        if v1.ambient() != 5 || v3.ambient() != 5 || v1.dim() != 1 || v3.dim() != 3 {
            return Err(Error::InvalidInput(
                "a flag line needs dim V1 = 1 and dim V3 = 3 inside k^5".into(),
            ));
        }
        if !v3.contains(&v1) {
            return Err(Error::InvalidInput("V1 is not contained in V3".into()));
        }
        Ok(FlagLine { v1, v3 })
    }

    /// Parses the vertex and plane as basis names (`e0`, `e0,e1,e2`) or matrices.
    pub fn parse(field: Field, vertex: &str, plane: &str) -> Result<FlagLine> {
        FlagLine::new(
            Subspace::parse(field, 5, vertex)?,
            Subspace::parse(field, 5, plane)?,
        )
    }

    pub fn field(&self) -> Field {
        self.v1.field()
    }

    pub fn v1(&self) -> &Subspace {
        &self.v1
    }

    pub fn v3(&self) -> &Subspace {
        &self.v3
    }

    pub fn vertex(&self) -> Vec<Scalar> {
        self.v1.rows().remove(0)
    }

    /// The 2-dimensional subspace `v1 ∧ V3` of `∧²k^5`.
    pub fn line_span(&self) -> Subspace {
        let v = self.vertex();
        let rows = self.v3.rows().iter().map(|w| wedge(&v, w)).collect();
        let s = Subspace::span(self.field(), 10, rows).unwrap();
        debug_assert_eq!(s.dim(), 2);
        s
    }

    /// Two Plücker points spanning the line.
    pub fn points(&self) -> [PlueckerVector; 2] {
        let r = self.line_span().rows();
        [
            PlueckerVector::new(r[0].clone()).unwrap(),
            PlueckerVector::new(r[1].clone()).unwrap(),
        ]
    }

    pub fn line_in_y(&self) -> bool {
        self.line_span()
            .rows()
            .iter()
            .all(|r| linear_values(r).iter().all(|x| x.is_zero()))
    }

    /// Recovers the flag from a 2-dimensional space of decomposable vectors:
    /// `V1` is the meet of the supports of two spanning vectors and `V3` their join.
    pub fn from_span(w: &Subspace) -> Result<FlagLine> {
        if w.ambient() != 10 || w.dim() != 2 {
            return Err(Error::InvalidInput("expected a 2-dimensional subspace of ∧²k^5".into()));
        }
        let rows = w.rows();
        let a = PlueckerVector::new(rows[0].clone())?;
        let b = PlueckerVector::new(rows[1].clone())?;
        let sum = PlueckerVector::new(rows[0].iter().zip(&rows[1]).map(|(x, y)| x + y).collect())?;
        if !(a.is_decomposable() && b.is_decomposable() && sum.is_decomposable()) {
            return Err(Error::InvalidInput("span contains indecomposable vectors".into()));
        }
        let (sa, sb) = (a.support(), b.support());
        FlagLine::new(sa.intersect(&sb), sa.sum(&sb))
    }
}

/// All lines of `Y` with a given vertex `v`: `V3` ranges over 3-spaces with `v ∈ V3 ⊂ ker φ_v`,
/// where `φ_v(x) = (ℓ1(v∧x), ℓ2(v∧x))`.
#[derive(Clone, Debug)]
pub struct LineFamily {
    vertex: Vec<Scalar>,
    kernel: Subspace,
    quotient: Vec<Vec<Scalar>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LineFamilyKind {
    /// `ker φ_v` is 3-dimensional: exactly one line.
    Unique,
    /// `ker φ_v` is 4-dimensional: the lines form a `P^2`.
    Plane,
}

impl LineFamily {
    pub fn kind(&self) -> LineFamilyKind {
        if self.kernel.dim() == 3 {
            LineFamilyKind::Unique
        } else {
            LineFamilyKind::Plane
        }
    }

    /// Dimension of the family of lines (0 or 2).
    pub fn family_dim(&self) -> usize {
        2 * (self.kernel.dim() - 3)
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn unique(&self) -> Option<FlagLine> {
        (self.kind() == LineFamilyKind::Unique).then(|| {
            FlagLine::new(
                Subspace::new(self.field(), 5, vec![self.vertex.clone()]).unwrap(),
                self.kernel.clone(),
            )
            .unwrap()
        })
    }

    fn field(&self) -> Field {
        self.kernel.field()
    }

    /// For the `P^2` family, the line whose `V3/v` is the kernel of `n` on the
    /// fixed basis of `ker φ_v / v`; `n` must be a nonzero vector of length 3.
    pub fn member(&self, n: &[Scalar]) -> Result<FlagLine> {
        if let Some(l) = self.unique() {
            return Ok(l);
        }
        if n.len() != 3 || n.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidInput("need a nonzero normal vector in k^3".into()));
        }
        let f = self.field();
        // Two independent solutions c of n·c = 0.
        let sols = crate::algebra::Matrix::from_rows(f, vec![n.to_vec()])?.nullspace();
        let mut rows = vec![self.vertex.clone()];
        for c in sols {
            let mut w = vec![f.zero(); 5];
            for (ci, k) in c.iter().zip(&self.quotient) {
                for j in 0..5 {
                    w[j] = &w[j] + &(ci * &k[j]);
                }
            }
            rows.push(w);
        }
        FlagLine::new(
            Subspace::new(f, 5, vec![self.vertex.clone()])?,
            Subspace::new(f, 5, rows)?,
        )
    }
}

/// The `2 x 5` matrix of `φ_v`.
pub fn vertex_map(v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let f = v[0].field();
    let mut rows = vec![vec![f.zero(); 5], vec![f.zero(); 5]];
    for j in 0..5 {
        let mut e = vec![f.zero(); 5];
        e[j] = f.one();
        let [a, b] = linear_values(&wedge(v, &e));
        rows[0][j] = a;
        rows[1][j] = b;
    }
    rows
}

pub fn lines_with_vertex(v: &[Scalar]) -> Result<LineFamily> {
    if v.len() != 5 || v.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidInput("vertex must be a nonzero vector of k^5".into()));
    }
    let f = v[0].field();
    let kernel = Subspace::from_equations(f, 5, vertex_map(v))?;
    if !(3..=4).contains(&kernel.dim()) {
        return Err(Error::Anomaly(format!(
            "ker φ_v has dimension {}",
            kernel.dim()
        )));
    }
    // Complete v to a basis of the kernel; the added vectors span a complement of v.
    let vs = Subspace::new(f, 5, vec![v.to_vec()])?;
    let mut acc = vs.clone();
    let mut quotient = Vec::new();
    for r in kernel.rows() {
        let next = acc.sum(&Subspace::span(f, 5, vec![r.clone()])?);
        if next.dim() > acc.dim() {
            quotient.push(r);
            acc = next;
        }
    }
    Ok(LineFamily {
        vertex: v.to_vec(),
        kernel,
        quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: Field, i: usize) -> Vec<Scalar> {
        let mut v = vec![f.zero(); 5];
        v[i] = f.one();
        v
    }

    #[test]
    fn table_lines_lie_in_y() {
        let q = Field::Rational;
        for (v, p) in [
            ("e2", "e0,e2,e3"),
            ("e0", "e0,e2,e4"),
            ("e0", "e0,e1,e2"),
            ("e0", "e0,e1,e4"),
            ("e1", "e0,e1,e4"),
        ] {
            let l = FlagLine::parse(q, v, p).unwrap();
            assert!(l.line_in_y(), "{v} {p}");
            assert_eq!(FlagLine::from_span(&l.line_span()).unwrap(), l);
        }
        assert!(!FlagLine::parse(q, "e0", "e0,e2,e3").unwrap().line_in_y());
    }

    #[test]
    fn vertex_families() {
        let q = Field::Rational;
        assert_eq!(lines_with_vertex(&e(q, 2)).unwrap().kind(), LineFamilyKind::Unique);
        assert_eq!(lines_with_vertex(&e(q, 1)).unwrap().kind(), LineFamilyKind::Unique);
        let fam = lines_with_vertex(&e(q, 0)).unwrap();
        assert_eq!(fam.family_dim(), 2);
        let l = fam.member(&[q.one(), q.zero(), q.zero()]).unwrap();
        assert!(l.line_in_y());
    }
}

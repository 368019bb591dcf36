use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::Subspace;
use crate::algebra::{Field, Matrix, MonomialOrder, Poly, Ring, Scalar};
use crate::error::{Error, Result};
use crate::groebner::Ideal;

/// Plücker coordinate names in their fixed order.
pub const PLUCKER: [&str; 10] = [
    "p01", "p02", "p03", "p04", "p12", "p13", "p14", "p23", "p24", "p34",
];

/// Index pairs matching [`PLUCKER`].
pub const PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// Position of `p_ij` (`i != j`) in [`PLUCKER`] with the sign of `p_ij` relative to `p_min,max`.
pub fn pluecker_index(i: usize, j: usize) -> Option<(usize, bool)> {
    let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
    PAIRS.iter().position(|&p| p == (a, b)).map(|k| (k, neg))
}

/// `QQ[p01..p34]` or `GF(p)[p01..p34]` with grevlex.
pub fn pluecker_ring(field: Field) -> Arc<Ring> {
    Ring::new(&PLUCKER, field, MonomialOrder::GrevLex)
}

/// A point of `∧²k^5` in Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlueckerVector {
    coords: Vec<Scalar>,
    decomposable: bool,
}

impl PlueckerVector {
    pub fn new(coords: Vec<Scalar>) -> Result<PlueckerVector> {
        if coords.len() != 10 {
            return Err(Error::InvalidInput("a Plücker vector has 10 coordinates".into()));
        }
        let mut v = PlueckerVector {
            coords,
            decomposable: false,
        };
        v.decomposable = !v.is_zero() && relations_hold(&v.coords);
        Ok(v)
    }

    pub fn from_i64(field: Field, cs: &[i64; 10]) -> PlueckerVector {
        PlueckerVector::new(cs.iter().map(|&c| field.from_i64(c)).collect()).unwrap()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when the five Plücker relations hold (and the vector is nonzero).
    pub fn is_decomposable(&self) -> bool {
        self.decomposable
    }

    /// Coordinate `p_ij`, antisymmetric in `i, j`.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match pluecker_index(i, j) {
            None => self.field().zero(),
            Some((k, false)) => self.coords[k].clone(),
            Some((k, true)) => -&self.coords[k],
        }
    }

    /// The 5x5 skew matrix `(p_ij)`.
    pub fn skew_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field(), 5, 5);
        for i in 0..5 {
            for j in 0..5 {
                m[(i, j)] = self.get(i, j);
            }
        }
        m
    }

    /// For decomposable `x ∧ y`, the plane `span{x, y}`: the row span of the skew matrix.
    pub fn support(&self) -> Subspace {
        Subspace::span(self.field(), 5, self.skew_matrix().row_vecs()).expect("5 columns")
    }

    /// Value of the Plücker relation with omitted index `k`.
    pub fn relation(&self, k: usize) -> Scalar {
        relation_value(&self.coords, k)
    }

    pub fn on_y(&self) -> bool {
        on_y(self)
    }
}

impl fmt::Display for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// `x ∧ y` with `p_ij = x_i y_j - x_j y_i`.
pub fn wedge(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    PAIRS
        .iter()
        .map(|&(i, j)| &(&x[i] * &y[j]) - &(&x[j] * &y[i]))
        .collect()
}

/// Plücker coordinates of a 2-dimensional subspace of `k^5`.
pub fn wedge2(v2: &Subspace) -> Result<PlueckerVector> {
    if v2.ambient() != 5 || v2.dim() != 2 {
        return Err(Error::InvalidInput(format!(
            "wedge2 needs a 2-dimensional subspace of k^5, got dim {} in k^{}",
            v2.dim(),
            v2.ambient()
        )));
    }
    let r = v2.rows();
    PlueckerVector::new(wedge(&r[0], &r[1]))
}

fn complement(k: usize) -> [usize; 4] {
    let mut out = [0; 4];
    let mut n = 0;
    for i in 0..5 {
        if i != k {
            out[n] = i;
            n += 1;
        }
    }
    out
}

fn coord(c: &[Scalar], i: usize, j: usize) -> &Scalar {
    &c[pluecker_index(i, j).unwrap().0]
}

fn relation_value(c: &[Scalar], k: usize) -> Scalar {
    let [i, j, l, m] = complement(k);
    let a = coord(c, i, j) * coord(c, l, m);
    let b = coord(c, i, l) * coord(c, j, m);
    let d = coord(c, i, m) * coord(c, j, l);
    &(&a - &b) + &d
}

fn relations_hold(c: &[Scalar]) -> bool {
    (0..5).all(|k| relation_value(c, k).is_zero())
}

/// The five Plücker quadrics `p_ij p_lm - p_il p_jm + p_im p_jl`, indexed by the omitted index.
pub fn pluecker_relations(ring: &Arc<Ring>) -> Result<Vec<Poly>> {
    let v = |i: usize, j: usize| ring.var(PLUCKER[pluecker_index(i, j).unwrap().0]);
    (0..5)
        .map(|k| {
            let [i, j, l, m] = complement(k);
            Ok(&(&(&v(i, j)? * &v(l, m)?) - &(&v(i, l)? * &v(j, m)?)) + &(&v(i, m)? * &v(j, l)?))
        })
        .collect()
}

/// The two linear forms `p12 - p03` and `p13 - p24` cutting `Y` out of `Gr(2,5)`.
pub fn y_linear_forms(ring: &Arc<Ring>) -> Result<[Poly; 2]> {
    Ok([ring.parse("p12 - p03")?, ring.parse("p13 - p24")?])
}

/// Coefficient vectors of the two linear forms in the Plücker order.
pub fn y_linear_form_vectors(field: Field) -> [Vec<Scalar>; 2] {
    let mut l1 = vec![field.zero(); 10];
    l1[4] = field.one();
    l1[2] = field.from_i64(-1);
    let mut l2 = vec![field.zero(); 10];
    l2[5] = field.one();
    l2[8] = field.from_i64(-1);
    [l1, l2]
}

/// Ideal of `Y`: five Plücker quadrics and the two linear forms.
pub fn y_ideal(field: Field) -> Ideal {
    let r = pluecker_ring(field);
    let mut gens = pluecker_relations(&r).unwrap();
    gens.extend(y_linear_forms(&r).unwrap());
    Ideal::new(&r, gens).unwrap()
}

/// The linear forms `(ℓ1, ℓ2)` evaluated at a vector of `∧²k^5`.
pub fn linear_values(c: &[Scalar]) -> [Scalar; 2] {
    [&c[4] - &c[2], &c[5] - &c[8]]
}

pub fn on_y(v: &PlueckerVector) -> bool {
    v.is_decomposable() && linear_values(&v.coords).iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_examples() {
        let q = Field::Rational;
        let v = wedge2(&Subspace::from_names(q, 5, "e0,e1").unwrap()).unwrap();
        assert_eq!(v, PlueckerVector::from_i64(q, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        let s = Subspace::from_i64(q, &[&[1, 0, 1, 0, 0], &[0, 1, 0, 1, 0]]).unwrap();
        let v = wedge2(&s).unwrap();
        assert_eq!(v, PlueckerVector::from_i64(q, &[1, 0, 1, 0, -1, 0, 0, 1, 0, 0]));
        assert!(v.is_decomposable());
        assert_eq!(v.support(), s);
    }

    #[test]
    fn membership_in_y() {
        let q = Field::Rational;
        let e01 = wedge2(&Subspace::from_names(q, 5, "e0,e1").unwrap()).unwrap();
        assert!(e01.on_y());
        let e03 = wedge2(&Subspace::from_names(q, 5, "e0,e3").unwrap()).unwrap();
        assert!(!e03.on_y());
        assert_eq!(linear_values(e03.coords())[0], q.from_i64(-1));
    }

    #[test]
    fn relations_match_polynomials() {
        let q = Field::Rational;
        let r = pluecker_ring(q);
        let rel = pluecker_relations(&r).unwrap();
        assert_eq!(rel[4], r.parse("p01*p23 - p02*p13 + p03*p12").unwrap());
        let v = PlueckerVector::from_i64(q, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        for (k, f) in rel.iter().enumerate() {
            assert_eq!(f.eval(v.coords()), v.relation(k));
        }
    }
}

//! Univariate polynomials and intersection of binary forms on `P^1`.
//!
//! Roots are never approximated: a common zero locus is described by the
//! squarefree decomposition of the gcd of the forms.

use std::fmt;

use serde::Serialize;

use super::poly::Poly;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly::new(field, vec![])
    }

    pub fn from_i64(field: Field, cs: &[i64]) -> UniPoly {
        UniPoly::new(field, cs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                UniPoly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lead().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        Ok((UniPoly::new(self.field, quot), UniPoly::new(self.field, rem)))
    }

    /// Monic gcd (zero only if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).unwrap().1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree decomposition `f = c * prod a_i^i`; returns `(a_i, i)` for nonconstant `a_i`.
    pub fn squarefree(&self) -> Result<Vec<(UniPoly, usize)>> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Ok(vec![]);
        }
        let p = self.field.characteristic();
        if p != 0 && f.degree().unwrap() >= p as usize {
            return Err(Error::Unsupported(format!(
                "squarefree decomposition of degree >= p = {p}"
            )));
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a)?.0;
        let mut c = df.div_rem(&a)?.0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a)?.0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a)?.0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        UniPoly::new(
            self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A finite list of homogeneous forms in two variables `(s0 : s1)`.
#[derive(Clone, Debug)]
pub struct BinaryFormSystem {
    forms: Vec<Poly>,
    vars: [usize; 2],
}

impl BinaryFormSystem {
    /// Forms live in a ring whose only variables used are `s0` and `s1`.
    pub fn new(forms: Vec<Poly>, s0: &str, s1: &str) -> Result<BinaryFormSystem> {
        let first = forms
            .first()
            .ok_or_else(|| Error::InvalidInput("empty binary system".into()))?;
        let ring = first.ring().clone();
        let vars = [ring.var_index(s0)?, ring.var_index(s1)?];
        for f in &forms {
            if !f.is_homogeneous() {
                return Err(Error::InvalidInput(format!("form `{f}` is not homogeneous")));
            }
            if f.support_vars().iter().any(|v| !vars.contains(v)) {
                return Err(Error::InvalidInput(format!("form `{f}` has extra variables")));
            }
        }
        Ok(BinaryFormSystem { forms, vars })
    }

    /// Dehomogenizes at `s1 = 1`: returns `(f(x, 1), degree)`.
    fn affine(&self, f: &Poly) -> (UniPoly, usize) {
        let field = f.field();
        let deg = f.total_degree().unwrap_or(0) as usize;
        let mut cs = vec![field.zero(); deg + 1];
        for (e, c) in f.terms() {
            cs[e[self.vars[0]] as usize] = c.clone();
        }
        (UniPoly::new(field, cs), deg)
    }
}

/// One group of roots: the distinct roots of a squarefree factor, each with the same multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGroup {
    /// Squarefree monic polynomial in `x = s0/s1` whose roots are the points.
    pub factor: UniPoly,
    pub multiplicity: usize,
}

/// Common zeros of a binary system over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryIntersection {
    pub groups: Vec<RootGroup>,
    /// Multiplicity of the point `(1 : 0)`; zero if it is not a common root.
    pub infinity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportPoint {
    pub multiplicity: usize,
}

impl BinaryIntersection {
    pub fn distinct_roots(&self) -> usize {
        self.groups
            .iter()
            .map(|g| g.factor.degree().unwrap())
            .sum::<usize>()
            + usize::from(self.infinity > 0)
    }

    pub fn total_length(&self) -> usize {
        self.groups
            .iter()
            .map(|g| g.factor.degree().unwrap() * g.multiplicity)
            .sum::<usize>()
            + self.infinity
    }

    /// One entry per distinct root, ordered by multiplicity then position.
    pub fn support_points(&self) -> Vec<SupportPoint> {
        let mut out: Vec<SupportPoint> = self
            .groups
            .iter()
            .flat_map(|g| {
                std::iter::repeat_n(SupportPoint {
                    multiplicity: g.multiplicity,
                }, g.factor.degree().unwrap())
            })
            .collect();
        if self.infinity > 0 {
            out.push(SupportPoint {
                multiplicity: self.infinity,
            });
        }
        out.sort_by_key(|p| p.multiplicity);
        out
    }
}

/// Roots (with multiplicity) of the gcd of the forms.
///
/// Fails with [`Error::InfiniteIntersection`] when every form vanishes identically.
pub fn binary_intersection(sys: &BinaryFormSystem) -> Result<BinaryIntersection> {
    let nonzero: Vec<&Poly> = sys.forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::InfiniteIntersection);
    }
    let field = nonzero[0].field();
    let mut g = UniPoly::zero(field);
    let mut infinity = usize::MAX;
    for f in nonzero {
        let (a, d) = sys.affine(f);
        infinity = infinity.min(d - a.degree().unwrap_or(0));
        g = g.gcd(&a);
    }
    let groups = g
        .squarefree()?
        .into_iter()
        .map(|(factor, multiplicity)| RootGroup {
            factor: factor.monic(),
            multiplicity,
        })
        .collect();
    Ok(BinaryIntersection { groups, infinity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialOrder, Ring};
    use std::sync::Arc;

    fn ring() -> Arc<Ring> {
        Ring::new(&["s0", "s1"], Field::Rational, MonomialOrder::GrevLex)
    }

    fn run(forms: &[&str]) -> Result<BinaryIntersection> {
        let r = ring();
        let fs = forms.iter().map(|f| r.parse(f).unwrap()).collect();
        binary_intersection(&BinaryFormSystem::new(fs, "s0", "s1").unwrap())
    }

    #[test]
    fn single_linear_form() {
        let bi = run(&["s0"]).unwrap();
        assert_eq!(bi.distinct_roots(), 1);
        assert_eq!(bi.total_length(), 1);
        assert_eq!(bi.groups[0].factor, UniPoly::from_i64(Field::Rational, &[0, 1]));
    }

    #[test]
    fn gcd_of_two_forms() {
        let bi = run(&["2*s0*s1", "s0^2"]).unwrap();
        assert_eq!(bi.distinct_roots(), 1);
        assert_eq!(bi.support_points(), vec![SupportPoint { multiplicity: 1 }]);
    }

    #[test]
    fn double_root() {
        let bi = run(&["s0^2"]).unwrap();
        assert_eq!(bi.distinct_roots(), 1);
        assert_eq!(bi.support_points(), vec![SupportPoint { multiplicity: 2 }]);
        let bi = run(&["s1^2"]).unwrap();
        assert_eq!(bi.infinity, 2);
        assert_eq!(bi.distinct_roots(), 1);
    }

    #[test]
    fn irrational_roots_are_counted() {
        let bi = run(&["s0^2 - 2*s1^2"]).unwrap();
        assert_eq!(bi.distinct_roots(), 2);
        assert_eq!(bi.total_length(), 2);
    }

    #[test]
    fn all_zero_is_infinite() {
        let r = ring();
        let sys = BinaryFormSystem::new(vec![r.zero()], "s0", "s1").unwrap();
        assert_eq!(binary_intersection(&sys), Err(Error::InfiniteIntersection));
    }

    #[test]
    fn squarefree_decomposition() {
        let q = Field::Rational;
        // (x-1)^3 (x+2)
        let f = UniPoly::from_i64(q, &[-1, 3, -3, 1]).mul(&UniPoly::from_i64(q, &[2, 1]));
        let sq = f.squarefree().unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0], (UniPoly::from_i64(q, &[2, 1]), 1));
        assert_eq!(sq[1], (UniPoly::from_i64(q, &[-1, 1]), 3));
    }
}

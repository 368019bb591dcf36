//! Sparse multivariate polynomials over a [`Field`] with named variables.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Monomial orders. Variable 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: the first `k` variables form a block compared first
    /// (grevlex inside), ties broken by grevlex on the remaining variables.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

/// Variables, coefficient field and monomial order of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            field,
            order,
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Same variables and field with another order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field: self.field,
            order,
        })
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        Poly::constant(self, self.field.one())
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Poly> {
        let i = self.var_index(name)?;
        let mut e = vec![0u16; self.nvars()];
        e[i] = 1;
        Ok(Poly::from_terms(self, vec![(e, self.field.one())]))
    }

    pub fn int(self: &Arc<Self>, n: i64) -> Poly {
        Poly::constant(self, self.field.from_i64(n))
    }

    /// Parses a polynomial in the text format `coeff*var1^e1*var2^e2 + ...`.
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<Poly> {
        super::parse::parse_poly(self, s)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] order={}", self.field, self.vars.join(","), self.order)
    }
}

pub type Exponents = Vec<u16>;

/// A polynomial stored as nonzero terms sorted by decreasing monomial.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Exponents, Scalar)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u16], b: &[u16]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn disjoint(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Poly {
        Poly::from_terms(ring, vec![(vec![0; ring.nvars()], c)])
    }

    /// Builds a polynomial from arbitrary terms; like monomials are merged and zeros dropped.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Exponents, Scalar)>) -> Poly {
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Exponents, Scalar)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            debug_assert_eq!(e.len(), ring.nvars());
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = &*lc + &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Exponents, Scalar)>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn terms(&self) -> &[(Exponents, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn lead_monomial(&self) -> Option<&Exponents> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Variables that occur with a positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] > 0))
            .collect()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn coeff(&self, exps: &[u16]) -> Scalar {
        self.terms
            .iter()
            .find(|(e, _)| e.as_slice() == exps)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, Some(&-self.field().one())))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                terms.push((e, ca * cb));
            }
        }
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// `self + scale * other`, both sorted; `scale = None` means 1.
    fn merge(&self, other: &Poly, scale: Option<&Scalar>) -> Poly {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sc = |c: &Scalar| match scale {
            Some(s) => c * s,
            None => c.clone(),
        };
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((other.terms[j].0.clone(), sc(&other.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &sc(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), sc(c))));
        Poly::from_sorted_terms(&self.ring, out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly::from_sorted_terms(
            &self.ring,
            self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        )
    }

    /// Multiplies by the term `c * x^m`; monomial orders are preserved so no resort is needed.
    pub fn mul_term(&self, m: &[u16], c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly::from_sorted_terms(
            &self.ring,
            self.terms
                .iter()
                .map(|(e, x)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("lead coefficient is nonzero")),
        }
    }

    /// Substitutes polynomials (in `target`) for variables of this ring.
    ///
    /// Every variable of `self` that occurs must be mapped, either through
    /// `map` or by having a variable of the same name in `target`.
    pub fn substitute(&self, target: &Arc<Ring>, map: &HashMap<String, Poly>) -> Result<Poly> {
        if target.field() != self.field() {
            return Err(Error::RingMismatch("substitution across fields".into()));
        }
        for p in map.values() {
            if !same_ring(p.ring(), target) {
                return Err(Error::RingMismatch("substituted value not in target ring".into()));
            }
        }
        let mut images = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars.iter().enumerate() {
            let used = self.terms.iter().any(|(e, _)| e[i] > 0);
            images.push(match map.get(v) {
                Some(p) => Some(p.clone()),
                None if target.var_index(v).is_ok() => Some(target.var(v)?),
                None if !used => None,
                None => return Err(Error::UnknownVariable(v.clone())),
            });
        }
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|_| vec![target.one()])
            .collect();
        let mut acc = Vec::new();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let img = images[i].as_ref().expect("used variables are mapped");
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * img;
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            acc.extend(t.terms);
        }
        Ok(Poly::from_terms(target, acc))
    }

    /// Replaces a single variable by a polynomial of the same ring.
    pub fn substitute_var(&self, var: &str, value: &Poly) -> Result<Poly> {
        self.check_ring(value)?;
        self.ring.var_index(var)?;
        let mut map = HashMap::new();
        map.insert(var.to_string(), value.clone());
        self.substitute(&self.ring.clone(), &map)
    }

    /// Evaluates at a full assignment of scalars.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        assert_eq!(values.len(), self.ring.nvars());
        let mut acc = self.field().zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &values[i].pow(k as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Moves the polynomial into a ring with (a superset of) the same variable names.
    pub fn to_ring(&self, target: &Arc<Ring>) -> Result<Poly> {
        if target.field() != self.field() {
            return Err(Error::RingMismatch("different fields".into()));
        }
        let mut idx = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars.iter().enumerate() {
            match target.var_index(v) {
                Ok(j) => idx.push(Some(j)),
                Err(e) => {
                    if self.terms.iter().any(|(ex, _)| ex[i] > 0) {
                        return Err(e);
                    }
                    idx.push(None);
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u16; target.nvars()];
                for (i, &k) in e.iter().enumerate() {
                    if let Some(j) = idx[i] {
                        ne[j] = k;
                    }
                }
                (ne, c.clone())
            })
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Splits into `sum_m  m * coeff_m` where `m` ranges over monomials in `vars`;
    /// the coefficients live in the same ring and do not involve `vars`.
    pub fn coefficients_in(&self, vars: &[usize]) -> Vec<(Exponents, Poly)> {
        let mut groups: Vec<(Exponents, Vec<(Exponents, Scalar)>)> = Vec::new();
        for (e, c) in &self.terms {
            let key: Exponents = vars.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in vars {
                rest[i] = 0;
            }
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push((rest, c.clone())),
                None => groups.push((key, vec![(rest, c.clone())])),
            }
        }
        groups
            .into_iter()
            .map(|(k, t)| (k, Poly::from_terms(&self.ring, t)))
            .collect()
    }

    /// Exact division by a single polynomial; `None` if it does not divide.
    pub fn div_exact(&self, d: &Poly) -> Result<Option<Poly>> {
        self.check_ring(d)?;
        let Some(dl) = d.lead_monomial().cloned() else {
            return Err(Error::DivisionByZero);
        };
        let dc_inv = d.lead_coeff().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.terms.first().cloned() {
            if !divides(&dl, &e) {
                return Ok(None);
            }
            let m: Exponents = e.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let f = &c * &dc_inv;
            rem = rem.merge(&d.mul_term(&m, &f), Some(&-self.field().one()));
            quot.push((m, f));
        }
        Ok(Some(Poly::from_terms(&self.ring, quot)))
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Poly {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[var] -= 1;
                (ne, c * &f.from_i64(e[var] as i64))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }
}

/// Applies `op` (add, mul or substitute) to polynomials sharing a ring.
pub enum PolyOp<'a> {
    Add,
    Mul,
    Substitute { var: &'a str },
}

/// Ring-checked arithmetic entry point; `Substitute` takes `[f, g]` and replaces `var` in `f` by `g`.
pub fn poly_arith(op: PolyOp<'_>, args: &[Poly]) -> Result<Poly> {
    let first = args
        .first()
        .ok_or_else(|| Error::InvalidInput("no operands".into()))?;
    match op {
        PolyOp::Add => args[1..].iter().try_fold(first.clone(), |a, b| a.checked_add(b)),
        PolyOp::Mul => args[1..].iter().try_fold(first.clone(), |a, b| a.checked_mul(b)),
        PolyOp::Substitute { var } => {
            let [f, g] = args else {
                return Err(Error::InvalidInput("substitute takes two operands".into()));
            };
            f.substitute_var(var, g)
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-self.field().one())
    }
}

macro_rules! owned_poly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
owned_poly_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y", "s", "u", "v"], Field::Rational, MonomialOrder::GrevLex)
    }

    #[test]
    fn sum_cancels() {
        let r = ring();
        let a = r.parse("x + y").unwrap();
        let b = r.parse("x - y").unwrap();
        assert_eq!(poly_arith(PolyOp::Add, &[a, b]).unwrap(), r.parse("2*x").unwrap());
    }

    #[test]
    fn substitute_zero() {
        let r = ring();
        let f = r.parse("1 - 2*s*u - s^2*v").unwrap();
        let g = poly_arith(PolyOp::Substitute { var: "s" }, &[f, r.zero()]).unwrap();
        assert_eq!(g, r.one());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = ring();
        let other = Ring::new(&["x"], Field::Rational, MonomialOrder::GrevLex);
        let err = r.var("x").unwrap().checked_add(&other.var("x").unwrap());
        assert!(matches!(err, Err(Error::RingMismatch(_))));
        let f = r.parse("x*y").unwrap();
        let target = Ring::new(&["x"], Field::Rational, MonomialOrder::GrevLex);
        assert!(matches!(f.to_ring(&target), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn display_round_trips() {
        let r = ring();
        let f = r.parse("-3/2*x^2*y + 4*s - u*v + 7").unwrap();
        assert_eq!(r.parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let f = r.parse("x^2 - y^2").unwrap();
        let q = f.div_exact(&r.parse("x + y").unwrap()).unwrap().unwrap();
        assert_eq!(q, r.parse("x - y").unwrap());
        assert!(f.div_exact(&r.parse("x + 2*y").unwrap()).unwrap().is_none());
    }

    #[test]
    fn orders() {
        let lex = MonomialOrder::Lex;
        let grl = MonomialOrder::GrevLex;
        assert_eq!(lex.cmp(&[1, 0, 0], &[0, 3, 0]), Ordering::Greater);
        assert_eq!(grl.cmp(&[1, 0, 0], &[0, 3, 0]), Ordering::Less);
        // x*z < y^2 in grevlex
        assert_eq!(grl.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        let blk = MonomialOrder::Block(1);
        assert_eq!(blk.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
    }
}

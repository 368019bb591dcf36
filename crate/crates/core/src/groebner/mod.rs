//! Gröbner bases, ideal membership and equality, elimination and dimension.

mod buchberger;
mod text;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{divides, same_ring, Exponents, MonomialOrder, Poly, Ring};
use crate::error::{Error, Result};

pub(crate) use buchberger::normal_form;

/// An ideal given by a finite list of generators in a fixed ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
}

impl Ideal {
    /// Zero generators are dropped; every generator must live in `ring`.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch(format!(
                    "generator `{g}` is not in {ring}"
                )));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Parses each string as a generator in `ring`.
    pub fn from_strs(ring: &Arc<Ring>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?;
        Ideal::new(ring, polys)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Sum of two ideals in the same ring.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    /// The reduced Gröbner basis for the ring's monomial order.
    pub fn reduced_gb(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: buchberger::reduced_groebner(&self.ring, &self.gens),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.reduced_gb().gens.iter().any(|g| g.is_constant())
    }

    /// Normal form of `f` modulo the reduced Gröbner basis.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch(format!("`{f}` is not in {}", self.ring)));
        }
        let gb = self.reduced_gb();
        let basis: Vec<&Poly> = gb.gens.iter().collect();
        Ok(normal_form(f, &basis))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let gb = self.reduced_gb();
        let basis: Vec<&Poly> = gb.gens.iter().collect();
        Ok(other.gens.iter().all(|g| normal_form(g, &basis).is_zero()))
    }

    /// Equality of ideals, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.reduced_gb().gens == other.reduced_gb().gens)
    }

    /// `I ∩ k[remaining variables]`, returned in the ring without `block`.
    pub fn eliminate(&self, block: &[&str]) -> Result<Ideal> {
        for v in block {
            self.ring.var_index(v)?;
        }
        let rest: Vec<String> = self
            .ring
            .vars()
            .iter()
            .filter(|v| !block.contains(&v.as_str()))
            .cloned()
            .collect();
        let mut all: Vec<String> = block.iter().map(|s| s.to_string()).collect();
        all.extend(rest.iter().cloned());
        let elim_ring = Ring::new(&all, self.ring.field(), MonomialOrder::Block(block.len()));
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(&elim_ring))
            .collect::<Result<Vec<_>>>()?;
        let gb = buchberger::reduced_groebner(&elim_ring, &gens);
        let sub_order = match self.ring.order() {
            MonomialOrder::Block(_) => MonomialOrder::GrevLex,
            o => o,
        };
        let sub_ring = Ring::new(&rest, self.ring.field(), sub_order);
        let k = block.len();
        let kept = gb
            .into_iter()
            .filter(|g| g.terms().iter().all(|(e, _)| e[..k].iter().all(|&x| x == 0)))
            .map(|g| g.to_ring(&sub_ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&sub_ring, kept)
    }

    /// `I ∩ J` via `t*I + (1 - t)*J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut name = String::from("_t");
        while self.ring.var_index(&name).is_ok() {
            name.push('_');
        }
        let mut vars: Vec<String> = self.ring.vars().to_vec();
        vars.push(name.clone());
        let big = Ring::new(&vars, self.ring.field(), self.ring.order());
        let t = big.var(&name)?;
        let one_minus_t = &big.one() - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&g.to_ring(&big)? * &t);
        }
        for g in &other.gens {
            gens.push(&g.to_ring(&big)? * &one_minus_t);
        }
        let elim = Ideal::new(&big, gens)?.eliminate(&[&name])?;
        let gens = elim
            .gens
            .iter()
            .map(|g| g.to_ring(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens)?.reduced_gb())
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn leading_monomials(&self) -> Vec<Exponents> {
        self.reduced_gb()
            .gens
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect()
    }

    /// Krull dimension of `R/I`, with a maximal independent set of variables.
    ///
    /// Among independent sets of maximal size, the one whose sorted variable
    /// names come first lexicographically is returned.
    pub fn dim_with_witness(&self) -> Result<(usize, Vec<String>)> {
        let lms = self.leading_monomials();
        if lms.iter().any(|m| m.iter().all(|&x| x == 0)) {
            return Err(Error::EmptyVariety);
        }
        let mut names: Vec<(String, usize)> = self
            .ring
            .vars()
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        names.sort();
        let supports: Vec<Vec<usize>> = lms
            .iter()
            .map(|m| (0..m.len()).filter(|&i| m[i] > 0).collect())
            .collect();
        let mut best: Option<Vec<usize>> = None;
        let mut chosen = Vec::new();
        search(&names, &supports, 0, &mut chosen, &mut best);
        let best = best.unwrap_or_default();
        Ok((
            best.len(),
            best.iter().map(|&i| self.ring.vars()[i].clone()).collect(),
        ))
    }

    pub fn dim(&self) -> Result<usize> {
        Ok(self.dim_with_witness()?.0)
    }

    /// Dimension of the projective variety in `P^{n-1}` cut out by a homogeneous ideal;
    /// `None` when it is empty.
    pub fn projective_dim(&self) -> Option<usize> {
        match self.dim() {
            Ok(0) | Err(_) => None,
            Ok(d) => Some(d - 1),
        }
    }

    /// Hilbert function of `R/I` in degree `d` (number of standard monomials).
    pub fn hilbert_function(&self, d: u32) -> usize {
        let lms = self.leading_monomials();
        let n = self.ring.nvars();
        let mut count = 0;
        let mut mono = vec![0u16; n];
        count_standard(&lms, &mut mono, 0, d, &mut count);
        count
    }

    /// Degree of the projective scheme of a homogeneous ideal, read off the
    /// leading coefficient of the Hilbert polynomial.
    pub fn projective_degree(&self) -> Result<u64> {
        let pdim = self.projective_dim().ok_or(Error::EmptyVariety)?;
        let start = self
            .reduced_gb()
            .gens
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0)
            + 1;
        // Take `pdim`-th finite differences until they stabilize.
        let mut last = None;
        for d0 in start..start + 6 {
            let vals: Vec<i64> = (0..=pdim as u32)
                .map(|k| self.hilbert_function(d0 + k) as i64)
                .collect();
            let mut diff = vals;
            for _ in 0..pdim {
                diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
            }
            let v = diff[0];
            if last == Some(v) {
                return u64::try_from(v).map_err(|_| Error::Anomaly("negative degree".into()));
            }
            last = Some(v);
        }
        Err(Error::Anomaly("Hilbert polynomial did not stabilize".into()))
    }
}

fn search(
    names: &[(String, usize)],
    supports: &[Vec<usize>],
    pos: usize,
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
) {
    let best_len = best.as_ref().map_or(0, |b| b.len());
    if best.is_some() && chosen.len() + (names.len() - pos) <= best_len {
        return;
    }
    if pos == names.len() {
        if best.is_none() || chosen.len() > best_len {
            *best = Some(chosen.clone());
        }
        return;
    }
    let v = names[pos].1;
    chosen.push(v);
    let ok = supports.iter().all(|s| !s.iter().all(|i| chosen.contains(i)));
    if ok {
        search(names, supports, pos + 1, chosen, best);
    }
    chosen.pop();
    search(names, supports, pos + 1, chosen, best);
}

fn count_standard(lms: &[Exponents], mono: &mut Vec<u16>, i: usize, left: u32, count: &mut usize) {
    if i == mono.len() - 1 {
        mono[i] = left as u16;
        if !lms.iter().any(|m| divides(m, mono)) {
            *count += 1;
        }
        mono[i] = 0;
        return;
    }
    for k in 0..=left {
        mono[i] = k as u16;
        // Prune: once a prefix is divisible by some leading monomial, so is every extension.
        if lms.iter().any(|m| divides(m, mono)) {
            break;
        }
        count_standard(lms, mono, i + 1, left - k, count);
    }
    mono[i] = 0;
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_ideal(self))
    }
}

pub use text::parse_ideal;

/// Free-function forms of the ideal operations.
pub fn reduced_gb(i: &Ideal) -> Ideal {
    i.reduced_gb()
}

pub fn ideal_member(f: &Poly, i: &Ideal) -> Result<bool> {
    i.contains(f)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

pub fn eliminate(i: &Ideal, block: &[&str]) -> Result<Ideal> {
    i.eliminate(block)
}

pub fn ideal_dim(i: &Ideal) -> Result<usize> {
    i.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<Ring> {
        Ring::new(vars, Field::Rational, order)
    }

    #[test]
    fn trivial_bases() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let i = Ideal::from_strs(&r, &["x"]).unwrap();
        assert_eq!(i.reduced_gb().gens(), &[r.parse("x").unwrap()]);
        let i = Ideal::from_strs(&r, &["x - y", "y^2"]).unwrap();
        let gb = i.reduced_gb();
        assert_eq!(gb.gens(), &[r.parse("x - y").unwrap(), r.parse("y^2").unwrap()]);
        assert!(Ideal::new(&r, vec![]).unwrap().reduced_gb().is_zero());
    }

    #[test]
    fn membership_and_equality() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let i = Ideal::from_strs(&r, &["x"]).unwrap();
        assert!(i.contains(&r.parse("x^2").unwrap()).unwrap());
        assert!(!i.contains(&r.parse("x + 1").unwrap()).unwrap());
        let a = Ideal::from_strs(&r, &["x", "y"]).unwrap();
        let b = Ideal::from_strs(&r, &["y", "x + y"]).unwrap();
        assert!(a.equals(&b).unwrap());
        let c = Ideal::from_strs(&r, &["x^2"]).unwrap();
        assert!(!c.equals(&i).unwrap());
    }

    #[test]
    fn elimination_of_parabola() {
        let r = ring(&["t", "x", "y"], MonomialOrder::GrevLex);
        let i = Ideal::from_strs(&r, &["x - t", "y - t^2"]).unwrap();
        let e = i.eliminate(&["t"]).unwrap();
        let expect = Ideal::from_strs(e.ring(), &["y - x^2"]).unwrap();
        assert!(e.equals(&expect).unwrap());
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(Ideal::from_strs(&r, &["x", "y"]).unwrap().dim().unwrap(), 0);
        assert_eq!(Ideal::from_strs(&r, &["x"]).unwrap().dim().unwrap(), 1);
        assert_eq!(Ideal::new(&r, vec![]).unwrap().dim().unwrap(), 2);
        assert_eq!(
            Ideal::from_strs(&r, &["x", "x*y + 1"]).unwrap().dim(),
            Err(Error::EmptyVariety)
        );
    }

    #[test]
    fn intersection_of_axes() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        let b = Ideal::from_strs(&r, &["y"]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(c.equals(&Ideal::from_strs(&r, &["x*y"]).unwrap()).unwrap());
    }

    #[test]
    fn degree_of_conic() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
        let i = Ideal::from_strs(&r, &["x*z - y^2"]).unwrap();
        assert_eq!(i.projective_dim(), Some(1));
        assert_eq!(i.projective_degree().unwrap(), 2);
        assert_eq!(i.hilbert_function(3), 7);
    }
}

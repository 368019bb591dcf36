use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::conic::ConicParam;
use super::pluecker::{pluecker_ring, wedge, PLUCKER};
use super::{FlagLine, Subspace};
use crate::algebra::{Field, MonomialOrder, Poly, Ring, Scalar, UniPoly};
use crate::error::Result;
use crate::groebner::Ideal;

/// Schubert type of a plane of `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneKind {
    /// `P(V1 ∧ V4)`.
    Sigma31 { v1: Subspace, v4: Subspace },
    /// `P(∧²V3)`.
    Sigma22 { v3: Subspace },
}

/// A plane contained in `Y`, with its 3-dimensional span in `∧²k^5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneInY {
    kind: PlaneKind,
    u3: Subspace,
}

impl PlaneInY {
    pub fn kind(&self) -> &PlaneKind {
        &self.kind
    }

    pub fn u3(&self) -> &Subspace {
        &self.u3
    }

    /// Linear equations of the plane in `P^9`.
    pub fn ideal(&self) -> Ideal {
        let f = self.u3.field();
        let r = pluecker_ring(f);
        let gens = self
            .u3
            .annihilator()
            .into_iter()
            .map(|form| linear_poly(&r, &form))
            .collect();
        Ideal::new(&r, gens).unwrap()
    }
}

pub(crate) fn linear_poly(r: &Arc<Ring>, form: &[Scalar]) -> Poly {
    let n = r.nvars();
    let terms = form
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut e = vec![0u16; n];
            e[i] = 1;
            (e, c.clone())
        })
        .collect();
    Poly::from_terms(r, terms)
}

/// `V4(t) = {x3 = t x2}`, and `{x2 = 0}` at infinity.
pub fn v4_of(field: Field, t: &ConicParam) -> Subspace {
    let form = match t {
        ConicParam::Finite(t) => {
            let mut f = vec![field.zero(); 5];
            f[3] = field.one();
            f[2] = -t;
            f
        }
        ConicParam::Infinity => {
            let mut f = vec![field.zero(); 5];
            f[2] = field.one();
            f
        }
    };
    Subspace::from_equations(field, 5, vec![form]).unwrap()
}

/// The plane `P_t = P(v_t ∧ V4(t))` through the point `v_t` of the vertex conic.
pub fn make_pt(field: Field, t: &ConicParam) -> PlaneInY {
    let v = super::conic::vertex_conic_point(field, t);
    let v4 = v4_of(field, t);
    let rows = v4.rows().iter().map(|w| wedge(&v, w)).collect();
    let u3 = Subspace::span(field, 10, rows).unwrap();
    PlaneInY {
        kind: PlaneKind::Sigma31 {
            v1: Subspace::new(field, 5, vec![v]).unwrap(),
            v4,
        },
        u3,
    }
}

/// The plane `S = P(∧² span{e0, e1, e4})`.
pub fn make_s(field: Field) -> PlaneInY {
    let v3 = Subspace::from_names(field, 5, "e0,e1,e4").unwrap();
    let r = v3.rows();
    let rows = vec![wedge(&r[0], &r[1]), wedge(&r[0], &r[2]), wedge(&r[1], &r[2])];
    PlaneInY {
        kind: PlaneKind::Sigma22 { v3 },
        u3: Subspace::new(field, 10, rows).unwrap(),
    }
}

/// Linear span of `A ∩ B` in `∧²k^5`.
pub fn plane_meet(a: &PlaneInY, b: &PlaneInY) -> Subspace {
    a.u3.intersect(&b.u3)
}

/// Spanning vectors of `P_t` as polynomials in `t`: `v∧e1`, `v∧e4`, `v∧(e2 + t e3)`.
fn sweep_rows(r: &Arc<Ring>) -> Vec<Vec<Poly>> {
    let t = r.var("t").unwrap();
    let one = r.one();
    let zero = r.zero();
    let v = [one.clone(), t.clone(), zero.clone(), zero.clone(), -&(&t * &t)];
    let e = |i: usize| {
        let mut w = vec![zero.clone(); 5];
        w[i] = one.clone();
        w
    };
    let mut w3 = e(2);
    w3[3] = t.clone();
    [e(1), e(4), w3]
        .iter()
        .map(|w| {
            super::pluecker::PAIRS
                .iter()
                .map(|&(i, j)| &(&v[i] * &w[j]) - &(&v[j] * &w[i]))
                .collect()
        })
        .collect()
}

/// Ideal of the threefold `R = ∪_t P_t`, obtained by eliminating `t, λ1, λ2, λ3`
/// from `p = λ1 u1(t) + λ2 u2(t) + λ3 u3(t)`. Cached per field.
pub fn ideal_of_r(field: Field) -> Ideal {
    static CACHE: OnceLock<Mutex<HashMap<Field, Ideal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(i) = cache.lock().unwrap().get(&field) {
        return i.clone();
    }
    let mut vars = vec!["t", "l1", "l2", "l3"];
    vars.extend(PLUCKER);
    let r = Ring::new(&vars, field, MonomialOrder::GrevLex);
    let rows = sweep_rows(&r);
    let lambdas = [r.var("l1").unwrap(), r.var("l2").unwrap(), r.var("l3").unwrap()];
    let gens = (0..10)
        .map(|k| {
            let mut g = r.var(PLUCKER[k]).unwrap();
            for (l, row) in lambdas.iter().zip(&rows) {
                g = &g - &(l * &row[k]);
            }
            g
        })
        .collect();
    let elim = Ideal::new(&r, gens)
        .unwrap()
        .eliminate(&["t", "l1", "l2", "l3"])
        .unwrap();
    let target = pluecker_ring(field);
    let gens = elim.gens().iter().map(|g| g.to_ring(&target).unwrap()).collect();
    let ideal = Ideal::new(&target, gens).unwrap().reduced_gb();
    cache.lock().unwrap().insert(field, ideal.clone());
    ideal
}

/// True when every point of the line satisfies the ideal.
pub fn line_in_variety(line: &FlagLine, ideal: &Ideal) -> Result<bool> {
    let f = line.field();
    let r = Ring::new(&["s0", "s1"], f, MonomialOrder::GrevLex);
    let (s0, s1) = (r.var("s0")?, r.var("s1")?);
    let span = line.line_span().rows();
    let mut map = HashMap::new();
    for (k, name) in PLUCKER.iter().enumerate() {
        let p = &s0.scale(&span[0][k]) + &s1.scale(&span[1][k]);
        map.insert(name.to_string(), p);
    }
    for g in ideal.gens() {
        if !g.substitute(&r, &map)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Values of `t` (over the algebraic closure) with `L ⊂ P_t`, as a squarefree
/// polynomial plus a flag for `t = ∞`. `None` for the polynomial means every finite `t`.
pub fn planes_containing_line(line: &FlagLine) -> (Option<UniPoly>, bool) {
    let f = line.field();
    let r = Ring::new(&["t"], f, MonomialOrder::GrevLex);
    let rows = sweep_rows(&r);
    // `u1, u2, u3` have pivots in p01, p04, p02 and vanish in the other two pivot columns,
    // so `w ∈ U3(t)` iff `w = w01 u1 + w04 u2 + w02 u3`.
    let mut g = UniPoly::zero(f);
    for w in line.line_span().rows() {
        for k in 0..10 {
            let combo = &(&rows[0][k].scale(&w[0]) + &rows[1][k].scale(&w[3])) + &rows[2][k].scale(&w[1]);
            let diff = &Poly::constant(&r, w[k].clone()) - &combo;
            g = g.gcd(&to_uni(&diff));
        }
    }
    let finite = if g.is_zero() { None } else { Some(g) };
    let at_infinity = make_pt(f, &ConicParam::Infinity)
        .u3()
        .contains(&line.line_span());
    (finite, at_infinity)
}

fn to_uni(p: &Poly) -> UniPoly {
    let f = p.field();
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut cs = vec![f.zero(); deg + 1];
    for (e, c) in p.terms() {
        cs[e[0] as usize] = c.clone();
    }
    UniPoly::new(f, cs)
}

/// True when `L ⊂ P_t` for some `t` in `P^1` over the algebraic closure.
pub fn line_in_some_pt(line: &FlagLine) -> bool {
    let (finite, inf) = planes_containing_line(line);
    inf || finite.is_none_or(|g| g.degree().unwrap_or(0) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{dual_conic, on_y, PlueckerVector};

    #[test]
    fn planes_lie_in_y() {
        let q = Field::Rational;
        for t in [ConicParam::int(q, 0), ConicParam::int(q, -2), ConicParam::Infinity] {
            let p = make_pt(q, &t);
            assert_eq!(p.u3().dim(), 3);
            for row in p.u3().rows() {
                assert!(on_y(&PlueckerVector::new(row).unwrap()));
            }
        }
        let s = make_s(q);
        assert_eq!(s.ideal().gens().len(), 7);
    }

    #[test]
    fn p0_meets_dual_conic_in_e01() {
        let q = Field::Rational;
        let meet = plane_meet(&make_pt(q, &ConicParam::int(q, 0)), &make_s(q));
        assert_eq!(meet.dim(), 2);
        let d = dual_conic(q, &ConicParam::int(q, 0));
        assert!(meet.contains_vector(d.coords()));
    }
}

//! Affine charts of `Gr(4,5)`, the elimination of `Gr(2,V4) ∩ H1 ∩ H2`, the quadric `Q3`
//! and the fibers over its singular line.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{gram_and_rank, Field, MonomialOrder, Poly, Ring, Scalar};
use crate::error::{Error, Result};
use crate::grassmann::{
    make_pt, make_s, pluecker_relations, pluecker_ring, y_linear_forms, ConicParam,
    Subspace, PLUCKER,
};
use crate::groebner::Ideal;

/// The two affine charts `x3 ≠ 0` and `x4 ≠ 0` of `Gr(4,5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    X3,
    X4,
}

impl Chart {
    /// Parameter names; the third one is `c` on `x3 ≠ 0` and `u` on `x4 ≠ 0`.
    pub fn params(self) -> [&'static str; 4] {
        match self {
            Chart::X3 => ["a", "b", "c", "d"],
            Chart::X4 => ["a", "b", "u", "d"],
        }
    }

    /// Quadric displayed for this chart.
    pub fn displayed_quadric(self) -> &'static str {
        match self {
            Chart::X3 => {
                "b*c*p01^2 + c^2*p01*p02 + c*d*p01*p04 - a*p01^2 + b*p01*p04 + c*p02*p04 \
                 + d*p04^2 + d*p01*p14 - p02*p14"
            }
            Chart::X4 => {
                "a*p04^2 + a*p01*p14 + b*p04*p14 - d*p14^2 - p01*p34 - a*u*p04*p14 \
                 - b*u*p14^2 - u*p04*p34 + u^2*p14*p34"
            }
        }
    }

    /// Linear generators displayed for this chart.
    pub fn displayed_linear(self) -> [(&'static str, &'static str); 6] {
        match self {
            Chart::X3 => [
                ("h1", "p03 - p12"),
                ("h2", "p12 - b*p01 - c*p02 - d*p04"),
                ("h3", "p13 - p24"),
                ("h4", "p23 + a*p02 + b*p12 - d*p24"),
                ("h5", "p24 + a*p01 - c*p12 - d*p14"),
                ("h6", "p34 - a*p04 - b*p14 - c*p24"),
            ],
            Chart::X4 => [
                ("k1", "p02 + b*p01 + d*p04 - u*p12"),
                ("k2", "p03 - p12"),
                ("k3", "p12 - a*p01 + d*p14 - u*p24"),
                ("k4", "p13 - p24"),
                ("k5", "p23 + a*p12 + b*p24 - d*p34"),
                ("k6", "p24 + a*p04 + b*p14 - u*p34"),
            ],
        }
    }

    /// Variables of the quadric's Gram matrix.
    pub fn gram_vars(self) -> [&'static str; 4] {
        match self {
            Chart::X3 => ["p01", "p02", "p04", "p14"],
            Chart::X4 => ["p01", "p04", "p14", "p34"],
        }
    }

    /// Basis rows of `V4` over `k[params]`.
    pub fn v4_rows(self, r: &Arc<Ring>) -> Vec<Vec<Poly>> {
        let v = |s: &str| r.var(s).unwrap();
        let (o, z) = (r.one(), r.zero());
        match self {
            // span{e0 + a e3, e1 + b e3, e2 + c e3, e4 + d e3}
            Chart::X3 => vec![
                vec![o.clone(), z.clone(), z.clone(), v("a"), z.clone()],
                vec![z.clone(), o.clone(), z.clone(), v("b"), z.clone()],
                vec![z.clone(), z.clone(), o.clone(), v("c"), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), v("d"), o.clone()],
            ],
            // span{e0 - a e2, e1 - b e2, e3 + u e2, e4 - d e2}
            Chart::X4 => vec![
                vec![o.clone(), z.clone(), -&v("a"), z.clone(), z.clone()],
                vec![z.clone(), o.clone(), -&v("b"), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), v("u"), o.clone(), z.clone()],
                vec![z.clone(), z.clone(), -&v("d"), z.clone(), o.clone()],
            ],
        }
    }

    /// The point `[x0 : ... : x4]` of `Gr(4,5)` (the covector cutting out `V4`) in terms of the chart.
    pub fn x_coords(self, params: &[Scalar; 4]) -> [Scalar; 5] {
        let f = params[0].field();
        let [a, b, c, d] = params.clone();
        match self {
            Chart::X3 => [a, b, d, f.one(), c],
            Chart::X4 => [a, b, d, c, f.one()],
        }
    }

    /// `V4` at a specific parameter value.
    pub fn v4_at(self, params: &[Scalar; 4]) -> Subspace {
        let f = params[0].field();
        let r = Ring::new(&self.params(), f, MonomialOrder::GrevLex);
        let rows = self
            .v4_rows(&r)
            .iter()
            .map(|row| row.iter().map(|p| p.eval(params)).collect())
            .collect();
        Subspace::new(f, 5, rows).unwrap()
    }
}

fn ring_with(field: Field, first: &[&str], chart: Chart) -> Arc<Ring> {
    let mut vars: Vec<&str> = first.to_vec();
    vars.extend(chart.params());
    vars.extend(PLUCKER);
    Ring::new(&vars, field, MonomialOrder::GrevLex)
}

/// The `2x2` minors of `[V2][V4]` with `[V2] = [[1,0,t1,t3],[0,1,t2,t4]]`, keyed by Plücker name.
fn chart_minors(r: &Arc<Ring>, chart: Chart) -> HashMap<String, Poly> {
    let v4 = chart.v4_rows(r);
    let t = |s: &str| r.var(s).unwrap();
    let coeffs = [
        [r.one(), r.zero(), t("t1"), t("t3")],
        [r.zero(), r.one(), t("t2"), t("t4")],
    ];
    let rows: Vec<Vec<Poly>> = coeffs
        .iter()
        .map(|c| {
            (0..5)
                .map(|j| (0..4).fold(r.zero(), |acc, i| &acc + &(&c[i] * &v4[i][j])))
                .collect()
        })
        .collect();
    crate::grassmann::PAIRS
        .iter()
        .zip(PLUCKER)
        .map(|(&(i, j), name)| {
            (
                name.to_string(),
                &(&rows[0][i] * &rows[1][j]) - &(&rows[0][j] * &rows[1][i]),
            )
        })
        .collect()
}

/// Outcome of one substitution identity.
#[derive(Clone, Debug, Serialize)]
pub struct SubstitutionCheck {
    pub generator: String,
    /// Vanishes after substituting the chart minors, with no further relation.
    pub identically_zero: bool,
    /// Vanishes modulo the substituted hyperplane forms `ℓ1, ℓ2`.
    pub modulo_hyperplanes: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealComparison {
    Equal,
    /// The displayed ideal is strictly smaller than the eliminated one.
    DisplayedStrictlySmaller,
    /// The displayed ideal is strictly larger than the eliminated one.
    DisplayedStrictlyLarger,
    Incomparable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartEliminationReport {
    pub chart: Chart,
    pub substitutions: Vec<SubstitutionCheck>,
    pub comparison: IdealComparison,
    pub eliminated_gb: Vec<String>,
    pub displayed_gb: Vec<String>,
}

impl ChartEliminationReport {
    pub fn substitutions_pass(&self) -> bool {
        self.substitutions.iter().all(|s| s.modulo_hyperplanes)
    }
}

/// Ideal of the displayed generators together with `p01 - 1`, in `k[params, p]`.
pub fn displayed_ideal(field: Field, chart: Chart, dehomogenize: bool) -> Result<Ideal> {
    let r = ring_with(field, &[], chart);
    let mut gens = vec![r.parse(chart.displayed_quadric())?];
    for (_, g) in chart.displayed_linear() {
        gens.push(r.parse(g)?);
    }
    if dehomogenize {
        gens.push(r.parse("p01 - 1")?);
    }
    Ideal::new(&r, gens)
}

/// Eliminates `t1..t4` from the chart of `Gr(2,V4) ∩ H1 ∩ H2` (with `p01 = 1`).
pub fn chart_elimination_ideal(field: Field, chart: Chart) -> Result<Ideal> {
    let r = ring_with(field, &["t1", "t2", "t3", "t4"], chart);
    let minors = chart_minors(&r, chart);
    let mut gens: Vec<Poly> = PLUCKER
        .iter()
        .map(|name| &r.var(name).unwrap() - &minors[*name])
        .collect();
    gens.push(r.parse("p12 - p03")?);
    gens.push(r.parse("p13 - p24")?);
    Ideal::new(&r, gens)?.eliminate(&["t1", "t2", "t3", "t4"])
}

pub fn verify_chart_elimination(chart: Chart) -> Result<ChartEliminationReport> {
    let field = Field::Rational;
    // Substitution identities in k[t, params].
    let mut tvars = vec!["t1", "t2", "t3", "t4"];
    tvars.extend(chart.params());
    let tr = Ring::new(&tvars, field, MonomialOrder::GrevLex);
    let minors = chart_minors(&tr, chart);
    let pr = ring_with(field, &[], chart);
    let hyper = Ideal::new(
        &tr,
        y_linear_forms(&pr)?
            .iter()
            .map(|l| l.substitute(&tr, &minors))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let mut named = vec![("quadric".to_string(), chart.displayed_quadric().to_string())];
    named.extend(
        chart
            .displayed_linear()
            .iter()
            .map(|(n, g)| (n.to_string(), g.to_string())),
    );
    let mut substitutions = Vec::new();
    for (name, g) in named {
        let img = pr.parse(&g)?.substitute(&tr, &minors)?;
        substitutions.push(SubstitutionCheck {
            generator: name,
            identically_zero: img.is_zero(),
            modulo_hyperplanes: hyper.contains(&img)?,
        });
    }

    let elim = chart_elimination_ideal(field, chart)?.reduced_gb();
    let elim = Ideal::new(
        &pr,
        elim.gens()
            .iter()
            .map(|g| g.to_ring(&pr))
            .collect::<Result<Vec<_>>>()?,
    )?
    .reduced_gb();
    let shown = displayed_ideal(field, chart, true)?.reduced_gb();
    let a = elim.contains_ideal(&shown)?;
    let b = shown.contains_ideal(&elim)?;
    let comparison = match (a, b) {
        (true, true) => IdealComparison::Equal,
        (true, false) => IdealComparison::DisplayedStrictlySmaller,
        (false, true) => IdealComparison::DisplayedStrictlyLarger,
        (false, false) => IdealComparison::Incomparable,
    };
    Ok(ChartEliminationReport {
        chart,
        substitutions,
        comparison,
        eliminated_gb: elim.gens().iter().map(|g| g.to_string()).collect(),
        displayed_gb: shown.gens().iter().map(|g| g.to_string()).collect(),
    })
}

/// `det(Gram) = α · (b^2 + 4ad)^k · cofactor`.
#[derive(Clone, Debug, Serialize)]
pub struct DetFactorization {
    pub chart: Chart,
    pub determinant: String,
    pub alpha: Scalar,
    pub k: u32,
    pub cofactor: String,
    pub gram_rank: usize,
}

pub fn gram_determinant(chart: Chart) -> Result<DetFactorization> {
    let r = ring_with(Field::Rational, &[], chart);
    let q = r.parse(chart.displayed_quadric())?;
    let (m, rank) = gram_and_rank(&q, &chart.gram_vars())?;
    let det = m.determinant()?;
    let target = r.parse("b^2 + 4*a*d")?;
    let mut rest = det.clone();
    let mut k = 0;
    if !rest.is_zero() {
        while let Some(next) = rest.div_exact(&target)? {
            rest = next;
            k += 1;
        }
    }
    let (alpha, cofactor) = if rest.is_zero() {
        (Field::Rational.zero(), rest)
    } else {
        let lc = rest.lead_coeff().unwrap().clone();
        (lc.clone(), rest.scale(&lc.inv()?))
    };
    Ok(DetFactorization {
        chart,
        determinant: det.to_string(),
        alpha,
        k,
        cofactor: cofactor.to_string(),
        gram_rank: rank,
    })
}

/// Checks on the quadric threefold `Q3 = {x1^2 + 4 x0 x2 = 0}` of `Gr(4,5)`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaQ3Report {
    pub factorizations: Vec<DetFactorization>,
    /// `⟨q, ∂q⟩ = ⟨x0, x1, x2⟩`.
    pub singular_locus_ok: bool,
    /// The chart points `(0, 0, t, 0)` land in `Sing(Q3)` and give `V4(t)`.
    pub vertex_family_ok: bool,
    /// The determinant is nonzero at `(1, 1, 1, 1)`.
    pub off_quadric_nonzero: bool,
}

impl LemmaQ3Report {
    pub fn passed(&self) -> bool {
        self.factorizations.iter().all(|f| f.k >= 1)
            && self.singular_locus_ok
            && self.vertex_family_ok
            && self.off_quadric_nonzero
    }
}

pub fn verify_lemma_q3() -> Result<LemmaQ3Report> {
    let q = Field::Rational;
    let factorizations = vec![gram_determinant(Chart::X3)?, gram_determinant(Chart::X4)?];

    let xr = Ring::new(&["x0", "x1", "x2", "x3", "x4"], q, MonomialOrder::GrevLex);
    let quad = xr.parse("x1^2 + 4*x0*x2")?;
    let mut gens = vec![quad.clone()];
    gens.extend((0..5).map(|i| quad.derivative(i)));
    let sing = Ideal::new(&xr, gens)?;
    let singular_locus_ok = sing.equals(&Ideal::from_strs(&xr, &["x0", "x1", "x2"])?)?;

    let mut vertex_family_ok = true;
    for t in [-2i64, 0, 1, 3] {
        let params = [q.zero(), q.zero(), q.from_i64(t), q.zero()];
        let x = Chart::X3.x_coords(&params);
        let in_sing = sing.gens().iter().all(|g| g.eval(&x).is_zero());
        let v4 = Chart::X3.v4_at(&params);
        vertex_family_ok &= in_sing && v4 == crate::grassmann::v4_of(q, &ConicParam::int(q, t));
    }

    let r = ring_with(q, &[], Chart::X3);
    let (m, _) = gram_and_rank(&r.parse(Chart::X3.displayed_quadric())?, &Chart::X3.gram_vars())?;
    let mut at = vec![q.zero(); r.nvars()];
    for i in 0..4 {
        at[i] = q.one();
    }
    let off_quadric_nonzero = !m.determinant()?.eval(&at).is_zero();

    Ok(LemmaQ3Report {
        factorizations,
        singular_locus_ok,
        vertex_family_ok,
        off_quadric_nonzero,
    })
}

/// The scheme `Gr(2,V4) ∩ H1 ∩ H2` in `P^9` for a given `V4`: contraction
/// with the covector of `V4`, the two hyperplanes, and the Plücker quadrics.
pub fn fiber_ideal(v4: &Subspace) -> Result<Ideal> {
    let f = v4.field();
    let r = pluecker_ring(f);
    let phi = v4.annihilator().remove(0);
    let mut gens = Vec::new();
    for j in 0..5 {
        let mut g = r.zero();
        for i in 0..5 {
            if i == j || phi[i].is_zero() {
                continue;
            }
            let (k, neg) = crate::grassmann::pluecker_index(i, j).unwrap();
            let c = if neg { -&phi[i] } else { phi[i].clone() };
            g = &g + &r.var(PLUCKER[k])?.scale(&c);
        }
        gens.push(g);
    }
    gens.extend(y_linear_forms(&r)?);
    gens.extend(pluecker_relations(&r)?);
    Ideal::new(&r, gens)
}

/// Displayed plane ideals of the fiber over the chart point `(0, 0, c, 0)`.
pub fn displayed_plane_ideals(field: Field, c: &Scalar) -> Result<(Ideal, Ideal)> {
    let r = pluecker_ring(field);
    let mut vars = vec!["c"];
    vars.extend(PLUCKER);
    let rc = Ring::new(&vars, field, MonomialOrder::GrevLex);
    let common = [
        "p23",
        "c*p24 - p34",
        "c*p02 - p12",
        "-c*p12 + p24",
        "p13 - p24",
        "p03 - p12",
    ];
    let cval = Poly::constant(&rc, c.clone());
    let build = |first: &str| -> Result<Ideal> {
        let gens = std::iter::once(first)
            .chain(common)
            .map(|s| rc.parse(s)?.substitute_var("c", &cval)?.to_ring(&r))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&r, gens)
    };
    Ok((build("c^2*p01 + c*p04 - p14")?, build("p02")?))
}

#[derive(Clone, Debug, Serialize)]
pub struct SingFiberReport {
    pub t: Scalar,
    /// Fiber ideal equals the intersection of the two displayed plane ideals.
    pub fiber_is_union: bool,
    /// The first displayed ideal is the ideal of `P_t`.
    pub pt_matches: bool,
    /// The second displayed ideal is the ideal of `S`.
    pub s_matches: bool,
    /// Gram rank of `q_G` on `K_{[V4]}`.
    pub k_rank: usize,
}

impl SingFiberReport {
    pub fn passed(&self) -> bool {
        self.fiber_is_union && self.pt_matches && self.s_matches && self.k_rank == 2
    }
}

pub fn verify_sing_fiber(t: &Scalar) -> Result<SingFiberReport> {
    let f = t.field();
    if f.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let params = [f.zero(), f.zero(), t.clone(), f.zero()];
    let v4 = Chart::X3.v4_at(&params);
    let fiber = fiber_ideal(&v4)?;
    let (pt, s) = displayed_plane_ideals(f, t)?;
    let union = pt.intersect(&s)?;
    let k = super::conics::k_of_v4(&v4)?;
    let k_rank = super::conics::restricted_gram(&v4, &k)?.rank()?;
    Ok(SingFiberReport {
        t: t.clone(),
        fiber_is_union: fiber.equals(&union)?,
        pt_matches: pt.equals(&make_pt(f, &ConicParam::Finite(t.clone())).ideal())?,
        s_matches: s.equals(&make_s(f).ideal())?,
        k_rank,
    })
}

/// Gram rank of `q_G` on `K_{[V4]}` at a chart point; 3 on `Q3 \ Sing(Q3)`.
pub fn k_gram_rank(chart: Chart, params: &[Scalar; 4]) -> Result<usize> {
    let v4 = chart.v4_at(params);
    let k = super::conics::k_of_v4(&v4)?;
    super::conics::restricted_gram(&v4, &k)?.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x3_determinant_factor() {
        let f = gram_determinant(Chart::X3).unwrap();
        assert_eq!(f.k, 1);
        assert_eq!(f.alpha, Field::Rational.from_ratio(1, 16).unwrap());
        assert_eq!(f.cofactor, "1");
    }

    #[test]
    fn fiber_over_singular_point() {
        let q = Field::Rational;
        let r = verify_sing_fiber(&q.from_i64(2)).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

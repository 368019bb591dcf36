use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{
    binary_intersection, BinaryFormSystem, BinaryIntersection, Field, MonomialOrder, Ring, Scalar,
    SupportPoint,
};
use crate::error::{Error, Result};
use crate::grassmann::{
    dual_conic_ideal, ideal_of_r, line_in_some_pt, line_in_variety, lines_with_vertex, make_s,
    pluecker_relations, pluecker_ring, vertex_conic_point, y_linear_forms, ConicParam, FlagLine,
    PLUCKER,
};
use crate::groebner::Ideal;

/// The five orbit types of lines in `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineType {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for LineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LineType::A => "a",
            LineType::B => "b",
            LineType::C => "c",
            LineType::D => "d",
            LineType::E => "e",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalBundleType {
    Free,
    Nonfree,
}

impl fmt::Display for NormalBundleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalBundleType::Free => write!(f, "free"),
            NormalBundleType::Nonfree => write!(f, "nonfree"),
        }
    }
}

/// How a line meets the plane `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeetS {
    Empty,
    Point,
    Line,
}

/// Full classification record of a line in `Y`.
#[derive(Clone, Debug, Serialize)]
pub struct LineClassification {
    #[serde(rename = "type")]
    pub line_type: LineType,
    pub normal_bundle: NormalBundleType,
    pub support_points: Vec<SupportPoint>,
    pub family_dim: usize,
    pub meets_s: MeetS,
    pub in_r_by_elimination: bool,
    pub in_r_by_planes: bool,
    /// Unexpected observations; empty for a clean classification.
    pub flags: Vec<String>,
}

/// `L ∩ C_v^∨` as a binary system on the line.
pub fn dual_conic_intersection(line: &FlagLine) -> Result<BinaryIntersection> {
    let f = line.field();
    let r = Ring::new(&["s0", "s1"], f, MonomialOrder::GrevLex);
    let (s0, s1) = (r.var("s0")?, r.var("s1")?);
    let span = line.line_span().rows();
    let mut map = HashMap::new();
    for (k, name) in PLUCKER.iter().enumerate() {
        map.insert(
            name.to_string(),
            &s0.scale(&span[0][k]) + &s1.scale(&span[1][k]),
        );
    }
    let forms = dual_conic_ideal(f)
        .gens()
        .iter()
        .map(|g| g.substitute(&r, &map))
        .collect::<Result<Vec<_>>>()?;
    binary_intersection(&BinaryFormSystem::new(forms, "s0", "s1")?)
}

fn check_in_y(line: &FlagLine) -> Result<()> {
    if line.line_in_y() {
        Ok(())
    } else {
        Err(Error::InvalidInput("line is not contained in Y".into()))
    }
}

/// Support-cardinality criterion: non-free iff `L` meets `C_v^∨` in exactly one point.
pub fn is_non_free(line: &FlagLine) -> Result<NormalBundleType> {
    check_in_y(line)?;
    let bi = dual_conic_intersection(line)?;
    Ok(if bi.distinct_roots() == 1 {
        NormalBundleType::Nonfree
    } else {
        NormalBundleType::Free
    })
}

/// Linear ideal (in Plücker variables, read as tangent directions `u`) of
/// `∩_{w ∈ L} T_w Y` modulo the span of `L` itself.
pub fn double_line_ideal(line: &FlagLine) -> Result<Ideal> {
    let f = line.field();
    let r = pluecker_ring(f);
    let span = line.line_span();
    let mut gens: Vec<_> = y_linear_forms(&r)?.into_iter().collect();
    let quadrics = pluecker_relations(&r)?;
    for w in span.rows() {
        for q in &quadrics {
            // Polar form `B_q(w, u) = Σ_k ∂q/∂p_k(w) u_k`.
            let mut g = r.zero();
            for k in 0..10 {
                let c = q.derivative(k).eval(&w);
                g = &g + &r.var(PLUCKER[k])?.scale(&c);
            }
            gens.push(g);
        }
    }
    // Quotient by the span of L: pin the pivot coordinates of its echelon basis.
    let (_, pivots) = span.basis().rref();
    for p in pivots {
        gens.push(r.var(PLUCKER[p])?);
    }
    Ideal::new(&r, gens)
}

/// Dimension of the family of double structures on `L`: the projective dimension
/// of `P(∩_{w ∈ L} T_w Y / W_L)`, expected to be 0 (free) or 1 (non-free).
pub fn double_line_family_dim(line: &FlagLine) -> Result<usize> {
    check_in_y(line)?;
    let ideal = double_line_ideal(line)?;
    let d = ideal.dim()?;
    if d == 0 {
        return Err(Error::Anomaly("no double structure on the line".into()));
    }
    Ok(d - 1)
}

pub fn classify_line(line: &FlagLine) -> Result<LineClassification> {
    check_in_y(line)?;
    let f = line.field();
    let span = line.line_span();
    let s = make_s(f);
    let meets_s = match s.u3().intersect(&span).dim() {
        0 => MeetS::Empty,
        1 => MeetS::Point,
        _ => MeetS::Line,
    };
    let bi = dual_conic_intersection(line)?;
    let support_points = bi.support_points();
    let in_r_by_elimination = line_in_variety(line, &ideal_of_r(f))?;
    let in_r_by_planes = line_in_some_pt(line);
    let mut flags = Vec::new();
    // Lines of S lie on R without lying on any single P_t.
    if meets_s != MeetS::Line && in_r_by_elimination != in_r_by_planes {
        flags.push(format!(
            "R membership disagrees: elimination {in_r_by_elimination}, plane search {in_r_by_planes}"
        ));
    }
    let line_type = if meets_s == MeetS::Line {
        if support_points.len() == 1 && support_points[0].multiplicity == 2 {
            LineType::D
        } else {
            LineType::E
        }
    } else if in_r_by_elimination {
        if support_points.is_empty() {
            LineType::B
        } else {
            LineType::C
        }
    } else {
        LineType::A
    };
    match line_type {
        LineType::B | LineType::C if meets_s != MeetS::Point => {
            flags.push(format!("type {line_type} line meets S in {meets_s:?}"))
        }
        LineType::C if support_points.len() != 1 => flags.push(format!(
            "type c line meets the dual conic in {} points",
            support_points.len()
        )),
        _ => {}
    }
    let normal_bundle = if bi.distinct_roots() == 1 {
        NormalBundleType::Nonfree
    } else {
        NormalBundleType::Free
    };
    let family_dim = double_line_family_dim(line)?;
    if family_dim > 1 {
        flags.push(format!("double-line family of dimension {family_dim}"));
    }
    if (family_dim == 1) != (normal_bundle == NormalBundleType::Nonfree) {
        flags.push(format!(
            "criteria disagree: support gives {normal_bundle}, family dimension {family_dim}"
        ));
    }
    Ok(LineClassification {
        line_type,
        normal_bundle,
        support_points,
        family_dim,
        meets_s,
        in_r_by_elimination,
        in_r_by_planes,
        flags,
    })
}

/// Where a random line's vertex is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Generic,
    OnVertexConic,
    InPlaneOfS,
}

fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-9..=9)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

fn random_nonzero_vec<R: Rng>(field: Field, n: usize, rng: &mut R) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..n).map(|_| random_scalar(field, rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A random line of `Y`: pick a vertex, solve for `V3`, and choose a member
/// of the family when it is not unique.
pub fn random_line<R: Rng>(field: Field, kind: VertexKind, rng: &mut R) -> Result<FlagLine> {
    let v = match kind {
        VertexKind::Generic => random_nonzero_vec(field, 5, rng),
        VertexKind::OnVertexConic => {
            let s = if rng.gen_range(0..8) == 0 {
                ConicParam::Infinity
            } else {
                ConicParam::Finite(random_scalar(field, rng))
            };
            vertex_conic_point(field, &s)
        }
        VertexKind::InPlaneOfS => {
            let c = random_nonzero_vec(field, 3, rng);
            vec![c[0].clone(), c[1].clone(), field.zero(), field.zero(), c[2].clone()]
        }
    };
    let fam = lines_with_vertex(&v)?;
    fam.member(&random_nonzero_vec(field, 3, rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let q = Field::Rational;
        let expect = [
            ("e2", "e0,e2,e3", LineType::A, 0),
            ("e0", "e0,e2,e4", LineType::B, 0),
            ("e0", "e0,e1,e2", LineType::C, 1),
            ("e0", "e0,e1,e4", LineType::D, 1),
            ("e1", "e0,e1,e4", LineType::E, 0),
        ];
        for (v, p, t, dim) in expect {
            let c = classify_line(&FlagLine::parse(q, v, p).unwrap()).unwrap();
            assert_eq!(c.line_type, t);
            assert_eq!(c.family_dim, dim);
            assert!(c.flags.is_empty(), "{:?}", c.flags);
        }
    }

    #[test]
    fn rejects_lines_outside_y() {
        let l = FlagLine::parse(Field::Rational, "e0", "e0,e2,e3").unwrap();
        assert!(classify_line(&l).is_err());
    }
}

use std::sync::Arc;

use super::pluecker::{pluecker_ring, PlueckerVector, PLUCKER};
use crate::algebra::{Field, MonomialOrder, Ring, Scalar};
use crate::groebner::Ideal;

/// A point of the parameter line `P^1`: an affine value `s` or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicParam {
    Finite(Scalar),
    Infinity,
}

impl ConicParam {
    pub fn int(field: Field, s: i64) -> ConicParam {
        ConicParam::Finite(field.from_i64(s))
    }
}

/// `P^4` with coordinates `a0..a4`.
pub fn p4_ring(field: Field) -> Arc<Ring> {
    Ring::new(&["a0", "a1", "a2", "a3", "a4"], field, MonomialOrder::GrevLex)
}

/// Ideal `⟨a0*a4 + a1^2, a2, a3⟩` of the vertex conic.
pub fn vertex_conic_ideal(field: Field) -> Ideal {
    Ideal::from_strs(&p4_ring(field), &["a0*a4 + a1^2", "a2", "a3"]).unwrap()
}

/// Point `(1, s, 0, 0, -s^2)` of the vertex conic, or `e4` at infinity.
pub fn vertex_conic_point(field: Field, s: &ConicParam) -> Vec<Scalar> {
    match s {
        ConicParam::Finite(s) => vec![
            field.one(),
            s.clone(),
            field.zero(),
            field.zero(),
            -&(s * s),
        ],
        ConicParam::Infinity => {
            let mut v = vec![field.zero(); 5];
            v[4] = field.one();
            v
        }
    }
}

/// Tests the vertex conic equations at a vector of `k^5`.
pub fn on_vertex_conic(a: &[Scalar]) -> bool {
    (&(&a[0] * &a[4]) + &(&a[1] * &a[1])).is_zero() && a[2].is_zero() && a[3].is_zero()
}

/// Tangent line of the vertex conic as a point of `Gr(2,5)`:
/// `e0∧e1 - 2s e0∧e4 - s^2 e1∧e4`, and `e1∧e4` at infinity.
pub fn dual_conic(field: Field, s: &ConicParam) -> PlueckerVector {
    let mut c = vec![field.zero(); 10];
    match s {
        ConicParam::Finite(s) => {
            c[0] = field.one();
            c[3] = -&(&field.from_i64(2) * s);
            c[6] = -&(s * s);
        }
        ConicParam::Infinity => c[6] = field.one(),
    }
    PlueckerVector::new(c).unwrap()
}

/// Ideal of the dual conic in `P^9`: `p04^2 + 4 p01 p14` plus the vanishing of the other seven coordinates.
pub fn dual_conic_ideal(field: Field) -> Ideal {
    let r = pluecker_ring(field);
    let mut gens = vec!["p04^2 + 4*p01*p14".to_string()];
    gens.extend(
        PLUCKER
            .iter()
            .filter(|v| !["p01", "p04", "p14"].contains(v))
            .map(|v| v.to_string()),
    );
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    Ideal::from_strs(&r, &refs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parametrization_lies_on_conics() {
        let q = Field::Rational;
        let ideal = dual_conic_ideal(q);
        for s in [
            ConicParam::int(q, 0),
            ConicParam::int(q, 3),
            ConicParam::Finite(q.from_ratio(-2, 7).unwrap()),
            ConicParam::Infinity,
        ] {
            assert!(on_vertex_conic(&vertex_conic_point(q, &s)));
            let d = dual_conic(q, &s);
            assert!(d.on_y());
            assert!(ideal.gens().iter().all(|g| g.eval(d.coords()).is_zero()));
        }
        assert_eq!(
            dual_conic(q, &ConicParam::int(q, 0)),
            PlueckerVector::from_i64(q, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0])
        );
    }
}

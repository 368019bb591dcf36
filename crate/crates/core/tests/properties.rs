use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dp4_core::algebra::{Field, MonomialOrder, Ring, Scalar};
use dp4_core::classifier::{classify_line, random_line, Chart, ConicPair, VertexKind};
use dp4_core::ffcount::{gaussian_binomial, interpolate, CountPoly};
use dp4_core::grassmann::{wedge, FlagLine, PlueckerVector, Subspace};
use dp4_core::groebner::Ideal;
use dp4_core::poincare::{pp_blowup, pp_projective, PoincarePoly};

const QQ: Field = Field::Rational;

fn ints(f: Field, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| f.from_i64(x)).collect()
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(QQ), Just(Field::Prime(3)), Just(Field::Prime(5)), Just(Field::Prime(7))]
}

/// Rows of `m * basis` for an invertible `m`, or `None` when `m` is singular.
fn rebase(f: Field, basis: &[Vec<Scalar>], m: &[i64]) -> Option<Vec<Vec<Scalar>>> {
    let k = basis.len();
    let rows: Vec<Vec<Scalar>> = (0..k)
        .map(|i| {
            (0..basis[0].len())
                .map(|j| (0..k).fold(f.zero(), |acc, l| &acc + &(&f.from_i64(m[i * k + l]) * &basis[l][j])))
                .collect()
        })
        .collect();
    let n = basis[0].len();
    Subspace::new(f, n, rows.clone()).ok().map(|_| rows)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn wedge_satisfies_pluecker_relations(
        x in prop::collection::vec(-6i64..=6, 5),
        y in prop::collection::vec(-6i64..=6, 5),
    ) {
        let p = PlueckerVector::new(wedge(&ints(QQ, &x), &ints(QQ, &y)));
        if let Ok(p) = p {
            prop_assert!(p.is_decomposable());
            for k in 0..5 {
                prop_assert!(p.relation(k).is_zero());
            }
        }
    }

    #[test]
    fn flag_round_trip(seed in any::<u64>(), f in field_strategy(), kind in 0usize..3) {
        let kinds = [VertexKind::Generic, VertexKind::OnVertexConic, VertexKind::InPlaneOfS];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_line(f, kinds[kind], &mut rng).unwrap();
        prop_assert!(l.line_in_y());
        prop_assert_eq!(FlagLine::from_span(&l.line_span()).unwrap(), l);
    }

    #[test]
    fn classification_ignores_choice_of_basis(
        seed in any::<u64>(),
        f in field_strategy(),
        kind in 0usize..3,
        m in prop::collection::vec(-3i64..=3, 9),
        scale in 1i64..=4,
    ) {
        let kinds = [VertexKind::Generic, VertexKind::OnVertexConic, VertexKind::InPlaneOfS];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_line(f, kinds[kind], &mut rng).unwrap();
        let Some(plane) = rebase(f, &l.v3().rows(), &m) else { return Ok(()) };
        let Some(vertex) = rebase(f, &l.v1().rows(), &[scale]) else { return Ok(()) };
        let l2 = FlagLine::new(Subspace::new(f, 5, vertex).unwrap(), Subspace::new(f, 5, plane).unwrap()).unwrap();
        let (a, b) = (classify_line(&l).unwrap(), classify_line(&l2).unwrap());
        prop_assert_eq!(a.line_type, b.line_type);
        prop_assert_eq!(a.support_points, b.support_points);
        prop_assert_eq!(a.family_dim, b.family_dim);
    }

    #[test]
    fn family_dim_matches_support(seed in any::<u64>(), f in field_strategy(), kind in 0usize..3) {
        let kinds = [VertexKind::Generic, VertexKind::OnVertexConic, VertexKind::InPlaneOfS];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = classify_line(&random_line(f, kinds[kind], &mut rng).unwrap()).unwrap();
        prop_assert_eq!(c.family_dim == 1, c.support_points.len() == 1);
        prop_assert!(c.flags.is_empty(), "{:?}", c.flags);
    }

    #[test]
    fn conic_rank_ignores_choice_of_basis(
        p in prop::collection::vec(-3i64..=3, 4),
        coeffs in prop::collection::vec(-2i64..=2, 12),
        m in prop::collection::vec(-2i64..=2, 9),
    ) {
        let f = QQ;
        let v4 = Chart::X3.v4_at(&[f.from_i64(p[0]), f.from_i64(p[1]), f.from_i64(p[2]), f.from_i64(p[3])]);
        let k = dp4_core::classifier::k_of_v4(&v4).unwrap().rows();
        let rows: Vec<Vec<Scalar>> = (0..3)
            .map(|i| (0..10).map(|j| (0..4).fold(f.zero(), |acc, l| &acc + &(&f.from_i64(coeffs[i * 4 + l]) * &k[l][j]))).collect())
            .collect();
        let Ok(u3) = Subspace::new(f, 10, rows.clone()) else { return Ok(()) };
        let Some(rows2) = rebase(f, &rows, &m) else { return Ok(()) };
        let a = ConicPair::new(u3, v4.clone()).unwrap().rank().unwrap();
        let b = ConicPair::new(Subspace::new(f, 10, rows2).unwrap(), v4).unwrap().rank().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn reduced_gb_is_idempotent(
        gens in prop::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3), 1..4),
    ) {
        let r = Ring::new(&["x", "y", "z"], QQ, MonomialOrder::GrevLex);
        let polys: Vec<String> = gens
            .iter()
            .map(|(a, b, c, d)| format!("{a}*x^2 + {b}*x*y + {c}*y*z + {d}*z"))
            .collect();
        let refs: Vec<&str> = polys.iter().map(String::as_str).collect();
        let i = Ideal::from_strs(&r, &refs).unwrap();
        let g = i.reduced_gb();
        let again = g.reduced_gb();
        prop_assert_eq!(again.gens(), g.gens());
        prop_assert!(g.equals(&i).unwrap());
        for p in i.gens() {
            prop_assert!(g.contains(p).unwrap());
        }
    }

    #[test]
    fn interpolation_recovers_polynomials(coeffs in prop::collection::vec(-20i64..=20, 1..6)) {
        let p = CountPoly::new(coeffs);
        let d = p.degree().unwrap_or(0);
        let samples: Vec<(u64, i128)> =
            [3u64, 5, 7, 11, 13, 17, 19].iter().map(|&q| (q, p.eval(q as i64))).collect();
        prop_assert_eq!(interpolate(&samples, d).unwrap(), p);
    }

    #[test]
    fn gaussian_binomials_are_symmetric(n in 0u64..7, k in 0u64..7, q in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        prop_assume!(k <= n);
        prop_assert_eq!(gaussian_binomial(n, k, q), gaussian_binomial(n, n - k, q));
    }

    #[test]
    fn blowups_of_projective_spaces_are_palindromic(n in 2usize..7, c in 2usize..5) {
        prop_assume!(c <= n);
        let pz = pp_projective(n - c);
        let p = pp_blowup(&pp_projective(n), &pz, c).unwrap();
        prop_assert!(p.is_palindromic());
        prop_assert_eq!(p.degree(), Some(2 * n));
        let round: PoincarePoly = p.to_string().parse().unwrap();
        prop_assert_eq!(round, p);
    }
}

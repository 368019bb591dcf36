use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{ReportItem, RunConfig, Status, Suite};
use crate::algebra::{Field, Matrix, MonomialOrder, Ring, Scalar};
use crate::classifier::*;
use crate::error::{Error, Result};
use crate::ffcount::{
    census, count, count_lines_by_flags, default_mode, interpolate, line_census,
    projective_count, CensusMode, VarietyId,
};
use crate::grassmann::*;
use crate::groebner::Ideal;
use crate::poincare::{
    ip_stable_maps_chain, ip_target, odd_primes, pp_blowup, pp_projective,
    run_stable_maps_chain, ComparisonStatus, PoincarePoly, D_DEGREE, H2_DEGREE,
};

struct Outcome {
    status: Status,
    actual: Value,
    evidence: Value,
}

impl Outcome {
    fn judge(ok: bool, actual: Value) -> Outcome {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            actual,
            evidence: Value::Null,
        }
    }

    fn flagged(actual: Value, evidence: Value) -> Outcome {
        Outcome {
            status: Status::Flagged,
            actual,
            evidence,
        }
    }

    fn with(mut self, evidence: Value) -> Outcome {
        self.evidence = evidence;
        self
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    rng: ChaCha8Rng,
    items: Vec<ReportItem>,
}

impl Ctx<'_> {
    fn check<F>(&mut self, id: impl Into<String>, anchor: &str, expected: Value, f: F)
    where
        F: FnOnce(&mut ChaCha8Rng) -> Result<Outcome>,
    {
        let start = Instant::now();
        let out = f(&mut self.rng).unwrap_or_else(|e| Outcome {
            status: Status::Fail,
            actual: Value::Null,
            evidence: json!({ "error": e.to_string() }),
        });
        self.items.push(ReportItem {
            check_id: id.into(),
            paper_anchor: anchor.to_string(),
            status: out.status,
            expected,
            actual: out.actual,
            elapsed_ms: start.elapsed().as_millis() as u64,
            evidence: out.evidence,
        });
    }
}

pub(super) fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<ReportItem> {
    let index = Suite::ALL.iter().position(|&s| s == suite).unwrap() as u64;
    let mut cx = Ctx {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed ^ (index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        items: Vec::new(),
    };
    match suite {
        Suite::Pluecker => pluecker(&mut cx),
        Suite::Elimination => elimination(&mut cx),
        Suite::LemmaQ3 => lemma_q3(&mut cx),
        Suite::Planes => planes(&mut cx),
        Suite::Lines => lines(&mut cx),
        Suite::Dbar => dbar(&mut cx),
        Suite::Counts => counts(&mut cx),
        Suite::Poincare => poincare(&mut cx),
    }
    cx.items
}

const QQ: Field = Field::Rational;

fn random_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

/// Distinct nonzero rationals `n/d` with small height.
fn random_rationals(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    while out.len() < n {
        let num = random_int(rng, -40, 40);
        let den = random_int(rng, 1, 6);
        let s = QQ.from_ratio(num, den).unwrap();
        if num != 0 && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// True when every point of `P(sub)` satisfies the ideal.
fn subspace_in_ideal(sub: &Subspace, ideal: &Ideal) -> Result<bool> {
    let names: Vec<String> = (0..sub.dim()).map(|i| format!("l{i}")).collect();
    let r = Ring::new(&names, sub.field(), MonomialOrder::GrevLex);
    let rows = sub.rows();
    let mut map = std::collections::HashMap::new();
    for (k, name) in PLUCKER.iter().enumerate() {
        let mut p = r.zero();
        for (i, row) in rows.iter().enumerate() {
            p = &p + &r.var(&names[i])?.scale(&row[k]);
        }
        map.insert(name.to_string(), p);
    }
    for g in ideal.gens() {
        if !g.substitute(&r, &map)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nonzero_coords(v: &[Scalar]) -> Value {
    let m: BTreeMap<&str, String> = PLUCKER
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (*n, c.to_string()))
        .collect();
    json!(m)
}

fn pluecker(cx: &mut Ctx) {
    cx.check(
        "pluecker.wedge.e0-e1",
        "claim/y-definition",
        json!({ "p01": "1" }),
        |_| {
            let w = wedge2(&Subspace::from_names(QQ, 5, "e0,e1")?)?;
            let actual = nonzero_coords(w.coords());
            Ok(Outcome::judge(actual == json!({ "p01": "1" }) && w.is_decomposable(), actual))
        },
    );
    let expected = json!({ "p01": "1", "p03": "1", "p12": "-1", "p23": "1" });
    cx.check("pluecker.wedge.e0+e2-e1+e3", "claim/y-definition", expected.clone(), |_| {
        let w = wedge2(&Subspace::from_i64(QQ, &[&[1, 0, 1, 0, 0], &[0, 1, 0, 1, 0]])?)?;
        let actual = nonzero_coords(w.coords());
        Ok(Outcome::judge(actual == expected, actual))
    });
    let n = cx.cfg.samples;
    cx.check(
        "pluecker.random-relations",
        "claim/y-definition",
        json!({ "decomposable": n }),
        |rng| {
            let mut good = 0;
            let mut done = 0;
            while done < n {
                let rows: Vec<Vec<i64>> =
                    (0..2).map(|_| (0..5).map(|_| random_int(rng, -5, 5)).collect()).collect();
                let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                let Ok(v2) = Subspace::from_i64(QQ, &refs) else { continue };
                done += 1;
                let w = wedge2(&v2)?;
                good += usize::from(w.is_decomposable() && (0..5).all(|k| w.relation(k).is_zero()));
            }
            Ok(Outcome::judge(good == n, json!({ "decomposable": good })))
        },
    );
    cx.check(
        "pluecker.y-membership",
        "claim/y-definition",
        json!({ "e0^e1": true, "e0^e3": false }),
        |_| {
            let e = |i: usize| {
                let mut v = vec![QQ.zero(); 5];
                v[i] = QQ.one();
                v
            };
            let a = on_y(&PlueckerVector::new(wedge(&e(0), &e(1)))?);
            let b = on_y(&PlueckerVector::new(wedge(&e(0), &e(3)))?);
            Ok(Outcome::judge(a && !b, json!({ "e0^e1": a, "e0^e3": b })))
        },
    );
    cx.check(
        "pluecker.planes-in-y",
        "claim/plane-family",
        json!({ "planes_in_y": 5 }),
        |_| {
            let y = y_ideal(QQ);
            let mut planes = vec![make_s(QQ)];
            for t in [ConicParam::int(QQ, 0), ConicParam::int(QQ, 1), ConicParam::int(QQ, -2), ConicParam::Infinity] {
                planes.push(make_pt(QQ, &t));
            }
            let mut good = 0;
            for p in &planes {
                good += usize::from(subspace_in_ideal(p.u3(), &y)?);
            }
            Ok(Outcome::judge(good == 5, json!({ "planes_in_y": good })))
        },
    );
    cx.check(
        "pluecker.vertex-conic",
        "claim/vertex-conic",
        json!({ "parametrization_on_conic": true, "dual_conic_at_0": { "p01": "1" }, "dual_conic_in_s_and_y": true }),
        |_| {
            // Symbolic: substitute (1, s, 0, 0, -s^2) into the conic's ideal.
            let r = Ring::new(&["s"], QQ, MonomialOrder::GrevLex);
            let s = r.var("s")?;
            let point = [r.one(), s.clone(), r.zero(), r.zero(), -&(&s * &s)];
            let mut map = std::collections::HashMap::new();
            for (i, p) in point.iter().enumerate() {
                map.insert(format!("a{i}"), p.clone());
            }
            let mut on = true;
            for g in vertex_conic_ideal(QQ).gens() {
                on &= g.substitute(&r, &map)?.is_zero();
            }
            on &= on_vertex_conic(&vertex_conic_point(QQ, &ConicParam::Infinity));
            let d0 = nonzero_coords(dual_conic(QQ, &ConicParam::int(QQ, 0)).coords());
            let s_plane = make_s(QQ);
            let mut in_s = true;
            let mut params: Vec<ConicParam> = [-3, -1, 1, 2, 5].iter().map(|&k| ConicParam::int(QQ, k)).collect();
            params.push(ConicParam::Finite(QQ.from_ratio(1, 2)?));
            params.push(ConicParam::Infinity);
            for t in &params {
                let d = dual_conic(QQ, t);
                in_s &= on_y(&d) && s_plane.u3().contains_vector(d.coords());
            }
            let actual = json!({ "parametrization_on_conic": on, "dual_conic_at_0": d0, "dual_conic_in_s_and_y": in_s });
            Ok(Outcome::judge(on && in_s && d0 == json!({ "p01": "1" }), actual))
        },
    );
    cx.check(
        "pluecker.lines-with-vertex.off-conic",
        "claim/line-blowup",
        json!({ "e2": "unique", "e1": "unique" }),
        |_| {
            let fam = |i: usize| -> Result<LineFamilyKind> {
                let mut v = vec![QQ.zero(); 5];
                v[i] = QQ.one();
                Ok(lines_with_vertex(&v)?.kind())
            };
            let (a, b) = (fam(2)?, fam(1)?);
            let ok = a == LineFamilyKind::Unique && b == LineFamilyKind::Unique;
            Ok(Outcome::judge(ok, json!({ "e2": format!("{a:?}").to_lowercase(), "e1": format!("{b:?}").to_lowercase() })))
        },
    );
    cx.check(
        "pluecker.lines-with-vertex.on-conic",
        "claim/line-blowup",
        json!({ "e0": "one-parameter family" }),
        |_| {
            let mut v = vec![QQ.zero(); 5];
            v[0] = QQ.one();
            let fam = lines_with_vertex(&v)?;
            let actual = json!({ "e0": format!("family of dimension {}", fam.family_dim()), "kernel_dim": fam.kernel().dim() });
            if fam.family_dim() == 1 {
                return Ok(Outcome::judge(true, actual));
            }
            // Lines through a point of the conic form the exceptional fiber of a blow-up
            // of P^4 along a curve, which is a P^2.
            let mut members = 0;
            for n in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]] {
                let l = fam.member(&n.map(|x| QQ.from_i64(x)))?;
                members += usize::from(l.line_in_y());
            }
            Ok(Outcome::flagged(
                actual,
                json!({
                    "kernel_of_vertex_map": fam.kernel().dim(),
                    "sampled_members_in_y": members,
                    "note": "the lines through a point of the vertex conic form a projective plane",
                }),
            ))
        },
    );
    let n = (cx.cfg.samples / 4).max(5);
    let primes = cx.cfg.primes.clone();
    cx.check(
        "pluecker.flag-round-trip",
        "claim/line-types",
        json!({ "round_trips": n }),
        |rng| {
            let kinds = [VertexKind::Generic, VertexKind::OnVertexConic, VertexKind::InPlaneOfS];
            let mut good = 0;
            for i in 0..n {
                let field = if i % 2 == 0 { QQ } else { Field::prime(primes[i / 2 % primes.len()])? };
                let l = random_line(field, kinds[i % 3], rng)?;
                let span = l.line_span();
                let decomposable = l.points().iter().all(|p| p.is_decomposable());
                good += usize::from(decomposable && FlagLine::from_span(&span)? == l);
            }
            Ok(Outcome::judge(good == n, json!({ "round_trips": good })))
        },
    );
}

fn elimination(cx: &mut Ctx) {
    for chart in [Chart::X3, Chart::X4] {
        let (name, anchor) = match chart {
            Chart::X3 => ("x3", "claim/chart-x3"),
            Chart::X4 => ("x4", "claim/chart-x4"),
        };
        let mut stash: Option<ChartEliminationReport> = None;
        cx.check(
            format!("elimination.{name}.substitution"),
            anchor,
            json!({ "displayed_generators_vanish": true }),
            |_| {
                let rep = verify_chart_elimination(chart)?;
                let per: BTreeMap<String, &str> = rep
                    .substitutions
                    .iter()
                    .map(|s| {
                        let how = if s.identically_zero {
                            "identically"
                        } else if s.modulo_hyperplanes {
                            "modulo the substituted hyperplane forms"
                        } else {
                            "does not vanish"
                        };
                        (s.generator.clone(), how)
                    })
                    .collect();
                let ok = rep.substitutions_pass();
                stash = Some(rep);
                Ok(Outcome::judge(ok, json!({ "displayed_generators_vanish": ok, "per_generator": per })))
            },
        );
        cx.check(
            format!("elimination.{name}.ideal-equality"),
            anchor,
            json!("equal"),
            |_| {
                let rep = match stash {
                    Some(r) => r,
                    None => verify_chart_elimination(chart)?,
                };
                let evidence = json!({ "eliminated_gb": rep.eliminated_gb, "displayed_gb": rep.displayed_gb });
                Ok(match rep.comparison {
                    IdealComparison::Equal => Outcome::judge(true, json!(rep.comparison)),
                    IdealComparison::DisplayedStrictlySmaller => Outcome::flagged(json!(rep.comparison), evidence),
                    _ => Outcome::judge(false, json!(rep.comparison)).with(evidence),
                })
            },
        );
    }
}

fn lemma_q3(cx: &mut Ctx) {
    for chart in [Chart::X3, Chart::X4] {
        let name = if chart == Chart::X3 { "x3" } else { "x4" };
        cx.check(
            format!("lemma-q3.det.{name}"),
            "claim/quadric-q3",
            json!("alpha * (b^2 + 4*a*d)^k * cofactor with k >= 1"),
            |_| {
                let f = gram_determinant(chart)?;
                let ok = f.k >= 1 && !f.alpha.is_zero();
                Ok(Outcome::judge(ok, json!(f)))
            },
        );
    }
    let mut stash = None;
    cx.check(
        "lemma-q3.singular-locus",
        "claim/quadric-q3",
        json!("<x1^2 + 4*x0*x2, partials> = <x0, x1, x2>"),
        |_| {
            let rep = verify_lemma_q3()?;
            let ok = rep.singular_locus_ok;
            stash = Some(rep);
            Ok(Outcome::judge(ok, json!(ok)))
        },
    );
    cx.check(
        "lemma-q3.vertex-family-in-sing",
        "claim/quadric-q3",
        json!({ "chart_points_(0,0,t,0)_in_sing_and_equal_V4(t)": true, "det_at_(1,1,1,1)_nonzero": true }),
        |_| {
            let rep = match stash {
                Some(r) => r,
                None => verify_lemma_q3()?,
            };
            let ok = rep.vertex_family_ok && rep.off_quadric_nonzero;
            Ok(Outcome::judge(
                ok,
                json!({ "chart_points_(0,0,t,0)_in_sing_and_equal_V4(t)": rep.vertex_family_ok, "det_at_(1,1,1,1)_nonzero": rep.off_quadric_nonzero }),
            ))
        },
    );
    let mut ts = vec![QQ.zero(), QQ.one()];
    ts.extend(random_rationals(&mut cx.rng, 1));
    for t in ts {
        cx.check(
            format!("lemma-q3.sing-fiber.t={t}"),
            "claim/singular-fibers",
            json!({ "fiber_is_union": true, "pt_matches": true, "s_matches": true, "k_rank": 2 }),
            |_| {
                let r = verify_sing_fiber(&t)?;
                let ok = r.passed();
                Ok(Outcome::judge(
                    ok,
                    json!({ "fiber_is_union": r.fiber_is_union, "pt_matches": r.pt_matches, "s_matches": r.s_matches, "k_rank": r.k_rank }),
                ))
            },
        );
    }
    cx.check(
        "lemma-q3.generic-fiber-rank",
        "claim/singular-fibers",
        json!({ "on_q3_off_sing": 3, "off_q3": 4 }),
        |rng| {
            let mut on = Vec::new();
            let mut off = Vec::new();
            for _ in 0..4 {
                let s = random_int(rng, 1, 9) * if rng.gen() { 1 } else { -1 };
                let c = random_int(rng, -5, 5);
                let d = random_int(rng, 1, 4);
                // b^2 + 4ad = 0 with a = -s^2, b = 2 s d, scaled: a = -s^2 d, b = 2 s d.
                let p = [QQ.from_i64(-s * s * d), QQ.from_i64(2 * s * d), QQ.from_i64(c), QQ.from_i64(d)];
                on.push(k_gram_rank(Chart::X3, &p)?);
                let p = [QQ.from_i64(s), QQ.from_i64(1), QQ.from_i64(c), QQ.from_i64(s)];
                off.push(k_gram_rank(Chart::X3, &p)?);
            }
            let ok = on.iter().all(|&r| r == 3) && off.iter().all(|&r| r == 4);
            Ok(Outcome::judge(ok, json!({ "on_q3_off_sing": on, "off_q3": off })))
        },
    );
}

fn planes(cx: &mut Ctx) {
    let ts = random_rationals(&mut cx.rng, 20);
    let ts2 = random_rationals(&mut cx.rng, 20);
    cx.check(
        "planes.pt-meets-s-tangent",
        "claim/plane-intersections",
        json!({ "tangent_lines": 20 }),
        |_| {
            let s = make_s(QQ);
            let mut good = 0;
            let mut bad = Vec::new();
            for t in &ts {
                let meet = plane_meet(&make_pt(QQ, &ConicParam::Finite(t.clone())), &s);
                let ok = meet.dim() == 2 && {
                    let sp = dual_conic_intersection(&FlagLine::from_span(&meet)?)?.support_points();
                    sp.len() == 1 && sp[0].multiplicity == 2
                };
                if ok {
                    good += 1;
                } else {
                    bad.push(t.to_string());
                }
            }
            Ok(Outcome::judge(good == ts.len(), json!({ "tangent_lines": good })).with(json!({ "t": ts.iter().map(|t| t.to_string()).collect::<Vec<_>>(), "failures": bad })))
        },
    );
    cx.check(
        "planes.pt-meets-pt-prime",
        "claim/plane-intersections",
        json!({ "single_points_in_s": 20 }),
        |_| {
            let s = make_s(QQ);
            let mut good = 0;
            for (a, b) in ts.iter().zip(&ts2) {
                let (a, b) = if a == b { (a.clone(), a + &QQ.one()) } else { (a.clone(), b.clone()) };
                let meet = plane_meet(&make_pt(QQ, &ConicParam::Finite(a)), &make_pt(QQ, &ConicParam::Finite(b)));
                good += usize::from(meet.dim() == 1 && s.u3().contains(&meet));
            }
            Ok(Outcome::judge(good == 20, json!({ "single_points_in_s": good })))
        },
    );
    cx.check(
        "planes.p0-meets-dual-conic",
        "claim/plane-intersections",
        json!({ "support_points": 1, "point": { "p01": "1" } }),
        |_| {
            let meet = plane_meet(&make_pt(QQ, &ConicParam::int(QQ, 0)), &make_s(QQ));
            let sp = dual_conic_intersection(&FlagLine::from_span(&meet)?)?.support_points();
            let e01 = dual_conic(QQ, &ConicParam::int(QQ, 0));
            let ok = sp.len() == 1 && meet.contains_vector(e01.coords());
            Ok(Outcome::judge(ok, json!({ "support_points": sp.len(), "point": nonzero_coords(e01.coords()) })))
        },
    );
    cx.check(
        "planes.r-contains-p1",
        "claim/line-types",
        json!(true),
        |_| {
            let ok = subspace_in_ideal(make_pt(QQ, &ConicParam::int(QQ, 1)).u3(), &ideal_of_r(QQ))?;
            Ok(Outcome::judge(ok, json!(ok)).with(json!({ "r_ideal": ideal_of_r(QQ).gens().iter().map(|g| g.to_string()).collect::<Vec<_>>() })))
        },
    );
    cx.check(
        "planes.s-point-outside-r",
        "claim/line-types",
        json!({ "point_in_r": false }),
        |_| {
            // p01 = p04 = p14 = 1 lies in S and off the dual conic.
            let mut v = vec![QQ.zero(); 10];
            for k in [0, 3, 6] {
                v[k] = QQ.one();
            }
            let r = ideal_of_r(QQ);
            let in_r = r.gens().iter().all(|g| g.eval(&v).is_zero());
            let s_in_r = subspace_in_ideal(make_s(QQ).u3(), &r)?;
            if !in_r {
                return Ok(Outcome::judge(true, json!({ "point_in_r": false })));
            }
            Ok(Outcome::flagged(
                json!({ "point_in_r": true }),
                json!({
                    "whole_plane_s_in_r": s_in_r,
                    "note": "each tangent line of the dual conic lies in some P_t, and these lines sweep S",
                }),
            ))
        },
    );
    for (row, v, p, expect) in [("b", "e0", "e0,e2,e4", true), ("a", "e2", "e0,e2,e3", false)] {
        cx.check(
            format!("planes.row-{row}-in-r"),
            "claim/line-types",
            json!({ "by_elimination": expect, "by_plane_search": expect }),
            |_| {
                let l = FlagLine::parse(QQ, v, p)?;
                let a = line_in_variety(&l, &ideal_of_r(QQ))?;
                let b = line_in_some_pt(&l);
                Ok(Outcome::judge(a == expect && b == expect, json!({ "by_elimination": a, "by_plane_search": b })))
            },
        );
    }
}

fn classification_json(c: &LineClassification) -> Value {
    json!({
        "type": c.line_type,
        "normal_bundle": c.normal_bundle,
        "support_points": c.support_points,
        "family_dim": c.family_dim,
    })
}

fn lines(cx: &mut Ctx) {
    let table = [
        ("a", "e2", "e0,e2,e3", LineType::A, NormalBundleType::Free, 0),
        ("b", "e0", "e0,e2,e4", LineType::B, NormalBundleType::Free, 0),
        ("c", "e0", "e0,e1,e2", LineType::C, NormalBundleType::Nonfree, 1),
        ("d", "e0", "e0,e1,e4", LineType::D, NormalBundleType::Nonfree, 1),
        ("e", "e1", "e0,e1,e4", LineType::E, NormalBundleType::Free, 0),
    ];
    for (row, v, p, ty, nb, dim) in table {
        cx.check(
            format!("lines.table.{row}"),
            "claim/line-types",
            json!({ "type": ty, "normal_bundle": nb, "family_dim": dim }),
            |_| {
                let c = classify_line(&FlagLine::parse(QQ, v, p)?)?;
                let ok = c.line_type == ty && c.normal_bundle == nb && c.family_dim == dim && c.flags.is_empty();
                Ok(Outcome::judge(ok, classification_json(&c)).with(json!({ "meets_s": c.meets_s, "flags": c.flags })))
            },
        );
    }
    let n = cx.cfg.samples;
    let primes = cx.cfg.primes.clone();
    cx.check(
        "lines.random-criteria-agree",
        "claim/nonfree-lines",
        json!({ "lines": n, "criteria_agree": n, "types_consistent": n }),
        |rng| {
            let kinds = [VertexKind::Generic, VertexKind::OnVertexConic, VertexKind::InPlaneOfS];
            let mut agree = 0;
            let mut consistent = 0;
            let mut by_type: BTreeMap<String, usize> = BTreeMap::new();
            let mut by_field: BTreeMap<String, usize> = BTreeMap::new();
            let mut failures = Vec::new();
            for i in 0..n {
                let field = if i % 2 == 0 { QQ } else { Field::prime(primes[i / 2 % primes.len()])? };
                let l = random_line(field, kinds[i % 3], rng)?;
                let c = classify_line(&l)?;
                let one_point = c.support_points.len() == 1;
                let ok = (c.family_dim == 1) == one_point && (c.normal_bundle == NormalBundleType::Nonfree) == one_point;
                let nonfree_type = matches!(c.line_type, LineType::C | LineType::D);
                let in_s_type = matches!(c.line_type, LineType::D | LineType::E);
                let cons = nonfree_type == one_point && in_s_type == (c.meets_s == MeetS::Line) && c.flags.is_empty();
                agree += usize::from(ok);
                consistent += usize::from(cons);
                *by_type.entry(c.line_type.to_string()).or_default() += 1;
                let fname = match field {
                    Field::Rational => "QQ".to_string(),
                    Field::Prime(p) => format!("GF({p})"),
                };
                *by_field.entry(fname).or_default() += 1;
                if (!ok || !cons) && failures.len() < 5 {
                    failures.push(json!({ "vertex": l.vertex().iter().map(|x| x.to_string()).collect::<Vec<_>>(), "classification": classification_json(&c), "flags": c.flags }));
                }
            }
            Ok(Outcome::judge(
                agree == n && consistent == n,
                json!({ "lines": n, "criteria_agree": agree, "types_consistent": consistent }),
            )
            .with(json!({ "by_type": by_type, "by_field": by_field, "failures": failures })))
        },
    );
}

/// An isotropic vector of `K_{[V4]}` outside the kernel of `q_G|K`.
fn isotropic_vector(v4: &Subspace) -> Result<Vec<Scalar>> {
    let f = v4.field();
    let k = k_of_v4(v4)?;
    let g = restricted_gram(v4, &k)?;
    let gm = g.to_matrix(f);
    let range: Vec<i64> = (-3..=3).collect();
    for a in &range {
        for b in &range {
            for c in &range {
                for d in &range {
                    let cs: Vec<Scalar> = [a, b, c, d].iter().map(|&&x| f.from_i64(x)).collect();
                    if cs.iter().all(|x| x.is_zero()) || !g.eval(&cs).is_zero() {
                        continue;
                    }
                    if gm.mul_vec(&cs).iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let rows = k.rows();
                    return Ok((0..10)
                        .map(|j| (0..4).fold(f.zero(), |acc, i| &acc + &(&cs[i] * &rows[i][j])))
                        .collect());
                }
            }
        }
    }
    Err(Error::Anomaly("no small isotropic vector found".into()))
}

fn random_u3(v4: &Subspace, rng: &mut ChaCha8Rng) -> Result<Subspace> {
    let f = v4.field();
    let k = k_of_v4(v4)?.rows();
    loop {
        let coeffs: Vec<Vec<Scalar>> =
            (0..3).map(|_| (0..4).map(|_| f.from_i64(random_int(rng, -2, 2))).collect()).collect();
        if Matrix::from_rows(f, coeffs.clone())?.rank() < 3 {
            continue;
        }
        let rows = coeffs
            .iter()
            .map(|c| (0..10).map(|j| (0..4).fold(f.zero(), |acc, i| &acc + &(&c[i] * &k[i][j]))).collect())
            .collect();
        return Subspace::new(f, 10, rows);
    }
}

fn q3_point(rng: &mut ChaCha8Rng) -> [Scalar; 4] {
    let s = random_int(rng, -4, 4);
    let d = random_int(rng, 1, 3);
    let c = random_int(rng, -4, 4);
    [QQ.from_i64(-s * s * d), QQ.from_i64(2 * s * d), QQ.from_i64(c), QQ.from_i64(d)]
}

fn dbar(cx: &mut Ctx) {
    let ints = |xs: [i64; 4]| xs.map(|x| QQ.from_i64(x));
    cx.check(
        "dbar.plane-at-sing-point",
        "claim/singular-fibers",
        json!("plane"),
        |_| {
            let v4 = Chart::X3.v4_at(&ints([0, 0, 0, 0]));
            let pair = ConicPair::new(make_pt(QQ, &ConicParam::int(QQ, 0)).u3().clone(), v4)?;
            let c = pair.conic_class()?;
            Ok(Outcome::judge(c == ConicClass::Plane, json!(c)))
        },
    );
    cx.check(
        "dbar.tangent-double-line",
        "claim/double-line-fibration",
        json!({ "class": "double-line", "support_line_in_y": true, "support_line_in_plane": true }),
        |_| {
            let v4 = Chart::X3.v4_at(&ints([1, 0, 0, 0]));
            let z = isotropic_vector(&v4)?;
            let pair = ConicPair::new(tangent_u3(&v4, &z)?, v4)?;
            let class = pair.conic_class()?;
            let l = pair.support_line()?;
            let in_y = l.line_in_y();
            let in_plane = pair.u3().contains(&l.line_span());
            Ok(Outcome::judge(
                class == ConicClass::DoubleLine && in_y && in_plane,
                json!({ "class": class, "support_line_in_y": in_y, "support_line_in_plane": in_plane }),
            ))
        },
    );
    cx.check(
        "dbar.fiber-dimensions",
        "claim/double-line-fibration",
        json!({ "(1,1,1,1)": "empty", "(1,0,0,0)": 1, "(0,0,1,0)": 1 }),
        |_| {
            let dim = |p: [i64; 4]| -> Result<Value> {
                Ok(match dbar_fiber_dim(&Chart::X3.v4_at(&ints(p)))? {
                    None => json!("empty"),
                    Some(d) => json!(d),
                })
            };
            let actual = json!({ "(1,1,1,1)": dim([1, 1, 1, 1])?, "(1,0,0,0)": dim([1, 0, 0, 0])?, "(0,0,1,0)": dim([0, 0, 1, 0])? });
            Ok(Outcome::judge(actual == json!({ "(1,1,1,1)": "empty", "(1,0,0,0)": 1, "(0,0,1,0)": 1 }), actual))
        },
    );
    let n = (cx.cfg.samples / 5).max(5);
    cx.check(
        "dbar.random-trichotomy",
        "claim/conic-space",
        json!({ "pairs": n, "consistent": n }),
        |rng| {
            let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
            let mut consistent = 0;
            for i in 0..n {
                let p = match i % 3 {
                    0 => ints([random_int(rng, -3, 3), random_int(rng, -3, 3), random_int(rng, -3, 3), random_int(rng, -3, 3)]),
                    1 => q3_point(rng),
                    _ => ints([0, 0, random_int(rng, -3, 3), 0]),
                };
                let v4 = Chart::X3.v4_at(&p);
                let u3 = if i % 2 == 1 {
                    match isotropic_vector(&v4) {
                        Ok(z) => tangent_u3(&v4, &z)?,
                        Err(_) => random_u3(&v4, rng)?,
                    }
                } else {
                    random_u3(&v4, rng)?
                };
                if u3.dim() != 3 {
                    continue;
                }
                let pair = ConicPair::new(u3, v4)?;
                let r = pair.rank()?;
                *ranks.entry(r).or_default() += 1;
                let psi = pair.psi()?;
                let shape_ok = if r >= 1 {
                    psi.projective_dim() == Some(1) && psi.projective_degree()? == 2
                } else {
                    psi.projective_dim() == Some(2)
                };
                consistent += usize::from(r <= 3 && pair.in_dbar()? == (r <= 1) && shape_ok);
            }
            Ok(Outcome::judge(consistent == n, json!({ "pairs": n, "consistent": consistent })).with(json!({ "rank_histogram": ranks })))
        },
    );
    let n = (cx.cfg.samples / 10).max(3);
    cx.check(
        "dbar.random-support-lines",
        "claim/double-line-fibration",
        json!({ "support_lines_in_y_and_plane": n }),
        |rng| {
            let mut good = 0;
            for _ in 0..n {
                let v4 = Chart::X3.v4_at(&q3_point(rng));
                let z = isotropic_vector(&v4)?;
                let pair = ConicPair::new(tangent_u3(&v4, &z)?, v4)?;
                if pair.rank()? != 1 {
                    continue;
                }
                let l = pair.support_line()?;
                good += usize::from(l.line_in_y() && pair.u3().contains(&l.line_span()));
            }
            Ok(Outcome::judge(good == n, json!({ "support_lines_in_y_and_plane": good })))
        },
    );
}

fn pn(n: u64, q: u64) -> u64 {
    projective_count(n, q)
}

/// Configured primes extended by the next odd primes to at least `n` samples.
fn sample_primes(cfg: &RunConfig, n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = cfg.primes.iter().copied().filter(|&p| p != 2).collect();
    out.sort_unstable();
    out.dedup();
    for p in odd_primes(n + out.len()) {
        if out.len() >= n {
            break;
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_unstable();
    out
}

fn counts(cx: &mut Ctx) {
    let primes = cx.cfg.primes.clone();
    for &q in &primes {
        let qi = q as i128;
        cx.check(
            format!("counts.h1y.q{q}"),
            "claim/line-blowup",
            json!(1 + 2 * q + 3 * q * q + 2 * q.pow(3) + q.pow(4)),
            |_| {
                let lc = line_census(q);
                let expected = 1 + 2 * q + 3 * q * q + 2 * q.pow(3) + q.pow(4);
                let mut evidence = json!({ "plane_vertices": lc.plane_vertices });
                let mut ok = lc.lines == expected;
                if q <= 5 {
                    let by_flags = count_lines_by_flags(q);
                    evidence["by_flags"] = json!(by_flags);
                    ok &= by_flags == lc.lines;
                }
                Ok(Outcome::judge(ok, json!(lc.lines)).with(evidence))
            },
        );
        cx.check(
            format!("counts.blowup-identity.q{q}"),
            "claim/line-blowup",
            json!("|H1Y| = |P^4| + (|P^2| - 1) |Cv|"),
            |_| {
                let cv = count(VarietyId::Cv, q)?;
                let lhs = line_census(q).lines;
                let rhs = pn(4, q) + (pn(2, q) - 1) * cv;
                Ok(Outcome::judge(lhs == rhs && cv == q + 1, json!({ "h1y": lhs, "rhs": rhs, "cv": cv })))
            },
        );
        cx.check(
            format!("counts.nonfree.q{q}"),
            "claim/nonfree-lines",
            json!((q + 1) * (q + 1)),
            |_| {
                let n = line_census(q).nonfree;
                Ok(Outcome::judge(n == (q + 1) * (q + 1), json!(n)))
            },
        );
        cx.check(
            format!("counts.cv-dual.q{q}"),
            "claim/vertex-conic",
            json!(q + 1),
            |_| {
                let n = count(VarietyId::CvDual, q)?;
                Ok(Outcome::judge(n == q + 1, json!(n)))
            },
        );
        if q <= 7 {
            cx.check(
                format!("counts.y.q{q}"),
                "claim/y-definition",
                json!(1 + q + 2 * q * q + q.pow(3) + q.pow(4)),
                |_| {
                    let n = count(VarietyId::Y, q)?;
                    Ok(Outcome::judge(n == 1 + q + 2 * q * q + q.pow(3) + q.pow(4), json!(n)))
                },
            );
        }
        let c = census(q, default_mode(q));
        let mode = json!({ "mode": default_mode(q) });
        cx.check(format!("counts.q3.q{q}"), "claim/quadric-q3", json!(pn(3, q)), |_| {
            Ok(Outcome::judge(c.q3 == pn(3, q) && c.q3 == c.q3_by_equation, json!(c.q3))
                .with(json!({ "by_equation": c.q3_by_equation, "k_rank": c.k_rank })))
        });
        cx.check(format!("counts.sing-q3.q{q}"), "claim/quadric-q3", json!(q + 1), |_| {
            Ok(Outcome::judge(c.sing_q3 == q + 1, json!(c.sing_q3)))
        });
        cx.check(
            format!("counts.dbar.q{q}"),
            "claim/double-line-fibration",
            json!((q + 1) * pn(3, q)),
            |_| {
                Ok(Outcome::judge(c.dbar == (q + 1) * c.q3 && c.q3 == pn(3, q), json!(c.dbar))
                    .with(mode.clone()))
            },
        );
        cx.check(format!("counts.rank0.q{q}"), "claim/conic-space", json!(2 * (q + 1)), |_| {
            Ok(Outcome::judge(c.rank0 == 2 * (q + 1), json!(c.rank0)).with(json!({
                "sigma22_pairs": c.rank0_sigma22,
                "distinct_sigma22_planes": c.n_sigma22(),
            })))
        });
        cx.check(format!("counts.sy.q{q}"), "claim/conic-space", json!(pn(4, q) * pn(3, q)), |_| {
            Ok(Outcome::judge(c.sy == pn(4, q) * pn(3, q), json!(c.sy)).with(mode.clone()))
        });
        cx.check(
            format!("counts.k-dimension.q{q}"),
            "claim/conic-space",
            json!({ "dim 4": pn(4, q) - (q + 1), "dim 5": q + 1 }),
            |_| {
                let actual: BTreeMap<String, u64> =
                    c.dim_k.iter().map(|(k, v)| (format!("dim {k}"), *v)).collect();
                let expected = json!({ "dim 4": pn(4, q) - (q + 1), "dim 5": q + 1 });
                if json!(actual) == expected {
                    return Ok(Outcome::judge(true, json!(actual)));
                }
                Ok(Outcome::flagged(
                    json!(actual),
                    json!({
                        "note": "no form in the pencil spanned by the two hyperplanes has rank 2, so no 4-space is isotropic for all of them",
                        "k_rank": c.k_rank,
                        "sy_over_all_points": c.sy,
                        "p4_times_p3": pn(4, q) * pn(3, q),
                    }),
                ))
            },
        );
        let _ = qi;
    }
    if let Some(&q) = primes.iter().min() {
        cx.check(
            format!("counts.census-modes-agree.q{q}"),
            "claim/conic-space",
            json!(true),
            |_| {
                let a = census(q, CensusMode::Exhaustive);
                let b = census(q, CensusMode::Pruned);
                let same = a.q3 == b.q3 && a.sy == b.sy && a.dbar == b.dbar && a.rank0 == b.rank0 && a.sigma22_planes == b.sigma22_planes;
                Ok(Outcome::judge(same, json!(same)).with(json!({ "pair_ranks": a.pair_ranks })))
            },
        );
    }
    let fits: [(&str, &str, usize, Vec<i64>); 3] = [
        ("h1y", "claim/line-blowup", 4, vec![1, 2, 3, 2, 1]),
        ("q3", "claim/quadric-q3", 3, vec![1, 1, 1, 1]),
        ("dbar", "claim/double-line-fibration", 4, vec![1, 2, 2, 2, 1]),
    ];
    for (name, anchor, degree, expected) in fits {
        let ps = sample_primes(cx.cfg, degree + 2);
        cx.check(
            format!("counts.interpolate.{name}"),
            anchor,
            json!(expected),
            |_| {
                let samples: Vec<(u64, i128)> = ps
                    .iter()
                    .map(|&q| {
                        let v = match name {
                            "h1y" => line_census(q).lines,
                            "q3" => census(q, default_mode(q)).q3,
                            _ => census(q, default_mode(q)).dbar,
                        };
                        (q, v as i128)
                    })
                    .collect();
                let p = interpolate(&samples, degree)?;
                Ok(Outcome::judge(p.coeffs() == expected.as_slice(), json!(p.coeffs()))
                    .with(json!({ "samples": samples.iter().map(|(q, v)| json!([q, v.to_string()])).collect::<Vec<_>>(), "polynomial": p.to_string() })))
            },
        );
    }
}

fn poincare(cx: &mut Ctx) {
    let primes = cx.cfg.primes.clone();
    cx.check(
        "poincare.h1y-blowup",
        "claim/line-blowup",
        json!("1+2t^2+3t^4+2t^6+t^8"),
        |_| {
            let p = pp_blowup(&pp_projective(4), &pp_projective(1), 3)?;
            let mut evals = BTreeMap::new();
            let mut ok = p.to_string() == "1+2t^2+3t^4+2t^6+t^8";
            for &q in primes.iter().filter(|&&q| q <= 5) {
                let n = line_census(q).lines;
                ok &= p.eval_q(q as i64) == n as i128;
                evals.insert(format!("q{q}"), n);
            }
            Ok(Outcome::judge(ok, json!(p.to_string())).with(json!({ "counts": evals })))
        },
    );
    cx.check(
        "poincare.fibrations-match-counts",
        "claim/double-line-fibration",
        json!({ "q3": "1+t^2+t^4+t^6", "dbar": "1+2t^2+2t^4+2t^6+t^8", "sy": "1+2t^2+3t^4+4t^6+4t^8+3t^10+2t^12+t^14" }),
        |_| {
            let q3 = pp_projective(3);
            let dbar = &pp_projective(1) * &q3;
            let sy = &pp_projective(3) * &pp_projective(4);
            let mut ok = true;
            let mut evidence = BTreeMap::new();
            for &q in primes.iter().filter(|&&q| q <= 5) {
                let c = census(q, default_mode(q));
                let qi = q as i64;
                ok &= q3.eval_q(qi) == c.q3 as i128 && dbar.eval_q(qi) == c.dbar as i128 && sy.eval_q(qi) == c.sy as i128;
                evidence.insert(format!("q{q}"), json!({ "q3": c.q3, "dbar": c.dbar, "sy": c.sy }));
            }
            Ok(Outcome::judge(ok, json!({ "q3": q3.to_string(), "dbar": dbar.to_string(), "sy": sy.to_string() }))
                .with(json!(evidence)))
        },
    );
    let h2_primes = sample_primes(cx.cfg, H2_DEGREE + 2);
    let d_primes = sample_primes(cx.cfg, D_DEGREE + 2);
    let mut chain_h2 = None;
    cx.check(
        "poincare.stable-maps-chain",
        "claim/poincare-chain",
        json!(ip_target().to_string()),
        |_| {
            let chain = run_stable_maps_chain(&h2_primes, &d_primes);
            chain_h2 = chain.p_h2.clone();
            let evidence = json!(chain);
            Ok(match chain.primary() {
                Some(c) if c.status == ComparisonStatus::Pass => Outcome::judge(true, json!(c.result.to_string())).with(evidence),
                Some(c) => Outcome::flagged(json!(c.result.to_string()), evidence),
                None => Outcome::flagged(Value::Null, evidence),
            })
        },
    );
    cx.check(
        "poincare.accountings-agree",
        "claim/poincare-chain",
        json!("every accounting of D(Y) gives the same polynomial"),
        |_| {
            let chain = run_stable_maps_chain(&h2_primes[..0], &d_primes);
            let polys: BTreeMap<String, Option<String>> = chain
                .candidates
                .iter()
                .map(|c| (json!(c.accounting).as_str().unwrap().to_string(), c.p_d.as_ref().map(|p| p.to_string())))
                .collect();
            let distinct: std::collections::BTreeSet<_> = polys.values().collect();
            let ok = distinct.len() == 1 && polys.values().all(|p| p.is_some());
            Ok(if ok {
                Outcome::judge(true, json!(polys))
            } else {
                Outcome::flagged(json!(polys), json!(chain.candidates))
            })
        },
    );
    cx.check(
        "poincare.identity",
        "claim/poincare-chain",
        json!(true),
        |_| {
            let p = ip_target();
            let (r, _) = ip_stable_maps_chain(&p, &PoincarePoly::zero());
            Ok(Outcome::judge(r == p, json!(r == p)))
        },
    );
    cx.check(
        "poincare.perturbed-input-flagged",
        "claim/poincare-chain",
        json!("flagged"),
        |_| {
            let base = chain_h2.unwrap_or_else(ip_target);
            let perturbed = &base + &PoincarePoly::t2();
            let d: PoincarePoly = "1+3t^2+5t^4+3t^6+t^8".parse()?;
            let (_, cmp) = ip_stable_maps_chain(&perturbed, &d);
            let ok = cmp.status == ComparisonStatus::Flagged && !cmp.difference.is_zero();
            Ok(Outcome::judge(ok, json!(cmp.status)).with(json!({
                "result": cmp.result.to_string(),
                "target": cmp.target.to_string(),
                "difference": cmp.difference.to_string(),
            })))
        },
    );
}

//! Acceptance run: one line per criterion, nonzero exit if any fails.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dp4_core::algebra::Field;
use dp4_core::classifier::{classify_line, random_line, VertexKind};
use dp4_core::ffcount::{count, projective_count, VarietyId};
use dp4_core::poincare::{ip_stable_maps_chain, ip_target, ComparisonStatus, PoincarePoly};
use dp4_core::report::{run, Report, RunConfig, Status, Suite};

type Verdict = Result<String, String>;

fn statuses(report: &Report, prefix: &str, want: Status) -> Verdict {
    let items: Vec<_> = report.items.iter().filter(|i| i.check_id.starts_with(prefix)).collect();
    if items.is_empty() {
        return Err(format!("no items under {prefix}"));
    }
    match items.iter().find(|i| i.status != want) {
        Some(bad) => Err(format!("{} is {:?}: {}", bad.check_id, bad.status, bad.actual)),
        None => Ok(format!("{} items under {prefix}", items.len())),
    }
}

fn all_of(parts: Vec<Verdict>) -> Verdict {
    let mut notes = Vec::new();
    for p in parts {
        notes.push(p?);
    }
    Ok(notes.join("; "))
}

fn chart_elimination(r: &Report) -> Verdict {
    all_of(vec![
        statuses(r, "elimination.x3.", Status::Pass),
        statuses(r, "elimination.x4.", Status::Pass),
    ])
}

fn lemma_q3(r: &Report) -> Verdict {
    all_of(vec![
        statuses(r, "lemma-q3.det.", Status::Pass),
        statuses(r, "lemma-q3.singular-locus", Status::Pass),
        statuses(r, "lemma-q3.vertex-family-in-sing", Status::Pass),
        statuses(r, "lemma-q3.sing-fiber.", Status::Pass),
    ])
}

fn table(r: &Report) -> Verdict {
    let rows = statuses(r, "lines.table.", Status::Pass)?;
    for (row, nonfree) in [("a", false), ("b", false), ("c", true), ("d", true), ("e", false)] {
        let item = r.item(&format!("lines.table.{row}")).ok_or("missing row")?;
        let nb = item.actual["normal_bundle"].as_str().unwrap_or_default();
        let dim = item.actual["family_dim"].as_u64().unwrap_or(9);
        let points = item.actual["support_points"].as_array().map_or(0, Vec::len);
        if (nb == "nonfree") != nonfree || (dim == 1) != nonfree || (points == 1) != nonfree {
            return Err(format!("row {row}: {}", item.actual));
        }
    }
    Ok(rows)
}

fn random_lines(r: &Report) -> Verdict {
    let from_report = statuses(r, "lines.random-criteria-agree", Status::Pass)?;
    let mut rng = ChaCha8Rng::seed_from_u64(20261015);
    let kinds = [VertexKind::Generic, VertexKind::OnVertexConic, VertexKind::InPlaneOfS];
    let fields = [Field::Rational, Field::Prime(3), Field::Prime(5), Field::Prime(7)];
    let n = 120;
    for i in 0..n {
        let l = random_line(fields[i % 4], kinds[i % 3], &mut rng).map_err(|e| e.to_string())?;
        let c = classify_line(&l).map_err(|e| e.to_string())?;
        if (c.family_dim == 1) != (c.support_points.len() == 1) {
            return Err(format!("line {i}: family_dim {} with {} support points", c.family_dim, c.support_points.len()));
        }
    }
    Ok(format!("{from_report}; {n} further lines over QQ, F3, F5, F7"))
}

fn counts() -> Verdict {
    for q in [3u64, 5] {
        let q3 = 1 + q + q * q + q.pow(3);
        let want = [
            (VarietyId::H1Y, 1 + 2 * q + 3 * q * q + 2 * q.pow(3) + q.pow(4)),
            (VarietyId::Q3, q3),
            (VarietyId::Dbar, (q + 1) * q3),
            (VarietyId::Rank0Locus, 2 * (q + 1)),
        ];
        for (v, n) in want {
            let got = count(v, q).map_err(|e| e.to_string())?;
            if got != n {
                return Err(format!("{v} at q={q}: {got} != {n}"));
            }
        }
        if projective_count(3, q) != q3 {
            return Err("projective count".into());
        }
    }
    Ok("h1y, q3, dbar, rank0locus at q = 3, 5".into())
}

fn plane_intersections(r: &Report) -> Verdict {
    let tangent = r.item("planes.pt-meets-s-tangent").ok_or("missing")?;
    let point = r.item("planes.pt-meets-pt-prime").ok_or("missing")?;
    if tangent.actual["tangent_lines"] != 20 || point.actual["single_points_in_s"] != 20 {
        return Err(format!("{} / {}", tangent.actual, point.actual));
    }
    all_of(vec![
        statuses(r, "planes.pt-meets-s-tangent", Status::Pass),
        statuses(r, "planes.pt-meets-pt-prime", Status::Pass),
    ])
}

fn poincare(r: &Report) -> Verdict {
    let blowup = statuses(r, "poincare.h1y-blowup", Status::Pass)?;
    let chain = r.item("poincare.stable-maps-chain").ok_or("missing chain")?;
    if chain.status == Status::Fail {
        return Err(format!("chain failed: {}", chain.evidence));
    }
    statuses(r, "poincare.perturbed-input-flagged", Status::Pass)?;
    let perturbed = &ip_target() + &PoincarePoly::t2();
    let (_, cmp) = ip_stable_maps_chain(&perturbed, &PoincarePoly::zero());
    if cmp.status != ComparisonStatus::Flagged {
        return Err("perturbed target not flagged".into());
    }
    Ok(format!("{blowup}; chain {:?}: {}", chain.status, chain.actual))
}

fn determinism(a: &Report, cfg: &RunConfig) -> Verdict {
    let b = run(cfg).map_err(|e| e.to_string())?;
    if a.without_timings() != b.without_timings() {
        return Err("two runs with the same seed differ".into());
    }
    let threaded = run(&RunConfig { jobs: 3, ..cfg.clone() }).map_err(|e| e.to_string())?;
    if a.without_timings() != threaded.without_timings() {
        return Err("a threaded run differs".into());
    }
    Ok(format!("{} items identical across three runs", a.items.len()))
}

fn main() {
    let cfg = RunConfig {
        primes: vec![3, 5],
        samples: 100,
        seed: 42,
        suites: Suite::ALL.to_vec(),
        jobs: 1,
    };
    let report = run(&cfg).expect("report runs");
    let criteria: Vec<(&str, Verdict)> = vec![
        ("chart elimination x3/x4", chart_elimination(&report)),
        ("quadric Q3 lemma and singular fibers", lemma_q3(&report)),
        ("line types a-e", table(&report)),
        ("random lines: family_dim = 1 iff one support point", random_lines(&report)),
        ("point counts at q = 3, 5", counts()),
        ("P_t meets S in a tangent line and P_t' in a point of S", plane_intersections(&report)),
        ("Poincare polynomials", poincare(&report)),
        ("determinism", determinism(&report, &cfg)),
    ];
    let mut failed = 0;
    for (i, (name, verdict)) in criteria.iter().enumerate() {
        match verdict {
            Ok(note) => println!("PASS {}: {name} ({note})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why})", i + 1);
            }
        }
    }
    let s = report.summary;
    println!("report: {} pass, {} fail, {} flagged", s.pass, s.fail, s.flagged);
    if failed > 0 || report.exit_code() != 0 {
        std::process::exit(1);
    }
}

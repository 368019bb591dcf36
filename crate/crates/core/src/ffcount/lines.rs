//! Lines of `Y` over `F_q`, enumerated by vertex.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::fq::{grassmannian, projective_points, Fq};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LineCensus {
    pub q: u64,
    /// `|H1(Y)(F_q)|`.
    pub lines: u64,
    /// Vertices whose lines form a `P^2`.
    pub plane_vertices: u64,
    /// Lines meeting the dual conic in exactly one geometric point.
    pub nonfree: u64,
}

/// Indices of `p01, p04, p14`, the coordinates of `S`.
const S_COORDS: [usize; 3] = [0, 3, 6];

/// Number of geometric points of `L ∩ C_v^∨` capped at 2, for `L = P(span{a, b})`.
/// Needs odd `q`.
fn dual_conic_points(f: Fq, a: &[u64; 10], b: &[u64; 10]) -> usize {
    let off: Vec<usize> = (0..10).filter(|k| !S_COORDS.contains(k)).collect();
    let mut m = Vec::with_capacity(14);
    for &k in &off {
        m.push(a[k]);
        m.push(b[k]);
    }
    // `Q(s0 a + s1 b)` for `Q = p04^2 + 4 p01 p14`.
    let quad = |x: u64, y: u64| -> u64 {
        let p = |k: usize| f.add(f.mul(x, a[k]), f.mul(y, b[k]));
        f.add(f.mul(p(3), p(3)), f.mul(4 % f.p, f.mul(p(0), p(6))))
    };
    match f.rank(&m, off.len(), 2) {
        0 => {
            // L ⊂ S: a binary quadratic α s0² + β s0 s1 + γ s1².
            let alpha = quad(1, 0);
            let gamma = quad(0, 1);
            let beta = f.sub(f.sub(quad(1, 1), alpha), gamma);
            let disc = f.sub(f.mul(beta, beta), f.mul(4 % f.p, f.mul(alpha, gamma)));
            if disc == 0 {
                1
            } else {
                2
            }
        }
        1 => {
            let ker = f.kernel(&m, off.len(), 2);
            usize::from(quad(ker[0][0], ker[0][1]) == 0)
        }
        _ => 0,
    }
}

fn visit_vertex(f: Fq, v: &[u64], with_support: bool) -> LineCensus {
    let mut c = LineCensus {
        q: f.p,
        ..LineCensus::default()
    };
    let mut phi = vec![0; 10];
    for j in 0..5 {
        let mut e = [0; 5];
        e[j] = 1;
        let [l1, l2] = f.hyperplanes(&f.wedge(v, &e));
        phi[j] = l1;
        phi[5 + j] = l2;
    }
    let ker = f.kernel(&phi, 2, 5);
    // Complete v to a basis of the kernel.
    let mut chosen = vec![v.to_vec()];
    let mut quotient = Vec::new();
    for k in ker {
        chosen.push(k.clone());
        let flat: Vec<u64> = chosen.concat();
        if f.rank(&flat, chosen.len(), 5) == chosen.len() {
            quotient.push(k);
        } else {
            chosen.pop();
        }
    }
    let d = quotient.len();
    if d < 2 {
        return c;
    }
    if d > 2 {
        c.plane_vertices = 1;
    }
    for a in grassmannian(2, d, f.p) {
        c.lines += 1;
        if with_support {
            let w1 = f.combine(&a[0], &quotient);
            let w2 = f.combine(&a[1], &quotient);
            if dual_conic_points(f, &f.wedge(v, &w1), &f.wedge(v, &w2)) == 1 {
                c.nonfree += 1;
            }
        }
    }
    c
}

/// Lines of `Y` over `F_q`, one fiber of `H1(Y) → P^4` at a time.
/// The non-free count is only computed for odd `q`. Results are cached per `q`.
pub fn line_census(q: u64) -> LineCensus {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, LineCensus>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&q) {
        return *c;
    }
    let c = compute_line_census(q);
    cache.lock().unwrap().insert(q, c);
    c
}

fn compute_line_census(q: u64) -> LineCensus {
    let f = Fq { p: q };
    let with_support = q % 2 == 1;
    projective_points(5, q)
        .par_iter()
        .map(|v| visit_vertex(f, v, with_support))
        .reduce(
            || LineCensus {
                q,
                ..LineCensus::default()
            },
            |a, b| LineCensus {
                q,
                lines: a.lines + b.lines,
                plane_vertices: a.plane_vertices + b.plane_vertices,
                nonfree: a.nonfree + b.nonfree,
            },
        )
}

/// `|H1(Y)(F_q)|` by testing every flag `V1 ⊂ V3`.
pub fn count_lines_by_flags(q: u64) -> u64 {
    let f = Fq { p: q };
    let planes = grassmannian(2, 3, q);
    let points = projective_points(3, q);
    grassmannian(3, 5, q)
        .par_iter()
        .map(|v3| {
            let mut n = 0;
            for c in &points {
                let v = f.combine(c, v3);
                // Two vectors completing v to a basis of V3: take any 2-plane of coefficients
                // not containing c.
                let mut ok = None;
                for a in &planes {
                    let flat: Vec<u64> = [c.clone(), a[0].clone(), a[1].clone()].concat();
                    if f.rank(&flat, 3, 3) == 3 {
                        ok = Some(a);
                        break;
                    }
                }
                let a = ok.expect("complement exists");
                let in_y = a.iter().all(|row| {
                    let w = f.combine(row, v3);
                    f.hyperplanes(&f.wedge(&v, &w)) == [0, 0]
                });
                n += u64::from(in_y);
            }
            n
        })
        .sum()
}

/// `|Y(F_q)|` by enumerating `Gr(2,5)`.
pub fn count_y(q: u64) -> u64 {
    let f = Fq { p: q };
    grassmannian(2, 5, q)
        .par_iter()
        .filter(|m| f.hyperplanes(&f.wedge(&m[0], &m[1])) == [0, 0])
        .count() as u64
}

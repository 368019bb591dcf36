//! Enumeration of pairs `(U3, V4)` with `U3 ⊂ K_{[V4]}` over `F_q`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::fq::{gaussian_binomial, grassmannian, projective_points, Fq};

/// Basis pairs of `∧²V4`.
const PAIRS4: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// How much of the fiber `Gr(3, K_{[V4]})` is visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    /// Every `U3` over every `[V4]`.
    Exhaustive,
    /// Skips fibers where `rank(q_G|U3) ≥ 2` is forced by `rank(q_G|K)`, and counts `S(Y)`
    /// fibers by Gaussian binomials.
    Pruned,
    /// Like `Pruned`, but only visits fibers that can hold planes of `Y`; `dbar` is not filled in.
    Rank0Only,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub q: u64,
    /// Points of `Gr(4,5)`.
    pub v4_total: u64,
    /// `dim K_{[V4]}` distribution.
    pub dim_k: BTreeMap<usize, u64>,
    /// `rank(q_G|K)` distribution.
    pub k_rank: BTreeMap<usize, u64>,
    /// `[V4]` with `rank(q_G|K) ≤ 3`.
    pub q3: u64,
    /// `[V4]` satisfying `x1^2 + 4 x0 x2 = 0`.
    pub q3_by_equation: u64,
    /// `[V4]` with `rank(q_G|K) ≤ 2`.
    pub sing_q3: u64,
    /// `|S(Y)|`: pairs `U3 ⊂ K`.
    pub sy: u64,
    /// Pairs with `rank(q_G|U3) ≤ 1`.
    pub dbar: u64,
    /// Pairs with `q_G|U3 = 0`.
    pub rank0: u64,
    /// Rank-zero pairs whose plane is of type `σ22`.
    pub rank0_sigma22: u64,
    /// Distinct `σ22` planes among rank-zero pairs, as echelon bases.
    pub sigma22_planes: BTreeSet<Vec<u64>>,
    /// Restricted-rank distribution over all visited pairs (exhaustive mode only).
    pub pair_ranks: BTreeMap<usize, u64>,
}

impl Census {
    fn merge(mut self, other: Census) -> Census {
        self.v4_total += other.v4_total;
        for (k, v) in other.dim_k {
            *self.dim_k.entry(k).or_default() += v;
        }
        for (k, v) in other.k_rank {
            *self.k_rank.entry(k).or_default() += v;
        }
        for (k, v) in other.pair_ranks {
            *self.pair_ranks.entry(k).or_default() += v;
        }
        self.q3 += other.q3;
        self.q3_by_equation += other.q3_by_equation;
        self.sing_q3 += other.sing_q3;
        self.sy += other.sy;
        self.dbar += other.dbar;
        self.rank0 += other.rank0;
        self.rank0_sigma22 += other.rank0_sigma22;
        self.sigma22_planes.extend(other.sigma22_planes);
        self
    }

    pub fn n_sigma22(&self) -> u64 {
        self.sigma22_planes.len() as u64
    }
}

/// Twice the Pfaffian Gram matrix on `∧²V4` in the basis `PAIRS4`.
fn pfaffian_gram2(f: Fq) -> [u64; 36] {
    let mut g = [0; 36];
    for (i, j, v) in [(0, 5, 1), (2, 3, 1), (1, 4, -1)] {
        g[i * 6 + j] = f.from_i64(v);
        g[j * 6 + i] = f.from_i64(v);
    }
    g
}

/// Basis of `ker φ` for a normalized covector `φ`.
fn hyperplane_basis(f: Fq, phi: &[u64]) -> Vec<Vec<u64>> {
    let k = phi.iter().position(|&x| x != 0).unwrap();
    (0..5)
        .filter(|&j| j != k)
        .map(|j| {
            let mut v = vec![0; 5];
            v[j] = 1;
            v[k] = f.neg(phi[j]);
            v
        })
        .collect()
}

/// Skew matrices of the given bivectors side by side; rank = dim of the sum of supports.
fn support_rank(f: Fq, vs: &[Vec<u64>]) -> usize {
    let cols = 5 * vs.len();
    let mut m = vec![0; 5 * cols];
    for (b, v) in vs.iter().enumerate() {
        for (k, &(i, j)) in crate::grassmann::PAIRS.iter().enumerate() {
            m[i * cols + 5 * b + j] = v[k];
            m[j * cols + 5 * b + i] = f.neg(v[k]);
        }
    }
    f.rank(&m, 5, cols)
}

fn visit_v4(f: Fq, phi: &[u64], mode: CensusMode, gr34: &[Vec<Vec<u64>>]) -> Census {
    let q = f.p;
    let mut c = Census {
        q,
        v4_total: 1,
        ..Census::default()
    };
    if f.add(f.mul(phi[1], phi[1]), f.mul(4 % q, f.mul(phi[0], phi[4]))) == 0 {
        c.q3_by_equation = 1;
    }
    let basis = hyperplane_basis(f, phi);
    let wedges: Vec<[u64; 10]> = PAIRS4.iter().map(|&(i, j)| f.wedge(&basis[i], &basis[j])).collect();
    let mut lmat = vec![0; 12];
    for (a, w) in wedges.iter().enumerate() {
        let [l1, l2] = f.hyperplanes(w);
        lmat[a] = l1;
        lmat[6 + a] = l2;
    }
    let kc = f.kernel(&lmat, 2, 6);
    let m = kc.len();
    *c.dim_k.entry(m).or_default() += 1;
    let gk = f.congruence(&kc, &pfaffian_gram2(f), 6);
    let rk = f.rank(&gk, m, m);
    *c.k_rank.entry(rk).or_default() += 1;
    if rk <= m.saturating_sub(1) {
        c.q3 = 1;
    }
    if rk <= m.saturating_sub(2) {
        c.sing_q3 = 1;
    }
    if m < 3 {
        return c;
    }
    // A 3-dimensional restriction loses at most 2(m - 3) from the rank.
    let lower = rk.saturating_sub(2 * (m - 3));
    if mode != CensusMode::Exhaustive {
        c.sy = gaussian_binomial(m as u64, 3, q);
        let needed = if mode == CensusMode::Pruned { 2 } else { 1 };
        if lower >= needed {
            return c;
        }
    }
    let other;
    let subspaces = if m == 4 {
        gr34
    } else {
        other = grassmannian(3, m, q);
        &other
    };
    for a in subspaces {
        if mode == CensusMode::Exhaustive {
            c.sy += 1;
        }
        let r = f.rank(&f.congruence(a, &gk, m), 3, 3);
        if mode == CensusMode::Exhaustive {
            *c.pair_ranks.entry(r).or_default() += 1;
        }
        if r <= 1 && mode != CensusMode::Rank0Only {
            c.dbar += 1;
        }
        if r == 0 {
            c.rank0 += 1;
            // Coordinates of U3 in ∧²V4, then in ∧²k^5.
            let u: Vec<Vec<u64>> = a
                .iter()
                .map(|row| {
                    let cc = f.combine(row, &kc);
                    let ws: Vec<Vec<u64>> = wedges.iter().map(|w| w.to_vec()).collect();
                    f.combine(&cc, &ws)
                })
                .collect();
            if support_rank(f, &u) == 3 {
                c.rank0_sigma22 += 1;
                let mut key: Vec<u64> = u.concat();
                f.rref(&mut key, 3, 10);
                c.sigma22_planes.insert(key);
            }
        }
    }
    c
}

/// Runs the census over all `[V4] ∈ Gr(4,5)(F_q)`, in parallel on the current rayon pool.
/// Results are cached per `(q, mode)` for the life of the process.
pub fn census(q: u64, mode: CensusMode) -> Census {
    static CACHE: OnceLock<Mutex<BTreeMap<(u64, CensusMode), Census>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(q, mode)) {
        return c.clone();
    }
    let c = compute(q, mode);
    cache.lock().unwrap().insert((q, mode), c.clone());
    c
}

fn compute(q: u64, mode: CensusMode) -> Census {
    let f = Fq { p: q };
    let gr34 = grassmannian(3, 4, q);
    projective_points(5, q)
        .par_iter()
        .map(|phi| visit_v4(f, phi, mode, &gr34))
        .reduce(
            || Census {
                q,
                ..Census::default()
            },
            Census::merge,
        )
}

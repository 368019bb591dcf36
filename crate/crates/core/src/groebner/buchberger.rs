//! Buchberger's algorithm with normal selection and the Gebauer–Möller criteria.

use std::sync::Arc;

use crate::algebra::{disjoint, divides, lcm, Exponents, Poly, Ring, Scalar};

fn sub_mono(a: &[u16], b: &[u16]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `f` modulo `basis` (every term, not only the leading one).
pub(crate) fn normal_form(f: &Poly, basis: &[&Poly]) -> Poly {
    let ring = f.ring().clone();
    let neg_one = -ring.field().one();
    let mut p = f.clone();
    let mut rem: Vec<(Exponents, Scalar)> = Vec::new();
    loop {
        let Some((m, c)) = p.terms().first().cloned() else {
            break;
        };
        match basis
            .iter()
            .find(|g| divides(g.lead_monomial().unwrap(), &m))
        {
            Some(g) => {
                let shift = sub_mono(&m, g.lead_monomial().unwrap());
                let factor = &c * &g.lead_coeff().unwrap().inv().unwrap();
                let t = g.mul_term(&shift, &(&factor * &neg_one));
                p = &p + &t;
            }
            None => {
                rem.push((m, c));
                p = Poly::from_sorted_terms(&ring, p.terms()[1..].to_vec());
            }
        }
    }
    Poly::from_sorted_terms(&ring, rem)
}

/// S-polynomial of two nonzero polynomials.
fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (lf, lg) = (f.lead_monomial().unwrap(), g.lead_monomial().unwrap());
    let l = lcm(lf, lg);
    let a = f.mul_term(&sub_mono(&l, lf), &g.lead_coeff().unwrap().clone());
    let b = g.mul_term(&sub_mono(&l, lg), &f.lead_coeff().unwrap().clone());
    &a - &b
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
}

struct State {
    ring: Arc<Ring>,
    polys: Vec<Poly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Exponents {
        self.polys[i].lead_monomial().unwrap()
    }

    /// Gebauer–Möller update after adding polynomial `h` (index into `polys`).
    fn update(&mut self, h: usize) {
        let lh = self.lm(h).clone();
        let cands: Vec<(usize, Exponents)> = self
            .active
            .iter()
            .map(|&g| (g, lcm(&lh, self.lm(g))))
            .collect();

        // Criterion M/F on the new pairs.
        let mut kept: Vec<(usize, Exponents)> = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            let coprime = disjoint(&lh, self.lm(*g));
            let dominated = cands[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| divides(l2, l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        // Product criterion.
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !disjoint(&lh, self.lm(*g)))
            .map(|(g, l)| Pair { i: g, j: h, lcm: l })
            .collect();

        // Criterion B on the old pairs.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = polys[p.i].lead_monomial().unwrap();
            let lj = polys[p.j].lead_monomial().unwrap();
            !(divides(&lh, &p.lcm) && lcm(li, &lh) != p.lcm && lcm(&lh, lj) != p.lcm)
        });
        self.pairs.extend(new_pairs);

        let active: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&g| !divides(&lh, self.polys[g].lead_monomial().unwrap()))
            .collect();
        self.active = active;
        self.active.push(h);
    }

    fn basis(&self) -> Vec<&Poly> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by decreasing leading monomial.
pub(crate) fn reduced_groebner(ring: &Arc<Ring>, gens: &[Poly]) -> Vec<Poly> {
    let mut st = State {
        ring: ring.clone(),
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut input: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| ring.order().cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    for g in input {
        let h = normal_form(&g, &st.basis());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![st.ring.one()];
        }
        st.polys.push(h.monic());
        let idx = st.polys.len() - 1;
        st.update(idx);
    }

    let order = ring.order();
    while !st.pairs.is_empty() {
        // Normal selection: smallest lcm first.
        let k = (0..st.pairs.len())
            .min_by(|&x, &y| order.cmp(&st.pairs[x].lcm, &st.pairs[y].lcm))
            .unwrap();
        let pair = st.pairs.swap_remove(k);
        let s = s_poly(&st.polys[pair.i], &st.polys[pair.j]);
        let h = normal_form(&s, &st.basis());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![st.ring.one()];
        }
        st.polys.push(h.monic());
        let idx = st.polys.len() - 1;
        st.update(idx);
    }

    let minimal: Vec<Poly> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    let mut reduced: Vec<Poly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<&Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p)
                .collect();
            let lead = Poly::from_sorted_terms(ring, vec![minimal[k].terms()[0].clone()]);
            let tail = Poly::from_sorted_terms(ring, minimal[k].terms()[1..].to_vec());
            (&lead + &normal_form(&tail, &others)).monic()
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
    reduced
}

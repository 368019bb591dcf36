//! Word-sized arithmetic and subspace enumeration over `F_q`.

use crate::grassmann::PAIRS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fq {
    pub p: u64,
}

impl Fq {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        crate::algebra::pow_mod(a, self.p - 2, self.p)
    }

    pub fn from_i64(self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Row-reduces a `rows x cols` matrix in place and returns the pivot columns.
    pub fn rref(self, m: &mut [u64], rows: usize, cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = self.inv(m[r * cols + c]);
            for j in 0..cols {
                m[r * cols + j] = self.mul(m[r * cols + j], inv);
            }
            for i in 0..rows {
                let f = m[i * cols + c];
                if i != r && f != 0 {
                    for j in 0..cols {
                        m[i * cols + j] = self.sub(m[i * cols + j], self.mul(f, m[r * cols + j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(self, m: &[u64], rows: usize, cols: usize) -> usize {
        let mut a = m.to_vec();
        self.rref(&mut a, rows, cols).len()
    }

    /// Basis of `{x : M x = 0}` for a `rows x cols` matrix.
    pub fn kernel(self, m: &[u64], rows: usize, cols: usize) -> Vec<Vec<u64>> {
        let mut a = m.to_vec();
        let pivots = self.rref(&mut a, rows, cols);
        let mut out = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = self.neg(a[i * cols + free]);
            }
            out.push(x);
        }
        out
    }

    /// `A M A^T` for `A` of size `k x n` and symmetric `M` of size `n x n`.
    pub fn congruence(self, a: &[Vec<u64>], m: &[u64], n: usize) -> Vec<u64> {
        let k = a.len();
        let mut am = vec![0; k * n];
        for i in 0..k {
            for j in 0..n {
                let mut s = 0;
                for l in 0..n {
                    s += a[i][l] * m[l * n + j] % self.p;
                }
                am[i * n + j] = s % self.p;
            }
        }
        let mut out = vec![0; k * k];
        for i in 0..k {
            for j in i..k {
                let mut s = 0;
                for l in 0..n {
                    s += am[i * n + l] * a[j][l] % self.p;
                }
                out[i * k + j] = s % self.p;
                out[j * k + i] = out[i * k + j];
            }
        }
        out
    }

    /// Plücker coordinates of `x ∧ y` in `F_q^5`.
    pub fn wedge(self, x: &[u64], y: &[u64]) -> [u64; 10] {
        let mut out = [0; 10];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            out[k] = self.sub(self.mul(x[i], y[j]), self.mul(x[j], y[i]));
        }
        out
    }

    /// `(ℓ1, ℓ2) = (p12 - p03, p13 - p24)`.
    pub fn hyperplanes(self, c: &[u64; 10]) -> [u64; 2] {
        [self.sub(c[4], c[2]), self.sub(c[5], c[8])]
    }

    /// Linear combination `Σ c_i v_i`.
    pub fn combine(self, coeffs: &[u64], vs: &[Vec<u64>]) -> Vec<u64> {
        let n = vs[0].len();
        let mut out = vec![0; n];
        for (c, v) in coeffs.iter().zip(vs) {
            if *c == 0 {
                continue;
            }
            for j in 0..n {
                out[j] = (out[j] + c * v[j]) % self.p;
            }
        }
        out
    }
}

/// Reduced row-echelon representatives of all `k`-dimensional subspaces of `F_q^n`,
/// in a fixed order (pivot sets lexicographically, then free entries base-`q`).
pub(crate) fn grassmannian(k: usize, n: usize, q: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = pivots.clone();
                ((pivots[i] + 1)..n)
                    .filter(move |j| !pv.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for code in 0..total {
            let mut m = vec![vec![0; n]; k];
            for (i, &pc) in pivots.iter().enumerate() {
                m[i][pc] = 1;
            }
            let mut c = code;
            for &(i, j) in &free {
                m[i][j] = c % q;
                c /= q;
            }
            out.push(m);
        }
    }
    out
}

/// Normalized representatives of `P^{n-1}(F_q)`.
pub(crate) fn projective_points(n: usize, q: u64) -> Vec<Vec<u64>> {
    grassmannian(1, n, q).into_iter().map(|mut m| m.remove(0)).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

/// `|P^n(F_q)|`.
pub fn projective_count(n: u64, q: u64) -> u64 {
    gaussian_binomial(n + 1, 1, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes_match_gaussian_binomials() {
        for q in [2, 3] {
            for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5)] {
                assert_eq!(
                    grassmannian(k, n, q).len() as u64,
                    gaussian_binomial(n as u64, k as u64, q)
                );
            }
        }
        assert_eq!(projective_count(2, 5), 31);
    }

    #[test]
    fn kernel_and_rank() {
        let f = Fq { p: 7 };
        let m = [1, 2, 3, 2, 4, 6];
        assert_eq!(f.rank(&m, 2, 3), 1);
        let k = f.kernel(&m, 2, 3);
        assert_eq!(k.len(), 2);
        for x in k {
            assert_eq!((x[0] + 2 * x[1] + 3 * x[2]) % 7, 0);
        }
    }
}

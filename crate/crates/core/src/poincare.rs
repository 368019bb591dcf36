//! Virtual Poincaré polynomials in `t` with only even powers, and the blow-up
//! bookkeeping leading to the intersection Poincaré polynomial of `M(Y,2)`.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffcount::{
    census, default_mode, interpolate, line_census, projective_count, Census, CensusMode,
    CountPoly,
};

/// Coefficients of `t^0, t^2, t^4, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PoincarePoly {
    coeffs: Vec<i64>,
}

impl PoincarePoly {
    pub fn new(mut coeffs: Vec<i64>) -> PoincarePoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincarePoly { coeffs }
    }

    pub fn zero() -> PoincarePoly {
        PoincarePoly::default()
    }

    pub fn one() -> PoincarePoly {
        PoincarePoly::new(vec![1])
    }

    /// `t^2`.
    pub fn t2() -> PoincarePoly {
        PoincarePoly::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1).map(|d| 2 * d)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Value at `t^2 = q`.
    pub fn eval_q(&self, q: i64) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * q as i128 + c as i128)
    }

    pub fn scale(&self, k: i64) -> PoincarePoly {
        PoincarePoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl From<&CountPoly> for PoincarePoly {
    fn from(c: &CountPoly) -> PoincarePoly {
        PoincarePoly::new(c.coeffs().to_vec())
    }
}

impl Add for &PoincarePoly {
    type Output = PoincarePoly;

    fn add(self, o: &PoincarePoly) -> PoincarePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        PoincarePoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }
}

impl Sub for &PoincarePoly {
    type Output = PoincarePoly;

    fn sub(self, o: &PoincarePoly) -> PoincarePoly {
        self + &o.scale(-1)
    }
}

impl Mul for &PoincarePoly {
    type Output = PoincarePoly;

    fn mul(self, o: &PoincarePoly) -> PoincarePoly {
        if self.is_zero() || o.is_zero() {
            return PoincarePoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PoincarePoly::new(out)
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            let a = c.unsigned_abs();
            let body = match (i, a) {
                (0, _) => a.to_string(),
                (1, 1) => "t^2".into(),
                (_, 1) => format!("t^{}", 2 * i),
                _ => format!("{a}t^{}", 2 * i),
            };
            let sep = match (first, c < 0) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => "+",
                (false, true) => "-",
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for PoincarePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl FromStr for PoincarePoly {
    type Err = Error;

    /// Parses sums like `1+4t^2-t^4`; odd powers of `t` are rejected.
    fn from_str(s: &str) -> Result<PoincarePoly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1..]
                .find(['+', '-'])
                .map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let bad = || Error::Parse(format!("bad term `{term}`"));
            let (c, power) = match term.find('t') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
                Some(i) => {
                    let c = if i == 0 {
                        1
                    } else {
                        term[..i].trim_end_matches('*').parse::<i64>().map_err(|_| bad())?
                    };
                    let p = match &term[i + 1..] {
                        "" => 1,
                        e => e.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?,
                    };
                    (c, p)
                }
            };
            if power % 2 == 1 {
                return Err(Error::Parse(format!("odd power of t in `{term}`")));
            }
            let k = power / 2;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] += sign * c;
        }
        Ok(PoincarePoly::new(coeffs))
    }
}

/// `1 + t^2 + ... + t^{2n}`.
pub fn pp_projective(n: usize) -> PoincarePoly {
    PoincarePoly::new(vec![1; n + 1])
}

/// Blow-up of a smooth space along a smooth center of codimension `c`.
pub fn pp_blowup(px: &PoincarePoly, pz: &PoincarePoly, c: usize) -> Result<PoincarePoly> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("blow-up codimension {c} < 2")));
    }
    Ok(px + &(&(&pp_projective(c - 1) - &PoincarePoly::one()) * pz))
}

/// Expected intersection Poincaré polynomial of `M(Y,2)`.
pub const IP_TARGET: &str = "1+4t^2+10t^4+15t^6+15t^8+10t^10+4t^12+t^14";

pub fn ip_target() -> PoincarePoly {
    IP_TARGET.parse().expect("valid target")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComparisonStatus {
    Pass,
    Flagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainComparison {
    pub status: ComparisonStatus,
    pub p_h2: PoincarePoly,
    pub p_d: PoincarePoly,
    pub result: PoincarePoly,
    pub target: PoincarePoly,
    /// `result - target`.
    pub difference: PoincarePoly,
    pub palindromic: bool,
}

/// `P(H2) + (P(P^2) - 1) · P(D)`, compared with [`IP_TARGET`].
pub fn ip_stable_maps_chain(p_h2: &PoincarePoly, p_d: &PoincarePoly) -> (PoincarePoly, ChainComparison) {
    let result = pp_blowup(p_h2, p_d, 3).expect("codimension 3");
    let target = ip_target();
    let difference = &result - &target;
    let palindromic = result.is_palindromic();
    let status = if difference.is_zero() && palindromic {
        ComparisonStatus::Pass
    } else {
        ComparisonStatus::Flagged
    };
    (
        result.clone(),
        ChainComparison {
            status,
            p_h2: p_h2.clone(),
            p_d: p_d.clone(),
            result,
            target,
            difference,
            palindromic,
        },
    )
}

/// Point counts feeding the `H2(Y)` side at one prime.
#[derive(Clone, Debug, Serialize)]
pub struct H2Sample {
    pub q: u64,
    pub sy: u64,
    pub rank0: u64,
    pub rank0_sigma22: u64,
    pub n_sigma22: u64,
    /// `|S(Y)| + (|P^5| - 1)|P^1 ⊔ P^1| - (rank0_σ22 - n_σ22)|P^5|`.
    pub h2: i128,
}

impl H2Sample {
    pub fn from_census(c: &Census) -> H2Sample {
        let p5 = projective_count(5, c.q) as i128;
        let h2 = c.sy as i128 + (p5 - 1) * c.rank0 as i128
            - (c.rank0_sigma22 as i128 - c.n_sigma22() as i128) * p5;
        H2Sample {
            q: c.q,
            sy: c.sy,
            rank0: c.rank0,
            rank0_sigma22: c.rank0_sigma22,
            n_sigma22: c.n_sigma22(),
            h2,
        }
    }
}

/// Ways of counting `D(Y)` over `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DAccounting {
    /// `D̄(Y)`, blown up along the rank-zero pairs and contracted over `S`.
    BlowupContraction,
    /// `H1(Y)` plus a `P^1` of double structures over each non-free line.
    LineFibres,
}

impl DAccounting {
    pub const ALL: [DAccounting; 2] = [DAccounting::BlowupContraction, DAccounting::LineFibres];
}

#[derive(Clone, Debug, Serialize)]
pub struct DSample {
    pub q: u64,
    pub accounting: DAccounting,
    /// Counts the value was assembled from, by name.
    pub inputs: Vec<(String, u64)>,
    pub d: i128,
}

pub fn d_sample(q: u64, accounting: DAccounting) -> DSample {
    match accounting {
        DAccounting::BlowupContraction => {
            let c = census(q, default_mode(q));
            let p2 = projective_count(2, q) as i128;
            let d = c.dbar as i128 + (p2 - 1) * c.rank0 as i128
                - (c.rank0_sigma22 as i128 - c.n_sigma22() as i128) * p2;
            DSample {
                q,
                accounting,
                inputs: vec![
                    ("dbar".into(), c.dbar),
                    ("rank0".into(), c.rank0),
                    ("rank0_sigma22".into(), c.rank0_sigma22),
                    ("n_sigma22".into(), c.n_sigma22()),
                ],
                d,
            }
        }
        DAccounting::LineFibres => {
            let l = line_census(q);
            DSample {
                q,
                accounting,
                inputs: vec![("h1y".into(), l.lines), ("nonfree".into(), l.nonfree)],
                d: l.lines as i128 + q as i128 * l.nonfree as i128,
            }
        }
    }
}

pub fn h2_sample(q: u64) -> H2Sample {
    H2Sample::from_census(&census(q, CensusMode::Rank0Only))
}

#[derive(Clone, Debug, Serialize)]
pub struct DCandidate {
    pub accounting: DAccounting,
    pub samples: Vec<DSample>,
    pub p_d: Option<PoincarePoly>,
    pub error: Option<String>,
    pub comparison: Option<ChainComparison>,
}

/// The full count-driven chain: samples, fitted polynomials and comparisons for each accounting.
#[derive(Clone, Debug, Serialize)]
pub struct StableMapsChain {
    pub h2_samples: Vec<H2Sample>,
    pub p_h2: Option<PoincarePoly>,
    pub h2_error: Option<String>,
    pub candidates: Vec<DCandidate>,
}

impl StableMapsChain {
    /// Comparison of the primary accounting, if every step succeeded.
    pub fn primary(&self) -> Option<&ChainComparison> {
        self.candidates.first().and_then(|c| c.comparison.as_ref())
    }
}

/// Degree of `P(H2(Y))` in `q`.
pub const H2_DEGREE: usize = 7;
/// Degree of `P(D(Y))` in `q`.
pub const D_DEGREE: usize = 4;

pub fn run_stable_maps_chain(h2_primes: &[u64], d_primes: &[u64]) -> StableMapsChain {
    let h2_samples: Vec<H2Sample> = h2_primes.iter().map(|&q| h2_sample(q)).collect();
    let fit = interpolate(
        &h2_samples.iter().map(|s| (s.q, s.h2)).collect::<Vec<_>>(),
        H2_DEGREE,
    );
    let (p_h2, h2_error) = match fit {
        Ok(p) => (Some(PoincarePoly::from(&p)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let candidates = DAccounting::ALL
        .iter()
        .map(|&acc| {
            let samples: Vec<DSample> = d_primes.iter().map(|&q| d_sample(q, acc)).collect();
            let fit = interpolate(
                &samples.iter().map(|s| (s.q, s.d)).collect::<Vec<_>>(),
                D_DEGREE,
            );
            let (p_d, error) = match fit {
                Ok(p) => (Some(PoincarePoly::from(&p)), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let comparison = match (&p_h2, &p_d) {
                (Some(h), Some(d)) => Some(ip_stable_maps_chain(h, d).1),
                _ => None,
            };
            DCandidate {
                accounting: acc,
                samples,
                p_d,
                error,
                comparison,
            }
        })
        .collect();
    StableMapsChain {
        h2_samples,
        p_h2,
        h2_error,
        candidates,
    }
}

/// Odd primes in increasing order starting at 3.
pub fn odd_primes(n: usize) -> Vec<u64> {
    (3u64..)
        .step_by(2)
        .filter(|&p| (3..p).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .take(n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_and_products() {
        assert_eq!(pp_projective(2).to_string(), "1+t^2+t^4");
        let p1 = pp_projective(1);
        assert_eq!((&p1 * &p1).coeffs(), &[1, 2, 1]);
        assert_eq!(pp_blowup(&pp_projective(2), &PoincarePoly::one(), 2).unwrap().coeffs(), &[1, 2, 1]);
        assert!(pp_blowup(&p1, &p1, 1).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let t = ip_target();
        assert_eq!(t.coeffs(), &[1, 4, 10, 15, 15, 10, 4, 1]);
        assert_eq!(t.to_string().parse::<PoincarePoly>().unwrap(), t);
        assert!("1+t^3".parse::<PoincarePoly>().is_err());
        assert_eq!("2 - 3t^2".parse::<PoincarePoly>().unwrap().coeffs(), &[2, -3]);
    }

    #[test]
    fn chain_identity_and_flagging() {
        let p = ip_target();
        let (r, c) = ip_stable_maps_chain(&p, &PoincarePoly::zero());
        assert_eq!(r, p);
        assert_eq!(c.status, ComparisonStatus::Pass);
        let (_, c) = ip_stable_maps_chain(&(&p + &PoincarePoly::t2()), &PoincarePoly::zero());
        assert_eq!(c.status, ComparisonStatus::Flagged);
        assert_eq!(c.difference, PoincarePoly::t2());
    }

    #[test]
    fn primes() {
        assert_eq!(odd_primes(8), vec![3, 5, 7, 11, 13, 17, 19, 23]);
    }
}

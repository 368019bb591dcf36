//! Point counts over prime fields and recovery of counting polynomials.

mod census;
mod fq;
mod lines;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use census::{census, Census, CensusMode};
pub use fq::{gaussian_binomial, projective_count};
pub use lines::{count_lines_by_flags, count_y, line_census, LineCensus};

use crate::algebra::Field;
use crate::error::{Error, Result};
use fq::{projective_points, Fq};

/// Largest prime accepted by [`count`].
pub const MAX_PRIME: u64 = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarietyId {
    Y,
    H1Y,
    Cv,
    CvDual,
    Q3,
    SingQ3,
    Dbar,
    SY,
    Rank0Locus,
    /// Non-free lines.
    Nonfree,
}

impl VarietyId {
    pub const ALL: [VarietyId; 10] = [
        VarietyId::Y,
        VarietyId::H1Y,
        VarietyId::Cv,
        VarietyId::CvDual,
        VarietyId::Q3,
        VarietyId::SingQ3,
        VarietyId::Dbar,
        VarietyId::SY,
        VarietyId::Rank0Locus,
        VarietyId::Nonfree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VarietyId::Y => "y",
            VarietyId::H1Y => "h1y",
            VarietyId::Cv => "cv",
            VarietyId::CvDual => "cvdual",
            VarietyId::Q3 => "q3",
            VarietyId::SingQ3 => "singq3",
            VarietyId::Dbar => "dbar",
            VarietyId::SY => "sy",
            VarietyId::Rank0Locus => "rank0locus",
            VarietyId::Nonfree => "nonfree",
        }
    }

    /// Whether the predicate depends on ranks of quadratic forms.
    pub fn needs_odd_q(self) -> bool {
        matches!(
            self,
            VarietyId::Q3
                | VarietyId::SingQ3
                | VarietyId::Dbar
                | VarietyId::Rank0Locus
                | VarietyId::Nonfree
        )
    }
}

impl fmt::Display for VarietyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VarietyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<VarietyId> {
        let lower = s.to_ascii_lowercase().replace(['_', '-'], "");
        VarietyId::ALL
            .into_iter()
            .find(|v| v.name() == lower)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variety `{s}`")))
    }
}

fn check_prime(v: VarietyId, q: u64) -> Result<()> {
    Field::prime(q)?;
    if q > MAX_PRIME {
        return Err(Error::InvalidPrime(q));
    }
    if q == 2 && v.needs_odd_q() {
        return Err(Error::RankNeedsOddPrime);
    }
    Ok(())
}

/// Census mode used by [`count`]: every pair is visited up to `q = 7`.
pub fn default_mode(q: u64) -> CensusMode {
    if q <= 7 {
        CensusMode::Exhaustive
    } else {
        CensusMode::Pruned
    }
}

/// Number of `F_q`-points.
pub fn count(v: VarietyId, q: u64) -> Result<u64> {
    check_prime(v, q)?;
    let f = Fq { p: q };
    Ok(match v {
        VarietyId::Y => count_y(q),
        VarietyId::H1Y => line_census(q).lines,
        VarietyId::Nonfree => line_census(q).nonfree,
        VarietyId::Cv => projective_points(5, q)
            .iter()
            .filter(|a| a[2] == 0 && a[3] == 0 && f.add(f.mul(a[0], a[4]), f.mul(a[1], a[1])) == 0)
            .count() as u64,
        VarietyId::CvDual => projective_points(3, q)
            .iter()
            .filter(|c| f.add(f.mul(c[1], c[1]), f.mul(4 % q, f.mul(c[0], c[2]))) == 0)
            .count() as u64,
        VarietyId::SY => census(q, CensusMode::Pruned).sy,
        VarietyId::Q3 | VarietyId::SingQ3 | VarietyId::Dbar | VarietyId::Rank0Locus => {
            let c = census(q, default_mode(q));
            match v {
                VarietyId::Q3 => c.q3,
                VarietyId::SingQ3 => c.sing_q3,
                VarietyId::Dbar => c.dbar,
                _ => c.rank0,
            }
        }
    })
}

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountPoly {
    coeffs: Vec<i64>,
}

impl CountPoly {
    pub fn new(mut coeffs: Vec<i64>) -> CountPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        CountPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: i64) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * q as i128 + c as i128)
    }
}

impl fmt::Display for CountPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            let a = c.unsigned_abs();
            let body = match (i, a) {
                (0, _) => a.to_string(),
                (1, 1) => "q".into(),
                (1, _) => format!("{a}q"),
                (_, 1) => format!("q^{i}"),
                _ => format!("{a}q^{i}"),
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Fits a polynomial of the given degree through `(q, count)` samples.
/// Extra samples beyond `degree + 1` must lie on the fitted curve.
pub fn interpolate(samples: &[(u64, i128)], degree: usize) -> Result<CountPoly> {
    let mut qs: Vec<u64> = samples.iter().map(|s| s.0).collect();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() != samples.len() {
        return Err(Error::InvalidInput("interpolation points must be distinct".into()));
    }
    if samples.len() < degree + 1 {
        return Err(Error::Underdetermined {
            samples: samples.len(),
            degree,
        });
    }
    let pts = &samples[..degree + 1];
    // Lagrange basis expanded into monomial coefficients.
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    for (i, &(xi, yi)) in pts.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(xj));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi)) - xj;
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += b * &scale;
        }
    }
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if !c.is_integer() {
            return Err(Error::NonIntegerInterpolation(
                coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
            ));
        }
        ints.push(
            c.to_integer()
                .to_i64()
                .ok_or_else(|| Error::Anomaly("coefficient overflow".into()))?,
        );
    }
    let poly = CountPoly::new(ints);
    for &(x, y) in &samples[degree + 1..] {
        if poly.eval(x as i64) != y {
            return Err(Error::NotPolynomialCount(degree));
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count(VarietyId::Cv, 3).unwrap(), 4);
        assert_eq!(count(VarietyId::CvDual, 5).unwrap(), 6);
        assert_eq!(count(VarietyId::Q3, 2), Err(Error::RankNeedsOddPrime));
        assert!(count(VarietyId::Y, 4).is_err());
    }

    #[test]
    fn plane_counts_interpolate() {
        let p = interpolate(&[(2, 7), (3, 13), (5, 31)], 2).unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 1]);
        assert_eq!(p.to_string(), "1 + q + q^2");
        assert!(matches!(
            interpolate(&[(2, 7)], 2),
            Err(Error::Underdetermined { .. })
        ));
        assert!(matches!(
            interpolate(&[(2, 1), (3, 2), (5, 6)], 2),
            Err(Error::NonIntegerInterpolation(_))
        ));
    }
}

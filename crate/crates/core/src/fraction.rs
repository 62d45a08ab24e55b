//! Exact non-negative fractions for thresholds and reported densities.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(Ratio<u128>);

impl Fraction {
    /// Reduced `num / den`. Panics if `den == 0`.
    pub fn new(num: u128, den: u128) -> Self {
        Fraction(Ratio::new(num, den))
    }

    pub fn numer(&self) -> u128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u128 {
        *self.0.denom()
    }

    /// `self * scale <= value`, exactly.
    pub fn scaled_le(&self, scale: u128, value: u128) -> bool {
        self.numer() * scale <= value * self.denom()
    }
}

/// Always `p/q`, even when `q = 1`.
impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Accepts `p/q`, integers and finite decimals such as `0.25`.
impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Invalid(format!("`{s}` is not a non-negative fraction"));
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: u128 = p.trim().parse().map_err(|_| bad())?;
            let q: u128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            return Ok(Fraction::new(p, q));
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 30 {
            return Err(bad());
        }
        let den = 10u128.pow(frac.len() as u32);
        let int: u128 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u128 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        Ok(Fraction::new(int * den + frac, den))
    }
}

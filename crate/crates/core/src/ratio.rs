//! Exact non-negative rationals used to carry every indicator value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatioError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("malformed ratio {0:?}")]
    Malformed(String),
}

/// A non-negative fraction kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u128,
    den: u128,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    pub fn new(num: u128, den: u128) -> Result<Self, RatioError> {
        if den == 0 {
            return Err(RatioError::ZeroDenominator);
        }
        let g = gcd(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn from_integer(value: u128) -> Self {
        Ratio { num: value, den: 1 }
    }

    pub fn numer(&self) -> u128 {
        self.num
    }

    pub fn denom(&self) -> u128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn checked_add(&self, other: &Ratio) -> Result<Ratio, RatioError> {
        let g = gcd(self.den, other.den);
        let lhs = self
            .num
            .checked_mul(other.den / g)
            .ok_or(RatioError::Overflow)?;
        let rhs = other
            .num
            .checked_mul(self.den / g)
            .ok_or(RatioError::Overflow)?;
        let num = lhs.checked_add(rhs).ok_or(RatioError::Overflow)?;
        let den = (self.den / g)
            .checked_mul(other.den)
            .ok_or(RatioError::Overflow)?;
        Ratio::new(num, den)
    }

    pub fn checked_mul(&self, other: &Ratio) -> Result<Ratio, RatioError> {
        // Cross-reduce first so intermediate products stay as small as possible.
        let g1 = gcd(self.num, other.den);
        let g2 = gcd(other.num, self.den);
        let num = (self.num / g1)
            .checked_mul(other.num / g2)
            .ok_or(RatioError::Overflow)?;
        let den = (self.den / g2)
            .checked_mul(other.den / g1)
            .ok_or(RatioError::Overflow)?;
        Ratio::new(num, den)
    }

    /// Divides by a positive integer.
    pub fn checked_div_int(&self, divisor: u128) -> Result<Ratio, RatioError> {
        if divisor == 0 {
            return Err(RatioError::ZeroDenominator);
        }
        let g = gcd(self.num, divisor);
        let den = self
            .den
            .checked_mul(divisor / g)
            .ok_or(RatioError::Overflow)?;
        Ratio::new(self.num / g, den)
    }

    /// Renders the value with `places` fractional digits, rounding half up.
    pub fn to_decimal(&self, places: u32) -> String {
        let scale = BigUint::from(10u32).pow(places);
        let scaled = BigUint::from(self.num) * &scale;
        let den = BigUint::from(self.den);
        let mut q = &scaled / &den;
        let r = &scaled % &den;
        if r * 2u32 >= den {
            q += 1u32;
        }
        let digits = q.to_str_radix(10);
        let places = places as usize;
        if places == 0 {
            return digits;
        }
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        format!("{int_part}.{frac_part}")
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Ratio {
    fn default() -> Self {
        Ratio::ZERO
    }
}

/// Compares `a/b` with `c/d` exactly without forming cross products.
///
/// Walks the continued-fraction expansions of both values, so it never
/// overflows and works on unreduced fractions. Both denominators must be
/// non-zero.
pub fn cmp_fractions(mut a: u128, mut b: u128, mut c: u128, mut d: u128) -> Ordering {
    debug_assert!(b != 0 && d != 0);
    // `flip` tracks whether the comparison direction has been inverted by
    // taking reciprocals an odd number of times.
    let mut flip = false;
    loop {
        let (q1, r1) = (a / b, a % b);
        let (q2, r2) = (c / d, c % d);
        let ord = match q1.cmp(&q2) {
            Ordering::Equal => match (r1 == 0, r2 == 0) {
                (true, true) => Ordering::Equal,
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                (false, false) => {
                    // r1/b vs r2/d is the reverse of b/r1 vs d/r2
                    (a, b, c, d) = (b, r1, d, r2);
                    flip = !flip;
                    continue;
                }
            },
            other => other,
        };
        return if flip { ord.reverse() } else { ord };
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_fractions(self.num, self.den, other.num, other.den)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Always `num/den`, including integers (`3/1`).
impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = RatioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || RatioError::Malformed(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse().map_err(|_| malformed())?;
                let d = d.trim().parse().map_err(|_| malformed())?;
                Ratio::new(n, d)
            }
            None => s
                .trim()
                .parse()
                .map(Ratio::from_integer)
                .map_err(|_| malformed()),
        }
    }
}

/// Serialized as the `num/den` string.
impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

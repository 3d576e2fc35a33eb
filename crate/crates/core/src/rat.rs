//! Exact scalar arithmetic: arbitrary-precision rationals plus one point at
//! infinity. Coordinates, grades, costs and distances all use [`ExtRat`];
//! nothing in this crate touches floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Exact rational number.
pub type Rat = BigRational;

/// A rational extended with a single positive infinity.
///
/// `Infinity` compares greater than every finite value. The distance between
/// two infinite values is zero (they are the same point); the distance between
/// a finite value and infinity is infinite.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(Rat),
    Infinity,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRat::Finite(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtRat::Finite(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(q) => Some(q),
            ExtRat::Infinity => None,
        }
    }

    /// `self + other`; infinity absorbs.
    pub fn add(&self, other: &ExtRat) -> ExtRat {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }

    /// Distance `|self - other|`. Two infinities are the same point, so their
    /// distance is zero; a finite point is infinitely far from infinity.
    pub fn dist(&self, other: &ExtRat) -> ExtRat {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite((a - b).abs()),
            (ExtRat::Infinity, ExtRat::Infinity) => ExtRat::zero(),
            _ => ExtRat::Infinity,
        }
    }

    /// Midpoint `(self + other) / 2`; infinite if either endpoint is.
    pub fn midpoint(&self, other: &ExtRat) -> ExtRat {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => {
                ExtRat::Finite((a + b) / Rat::from_integer(BigInt::from(2)))
            }
            _ => ExtRat::Infinity,
        }
    }

    /// Convex combination `(1-t)*self + t*other` for `t` in `[0, 1]`.
    ///
    /// The endpoints are returned exactly at `t = 0` and `t = 1`, so a scalar
    /// never multiplies an infinity; for interior `t` the result is infinite
    /// as soon as either endpoint is.
    pub fn convex(&self, other: &ExtRat, t: &Rat) -> ExtRat {
        if t.is_zero() {
            return self.clone();
        }
        if t.is_one() {
            return other.clone();
        }
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => {
                let one = Rat::one();
                ExtRat::Finite(a * (&one - t) + b * t)
            }
            _ => ExtRat::Infinity,
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            (ExtRat::Finite(_), ExtRat::Infinity) => Ordering::Less,
            (ExtRat::Infinity, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Infinity, ExtRat::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            ExtRat::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse error for scalar tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadScalar(pub String);

impl fmt::Display for BadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad scalar token {:?}", self.0)
    }
}

impl std::error::Error for BadScalar {}

impl FromStr for ExtRat {
    type Err = BadScalar;

    /// Accepts `inf`, integers, `p/q` fractions, and decimal literals like
    /// `2.5` (converted exactly).
    fn from_str(s: &str) -> Result<Self, BadScalar> {
        let s = s.trim();
        if s == "inf" || s == "+inf" {
            return Ok(ExtRat::Infinity);
        }
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim()).map_err(|_| BadScalar(s.to_string()))?;
            let d = BigInt::from_str(den.trim()).map_err(|_| BadScalar(s.to_string()))?;
            if d.is_zero() {
                return Err(BadScalar(s.to_string()));
            }
            return Ok(ExtRat::Finite(Rat::new(n, d)));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            let neg = whole.starts_with('-');
            let w = if whole.is_empty() || whole == "-" {
                BigInt::zero()
            } else {
                BigInt::from_str(whole).map_err(|_| BadScalar(s.to_string()))?
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(BadScalar(s.to_string()));
            }
            let f = BigInt::from_str(frac).map_err(|_| BadScalar(s.to_string()))?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let mag = w.magnitude().clone() * scale.magnitude() + f.magnitude();
            let mut q = Rat::new(BigInt::from(mag), scale);
            if neg {
                q = -q;
            }
            return Ok(ExtRat::Finite(q));
        }
        BigInt::from_str(s)
            .map(|n| ExtRat::Finite(Rat::from_integer(n)))
            .map_err(|_| BadScalar(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(q("3").to_string(), "3");
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-2.5").to_string(), "-5/2");
        assert_eq!(q("0.25").to_string(), "1/4");
        assert_eq!(q("inf").to_string(), "inf");
        assert!("1/0".parse::<ExtRat>().is_err());
        assert!("abc".parse::<ExtRat>().is_err());
        assert!("1.2.3".parse::<ExtRat>().is_err());
    }

    #[test]
    fn order_and_distance() {
        assert!(q("3/2") < q("2"));
        assert!(q("100") < q("inf"));
        assert_eq!(q("inf").dist(&q("inf")), q("0"));
        assert_eq!(q("1").dist(&q("inf")), q("inf"));
        assert_eq!(q("1/2").dist(&q("2")), q("3/2"));
    }

    #[test]
    fn convex_endpoints_exact() {
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(q("0").convex(&q("2"), &half), q("1"));
        assert_eq!(q("inf").convex(&q("inf"), &Rat::zero()), q("inf"));
        // t = 0 returns the left endpoint even when the right is infinite.
        assert_eq!(q("1").convex(&q("inf"), &Rat::zero()), q("1"));
        assert_eq!(q("1").convex(&q("inf"), &half), q("inf"));
    }

    #[test]
    fn midpoint_exact() {
        assert_eq!(q("1").midpoint(&q("4")), q("5/2"));
        assert_eq!(q("1").midpoint(&q("inf")), q("inf"));
    }
}

//! Exact coordinates: arbitrary-precision rationals extended with the two
//! symbolic infinities. Infinities exist only so the exterior boxes can be
//! represented; they are compared and intersected, never added or multiplied,
//! and they are never serialized.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number (always kept reduced with a positive denominator
/// by `num-rational`).
pub type Rat = BigRational;

/// A coordinate value on the extended real line.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coord {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Coord {
    pub fn int(n: i64) -> Self {
        Coord::Finite(Rat::from_integer(BigInt::from(n)))
    }

    /// Finite rational p/q. Panics on q == 0; intended for literals.
    pub fn rat(p: i64, q: i64) -> Self {
        Coord::Finite(Rat::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Coord::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Coord::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn finite(&self) -> Result<&Rat> {
        self.as_finite()
            .ok_or_else(|| Error::Usage("expected a finite coordinate".into()))
    }

    pub fn min(a: &Coord, b: &Coord) -> Coord {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Coord, b: &Coord) -> Coord {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        use Coord::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl From<Rat> for Coord {
    fn from(r: Rat) -> Self {
        Coord::Finite(r)
    }
}

/// Renders a rational in the external literal form: "p" when integral,
/// "p/q" otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the external rational literal format "p" or "p/q" (q > 0 after
/// canonicalization; "p/-q" is rejected).
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        None => {
            let p = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
        Some((ps, qs)) => {
            let p = BigInt::from_str(ps).map_err(|_| bad())?;
            let q = BigInt::from_str(qs).map_err(|_| bad())?;
            if !q.is_positive() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::NegInf => write!(f, "-inf"),
            Coord::PosInf => write!(f, "+inf"),
            Coord::Finite(r) => write!(f, "{}", rat_to_string(r)),
        }
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Coord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Coord::Finite(rat_from_str(s)?))
    }
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order_with_infinities() {
        let q = Coord::rat(-7, 3);
        assert!(Coord::NegInf < q);
        assert!(q < Coord::PosInf);
        assert!(Coord::NegInf < Coord::PosInf);
        assert_eq!(Coord::rat(2, 4), Coord::rat(1, 2));
    }

    #[test]
    fn literal_round_trip() {
        for s in ["0", "-1", "1/2", "-355/113", "65536"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_to_string(&rat_from_str("2/4").unwrap()), "1/2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("1/-2").is_err());
        assert!(rat_from_str("a").is_err());
        assert!(rat_from_str("1.5").is_err());
    }
}

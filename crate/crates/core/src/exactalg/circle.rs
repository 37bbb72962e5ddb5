use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::Scalar;
use super::ZModule;
use crate::error::{Error, Result};

/// An element of Q/Z, the torsion subgroup of the circle group.
///
/// Stored reduced with `0 <= num < den` and `gcd(num, den) = 1`; zero is `0/1`.
/// Arithmetic panics rather than wrap if a denominator leaves the `i64` range.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CircleValue {
    num: i64,
    den: i64,
}

impl CircleValue {
    pub const ZERO: CircleValue = CircleValue { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::Parse(format!("denominator {den} must be positive")));
        }
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        Ok(Self { num: n.rem_euclid(d), den: d })
    }

    pub fn from_i128(num: i128, den: i128) -> Self {
        assert!(den > 0, "positive denominator");
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        let n = n.rem_euclid(d);
        Self {
            num: i64::try_from(n).expect("circle numerator exceeds i64"),
            den: i64::try_from(d).expect("circle denominator exceeds i64"),
        }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Order of the element in Q/Z, which equals the reduced denominator.
    pub fn order(&self) -> i64 {
        self.den
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::from_i128(self.num as i128 * (k.rem_euclid(self.den)) as i128, self.den as i128)
    }
}

impl Add for CircleValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let l = (self.den as i128).lcm(&(rhs.den as i128));
        let a = self.num as i128 * (l / self.den as i128);
        let b = rhs.num as i128 * (l / rhs.den as i128);
        Self::from_i128(a + b, l)
    }
}

impl Neg for CircleValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_i128(-(self.num as i128), self.den as i128)
    }
}

impl Sub for CircleValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl std::iter::Sum for CircleValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CircleValue {
    type Err = Error;

    /// Accepts `p/q` or an integer `p` (read as `p/1 = 0`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad fraction {s:?}"));
        match s.trim().split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q)
            }
            None => {
                let p: i64 = s.trim().parse().map_err(|_| bad())?;
                Self::new(p, 1)
            }
        }
    }
}

impl Serialize for CircleValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CircleValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<T: Scalar> ZModule<T> for CircleValue {
    fn zero() -> Self {
        Self::ZERO
    }

    fn add_m(&self, other: &Self) -> Result<Self> {
        Ok(*self + *other)
    }

    fn scale(&self, c: &T) -> Result<Self> {
        Ok(self.mul_int(c.rem_i64(self.den)))
    }

    fn neg_m(&self) -> Result<Self> {
        Ok(-*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_and_printing() {
        assert_eq!(CircleValue::new(3, 6).unwrap().to_string(), "1/2");
        assert_eq!(CircleValue::new(-1, 4).unwrap().to_string(), "3/4");
        assert_eq!(CircleValue::new(5, 5).unwrap(), CircleValue::ZERO);
        assert_eq!(CircleValue::ZERO.to_string(), "0/1");
        assert!(CircleValue::new(1, 0).is_err());
        assert_eq!("2/4".parse::<CircleValue>().unwrap().to_string(), "1/2");
    }

    #[test]
    fn addition_is_mod_one() {
        let h = CircleValue::new(1, 2).unwrap();
        assert_eq!(h + h, CircleValue::ZERO);
        let t = CircleValue::new(1, 3).unwrap();
        assert_eq!((h + t).to_string(), "5/6");
        assert_eq!(t.mul_int(-1).to_string(), "2/3");
    }

    proptest! {
        #[test]
        fn every_element_has_finite_order(p in -1000i64..1000, q in 1i64..200) {
            let x = CircleValue::new(p, q).unwrap();
            prop_assert!(x.numerator() >= 0 && x.numerator() < x.denominator());
            prop_assert_eq!(x.numerator().gcd(&x.denominator()), 1);
            prop_assert!(x.mul_int(x.order()).is_zero());
            prop_assert_eq!(x + (-x), CircleValue::ZERO);
        }

        #[test]
        fn print_parse_round_trip(p in -1000i64..1000, q in 1i64..200) {
            let x = CircleValue::new(p, q).unwrap();
            prop_assert_eq!(x.to_string().parse::<CircleValue>().unwrap(), x);
        }
    }
}

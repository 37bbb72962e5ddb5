use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact integer ring used for matrix entries.
///
/// Every arithmetic step goes through the checked variants, so a fixed-width
/// instantiation reports [`Error::Overflow`] instead of wrapping. `BigInt`
/// never overflows.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromStr
    + Hash
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn add_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }

    fn sub_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow)
    }

    fn mul_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }

    fn neg_c(&self) -> Result<Self>;

    fn abs_c(&self) -> Result<Self> {
        if self.is_negative() {
            self.neg_c()
        } else {
            Ok(self.clone())
        }
    }

    /// Quotient rounded toward zero. Never overflows except `MIN / -1`.
    fn quot_c(&self, rhs: &Self) -> Result<Self> {
        if *rhs == -Self::one() {
            return self.neg_c();
        }
        let (q, _) = self.div_rem(rhs);
        Ok(q)
    }

    fn from_i64_c(v: i64) -> Result<Self> {
        Self::from_i64(v).ok_or(Error::Overflow)
    }

    fn to_bigint(&self) -> BigInt;

    fn from_bigint(v: &BigInt) -> Result<Self>;

    /// Nonnegative residue of `self` modulo a positive `m`.
    fn rem_i64(&self, m: i64) -> i64 {
        let mm = Self::from_i64(m).expect("modulus representable");
        self.mod_floor(&mm).to_i64().expect("residue fits in i64")
    }
}

impl Scalar for i64 {
    fn neg_c(&self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Result<Self> {
        v.to_i64().ok_or(Error::Overflow)
    }
}

impl Scalar for i128 {
    fn neg_c(&self) -> Result<Self> {
        self.checked_neg().ok_or(Error::Overflow)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Result<Self> {
        v.to_i128().ok_or(Error::Overflow)
    }
}

impl Scalar for BigInt {
    fn neg_c(&self) -> Result<Self> {
        Ok(-self)
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(v: &BigInt) -> Result<Self> {
        Ok(v.clone())
    }
}

/// Runs `f` over `i64` and repeats it over `BigInt` when the fixed-width run overflowed.
pub fn with_overflow_fallback<R>(
    small: impl FnOnce() -> Result<R>,
    big: impl FnOnce() -> Result<R>,
) -> Result<R> {
    match small() {
        Err(Error::Overflow) => big(),
        other => other,
    }
}

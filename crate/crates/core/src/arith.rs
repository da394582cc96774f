//! Exact integer and rational arithmetic.
//!
//! Every quantity in the crate is either an `i64` or a [`Rational`] backed by
//! `i128`. Overflow is always detected: the `checked_*` methods return
//! [`Error::Overflow`], and the operator impls panic instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Smallest nonnegative residue of `j` modulo `r`, using floor division.
///
/// `smallest_residue(-1, 5) == 4`.
pub fn smallest_residue(j: i64, r: i64) -> Result<i64> {
    if r <= 0 {
        return Err(Error::NonPositiveModulus(r));
    }
    Ok(j.rem_euclid(r))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

/// Least common multiple of two positive integers.
pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .map(i64::abs)
        .ok_or(Error::Overflow)
}

/// Least positive inverse of `a` modulo `r`, if it exists. Modulo 1 the answer is 1.
pub fn mod_inverse(a: i64, r: i64) -> Option<i64> {
    if r <= 0 {
        return None;
    }
    if r == 1 {
        return Some(1);
    }
    let (mut old_r, mut cur_r) = (a.rem_euclid(r) as i128, r as i128);
    let (mut old_s, mut cur_s) = (1i128, 0i128);
    while cur_r != 0 {
        let q = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - q * cur_r);
        (old_s, cur_s) = (cur_s, old_s - q * cur_s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(r as i128) as i64)
}

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd_i128(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(Error::Overflow)?;
            den = den.checked_neg().ok_or(Error::Overflow)?;
        }
        Ok(Rational { num, den })
    }

    pub fn integer(n: i64) -> Self {
        Rational {
            num: n as i128,
            den: 1,
        }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    /// The value as an `i64` when it is an integer in range.
    pub fn to_integer(&self) -> Option<i64> {
        if self.den == 1 {
            i64::try_from(self.num).ok()
        } else {
            None
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let g = gcd_i128(self.den, rhs.den);
        let l = (self.den / g).checked_mul(rhs.den).ok_or(Error::Overflow)?;
        let a = self.num.checked_mul(l / self.den).ok_or(Error::Overflow)?;
        let b = rhs.num.checked_mul(l / rhs.den).ok_or(Error::Overflow)?;
        Rational::new(a.checked_add(b).ok_or(Error::Overflow)?, l)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Rational {
            num: self.num.checked_neg().ok_or(Error::Overflow)?,
            den: self.den,
        })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        // cross-reduce first to keep intermediates small
        let g1 = gcd_i128(self.num, rhs.den).max(1);
        let g2 = gcd_i128(rhs.num, self.den).max(1);
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .ok_or(Error::Overflow)?;
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .ok_or(Error::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.num == 0 {
            return Err(Error::ZeroDenominator);
        }
        self.checked_mul(Rational::new(rhs.den, rhs.num)?)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Rational {
            type Output = Rational;

            fn $method(self, rhs: Rational) -> Rational {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("rational {}: {e}", stringify!($method)),
                }
            }
        }

        impl $trait<i64> for Rational {
            type Output = Rational;

            fn $method(self, rhs: i64) -> Rational {
                $trait::$method(self, Rational::integer(rhs))
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        self.checked_neg().expect("rational negation overflow")
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        // denominators are positive, so cross-multiplication preserves order
        let lhs = self.num.checked_mul(other.den);
        let rhs = other.num.checked_mul(self.den);
        match (lhs, rhs) {
            (Some(l), Some(r)) => l.cmp(&r),
            _ => (*self - *other).num.cmp(&0),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i128 = p.trim().parse().map_err(|_| bad())?;
                let q: i128 = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational {
                num: s.parse().map_err(|_| bad())?,
                den: 1,
            }),
        }
    }
}

/// Serialized as a `"p/q"` string, including integers (`"2/1"`).
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}/{}", self.num, self.den))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

//! Singular Riemann-Roch contributions of terminal cyclic quotient points and
//! the numerical identities they impose on a divisorial contraction to a
//! smooth point.
//!
//! A contraction with discrepancy `a` carries a basket of fictitious
//! singularities `(r, v)`. The basket alone determines `a E^3`, the
//! colengths of the valuation ideals up to `i = a`, and the dimension of the
//! linear part of the second valuation ideal.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{gcd, lcm, smallest_residue, Rational};
use crate::error::{Error, Result};

/// A terminal cyclic quotient singularity of type `1/r(1, -1, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientSingularity {
    pub r: i64,
    pub b: i64,
}

impl QuotientSingularity {
    /// `b` is reduced modulo `r`; it must be coprime to `r`.
    pub fn new(r: i64, b: i64) -> Result<Self> {
        if r < 2 {
            return Err(Error::IndexTooSmall(r));
        }
        let b = smallest_residue(b, r)?;
        if gcd(b, r) != 1 {
            return Err(Error::NotCoprime {
                what: "quotient weight",
                value: b,
                modulus: r,
            });
        }
        Ok(QuotientSingularity { r, b })
    }

    /// Contribution of this point to `chi(O(D))` when `D` is locally
    /// `i_bar` times the canonical class.
    ///
    /// Depends only on `i_bar mod r` and vanishes when `r | i_bar`.
    pub fn contribution(&self, i_bar: i64) -> Rational {
        let r = self.r;
        let i = i_bar.rem_euclid(r);
        let head = Rational::new(-(i as i128) * (r as i128 * r as i128 - 1), 12 * r as i128)
            .expect("r >= 2");
        let tail: Rational = (1..i)
            .map(|j| {
                let jb = (j * self.b).rem_euclid(r);
                Rational::new((jb * (r - jb)) as i128, 2 * r as i128).expect("r >= 2")
            })
            .sum();
        head + tail
    }
}

/// `c_Q(i_bar)` for a point of type `1/r(1, -1, b)`.
pub fn contribution(q: QuotientSingularity, i_bar: i64) -> Rational {
    q.contribution(i_bar)
}

/// `rbar(r - rbar) / 2r` with `rbar` the residue of `k` modulo `r`.
fn residue_product(k: i64, r: i64) -> Rational {
    let k = k.rem_euclid(r);
    Rational::new((k * (r - k)) as i128, 2 * r as i128).expect("r >= 2")
}

/// One fictitious singularity `(r, v)` of a basket.
///
/// Equality, ordering and every formula use the canonical `v <= r - v`; the
/// value given on input is kept for display.
#[derive(Debug, Clone, Copy)]
pub struct BasketEntry {
    r: i64,
    v: i64,
    v_input: i64,
}

impl BasketEntry {
    pub fn new(r: i64, v: i64) -> Result<Self> {
        if r < 2 || v <= 0 || v >= r || gcd(v, r) != 1 {
            return Err(Error::InvalidEntry { r, v });
        }
        Ok(BasketEntry {
            r,
            v: v.min(r - v),
            v_input: v,
        })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// Canonical `min(v, r - v)`.
    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn v_input(&self) -> i64 {
        self.v_input
    }

    fn key(&self) -> (i64, i64) {
        (self.r, self.v)
    }
}

impl PartialEq for BasketEntry {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for BasketEntry {}

impl std::hash::Hash for BasketEntry {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for BasketEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasketEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for BasketEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.v_input)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    r: i64,
    v: i64,
}

impl Serialize for BasketEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        EntryRepr {
            r: self.r,
            v: self.v_input,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BasketEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = EntryRepr::deserialize(deserializer)?;
        BasketEntry::new(repr.r, repr.v).map_err(serde::de::Error::custom)
    }
}

/// A multiset of fictitious singularities, kept sorted by `(r, v)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<BasketEntry>", into = "Vec<BasketEntry>")]
pub struct Basket {
    entries: Vec<BasketEntry>,
}

impl TryFrom<Vec<BasketEntry>> for Basket {
    type Error = Error;

    fn try_from(entries: Vec<BasketEntry>) -> Result<Self> {
        Ok(Basket::new(entries))
    }
}

impl From<Basket> for Vec<BasketEntry> {
    fn from(b: Basket) -> Self {
        b.entries
    }
}

impl Basket {
    pub fn new(mut entries: Vec<BasketEntry>) -> Self {
        entries.sort();
        Basket { entries }
    }

    pub fn empty() -> Self {
        Basket::default()
    }

    /// Builds a basket from `(r, v)` pairs, validating each entry.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(r, v)| BasketEntry::new(r, v))
            .collect::<Result<Vec<_>>>()
            .map(Basket::new)
    }

    pub fn entries(&self) -> &[BasketEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Global index: lcm of the entry indices, 1 for the empty basket.
    pub fn index(&self) -> Result<i64> {
        self.entries.iter().try_fold(1, |acc, e| lcm(acc, e.r))
    }

    /// Canonical `(r, v)` pairs.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.entries.iter().map(|e| (e.r, e.v)).collect()
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Basket {
    type Err = Error;

    /// Parses `"(r1,v1),(r2,v2),..."`, optionally wrapped in `[]` or `{}`.
    /// An empty string (or `[]`, `{}`) is the empty basket.
    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseBasket {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| compact.strip_prefix('{').and_then(|s| s.strip_suffix('}')))
            .unwrap_or(&compact);
        let mut entries = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| fail("expected '('"))?;
            let close = inner.find(')').ok_or_else(|| fail("missing ')'"))?;
            let (r, v) = inner[..close]
                .split_once(',')
                .ok_or_else(|| fail("entry must be (r,v)"))?;
            let r: i64 = r.parse().map_err(|_| fail("index is not an integer"))?;
            let v: i64 = v.parse().map_err(|_| fail("weight is not an integer"))?;
            entries.push(BasketEntry::new(r, v)?);
            rest = &inner[close + 1..];
            if let Some(next) = rest.strip_prefix(',') {
                if next.is_empty() {
                    return Err(fail("trailing ','"));
                }
                rest = next;
            } else if !rest.is_empty() {
                return Err(fail("expected ',' between entries"));
            }
        }
        Ok(Basket::new(entries))
    }
}

/// `sum_Q rbar(r_Q - rbar) / 2 r_Q` with `rbar` the residue of `i v_Q`.
///
/// Equals `-(A_i + A_{-i})`, the negated sum of the contributions at `iE`
/// and `-iE`.
pub fn pair_sum(basket: &Basket, i: i64) -> Rational {
    basket
        .entries
        .iter()
        .map(|e| residue_product(i * e.v, e.r))
        .sum()
}

/// `a E^3 = 2 (1 - B_1)`, the value forced by the Riemann-Roch identity at `i = 0`.
pub fn ae3_from_basket(basket: &Basket) -> Result<Rational> {
    let b1 = pair_sum(basket, 1);
    if b1 >= Rational::ONE {
        return Err(Error::InfeasibleBasket { b1 });
    }
    (Rational::ONE - b1).checked_mul(Rational::integer(2))
}

/// True iff `r E^3` is a positive integer for discrepancy `a`, where
/// `E^3 = ae3_from_basket / a` and `r` is the basket index.
pub fn check_index_integrality(basket: &Basket, a: i64) -> Result<bool> {
    if a < 2 {
        return Err(Error::DiscrepancyTooSmall(a));
    }
    let ae3 = ae3_from_basket(basket)?;
    let r = Rational::integer(basket.index()?);
    let re3 = r.checked_mul(ae3)?.checked_div(Rational::integer(a))?;
    Ok(re3.is_integer() && re3.is_positive())
}

/// Largest discrepancy `a >= 2` passing [`check_index_integrality`], or `None`.
pub fn max_discrepancy(basket: &Basket) -> Result<Option<i64>> {
    let ae3 = ae3_from_basket(basket)?;
    let r = basket.index()? as i128;
    // r E^3 = r * ae3 / a must be a positive integer, so a <= r * numer(ae3)
    let bound = r
        .checked_mul(ae3.numer())
        .and_then(|b| i64::try_from(b).ok())
        .ok_or(Error::Overflow)?;
    for a in (2..=bound).rev() {
        if check_index_integrality(basket, a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Per-entry minimum `min_{0 <= j < i} ((1 + j) j r + i (i - 1 - 2j) v)`.
fn entry_min(r: i64, v: i64, i: i64) -> Result<i128> {
    let (r, v, i) = (r as i128, v as i128, i as i128);
    (0..i)
        .map(|j| {
            let first = (1 + j).checked_mul(j)?.checked_mul(r)?;
            let second = i.checked_mul(i - 1 - 2 * j)?.checked_mul(v)?;
            first.checked_add(second)
        })
        .try_fold(i128::MAX, |acc, x| x.map(|x| acc.min(x)))
        .ok_or(Error::Overflow)
}

/// Colength of the `i`-th valuation ideal predicted from the basket:
/// `i^2 - (1/2) sum_Q min_{0 <= j < i} ((1 + j) j r_Q + i (i - 1 - 2j) v_Q)`.
///
/// **Only meaningful for `1 <= i <= a`**, `a` being the discrepancy. Beyond
/// that the value is still computed but carries no geometric meaning; the
/// range is not checked here because `a` is not part of the basket.
pub fn colength_from_basket(basket: &Basket, i: i64) -> Result<i64> {
    if i < 1 {
        return Err(Error::NonPositiveThreshold(i));
    }
    let mut total: i128 = 0;
    for e in &basket.entries {
        total = total
            .checked_add(entry_min(e.r, e.v, i)?)
            .ok_or(Error::Overflow)?;
    }
    // each term is even: (1 + j) j and i (i - 1) are even, 2 j i v is even
    debug_assert_eq!(total % 2, 0);
    let value = (i as i128)
        .checked_mul(i as i128)
        .and_then(|sq| sq.checked_sub(total / 2))
        .ok_or(Error::Overflow)?;
    i64::try_from(value).map_err(|_| Error::Overflow)
}

/// `sum_Q min(v_Q, r_Q - v_Q)`, the dimension of the linear part of the
/// second valuation ideal.
pub fn linear_part_dim(basket: &Basket) -> i64 {
    basket.entries.iter().map(|e| e.v.min(e.r - e.v)).sum()
}

/// `sum_{1 <= j < i} d(-j) = (1/2)(i^2 - 1) a E^3 + B_i - B_1`.
pub fn partial_colength_sum(basket: &Basket, ae3: Rational, i: i64) -> Result<Rational> {
    if i < 1 {
        return Err(Error::NonPositiveThreshold(i));
    }
    let half = Rational::new((i as i128 * i as i128) - 1, 2)?;
    half.checked_mul(ae3)?
        .checked_add(pair_sum(basket, i))?
        .checked_sub(pair_sum(basket, 1))
}

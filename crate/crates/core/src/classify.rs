//! Exhaustive enumeration of the baskets allowed by the numerical
//! constraints, and the bound certificates built on top of it.
//!
//! A basket with `sum min(v, r - v) = s` and `B_1 < 1` is a candidate for a
//! contraction whose second valuation ideal has an `s`-dimensional linear
//! part. Since that linear part lives in `m/m^2`, `s <= 3`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, Rational};
use crate::error::{Error, Result};
use crate::rr::{
    ae3_from_basket, colength_from_basket, linear_part_dim, max_discrepancy, pair_sum, Basket,
    BasketEntry,
};
use crate::toric::wbu_profile;

/// A basket passing the enumeration constraints together with its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRow {
    pub basket: Basket,
    pub ae3: Rational,
    /// Global index `r`.
    pub index: i64,
    /// Largest admissible discrepancy, `None` when no `a >= 2` passes.
    pub max_a: Option<i64>,
    /// Coprime `(m, n)` whose `(1, m, n)` blow-up has exactly this basket,
    /// provided `m + n` is an admissible discrepancy.
    pub realized_by: Option<(i64, i64)>,
}

/// An infinite family `fixed + (R, free_v)` whose members with `R > r_max`
/// were cut off by the truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyNote {
    pub fixed: Basket,
    pub free_v: i64,
    /// Smallest omitted index.
    pub first_omitted: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub s_target: i64,
    pub r_max: i64,
    pub rows: Vec<EnumerationRow>,
    pub family_notes: Vec<FamilyNote>,
}

impl EnumerationReport {
    pub fn find(&self, basket: &Basket) -> Option<&EnumerationRow> {
        self.rows.iter().find(|row| &row.basket == basket)
    }
}

/// Canonical entries `(r, v)`, `v <= r - v`, with `2 <= r <= r_max` and `v <= s`.
fn candidate_entries(s: i64, r_max: i64) -> Vec<BasketEntry> {
    let mut out = Vec::new();
    for r in 2..=r_max {
        for v in 1..=s.min(r / 2) {
            if gcd(v, r) == 1 {
                out.push(BasketEntry::new(r, v).expect("coprime canonical entry"));
            }
        }
    }
    out
}

/// Non-decreasing sequences over `candidates` whose canonical weights sum to `remaining`.
fn extend(
    candidates: &[BasketEntry],
    start: usize,
    remaining: i64,
    current: &mut Vec<BasketEntry>,
    out: &mut Vec<Basket>,
) {
    if remaining == 0 {
        out.push(Basket::new(current.clone()));
        return;
    }
    for (k, entry) in candidates.iter().enumerate().skip(start) {
        if entry.v() > remaining {
            continue;
        }
        current.push(*entry);
        extend(candidates, k, remaining - entry.v(), current, out);
        current.pop();
    }
}

fn realizing_pair(basket: &Basket, max_a: Option<i64>, r_max: i64) -> Result<Option<(i64, i64)>> {
    let Some(max_a) = max_a else {
        return Ok(None);
    };
    for n in 1..=r_max.max(1) {
        for m in (1..=n).filter(|m| gcd(*m, n) == 1) {
            if m + n > max_a {
                continue;
            }
            let profile = wbu_profile(m, n)?;
            if &profile.basket == basket && crate::rr::check_index_integrality(basket, m + n)? {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

fn family_notes(s_target: i64, r_max: i64) -> Vec<FamilyNote> {
    // fixed + (R, v) stays feasible for every R iff B_1(fixed) + v/2 <= 1,
    // since v(R - v)/2R increases to v/2
    let mut notes = Vec::new();
    for free_v in 1..=s_target {
        let mut fixed_baskets = Vec::new();
        extend(
            &candidate_entries(s_target, r_max),
            0,
            s_target - free_v,
            &mut Vec::new(),
            &mut fixed_baskets,
        );
        for fixed in fixed_baskets {
            let limit = pair_sum(&fixed, 1) + Rational::new(free_v as i128, 2).expect("nonzero");
            if limit > Rational::ONE {
                continue;
            }
            let first_omitted = (r_max + 1..)
                .find(|r| gcd(free_v, *r) == 1)
                .expect("coprime index exists");
            notes.push(FamilyNote {
                fixed,
                free_v,
                first_omitted,
            });
        }
    }
    notes.sort_by(|a, b| {
        (a.fixed.len(), &a.fixed, a.free_v).cmp(&(b.fixed.len(), &b.fixed, b.free_v))
    });
    notes
}

/// Every basket with entries of index at most `r_max`, `sum min(v, r - v) = s_target`
/// and `B_1 < 1`, sorted by size and then lexicographically.
pub fn enumerate_baskets(s_target: i64, r_max: i64) -> Result<EnumerationReport> {
    if !(0..=3).contains(&s_target) {
        return Err(Error::TargetOutOfRange(s_target));
    }
    if r_max < 2 {
        return Err(Error::BoundTooSmall { got: r_max, min: 2 });
    }
    let mut baskets = Vec::new();
    extend(
        &candidate_entries(s_target, r_max),
        0,
        s_target,
        &mut Vec::new(),
        &mut baskets,
    );
    let mut rows = Vec::new();
    for basket in baskets {
        debug_assert_eq!(linear_part_dim(&basket), s_target);
        if pair_sum(&basket, 1) >= Rational::ONE {
            continue;
        }
        let ae3 = ae3_from_basket(&basket)?;
        let max_a = max_discrepancy(&basket)?;
        let realized_by = realizing_pair(&basket, max_a, r_max)?;
        rows.push(EnumerationRow {
            index: basket.index()?,
            basket,
            ae3,
            max_a,
            realized_by,
        });
    }
    rows.sort_by(|a, b| (a.basket.len(), &a.basket).cmp(&(b.basket.len(), &b.basket)));
    Ok(EnumerationReport {
        s_target,
        r_max,
        rows,
        family_notes: family_notes(s_target, r_max),
    })
}

/// A bound that failed, with the basket and the operands involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub basket: Basket,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} failed for {}: {}",
            self.check, self.basket, self.detail
        )
    }
}

impl std::error::Error for Violation {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundLine {
    pub basket: Basket,
    pub ae3: Rational,
    pub index: i64,
    pub max_a: Option<i64>,
    pub bound: i64,
}

/// Certificate that every basket with a 3-dimensional linear part forces
/// `a <= 3`, which rules out the `a >= 6` required when the second
/// valuation ideal equals the maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxIdealCertificate {
    pub r_max: i64,
    /// Lower bound on `a` assumed for the maximal-ideal case.
    pub assumed_min_discrepancy: i64,
    pub lines: Vec<BoundLine>,
}

pub fn verify_2e_contradiction(
    r_max: i64,
) -> Result<std::result::Result<MaxIdealCertificate, Violation>> {
    if r_max < 8 {
        return Err(Error::BoundTooSmall { got: r_max, min: 8 });
    }
    const BOUND: i64 = 3;
    const ASSUMED_MIN: i64 = 6;
    let report = enumerate_baskets(3, r_max)?;
    let mut lines = Vec::new();
    for row in report.rows {
        if let Some(a) = row.max_a {
            if a > BOUND {
                return Ok(Err(Violation {
                    check: "a <= 3 for linear part 3".into(),
                    basket: row.basket,
                    detail: format!("aE3 = {}, r = {}, admissible a = {a}", row.ae3, row.index),
                }));
            }
        }
        lines.push(BoundLine {
            basket: row.basket,
            ae3: row.ae3,
            index: row.index,
            max_a: row.max_a,
            bound: BOUND,
        });
    }
    Ok(Ok(MaxIdealCertificate {
        r_max,
        assumed_min_discrepancy: ASSUMED_MIN,
        lines,
    }))
}

/// Colength data for a basket over `1..=top`, with the equality bands checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColengthBand {
    pub basket: Basket,
    pub max_a: Option<i64>,
    pub bound: i64,
    /// `colength_from_basket` for `i = 1..=bound`.
    pub colengths: Vec<i64>,
    /// Largest `i` at which the lower bound is attained (`i(i+1)/2` for one
    /// entry, `i` for two).
    pub equality_up_to: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonLinearCertificate {
    pub r_max: i64,
    /// `{(r, 1)}`: `a = r + 1` and `colength = i(i+1)/2` exactly for `i <= r`.
    pub line_cases: Vec<ColengthBand>,
    /// `{(r1, 1), (r2, 1)}`: `a <= r1 + r2` with the two-level equality bands.
    pub point_cases: Vec<ColengthBand>,
    /// `{(r, 2)}`: `a <= 4`.
    pub double_weight_cases: Vec<BoundLine>,
}

fn half_min(r: i64, i: i64) -> i64 {
    // (1/2) min_{0 <= j < i} ((1 + j) r - 2 i) j
    (0..i).map(|j| ((1 + j) * r - 2 * i) * j).min().unwrap_or(0) / 2
}

/// Checks the colength and discrepancy bounds for linear parts of dimension 1 and 2.
pub fn verify_ne_cases(r_max: i64) -> Result<std::result::Result<NonLinearCertificate, Violation>> {
    if r_max < 2 {
        return Err(Error::BoundTooSmall { got: r_max, min: 2 });
    }
    let fail = |check: &str, basket: &Basket, detail: String| {
        Ok(Err(Violation {
            check: check.to_string(),
            basket: basket.clone(),
            detail,
        }))
    };

    let mut line_cases = Vec::new();
    for row in enumerate_baskets(1, r_max)?.rows {
        let r = row.basket.entries()[0].r();
        if row.max_a != Some(r + 1) {
            return fail("a = r + 1", &row.basket, format!("max a = {:?}", row.max_a));
        }
        let mut colengths = Vec::new();
        for i in 1..=r + 1 {
            let c = colength_from_basket(&row.basket, i)?;
            let tri = i * (i + 1) / 2;
            let ok = if i <= r { c == tri } else { c > tri };
            if !ok {
                return fail(
                    "colength band i(i+1)/2",
                    &row.basket,
                    format!("i = {i}, colength = {c}, i(i+1)/2 = {tri}"),
                );
            }
            colengths.push(c);
        }
        line_cases.push(ColengthBand {
            basket: row.basket,
            max_a: row.max_a,
            bound: r + 1,
            colengths,
            equality_up_to: r,
        });
    }

    let mut point_cases = Vec::new();
    let mut double_weight_cases = Vec::new();
    for row in enumerate_baskets(2, r_max)?.rows {
        let entries = row.basket.entries();
        if entries.len() == 1 {
            if row.max_a.is_some_and(|a| a > 4) {
                return fail("a <= 4", &row.basket, format!("max a = {:?}", row.max_a));
            }
            double_weight_cases.push(BoundLine {
                index: row.index,
                basket: row.basket,
                ae3: row.ae3,
                max_a: row.max_a,
                bound: 4,
            });
            continue;
        }
        let (r1, r2) = (entries[0].r(), entries[1].r());
        let bound = r1 + r2;
        if row.max_a.is_some_and(|a| a > bound) {
            return fail(
                "a <= r1 + r2",
                &row.basket,
                format!("max a = {:?}", row.max_a),
            );
        }
        let mut colengths = Vec::new();
        for i in 1..=bound {
            let c = colength_from_basket(&row.basket, i)?;
            let middle = i - half_min(r1, i);
            let first_tight = c == middle;
            let second_tight = middle == i;
            if c < middle || middle < i || first_tight != (i <= r2) || second_tight != (i <= r1) {
                return fail(
                    "colength bands for two points",
                    &row.basket,
                    format!(
                        "i = {i}, colength = {c}, intermediate = {middle}, r1 = {r1}, r2 = {r2}"
                    ),
                );
            }
            colengths.push(c);
        }
        point_cases.push(ColengthBand {
            basket: row.basket,
            max_a: row.max_a,
            bound,
            colengths,
            equality_up_to: r1,
        });
    }

    Ok(Ok(NonLinearCertificate {
        r_max,
        line_cases,
        point_cases,
        double_weight_cases,
    }))
}

//! The full reproduction check: every identity, oracle comparison and case
//! table, each reported as one pass/fail line.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inverse, smallest_residue, Rational};
use crate::classify::{enumerate_baskets, verify_2e_contradiction, verify_ne_cases};
use crate::error::Result;
use crate::monomial::{colength_bruteforce, colength_closed_form, valuation_ideal, WeightTriple};
use crate::rr::{
    ae3_from_basket, colength_from_basket, linear_part_dim, max_discrepancy, pair_sum, Basket,
    QuotientSingularity,
};
use crate::toric::{terminal_by_charts, terminal_by_theorem, tower_profile, wbu_profile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    /// Number of individual cases checked.
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{mark}] {}. {} ({} cases)",
            self.id, self.name, self.cases
        )?;
        if let Some(why) = &self.failure {
            write!(f, ": {why}")?;
        }
        Ok(())
    }
}

struct Tally {
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn finish(self, id: u8, name: &str) -> CriterionOutcome {
        CriterionOutcome {
            id,
            name: name.to_string(),
            passed: self.failure.is_none(),
            cases: self.cases,
            failure: self.failure,
        }
    }
}

/// The rows of the three case tables for linear part 3, with the
/// `(2, 2, r3)` family expanded up to `r_max`.
pub fn case_table(r_max: i64) -> Vec<(Vec<(i64, i64)>, Rational)> {
    let q = |n: i128, d: i128| Rational::new(n, d).expect("nonzero");
    let mut rows = vec![
        (vec![(7, 3)], q(2, 7)),
        (vec![(8, 3)], q(1, 8)),
        (vec![(2, 1), (5, 2)], q(3, 10)),
        (vec![(3, 1), (5, 2)], q(2, 15)),
        (vec![(4, 1), (5, 2)], q(1, 20)),
        (vec![(2, 1), (7, 2)], q(1, 14)),
    ];
    for r3 in 2..=r_max {
        rows.push((vec![(2, 1), (2, 1), (r3, 1)], q(2, 2 * r3 as i128)));
    }
    rows.push((vec![(2, 1), (3, 1), (3, 1)], q(1, 6)));
    rows.push((vec![(2, 1), (3, 1), (4, 1)], q(1, 12)));
    rows.push((vec![(2, 1), (3, 1), (5, 1)], q(1, 30)));
    rows
}

pub fn table_reproduction() -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    let report = enumerate_baskets(3, 8)?;
    let mut expected: Vec<(Basket, Rational)> = case_table(8)
        .into_iter()
        .map(|(pairs, v)| Basket::from_pairs(&pairs).map(|b| (b, v)))
        .collect::<Result<_>>()?;
    expected.sort();
    let mut got: Vec<(Basket, Rational)> = report
        .rows
        .iter()
        .map(|r| (r.basket.clone(), r.ae3))
        .collect();
    got.sort();
    tally.check(got.len() == expected.len(), || {
        format!("{} rows, expected {}", got.len(), expected.len())
    });
    for (g, e) in got.iter().zip(&expected) {
        tally.check(g == e, || {
            format!("row {} aE3 {} vs table {} {}", g.0, g.1, e.0, e.1)
        });
    }
    tally.check(report.family_notes.len() == 1, || {
        format!("{} family notes, expected 1", report.family_notes.len())
    });
    Ok(tally.finish(1, "case tables for linear part 3 (enumerate 3 8)"))
}

pub fn colength_oracle() -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    for l in 1..=40 {
        for m in 1..=l {
            let closed = colength_closed_form(l, m)?;
            let brute = colength_bruteforce(WeightTriple::new(1, m.min(l), l)?, l)?;
            tally.check(closed == brute, || {
                format!("l={l} m={m}: {closed} vs {brute}")
            });
        }
    }
    Ok(tally.finish(
        2,
        "closed-form colength vs monomial count, 1 <= m <= l <= 40",
    ))
}

pub fn pair_sum_identity() -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    for r in 2..=25 {
        for b in (1..r).filter(|b| gcd(*b, r) == 1) {
            let point = QuotientSingularity::new(r, b)?;
            for e in (1..r).filter(|e| gcd(*e, r) == 1) {
                let v = smallest_residue(e * b, r)?;
                for i in 0..r {
                    let lhs = point.contribution(i * e) + point.contribution(-i * e);
                    let iv = smallest_residue(i * v, r)?;
                    let rhs = -Rational::new((iv * (r - iv)) as i128, 2 * r as i128)?;
                    tally.check(lhs == rhs, || {
                        format!("r={r} b={b} e={e} i={i}: {lhs} vs {rhs}")
                    });
                }
            }
        }
    }
    Ok(tally.finish(3, "contribution pair sum, r <= 25"))
}

pub fn blow_up_closure() -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    for a in 1..=12 {
        for b in (a..=12).filter(|b| gcd(a, *b) == 1) {
            let p = wbu_profile(a, b)?;
            let identity_b = p.ae3() / 2 + pair_sum(&p.basket, 1);
            tally.check(identity_b == Rational::ONE, || {
                format!("(1,{a},{b}): B gives {identity_b}")
            });
            tally.check(ae3_from_basket(&p.basket)? == p.ae3(), || {
                format!("(1,{a},{b}): aE3")
            });
            for i in 1..=a + b {
                let predicted = colength_from_basket(&p.basket, i)?;
                let counted = colength_bruteforce(p.weights(), i)?;
                tally.check(predicted >= 0 && predicted as u64 == counted, || {
                    format!("(1,{a},{b}) i={i}: {predicted} vs {counted}")
                });
            }
            let linear = valuation_ideal(p.weights(), 2)?.linear_part_dim() as i64;
            let from_basket = linear_part_dim(&p.basket);
            tally.check(linear == from_basket, || {
                format!("(1,{a},{b}): D {from_basket} vs {linear}")
            });
            let max_a = max_discrepancy(&p.basket)?;
            tally.check(max_a == Some(a + b), || {
                format!("(1,{a},{b}): max a {max_a:?}")
            });
            let index = p.basket.index()?;
            tally.check(mod_inverse(p.discrepancy, index) == Some(p.e), || {
                format!("(1,{a},{b}): e = {}", p.e)
            });
        }
    }
    Ok(tally.finish(4, "weighted blow-up (1,a,b) closure, a <= b <= 12"))
}

pub fn terminality() -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    for w1 in 1..=10 {
        for w2 in w1..=10 {
            for w3 in w2..=10 {
                let w = WeightTriple::new(w1, w2, w3)?;
                let (theorem, charts) = (terminal_by_theorem(w), terminal_by_charts(w));
                tally.check(theorem == charts, || {
                    format!("{w}: criterion {theorem}, charts {charts}")
                });
            }
        }
    }
    Ok(tally.finish(
        5,
        "terminality criterion vs chart-wise Reid-Tai, weights <= 10",
    ))
}

pub fn contradiction_certificates(r_max: i64) -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    match verify_2e_contradiction(r_max)? {
        Ok(cert) => {
            for line in &cert.lines {
                tally.check(line.max_a.unwrap_or(0) <= 3, || format!("{}", line.basket));
            }
        }
        Err(v) => tally.check(false, || v.to_string()),
    }
    match verify_ne_cases(r_max)? {
        Ok(cert) => {
            for band in cert.line_cases.iter().chain(&cert.point_cases) {
                tally.check(band.max_a.unwrap_or(0) <= band.bound, || {
                    format!("{}", band.basket)
                });
            }
            for line in &cert.double_weight_cases {
                tally.check(line.max_a.unwrap_or(0) <= 4, || format!("{}", line.basket));
            }
        }
        Err(v) => tally.check(false, || v.to_string()),
    }
    Ok(tally.finish(
        6,
        &format!("discrepancy bounds and colength bands, r_max = {r_max}"),
    ))
}

pub fn periodicity() -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    for r in 2..=25 {
        for b in (1..r).filter(|b| gcd(*b, r) == 1) {
            let point = QuotientSingularity::new(r, b)?;
            for i in -2 * r..=2 * r {
                let c = point.contribution(i);
                tally.check(c == point.contribution(i + r), || {
                    format!("r={r} b={b} i={i}")
                });
                if i % r == 0 {
                    tally.check(c == Rational::ZERO, || format!("r={r} b={b} i={i}: {c}"));
                }
            }
        }
    }
    Ok(tally.finish(
        7,
        "contribution periodic mod r and zero at multiples, r <= 25",
    ))
}

pub fn tower_bounds() -> Result<CriterionOutcome> {
    let mut tally = Tally::new();
    for n in 1..=12 {
        for m in (1..=n).filter(|m| gcd(*m, n) == 1) {
            let t = tower_profile(m, n)?;
            tally.check(t.discrepancy == m + n, || {
                format!("({m},{n}): a = {}", t.discrepancy)
            });
            tally.check(n < t.discrepancy, || format!("({m},{n}): n > a - 1"));
            tally.check(t.steps.iter().all(|s| s.coefficient == 1), || {
                format!("({m},{n}): a pull-back coefficient differs from 1")
            });
        }
    }
    Ok(tally.finish(
        8,
        "tower of blow-ups: n <= a - 1 and a = m + n, m <= n <= 12",
    ))
}

/// Runs every criterion; `r_max` is the truncation used for the bound certificates.
pub fn run_all(r_max: i64) -> Result<Vec<CriterionOutcome>> {
    Ok(vec![
        table_reproduction()?,
        colength_oracle()?,
        pair_sum_identity()?,
        blow_up_closure()?,
        terminality()?,
        contradiction_certificates(r_max)?,
        periodicity()?,
        tower_bounds()?,
    ])
}

//! Acceptance criteria. Every comparison is exact rational or integer
//! equality; each test prints one PASS/FAIL line.
//!
//! Run with `cargo test -p wbu-core --test acceptance -- --nocapture` to see
//! the lines.

use wbu_core::arith::gcd;
use wbu_core::classify::{enumerate_baskets, verify_2e_contradiction, verify_ne_cases};
use wbu_core::toric::chart_quotients;
use wbu_core::{
    ae3_from_basket, colength_bruteforce, colength_closed_form, colength_from_basket,
    linear_part_dim, max_discrepancy, pair_sum, reid_tai_terminal, terminal_by_theorem,
    tower_profile, valuation_ideal, wbu_profile, Basket, QuotientSingularity, Rational,
    WeightTriple,
};

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d).unwrap()
}

fn report(id: u8, name: &str, failures: &[String], cases: usize) {
    let mark = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("[{mark}] criterion {id}: {name} ({cases} cases)");
    assert!(
        failures.is_empty(),
        "criterion {id} failed: {:?}",
        &failures[..failures.len().min(5)]
    );
}

/// Monomials `x^s y^t z^u` with `s + wy t + wz u < threshold`, counted one by one.
fn count_below(wy: i64, wz: i64, threshold: i64) -> u64 {
    let mut n = 0;
    for u in 0..threshold {
        for t in 0..threshold {
            for s in 0..threshold {
                if s + wy * t + wz * u < threshold {
                    n += 1;
                }
            }
        }
    }
    n
}

#[test]
fn criterion_1_case_tables() {
    let report_ = enumerate_baskets(3, 8).unwrap();
    // (entries, aE3) as printed in the three case tables; (2,2,r3) gives 2/2r3
    let mut table: Vec<(Vec<(i64, i64)>, Rational)> = vec![
        (vec![(7, 3)], q(2, 7)),
        (vec![(8, 3)], q(1, 8)),
        (vec![(2, 1), (5, 2)], q(3, 10)),
        (vec![(3, 1), (5, 2)], q(2, 15)),
        (vec![(4, 1), (5, 2)], q(1, 20)),
        (vec![(2, 1), (7, 2)], q(1, 14)),
        (vec![(2, 1), (3, 1), (3, 1)], q(1, 6)),
        (vec![(2, 1), (3, 1), (4, 1)], q(1, 12)),
        (vec![(2, 1), (3, 1), (5, 1)], q(1, 30)),
    ];
    for r3 in 2..=8 {
        table.push((vec![(2, 1), (2, 1), (r3, 1)], q(2, 2 * r3 as i128)));
    }
    let mut expected: Vec<(Basket, Rational)> = table
        .into_iter()
        .map(|(p, v)| (Basket::from_pairs(&p).unwrap(), v))
        .collect();
    expected.sort();
    let mut got: Vec<(Basket, Rational)> = report_
        .rows
        .iter()
        .map(|r| (r.basket.clone(), r.ae3))
        .collect();
    got.sort();

    let mut failures = Vec::new();
    if got != expected {
        failures.push(format!("rows differ:\n got {got:?}\n want {expected:?}"));
    }
    // the only unbounded family is (2,1),(2,1),(r3,1)
    if report_.family_notes.len() != 1
        || report_.family_notes[0].fixed != Basket::from_pairs(&[(2, 1), (2, 1)]).unwrap()
    {
        failures.push(format!("family notes {:?}", report_.family_notes));
    }
    report(
        1,
        "enumerate 3 8 reproduces the case tables",
        &failures,
        expected.len(),
    );
}

#[test]
fn criterion_2_colength_oracle() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for l in 1..=40 {
        for m in 1..=l {
            cases += 1;
            let closed = colength_closed_form(l, m).unwrap();
            let brute = colength_bruteforce(WeightTriple::new(1, m.min(l), l).unwrap(), l).unwrap();
            let direct = count_below(m.min(l), l, l);
            if closed != brute || brute != direct {
                failures.push(format!(
                    "l={l} m={m}: closed {closed}, brute {brute}, direct {direct}"
                ));
            }
        }
    }
    assert_eq!(cases, 820);
    report(2, "closed-form colength = monomial count", &failures, cases);
}

#[test]
fn criterion_3_pair_sum() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in 2..=25 {
        for b in (1..r).filter(|b| gcd(*b, r) == 1) {
            let point = QuotientSingularity::new(r, b).unwrap();
            for e in (1..r).filter(|e| gcd(*e, r) == 1) {
                let v = (e * b).rem_euclid(r);
                for i in 0..r {
                    cases += 1;
                    let lhs = point.contribution(i * e) + point.contribution(-i * e);
                    let iv = (i * v).rem_euclid(r);
                    let rhs = q(-((iv * (r - iv)) as i128), 2 * r as i128);
                    if lhs != rhs {
                        failures.push(format!("r={r} b={b} e={e} i={i}: {lhs} != {rhs}"));
                    }
                }
            }
        }
    }
    report(3, "c(iE) + c(-iE) = -iv(r - iv)/2r", &failures, cases);
}

#[test]
fn criterion_4_blow_up_closure() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for a in 1..=12 {
        for b in (a..=12).filter(|b| gcd(a, *b) == 1) {
            cases += 1;
            let p = wbu_profile(a, b).unwrap();
            let w = WeightTriple::new(1, a, b).unwrap();
            // E^3 = 1/ab and discrepancy a + b
            if p.e3 != q(1, (a * b) as i128) || p.discrepancy != a + b {
                failures.push(format!("(1,{a},{b}): E3 {} a {}", p.e3, p.discrepancy));
            }
            let b_identity = p.e3 * p.discrepancy / 2 + pair_sum(&p.basket, 1);
            if b_identity != Rational::ONE || ae3_from_basket(&p.basket).unwrap() != p.e3 * (a + b)
            {
                failures.push(format!("(1,{a},{b}): identity B gives {b_identity}"));
            }
            for i in 1..=a + b {
                let predicted = colength_from_basket(&p.basket, i).unwrap();
                let counted = count_below(a, b, i);
                if predicted < 0 || predicted as u64 != counted {
                    failures.push(format!(
                        "(1,{a},{b}) i={i}: C gives {predicted}, count {counted}"
                    ));
                }
            }
            let linear = valuation_ideal(w, 2).unwrap().linear_part_dim() as i64;
            if linear_part_dim(&p.basket) != linear {
                failures.push(format!(
                    "(1,{a},{b}): D {} vs {linear}",
                    linear_part_dim(&p.basket)
                ));
            }
            if max_discrepancy(&p.basket).unwrap() != Some(a + b) {
                failures.push(format!(
                    "(1,{a},{b}): max a {:?}",
                    max_discrepancy(&p.basket)
                ));
            }
        }
    }
    report(
        4,
        "(1,a,b) profiles satisfy B, C, D and max a = a + b",
        &failures,
        cases,
    );
}

#[test]
fn criterion_5_terminality() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for w1 in 1..=10 {
        for w2 in w1..=10 {
            for w3 in w2..=10 {
                cases += 1;
                let w = WeightTriple::new(w1, w2, w3).unwrap();
                let oracle = chart_quotients(w)
                    .iter()
                    .filter(|c| c.index >= 2)
                    .all(|c| reid_tai_terminal(c.index, c.weights).unwrap());
                if oracle != terminal_by_theorem(w) {
                    failures.push(format!(
                        "{w}: theorem {}, Reid-Tai {oracle}",
                        terminal_by_theorem(w)
                    ));
                }
            }
        }
    }
    report(
        5,
        "terminality criterion = chart-wise Reid-Tai",
        &failures,
        cases,
    );
}

#[test]
fn criterion_6_certificates() {
    let mut failures = Vec::new();
    let mut cases = 0;
    match verify_2e_contradiction(12).unwrap() {
        Ok(cert) => {
            for line in &cert.lines {
                cases += 1;
                if line.max_a.is_some_and(|a| a > 3) {
                    failures.push(format!("{}: a = {:?}", line.basket, line.max_a));
                }
            }
            // nine bounded rows plus (2,1),(2,1),(r3,1) for 2 <= r3 <= 12
            if cert.lines.len() != 20 {
                failures.push(format!("{} baskets with linear part 3", cert.lines.len()));
            }
        }
        Err(v) => failures.push(v.to_string()),
    }
    match verify_ne_cases(12).unwrap() {
        Ok(cert) => {
            for band in &cert.line_cases {
                cases += 1;
                let r = band.basket.entries()[0].r();
                if band.max_a != Some(r + 1) {
                    failures.push(format!("{}: a = {:?}", band.basket, band.max_a));
                }
                for (k, c) in band.colengths.iter().enumerate() {
                    let i = k as i64 + 1;
                    let tri = i * (i + 1) / 2;
                    if (i <= r && *c != tri) || (i > r && *c <= tri) {
                        failures.push(format!("{} i={i}: {c} vs {tri}", band.basket));
                    }
                }
            }
            for band in &cert.point_cases {
                cases += 1;
                let (r1, r2) = (band.basket.entries()[0].r(), band.basket.entries()[1].r());
                if band.max_a.is_some_and(|a| a > r1 + r2) {
                    failures.push(format!("{}: a = {:?}", band.basket, band.max_a));
                }
                for (k, c) in band.colengths.iter().enumerate() {
                    let i = k as i64 + 1;
                    if (*c == i) != (i <= r1) || *c < i {
                        failures.push(format!("{} i={i}: colength {c}", band.basket));
                    }
                }
            }
            for line in &cert.double_weight_cases {
                cases += 1;
                if line.max_a.is_some_and(|a| a > 4) {
                    failures.push(format!("{}: a = {:?}", line.basket, line.max_a));
                }
            }
        }
        Err(v) => failures.push(v.to_string()),
    }
    report(
        6,
        "a <= 3, a <= r + 1, a <= r1 + r2, a <= 4 and colength bands",
        &failures,
        cases,
    );
}

#[test]
fn criterion_7_periodicity() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for r in 2..=25 {
        for b in (1..r).filter(|b| gcd(*b, r) == 1) {
            let point = QuotientSingularity::new(r, b).unwrap();
            for i in -3 * r..3 * r {
                cases += 1;
                let c = point.contribution(i);
                if c != point.contribution(i + r) || (i % r == 0 && c != Rational::ZERO) {
                    failures.push(format!("r={r} b={b} i={i}: {c}"));
                }
            }
        }
    }
    report(
        7,
        "contribution periodic mod r, zero at multiples of r",
        &failures,
        cases,
    );
}

#[test]
fn criterion_8_tower() {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=12 {
        for m in (1..=n).filter(|m| gcd(*m, n) == 1) {
            cases += 1;
            let t = tower_profile(m, n).unwrap();
            if t.discrepancy != m + n || n > t.discrepancy - 1 || t.steps.len() as i64 != n {
                failures.push(format!(
                    "({m},{n}): a = {}, {} steps",
                    t.discrepancy,
                    t.steps.len()
                ));
            }
        }
    }
    report(8, "tower: n <= a - 1 and a = m + n", &failures, cases);
}

#[test]
fn audit_module_agrees() {
    for outcome in wbu_core::audit::run_all(12).unwrap() {
        println!("{outcome}");
        assert!(outcome.passed);
    }
}

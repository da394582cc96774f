use wbu_cli::{run, BasketResult, ColengthResult, Envelope, MaxA, Status, TowerResult, WbuResult};
use wbu_core::{wbu_profile, Basket, Rational};

fn json(args: &[&str]) -> (i32, Envelope) {
    let mut argv = vec!["wbu", "--json"];
    argv.extend_from_slice(args);
    let (code, out) = run(argv);
    let envelope: Envelope = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"));
    (code, envelope)
}

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn wbu_round_trips_through_envelope() {
    let (code, env) = json(&["wbu", "2", "3"]);
    assert_eq!(code, 0);
    assert_eq!(env.status, Status::Ok);
    assert_eq!(env.command, "wbu");
    assert_eq!(env.result["profile"]["e3"], "1/6");
    let result: WbuResult = serde_json::from_value(env.result).unwrap();
    assert_eq!(result.profile, wbu_profile(2, 3).unwrap());
    assert_eq!(
        result.profile.basket,
        Basket::from_pairs(&[(2, 1), (3, 1)]).unwrap()
    );
    assert_eq!(result.ae3, q(5, 6));
    assert_eq!(result.max_a, Some(5));
    assert!(result
        .colengths
        .iter()
        .all(|c| c.from_basket as u64 == c.counted));
}

#[test]
fn colength_with_brute_force() {
    let (code, env) = json(&["colength", "5", "2", "--brute"]);
    assert_eq!(code, 0);
    let r: ColengthResult = serde_json::from_value(env.result).unwrap();
    assert_eq!((r.closed_form, r.brute), (9, Some(9)));
}

#[test]
fn basket_flags_select_fields() {
    let (code, env) = json(&["basket", "(2,1),(5,2)", "--aE3", "--maxa"]);
    assert_eq!(code, 0);
    let r: BasketResult = serde_json::from_value(env.result).unwrap();
    assert_eq!(r.ae3, Some(q(3, 10)));
    assert_eq!(r.max_a, Some(MaxA::Value(3)));
    assert_eq!(r.dim_d, None);
    assert_eq!(r.index, 10);

    let (_, env) = json(&["basket", "(8,3)", "--maxa"]);
    let r: BasketResult = serde_json::from_value(env.result).unwrap();
    assert_eq!(r.max_a, Some(MaxA::NoneAdmissible));
}

#[test]
fn basket_colengths_respect_discrepancy() {
    let (code, env) = json(&["basket", "(2,1),(3,1)", "--colengths", "5", "--a", "5"]);
    assert_eq!(code, 0);
    let r: BasketResult = serde_json::from_value(env.result).unwrap();
    assert_eq!(r.colengths, Some(vec![1, 2, 4, 7, 11]));
    assert_eq!(r.index_integral, Some(true));

    let (code, env) = json(&["basket", "(2,1),(3,1)", "--colengths", "6", "--a", "5"]);
    assert_eq!(code, 2);
    assert_eq!(env.status, Status::Error);
}

#[test]
fn infeasible_basket_is_an_error() {
    let (code, env) = json(&["basket", "(9,4),(9,2)", "--aE3"]);
    assert_eq!(code, 2);
    assert_eq!(env.status, Status::Error);
    assert!(env.violation.is_some());
}

#[test]
fn tower_reports_conditions() {
    let (code, env) = json(&["tower", "2", "3"]);
    assert_eq!(code, 0);
    let r: TowerResult = serde_json::from_value(env.result).unwrap();
    assert_eq!(r.tower.discrepancy, 5);
    assert_eq!(r.tower.steps.len(), 3);
}

#[test]
fn contrib_accepts_negative_index() {
    let (code, env) = json(&["contrib", "5", "2", "-3"]);
    assert_eq!(code, 0);
    assert_eq!(env.result["contribution"], "-1/5");
    assert_eq!(env.result["i_bar"], 2);
}

#[test]
fn enumerate_matches_core() {
    let (code, env) = json(&["enumerate", "3", "8"]);
    assert_eq!(code, 0);
    let report: wbu_core::classify::EnumerationReport = serde_json::from_value(env.result).unwrap();
    assert_eq!(report, wbu_core::classify::enumerate_baskets(3, 8).unwrap());
}

#[test]
fn verify_paper_passes() {
    let (code, out) = run(["wbu", "verify-paper"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 8);
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(["wbu", "wbu", "2", "4"]).0, 2); // not coprime
    assert_eq!(run(["wbu", "wbu", "3", "2"]).0, 2); // unordered
    assert_eq!(run(["wbu", "colength", "x", "2"]).0, 2);
    assert_eq!(run(["wbu", "basket", "(2,1"]).0, 2);
    assert_eq!(run(["wbu", "contrib", "4", "2", "1"]).0, 2);
    assert_eq!(run(["wbu", "verify-paper", "--rmax", "3"]).0, 2);
    assert_eq!(run(["wbu", "frobnicate"]).0, 2);
    let (code, env) = json(&["enumerate", "7", "8"]);
    assert_eq!((code, env.status), (2, Status::Error));
}

#[test]
fn help_and_version_exit_0() {
    let (code, out) = run(["wbu", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-paper"));
    assert_eq!(run(["wbu", "--version"]).0, 0);
}

#[test]
fn human_output_is_tabular() {
    let (code, out) = run(["wbu", "wbu", "1", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("basket       [(2,1)]"), "{out}");
    assert!(out.contains("E^3          1/2"), "{out}");
}

//! Command dispatch for the `wbu` binary.
//!
//! [`run`] parses an argument vector, evaluates one subcommand and returns
//! the exit code together with the text to print: a human-readable table by
//! default, or a JSON [`Envelope`] with `--json`.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use wbu_core::audit::{self, CriterionOutcome};
use wbu_core::classify::{enumerate_baskets, EnumerationReport};
use wbu_core::toric::{TowerProfile, WbuProfile};
use wbu_core::{
    ae3_from_basket, check_index_integrality, colength_bruteforce, colength_closed_form,
    colength_from_basket, linear_part_dim, max_discrepancy, pair_sum, tower_profile,
    valuation_ideal, wbu_profile, Basket, Monomial, QuotientSingularity, Rational, WeightTriple,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wbu",
    version,
    about = "Weighted blow-up and basket invariants, computed exactly"
)]
struct Cli {
    /// Emit the JSON envelope instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Colength of (s + min(l,m) t + l u >= l) in closed form.
    Colength {
        l: i64,
        m: i64,
        /// Also count monomials directly and compare.
        #[arg(long)]
        brute: bool,
    },
    /// Minimal generators of the valuation ideal of weights (wx, wy, wz) at threshold i.
    Ideal { wx: i64, wy: i64, wz: i64, i: i64 },
    /// Contribution of 1/r(1,-1,b) at local index i.
    #[command(allow_negative_numbers = true)]
    Contrib { r: i64, b: i64, i: i64 },
    /// Evaluate a basket given as "(r1,v1),(r2,v2),...".
    #[command(allow_negative_numbers = true)]
    Basket {
        basket: String,
        #[arg(long = "aE3")]
        ae3: bool,
        #[arg(long)]
        maxa: bool,
        /// Colengths for i = 1..=I.
        #[arg(long, value_name = "I")]
        colengths: Option<i64>,
        #[arg(long = "dimD")]
        dim_d: bool,
        /// Attach a discrepancy: checks integrality of r E^3 and bounds --colengths.
        #[arg(long = "a", value_name = "A")]
        discrepancy: Option<i64>,
    },
    /// Full profile of the weighted blow-up (1, a, b).
    Wbu { a: i64, b: i64 },
    /// Tower of blow-ups leading to the (1, m, n) valuation.
    Tower { m: i64, n: i64 },
    /// All baskets with linear part s and indices up to rmax.
    Enumerate { s: i64, rmax: i64 },
    /// Run every reproduction criterion; exits 1 on any failure.
    VerifyPaper {
        #[arg(long, default_value_t = 12)]
        rmax: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

/// Machine-readable output of one invocation. Rationals appear as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub status: Status,
    /// First failing assertion with its operands, for `violation`; the message, for `error`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColengthResult {
    pub l: i64,
    pub m: i64,
    pub closed_form: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealResult {
    pub weights: WeightTriple,
    pub canonical: WeightTriple,
    pub permutation: [usize; 3],
    pub threshold: i64,
    pub generators: Vec<Monomial>,
    pub colength: u64,
    pub equals_max: bool,
    pub inside_max_squared: bool,
    /// The second valuation ideal is not the maximal ideal (meaningful at threshold 2).
    pub condition_not_max: bool,
    /// The ideal is not inside the square of the maximal ideal.
    pub condition_not_in_max_squared: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContribResult {
    pub r: i64,
    pub b: i64,
    pub i: i64,
    pub i_bar: i64,
    pub contribution: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxA {
    Value(i64),
    NoneAdmissible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasketResult {
    pub basket: Basket,
    pub index: i64,
    pub b1: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ae3: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_a: Option<MaxA>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colengths: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<i64>,
    /// `r E^3` is a positive integer for the attached discrepancy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_integral: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColengthCheck {
    pub i: i64,
    pub from_basket: i64,
    pub counted: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WbuResult {
    pub profile: WbuProfile,
    pub ae3: Rational,
    pub b1: Rational,
    pub max_a: Option<i64>,
    pub dim_d: i64,
    pub linear_part: usize,
    pub colengths: Vec<ColengthCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerResult {
    pub tower: TowerProfile,
    pub condition_not_max: bool,
    pub condition_not_in_max_squared: bool,
}

struct Outcome {
    inputs: Value,
    result: Value,
    human: String,
    violation: Option<Value>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize")
}

fn colength(l: i64, m: i64, brute: bool) -> wbu_core::Result<Outcome> {
    let closed = colength_closed_form(l, m)?;
    let counted = if brute {
        Some(colength_bruteforce(WeightTriple::new(1, m.min(l), l)?, l)?)
    } else {
        None
    };
    let result = ColengthResult {
        l,
        m,
        closed_form: closed,
        brute: counted,
    };
    let mut human = format!("colength(l={l}, m={m}) = {closed}\n");
    let mut violation = None;
    if let Some(c) = counted {
        let _ = writeln!(human, "monomial count (1, {}, {l}) = {c}", m.min(l));
        if c != closed {
            violation = Some(json!({
                "assertion": "closed form equals monomial count",
                "closed_form": closed, "brute": c, "l": l, "m": m
            }));
        }
    }
    Ok(Outcome {
        inputs: json!({"l": l, "m": m, "brute": brute}),
        result: to_value(&result),
        human,
        violation,
    })
}

fn ideal(wx: i64, wy: i64, wz: i64, i: i64) -> wbu_core::Result<Outcome> {
    let w = WeightTriple::new(wx, wy, wz)?;
    let (canonical, permutation) = w.canonicalize();
    let ideal = valuation_ideal(w, i)?;
    let result = IdealResult {
        weights: w,
        canonical,
        permutation,
        threshold: i,
        generators: ideal.generators().to_vec(),
        colength: colength_bruteforce(w, i)?,
        equals_max: ideal.equals_max(),
        inside_max_squared: ideal.inside_max_squared(),
        condition_not_max: !ideal.equals_max(),
        condition_not_in_max_squared: !ideal.inside_max_squared(),
    };
    let mut human = String::new();
    let _ = writeln!(human, "weights {w}, threshold {i}");
    let _ = writeln!(human, "generators   {ideal}");
    let _ = writeln!(human, "colength     {}", result.colength);
    let _ = writeln!(human, "= m_P        {}", result.equals_max);
    let _ = writeln!(human, "in m_P^2     {}", result.inside_max_squared);
    Ok(Outcome {
        inputs: json!({"wx": wx, "wy": wy, "wz": wz, "i": i}),
        result: to_value(&result),
        human,
        violation: None,
    })
}

fn contrib(r: i64, b: i64, i: i64) -> wbu_core::Result<Outcome> {
    let point = QuotientSingularity::new(r, b)?;
    let result = ContribResult {
        r,
        b: point.b,
        i,
        i_bar: i.rem_euclid(r),
        contribution: point.contribution(i),
    };
    Ok(Outcome {
        inputs: json!({"r": r, "b": b, "i": i}),
        human: format!(
            "c(1/{r}(1,-1,{}), {i}) = {}\n",
            point.b, result.contribution
        ),
        result: to_value(&result),
        violation: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn basket(
    spec: &str,
    want_ae3: bool,
    want_maxa: bool,
    colengths: Option<i64>,
    want_dim_d: bool,
    discrepancy: Option<i64>,
) -> Result<Outcome, CliError> {
    let basket: Basket = spec.parse()?;
    let all = !(want_ae3 || want_maxa || want_dim_d || colengths.is_some());
    if let (Some(top), Some(a)) = (colengths, discrepancy) {
        if top > a {
            return Err(CliError::Usage(format!(
                "--colengths {top} exceeds the attached discrepancy {a}; colengths from the basket are only valid for i <= a"
            )));
        }
    }
    let mut result = BasketResult {
        index: basket.index()?,
        b1: pair_sum(&basket, 1),
        basket: basket.clone(),
        ae3: None,
        max_a: None,
        dim_d: None,
        colengths: None,
        discrepancy,
        index_integral: None,
    };
    if all || want_ae3 {
        result.ae3 = Some(ae3_from_basket(&basket)?);
    }
    if all || want_maxa {
        result.max_a = Some(match max_discrepancy(&basket)? {
            Some(a) => MaxA::Value(a),
            None => MaxA::NoneAdmissible,
        });
    }
    if all || want_dim_d {
        result.dim_d = Some(linear_part_dim(&basket));
    }
    if let Some(top) = colengths {
        result.colengths = Some(
            (1..=top)
                .map(|i| colength_from_basket(&basket, i))
                .collect::<wbu_core::Result<_>>()?,
        );
    }
    if let Some(a) = discrepancy {
        result.index_integral = Some(check_index_integrality(&basket, a)?);
    }

    let mut human = String::new();
    let _ = writeln!(human, "basket       {basket}");
    let _ = writeln!(human, "index r      {}", result.index);
    let _ = writeln!(human, "B_1          {}", result.b1);
    if let Some(v) = result.ae3 {
        let _ = writeln!(human, "aE^3         {v}");
    }
    match result.max_a {
        Some(MaxA::Value(a)) => {
            let _ = writeln!(human, "max a        {a}");
        }
        Some(MaxA::NoneAdmissible) => {
            let _ = writeln!(human, "max a        no admissible a");
        }
        None => {}
    }
    if let Some(d) = result.dim_d {
        let _ = writeln!(human, "dim D        {d}");
    }
    if let Some(c) = &result.colengths {
        let joined: Vec<String> = c.iter().map(i64::to_string).collect();
        let _ = writeln!(human, "colengths    {}", joined.join(" "));
    }
    if let (Some(a), Some(ok)) = (discrepancy, result.index_integral) {
        let _ = writeln!(human, "r E^3 in Z>0 {ok} (a = {a})");
    }
    Ok(Outcome {
        inputs: json!({
            "basket": spec, "aE3": want_ae3, "maxa": want_maxa,
            "colengths": colengths, "dimD": want_dim_d, "a": discrepancy
        }),
        result: to_value(&result),
        human,
        violation: None,
    })
}

fn wbu(a: i64, b: i64) -> wbu_core::Result<Outcome> {
    let profile = wbu_profile(a, b)?;
    let weights = profile.weights();
    let ae3 = profile.ae3();
    let b1 = pair_sum(&profile.basket, 1);
    let mut checks = Vec::new();
    for i in 1..=profile.discrepancy {
        checks.push(ColengthCheck {
            i,
            from_basket: colength_from_basket(&profile.basket, i)?,
            counted: colength_bruteforce(weights, i)?,
        });
    }
    let linear_part = valuation_ideal(weights, 2)?.linear_part_dim();
    let result = WbuResult {
        ae3,
        b1,
        max_a: max_discrepancy(&profile.basket)?,
        dim_d: linear_part_dim(&profile.basket),
        linear_part,
        colengths: checks,
        profile,
    };

    let mut violation = None;
    if ae3 / 2 + b1 != Rational::ONE {
        violation = Some(json!({"assertion": "1 = aE3/2 + B_1", "aE3": ae3, "B_1": b1}));
    } else if let Some(c) = result
        .colengths
        .iter()
        .find(|c| c.from_basket < 0 || c.from_basket as u64 != c.counted)
    {
        violation = Some(json!({
            "assertion": "colength from basket equals monomial count",
            "i": c.i, "from_basket": c.from_basket, "counted": c.counted
        }));
    } else if result.dim_d != linear_part as i64 {
        violation = Some(json!({
            "assertion": "sum min(v, r - v) equals linear part of second ideal",
            "dim_d": result.dim_d, "linear_part": linear_part
        }));
    }

    let p = &result.profile;
    let mut human = String::new();
    let _ = writeln!(human, "weights      (1, {a}, {b})");
    let _ = writeln!(human, "discrepancy  {}", p.discrepancy);
    let _ = writeln!(human, "E^3          {}", p.e3);
    let _ = writeln!(human, "aE^3         {ae3}");
    let _ = writeln!(human, "basket       {}", p.basket);
    let _ = writeln!(human, "e            {}", p.e);
    for pt in &p.points {
        let _ = writeln!(
            human,
            "  {}-chart    1/{}(1,-1,{})  -> ({},{})",
            pt.chart,
            pt.quotient.r,
            pt.quotient.b,
            pt.entry.r(),
            pt.entry.v_input()
        );
    }
    let _ = writeln!(human, "B_1          {b1}");
    match result.max_a {
        Some(m) => {
            let _ = writeln!(human, "max a        {m}");
        }
        None => {
            let _ = writeln!(human, "max a        no admissible a");
        }
    }
    let _ = writeln!(
        human,
        "dim D        {} (linear part {linear_part})",
        result.dim_d
    );
    let _ = writeln!(human, "   i  basket  count");
    for c in &result.colengths {
        let _ = writeln!(human, "{:>4}  {:>6}  {:>5}", c.i, c.from_basket, c.counted);
    }
    Ok(Outcome {
        inputs: json!({"a": a, "b": b}),
        result: to_value(&result),
        human,
        violation,
    })
}

fn tower(m: i64, n: i64) -> wbu_core::Result<Outcome> {
    let tower = tower_profile(m, n)?;
    let (not_max, not_in_square) = tower.restate_conditions()?;
    let mut violation = None;
    if tower.discrepancy != m + n || n > tower.discrepancy - 1 {
        violation = Some(json!({
            "assertion": "a = m + n and n <= a - 1",
            "a": tower.discrepancy, "m": m, "n": n
        }));
    } else if let Some(s) = tower.steps.iter().find(|s| s.coefficient != 1) {
        violation = Some(json!({
            "assertion": "pull-back coefficient of F_n is 1",
            "step": s.step, "coefficient": s.coefficient
        }));
    }
    let mut human = String::new();
    let _ = writeln!(human, "step  center  ray            coeff  K-coeff");
    for s in &tower.steps {
        let ray = format!("({},{},{})", s.ray[0], s.ray[1], s.ray[2]);
        let _ = writeln!(
            human,
            "{:>4}  {:<6}  {:<13}  {:>5}  {:>7}",
            s.step, s.center, ray, s.coefficient, s.canonical_coefficient
        );
    }
    let _ = writeln!(
        human,
        "discrepancy  {} (m + n = {})",
        tower.discrepancy,
        m + n
    );
    let _ = writeln!(human, "n <= a - 1   {}", n < tower.discrepancy);
    let result = TowerResult {
        tower,
        condition_not_max: not_max,
        condition_not_in_max_squared: not_in_square,
    };
    Ok(Outcome {
        inputs: json!({"m": m, "n": n}),
        result: to_value(&result),
        human,
        violation,
    })
}

fn enumerate(s: i64, rmax: i64) -> wbu_core::Result<Outcome> {
    let report: EnumerationReport = enumerate_baskets(s, rmax)?;
    let mut human = String::new();
    let _ = writeln!(
        human,
        "linear part {s}, indices <= {rmax}: {} baskets",
        report.rows.len()
    );
    let _ = writeln!(
        human,
        "{:<28} {:>8} {:>5} {:>6}  realized",
        "basket", "aE^3", "r", "max a"
    );
    for row in &report.rows {
        let max_a = row.max_a.map_or("-".to_string(), |a| a.to_string());
        let realized = row
            .realized_by
            .map_or(String::new(), |(m, n)| format!("(1,{m},{n})"));
        let _ = writeln!(
            human,
            "{:<28} {:>8} {:>5} {:>6}  {realized}",
            row.basket.to_string(),
            row.ae3.to_string(),
            row.index,
            max_a
        );
    }
    for note in &report.family_notes {
        let _ = writeln!(
            human,
            "family {} + (R,{}) continues for R >= {} (truncated)",
            note.fixed, note.free_v, note.first_omitted
        );
    }
    Ok(Outcome {
        inputs: json!({"s": s, "rmax": rmax}),
        result: to_value(&report),
        human,
        violation: None,
    })
}

fn verify_paper(rmax: i64) -> Result<Outcome, CliError> {
    if rmax < 8 {
        return Err(CliError::Usage(format!(
            "--rmax must be at least 8, got {rmax}"
        )));
    }
    let outcomes: Vec<CriterionOutcome> = audit::run_all(rmax)?;
    let mut human = String::new();
    for o in &outcomes {
        let _ = writeln!(human, "{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(
        human,
        "{} of {} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    let violation = outcomes
        .iter()
        .find(|o| !o.passed)
        .map(|o| json!({"assertion": o.name, "criterion": o.id, "detail": o.failure}));
    Ok(Outcome {
        inputs: json!({"rmax": rmax}),
        result: to_value(&outcomes),
        human,
        violation,
    })
}

#[derive(Debug)]
enum CliError {
    Domain(wbu_core::Error),
    Usage(String),
}

impl From<wbu_core::Error> for CliError {
    fn from(e: wbu_core::Error) -> Self {
        CliError::Domain(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Colength { .. } => "colength",
        Command::Ideal { .. } => "ideal",
        Command::Contrib { .. } => "contrib",
        Command::Basket { .. } => "basket",
        Command::Wbu { .. } => "wbu",
        Command::Tower { .. } => "tower",
        Command::Enumerate { .. } => "enumerate",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    Ok(match *cmd {
        Command::Colength { l, m, brute } => colength(l, m, brute)?,
        Command::Ideal { wx, wy, wz, i } => ideal(wx, wy, wz, i)?,
        Command::Contrib { r, b, i } => contrib(r, b, i)?,
        Command::Basket {
            ref basket,
            ae3,
            maxa,
            colengths,
            dim_d,
            discrepancy,
        } => self::basket(basket, ae3, maxa, colengths, dim_d, discrepancy)?,
        Command::Wbu { a, b } => wbu(a, b)?,
        Command::Tower { m, n } => tower(m, n)?,
        Command::Enumerate { s, rmax } => enumerate(s, rmax)?,
        Command::VerifyPaper { rmax } => verify_paper(rmax)?,
    })
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let json_requested = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (EXIT_OK, e.to_string());
            }
            if json_requested {
                let envelope = Envelope {
                    command: String::new(),
                    inputs: Value::Null,
                    result: Value::Null,
                    status: Status::Error,
                    violation: Some(json!({"message": e.to_string()})),
                };
                return (EXIT_USAGE, render_json(&envelope));
            }
            return (EXIT_USAGE, e.to_string());
        }
    };

    let name = command_name(&cli.command);
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let (status, code) = if outcome.violation.is_some() {
                (Status::Violation, EXIT_VIOLATION)
            } else {
                (Status::Ok, EXIT_OK)
            };
            if cli.json {
                let envelope = Envelope {
                    command: name.to_string(),
                    inputs: outcome.inputs,
                    result: outcome.result,
                    status,
                    violation: outcome.violation,
                };
                (code, render_json(&envelope))
            } else {
                let mut text = outcome.human;
                if let Some(v) = outcome.violation {
                    let _ = writeln!(text, "VIOLATION: {v}");
                }
                (code, text)
            }
        }
        Err(e) => {
            if cli.json {
                let envelope = Envelope {
                    command: name.to_string(),
                    inputs: Value::Null,
                    result: Value::Null,
                    status: Status::Error,
                    violation: Some(json!({"message": e.to_string()})),
                };
                (EXIT_USAGE, render_json(&envelope))
            } else {
                (EXIT_USAGE, format!("error: {e}\n"))
            }
        }
    }
}

fn render_json(envelope: &Envelope) -> String {
    let mut s = serde_json::to_string_pretty(envelope).expect("envelope serializes");
    s.push('\n');
    s
}

use std::fmt::Debug;
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use flipdepth::car::{
    admissible_splits, blowup_step, depth_bound, depth_formula, depth_search_tree, CARGerm,
    SearchConfig,
};
use flipdepth::kawakita::{
    chain_simulate, chain_simulate_b, depth_identity, nonnegativity_check, nonnegativity_check_b,
    O3CaseA, O3CaseB, SubCase,
};
use flipdepth::ledger::{induction_certificate, validate_trace, FactorizationTrace, LedgerError};
use flipdepth::neighborhood::{key_check, ENCase, KeyOptions};
use flipdepth::riemannroch::{
    aw_upper_bound, case_data, case_depth_check, cd2_basket, delta_chi, meets_threshold,
    ContractionCase,
};
use flipdepth::singular::{basket_of, Basket, TerminalClass};
use flipdepth::verify::{self, VerifyConfig};
use flipdepth::{rat_to_string, Rat};

/// Largest integer every JSON reader represents exactly.
const SAFE_INT: u64 = 1 << 53;

#[derive(Parser)]
#[command(
    name = "flipdepth",
    version,
    about = "Depth of terminal 3-fold singularities"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Basket and aw / sigma / xi of a terminal class
    Basket { input: String },
    /// Depth (exact or bounded) of a class or a cA/r germ
    Depth { input: String },
    /// Minimal w-resolution tree of a cA/r germ
    Resolve {
        input: String,
        /// Maximum nesting of blow-ups
        #[arg(long, env = "DEPTH_SEARCH_LIMIT")]
        limit: Option<i64>,
    },
    /// One weighted blow-up of a cA/r germ; all admissible splits if r1, r2 are omitted
    Blowup { input: String },
    /// K_Y.C_Y for an extremal neighborhood case
    En { input: String },
    /// Riemann-Roch bound for a contraction case, or delta chi for explicit data
    Rr { input: String },
    /// cD/2 blow-up chain and depth identity
    O3 { input: String },
    /// Validate a factorization trace
    Trace { input: String },
    /// Run the built-in property sweeps
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only this criterion (1-8)
    #[arg(long)]
    criterion: Option<u8>,
    #[arg(long, env = "FLIPDEPTH_CYCLIC_MAX_R")]
    cyclic_max_r: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_CAR_MAX_R")]
    car_max_r: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_CAR_MAX_LAMBDA")]
    car_max_lambda: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_CAR_MAX_EXTRA")]
    car_max_extra: Option<usize>,
    #[arg(long, env = "FLIPDEPTH_RR_MAX_RPRIME")]
    rr_max_rprime: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_EN_EXCEPTIONAL_MAX_R")]
    en_exceptional_max_r: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_EN_SEMISTABLE_MAX_R")]
    en_semistable_max_r: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_EN_IIB_MAX")]
    en_iib_max: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_O3_MAX_A")]
    o3_max_a: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_O3_MAX_D")]
    o3_max_d: Option<i64>,
    #[arg(long, env = "FLIPDEPTH_O3_CASES")]
    o3_cases: Option<usize>,
    #[arg(long, env = "FLIPDEPTH_LEDGER_TRACES")]
    ledger_traces: Option<usize>,
    #[arg(long, env = "FLIPDEPTH_SEED")]
    seed: Option<u64>,
}

impl VerifyArgs {
    fn config(&self) -> VerifyConfig {
        let mut c = VerifyConfig::default();
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { c.$f = v; })* };
        }
        set!(
            cyclic_max_r,
            car_max_r,
            car_max_lambda,
            car_max_extra,
            rr_max_rprime,
            en_exceptional_max_r,
            en_semistable_max_r,
            en_iib_max,
            o3_max_a,
            o3_max_d,
            o3_cases,
            ledger_traces,
            seed
        );
        c
    }
}

enum Failure {
    Schema(String),
    Domain {
        kind: String,
        message: String,
        details: Map<String, Value>,
    },
}

impl Failure {
    fn domain<E: std::error::Error + Debug>(e: E) -> Self {
        let dbg = format!("{e:?}");
        let kind: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
        Failure::Domain {
            kind,
            message: e.to_string(),
            details: Map::new(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Schema(_) => 1,
            Failure::Domain { .. } => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Schema(m) => json!({"error": {"kind": "schema", "message": m}}),
            Failure::Domain {
                kind,
                message,
                details,
            } => {
                let mut e = Map::new();
                e.insert("kind".into(), json!("domain"));
                e.insert("type".into(), json!(kind));
                e.insert("message".into(), json!(message));
                e.extend(details.clone());
                json!({ "error": e })
            }
        }
    }
}

fn domain<E: std::error::Error + Debug>(e: E) -> Failure {
    Failure::domain(e)
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input.trim_start().starts_with('{') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Schema(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| Failure::Schema(format!("{input}: {e}")))
}

fn parse<T: DeserializeOwned>(v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Schema(e.to_string()))
}

fn parse_rat(v: &Value, field: &str) -> Result<Rat, Failure> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => {
            return Err(Failure::Schema(format!(
                "{field} must be an integer or a \"p/q\" string"
            )))
        }
    };
    Rat::from_str(s.trim())
        .map_err(|_| Failure::Schema(format!("{field}: cannot parse {s:?} as a rational")))
}

fn take(obj: &mut Value, key: &str) -> Option<Value> {
    obj.as_object_mut().and_then(|m| m.remove(key))
}

fn basket_json(b: &Basket) -> Value {
    let entries: Vec<Value> = b.entries().iter().map(|e| json!([e.b, e.r, e.n])).collect();
    json!({"entries": entries, "aw": b.aw(), "sigma": b.sigma(), "xi": b.xi()})
}

fn parse_basket(v: &Value, field: &str) -> Result<Basket, Failure> {
    let triples: Vec<(i64, i64, u64)> =
        serde_json::from_value(v.clone()).map_err(|e| Failure::Schema(format!("{field}: {e}")))?;
    Basket::new(triples).map_err(domain)
}

/// A germ given directly or as a `cA` / `cyclic` class.
fn parse_germ(v: Value) -> Result<CARGerm, Failure> {
    if v.get("class").is_some() {
        return match parse::<TerminalClass>(v)? {
            TerminalClass::CA(g) => Ok(g),
            TerminalClass::Cyclic(q) => CARGerm::from_cyclic(&q).map_err(domain),
            other => Err(Failure::Schema(format!(
                "expected a cA or cyclic germ, got {other:?}"
            ))),
        };
    }
    parse(v)
}

fn cmd_basket(v: Value) -> Result<Value, Failure> {
    let cls: TerminalClass = parse(v)?;
    Ok(basket_json(&basket_of(&cls).map_err(domain)?))
}

fn cmd_depth(v: Value) -> Result<Value, Failure> {
    if v.get("class").is_some() {
        let cls: TerminalClass = parse(v)?;
        let b = depth_bound(&cls).map_err(domain)?;
        return Ok(if b.exact {
            json!({"dep": b.upper, "exact": true})
        } else {
            json!({"lower": b.lower, "upper": b.upper, "exact": false})
        });
    }
    let g: CARGerm = parse(v)?;
    let dep = if g.is_gorenstein() {
        0
    } else {
        depth_formula(&g).map_err(domain)?
    };
    Ok(json!({"dep": dep, "exact": true}))
}

fn cmd_resolve(v: Value, limit: Option<i64>) -> Result<Value, Failure> {
    let g = parse_germ(v)?;
    let tree = depth_search_tree(&g, &SearchConfig { limit }).map_err(domain)?;
    Ok(json!({"dep": tree.depth, "tree": to_value(&tree)}))
}

fn cmd_blowup(mut v: Value) -> Result<Value, Failure> {
    let r1 = take(&mut v, "r1");
    let r2 = take(&mut v, "r2");
    let g = match take(&mut v, "germ") {
        Some(germ) => parse_germ(germ)?,
        None => parse_germ(v)?,
    };
    let splits = match (r1, r2) {
        (Some(a), Some(b)) => vec![(parse::<i64>(a)?, parse::<i64>(b)?)],
        (None, None) => admissible_splits(&g),
        _ => return Err(Failure::Schema("give both r1 and r2 or neither".into())),
    };
    let results = splits
        .into_iter()
        .map(|(r1, r2)| {
            let res = blowup_step(&g, r1, r2).map_err(domain)?;
            Ok(json!({"r1": r1, "r2": r2, "cyclic_points": to_value(&res.cyclic_points), "residual": to_value(&res.residual)}))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(json!({"lambda": g.lambda(), "nu1": g.nu(1), "t": g.tvalue(), "blowups": results}))
}

fn cmd_en(mut v: Value) -> Result<Value, Failure> {
    let r1 = take(&mut v, "r1").map(parse::<i64>).transpose()?;
    let kx_c = take(&mut v, "kx_c")
        .map(|k| parse_rat(&k, "kx_c"))
        .transpose()?;
    let case: ENCase = parse(v)?;
    let verdict = key_check(&case, &KeyOptions { r1, kx_c }).map_err(domain)?;
    Ok(to_value(&verdict))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaInput {
    a_over_n: Value,
    e3: Value,
    basket_y: Value,
    basket_x: Value,
}

fn cmd_rr(mut v: Value) -> Result<Value, Failure> {
    if v.get("case").is_none() {
        let d: DeltaInput = parse(v)?;
        let delta = delta_chi(
            &parse_rat(&d.a_over_n, "a_over_n")?,
            &parse_rat(&d.e3, "e3")?,
            &parse_basket(&d.basket_y, "basket_y")?,
            &parse_basket(&d.basket_x, "basket_x")?,
        );
        return Ok(
            json!({"delta": rat_to_string(&delta), "meets_threshold": meets_threshold(&delta)}),
        );
    }
    let aw = take(&mut v, "aw").map(parse::<i64>).transpose()?;
    let case: ContractionCase = parse(v)?;
    if let ContractionCase::E11 = case {
        return Ok(json!({"depth_check": to_value(&case_depth_check(&case, 0).map_err(domain)?)}));
    }
    let bound = aw_upper_bound(&case).map_err(domain)?;
    let data = case_data(&case).map_err(domain)?;
    let mut out = json!({
        "aw_bound": bound,
        "aw_sufficient": data.aw_sufficient,
        "basket_y": basket_json(&data.basket_y),
    });
    if bound >= 0 {
        let basket_x = cd2_basket(bound).map_err(domain)?;
        let delta = delta_chi(&data.a_over_n, &data.e3, &data.basket_y, &basket_x);
        out["delta_at_bound"] = json!(rat_to_string(&delta));
    }
    if let Some(aw) = aw {
        out["depth_check"] = to_value(&case_depth_check(&case, aw).map_err(domain)?);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct O3Input {
    case: SubCase,
    a: i64,
    d: i64,
    #[serde(default)]
    alpha: Option<i64>,
    #[serde(default, rename = "suppA")]
    supp_a: Vec<(i64, i64)>,
    #[serde(default, rename = "suppB")]
    supp_b: Vec<(i64, i64)>,
    #[serde(default, rename = "depQ3")]
    dep_q3: i64,
    #[serde(default)]
    k_max: Option<i64>,
}

fn cmd_o3(v: Value) -> Result<Value, Failure> {
    let inp: O3Input = parse(v)?;
    let k_max = inp.k_max.unwrap_or(inp.a);
    let (nonneg, stages) = match inp.case {
        SubCase::A => {
            let alpha = inp
                .alpha
                .ok_or_else(|| Failure::Schema("case A needs alpha".into()))?;
            let case = O3CaseA::new(inp.a, inp.d, alpha, inp.supp_a, inp.supp_b).map_err(domain)?;
            let report = nonnegativity_check(&case).map_err(domain)?;
            (
                to_value(&report),
                to_value(&chain_simulate(&case, k_max).map_err(domain)?),
            )
        }
        SubCase::B => {
            let case = O3CaseB::new(inp.a, inp.d, inp.supp_a, inp.supp_b).map_err(domain)?;
            let report = nonnegativity_check_b(&case).map_err(domain)?;
            (
                to_value(&report),
                to_value(&chain_simulate_b(&case, k_max).map_err(domain)?),
            )
        }
    };
    let id = depth_identity(inp.case, inp.a, inp.d, inp.dep_q3).map_err(domain)?;
    Ok(json!({"nonnegativity": nonneg, "stages": stages, "depth_identity": to_value(&id)}))
}

fn cmd_trace(v: Value) -> Result<Value, Failure> {
    let t: FactorizationTrace = parse(v)?;
    match validate_trace(&t) {
        Ok(verdict) => Ok(json!({
            "valid": verdict.valid,
            "induction_certificate": induction_certificate(&t),
            "steps": to_value(&verdict.steps),
        })),
        Err(e) => {
            let mut f = Failure::domain(e.clone());
            if let Failure::Domain { details, .. } = &mut f {
                match e {
                    LedgerError::RuleViolation { path, rule } => {
                        details.insert("index".into(), json!(path[0]));
                        details.insert("path".into(), json!(path));
                        details.insert("rule".into(), json!(rule));
                    }
                    LedgerError::ChainBreak {
                        path,
                        expected,
                        found,
                    } => {
                        details.insert("index".into(), json!(path[0]));
                        details.insert("path".into(), json!(path));
                        details.insert("expected".into(), json!(expected));
                        details.insert("found".into(), json!(found));
                    }
                }
            }
            Err(f)
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Value, Failure> {
    let cfg = args.config();
    let reports = match args.criterion {
        Some(id) => vec![verify::run_one(id, &cfg)
            .ok_or_else(|| Failure::Schema(format!("criterion {id} is not in 1..=8")))?],
        None => verify::run_all(&cfg),
    };
    let passed = reports.iter().all(|r| r.passed);
    let out = json!({"passed": passed, "criteria": to_value(&reports)});
    if passed {
        Ok(out)
    } else {
        let mut details = Map::new();
        details.insert("report".into(), out);
        Err(Failure::Domain {
            kind: "VerificationFailed".into(),
            message: "some criteria failed".into(),
            details,
        })
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Integers outside the exactly representable range become strings.
fn portable(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            let big = n.as_i64().map_or_else(
                || n.as_u64().is_some_and(|u| u > SAFE_INT),
                |i| i.unsigned_abs() > SAFE_INT,
            );
            if big {
                Value::String(n.to_string())
            } else {
                Value::Number(n)
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(portable).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, portable(v))).collect()),
        other => other,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                match val {
                    Value::Object(_) | Value::Array(_) if !is_flat(val) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(val))),
                }
            }
        }
        Value::Array(a) => {
            for (i, val) in a.iter().enumerate() {
                if is_flat(val) {
                    out.push_str(&format!("{pad}- {}\n", inline(val)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    render_text(val, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{v}"),
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            print!("{s}");
        }
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let load = |input: &str| -> Result<Value, Failure> {
        let text = read_input(input)?;
        serde_json::from_str(&text).map_err(|e| Failure::Schema(format!("invalid JSON: {e}")))
    };
    match &cli.command {
        Command::Basket { input } => cmd_basket(load(input)?),
        Command::Depth { input } => cmd_depth(load(input)?),
        Command::Resolve { input, limit } => cmd_resolve(load(input)?, *limit),
        Command::Blowup { input } => cmd_blowup(load(input)?),
        Command::En { input } => cmd_en(load(input)?),
        Command::Rr { input } => cmd_rr(load(input)?),
        Command::O3 { input } => cmd_o3(load(input)?),
        Command::Trace { input } => cmd_trace(load(input)?),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&portable(v), cli.output);
            ExitCode::SUCCESS
        }
        Err(f) => {
            // errors stay machine-readable regardless of --output
            println!("{}", portable(f.to_json()));
            ExitCode::from(f.exit_code())
        }
    }
}

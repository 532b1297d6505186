use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use lech_core::asymptotic::{
    assemble_power_family, derivative_criterion, eval_bound, family_colength_identity, family_increments,
    large_mult_threshold, maximize_bound, power_family, SeriesSpec,
};
use lech_core::inequalities::{random_set_system, search_counterexample, verify, verify_sets, InequalityId};
use lech_core::multiplicity::{hs_multiplicity, mixed_multiplicities_general, mixed_multiplicity_2d};
use lech_core::parse::parse_ideal;
use lech_core::ratpow::{adjoin_power, check_it_closure, check_it_rational, expand_adjoint_power};
use lech_core::rings::RingBase;
use lech_core::rng::XorShift;
use lech_core::search::{lm_search, SearchOptions, DEFAULT_VISIT_CAP};
use lech_core::{ring_colength, ring_integral_closure, ring_multiplicity, LechError, MonomialIdeal, Result, RingSpec};

#[derive(Parser)]
#[command(name = "lech", version, about = "Multiplicities, colengths and Lech-type inequalities for monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the JSON record {op, inputs, result, certificate?} instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,
    /// Suppress the run manifest.
    #[arg(long, global = true)]
    no_manifest: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Length of R/I.
    Colength(RingIdeal),
    /// Hilbert-Samuel multiplicity e(I).
    Mult(RingIdeal),
    /// Mixed multiplicities of two ideals.
    Mixed(MixedArgs),
    /// Integral closure of I in the ring.
    Closure(RingIdeal),
    /// Rational power I^{b/a}, or the expansion of (I, T^a)^{n/a}.
    Ratpow(RatpowArgs),
    /// Colength formulas for powers of (I, T^m) against direct computation.
    RatpowCheck(RatpowCheckArgs),
    /// Largest e(I) / (d! l(R/I)) over ideals up to a colength budget.
    LmSearch(LmSearchArgs),
    /// Check one inequality on given inputs.
    Verify(VerifyArgs),
    /// Check an inequality over every ideal up to a colength budget.
    Hunt(HuntArgs),
    /// Exponential lower bound from a Hilbert series.
    Bound(BoundArgs),
    /// Colength identity for the assembled family J_{N,k}.
    FamilyCheck(FamilyArgs),
}

#[derive(Args)]
struct RingIdeal {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    ideal: String,
}

#[derive(Args)]
struct MixedArgs {
    #[arg(long, default_value = "poly:2")]
    ring: String,
    #[arg(long = "i")]
    first: String,
    #[arg(long = "j")]
    second: String,
}

#[derive(Args)]
struct RatpowArgs {
    #[arg(long, default_value = "poly:2")]
    ring: String,
    #[arg(long)]
    ideal: String,
    /// Exponent b/a.
    #[arg(long, conflicts_with_all = ["adjoint", "n"])]
    power: Option<String>,
    /// Expand (I, T^a)^{n/a} and compare with the direct rational power.
    #[arg(long, requires = "n")]
    adjoint: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct RatpowCheckArgs {
    #[arg(long, default_value = "poly:2")]
    ring: String,
    #[arg(long)]
    ideal: String,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    r: u32,
}

#[derive(Args)]
struct LmSearchArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    budget: u64,
    /// Report a violation when some ratio exceeds p/q.
    #[arg(long)]
    ceiling: Option<String>,
    /// Score every ideal rather than only integrally closed ones.
    #[arg(long)]
    all_ideals: bool,
    #[arg(long, default_value_t = DEFAULT_VISIT_CAP)]
    visit_cap: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    ineq: String,
    #[arg(long)]
    ring: Option<String>,
    /// Ideal; give it twice (I then J) for the mixed entries.
    #[arg(long)]
    ideal: Vec<String>,
    /// Distinguished variable, by name or index.
    #[arg(long)]
    var: Option<String>,
    /// Set system for DILUTED_IE_SETS, e.g. "1,2|2,3".
    #[arg(long)]
    sets: Option<String>,
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long)]
    ineq: String,
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, default_value_t = 8)]
    budget: u64,
    /// Number of random set systems for DILUTED_IE_SETS.
    #[arg(long, default_value_t = 100)]
    count: usize,
}

#[derive(Args)]
struct BoundArgs {
    /// `ci:n:D1,..`, `explicit:l0,..;tail=...`, or `ratfn:num/den`.
    #[arg(long, required_unless_present = "large_mult")]
    series: Option<String>,
    /// Evaluate at this point instead of only maximizing.
    #[arg(long)]
    x: Option<f64>,
    /// Threshold C(d) for the large-multiplicity bound.
    #[arg(long, value_name = "D", conflicts_with_all = ["series", "x"])]
    large_mult: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Increments l(I_j/I_{j+1}), comma separated.
    #[arg(long, conflicts_with_all = ["ideal", "random"])]
    increments: Option<String>,
    /// Base ideal of the family I_n = I^n.
    #[arg(long, conflicts_with = "random")]
    ideal: Option<String>,
    #[arg(long, default_value = "poly:2")]
    ring: String,
    /// Family length N (with --ideal).
    #[arg(long = "N", default_value_t = 2)]
    big_n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Use integral closures of the powers.
    #[arg(long)]
    closed: bool,
    /// Check this many seeded random increment sequences.
    #[arg(long)]
    random: Option<usize>,
}

enum Status {
    Ok,
    Violation,
    Resource,
}

struct Outcome {
    op: &'static str,
    inputs: Value,
    result: Value,
    certificate: Option<Value>,
    text: String,
    status: Status,
}

impl Outcome {
    fn new(op: &'static str, inputs: Value, result: Value, text: String) -> Self {
        Outcome { op, inputs, result, certificate: None, text, status: Status::Ok }
    }

    fn record(&self) -> Value {
        let mut v = json!({ "op": self.op, "inputs": self.inputs, "result": self.result });
        if let Some(c) = &self.certificate {
            v["certificate"] = c.clone();
        }
        v
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn ring(text: &str) -> Result<RingSpec> {
    text.parse()
}

fn ideal_in(spec: &RingSpec, text: &str) -> Result<MonomialIdeal> {
    parse_ideal(text, &spec.names())
}

fn show(spec: &RingSpec, ideal: &MonomialIdeal) -> String {
    ideal.format_with(&spec.names())
}

fn rational(text: &str) -> Result<BigRational> {
    text.trim()
        .parse()
        .map_err(|_| LechError::Input(format!("`{}` is not a rational p/q", text)))
}

fn poly_only(spec: &RingSpec, what: &str) -> Result<()> {
    if spec.is_poly() {
        Ok(())
    } else {
        Err(LechError::Input(format!("{} works in a power series ring", what)))
    }
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Violation
    }
}

fn cmd_colength(a: &RingIdeal) -> Result<Outcome> {
    let spec = ring(&a.ring)?;
    let i = spec.canonical(&ideal_in(&spec, &a.ideal)?)?;
    let l = ring_colength(&i, &spec)?;
    let inputs = json!({ "ring": spec.to_string(), "ideal": show(&spec, &i) });
    Ok(Outcome::new("colength", inputs, json!({ "colength": l }), l.to_string()))
}

fn cmd_mult(a: &RingIdeal) -> Result<Outcome> {
    let spec = ring(&a.ring)?;
    let i = spec.canonical(&ideal_in(&spec, &a.ideal)?)?;
    let inputs = json!({ "ring": spec.to_string(), "ideal": show(&spec, &i) });
    let e = ring_multiplicity(&i, &spec)?;
    let mut result = json!({ "multiplicity": e });
    if !matches!(spec.base(), RingBase::Arrangement { .. }) {
        result["profile"] = to_value(&hs_multiplicity(&i, &spec)?);
    }
    Ok(Outcome::new("mult", inputs, result, e.to_string()))
}

fn cmd_mixed(a: &MixedArgs) -> Result<Outcome> {
    let spec = ring(&a.ring)?;
    let i = spec.canonical(&ideal_in(&spec, &a.first)?)?;
    let j = spec.canonical(&ideal_in(&spec, &a.second)?)?;
    let inputs = json!({ "ring": spec.to_string(), "i": show(&spec, &i), "j": show(&spec, &j) });
    let general = mixed_multiplicities_general(&i, &j, &spec)?;
    let d = spec.dim();
    let mut text: Vec<String> = general
        .iter()
        .enumerate()
        .map(|(k, e)| format!("e(I^[{}]|J^[{}]) = {}", d - k, k, e))
        .collect();
    let mut result = json!({ "mixed": general });
    if spec.is_poly() && d == 2 {
        let two = mixed_multiplicity_2d(&i, &j)?;
        text.push(format!(
            "length formula: {}{}",
            two.value,
            if two.closed_inputs { " (inputs closed first)" } else { "" }
        ));
        result["length_formula"] = to_value(&two);
    }
    Ok(Outcome::new("mixed", inputs, result, text.join("\n")))
}

fn cmd_closure(a: &RingIdeal) -> Result<Outcome> {
    let spec = ring(&a.ring)?;
    let i = spec.canonical(&ideal_in(&spec, &a.ideal)?)?;
    let c = ring_integral_closure(&i, &spec)?;
    let inputs = json!({ "ring": spec.to_string(), "ideal": show(&spec, &i) });
    let result = json!({
        "closure": show(&spec, &c),
        "colength": ring_colength(&c, &spec)?,
        "input_closed": c == i,
    });
    Ok(Outcome::new("closure", inputs, result, show(&spec, &c)))
}

fn cmd_ratpow(a: &RatpowArgs) -> Result<Outcome> {
    let spec = ring(&a.ring)?;
    poly_only(&spec, "ratpow")?;
    let i = ideal_in(&spec, &a.ideal)?;
    let names = spec.names();
    if let (Some(adj), Some(n)) = (a.adjoint, a.n) {
        let mut wide = names.clone();
        wide.push("T".into());
        let expanded = expand_adjoint_power(&i, adj, n)?;
        let direct = adjoin_power(&i, adj).rational_power(n as u64, adj as u64)?;
        let matches = expanded == direct;
        let inputs = json!({ "ring": spec.to_string(), "ideal": i.format_with(&names), "a": adj, "n": n });
        let result = json!({
            "expansion": expanded.format_with(&wide),
            "direct": direct.format_with(&wide),
            "matches": matches,
        });
        let text = format!(
            "expansion: {}\ndirect:    {}\nmatch: {}",
            expanded.format_with(&wide),
            direct.format_with(&wide),
            matches
        );
        let mut out = Outcome::new("ratpow", inputs, result, text);
        out.status = verdict(matches);
        return Ok(out);
    }
    let Some(power) = &a.power else {
        return Err(LechError::Input("ratpow needs --power b/a or --adjoint a --n n".into()));
    };
    let p = rational(power)?;
    let (b, den) = (p.numer(), p.denom());
    let (Ok(b), Ok(den)) = (u64::try_from(b), u64::try_from(den)) else {
        return Err(LechError::Input("the exponent must be a nonnegative rational".into()));
    };
    let r = i.rational_power(b, den)?;
    let inputs = json!({ "ring": spec.to_string(), "ideal": i.format_with(&names), "power": format!("{}/{}", b, den) });
    let result = json!({ "ideal": r.format_with(&names), "colength": r.colength()? });
    Ok(Outcome::new("ratpow", inputs, result, r.format_with(&names)))
}

fn cmd_ratpow_check(a: &RatpowCheckArgs) -> Result<Outcome> {
    let spec = ring(&a.ring)?;
    poly_only(&spec, "ratpow-check")?;
    let i = ideal_in(&spec, &a.ideal)?;
    let rational = check_it_rational(&i, a.m, a.n, a.r)?;
    let mut lines = vec![format!(
        "rational power: formula {} direct {} match {}",
        rational.formula, rational.direct, rational.matches
    )];
    let mut ok = rational.matches;
    let mut result = json!({ "rational": to_value(&rational) });
    if a.r == 0 {
        let closure = check_it_closure(&i, a.m, a.n)?;
        lines.push(format!(
            "closure of power: formula {} direct {} match {}",
            closure.formula, closure.direct, closure.matches
        ));
        ok &= closure.matches;
        result["closure"] = to_value(&closure);
    }
    result["matches"] = json!(ok);
    let inputs = json!({
        "ring": spec.to_string(),
        "ideal": show(&spec, &i),
        "m": a.m,
        "n": a.n,
        "r": a.r,
    });
    let mut out = Outcome::new("ratpow-check", inputs, result, lines.join("\n"));
    out.status = verdict(ok);
    Ok(out)
}

fn cmd_lm_search(a: &LmSearchArgs) -> Result<Outcome> {
    let spec = ring(&a.ring)?;
    let mut opts = SearchOptions::new(a.budget);
    if let Some(c) = &a.ceiling {
        opts = opts.ceiling(rational(c)?);
    }
    opts.all_ideals = a.all_ideals;
    opts.visit_cap = a.visit_cap;
    let report = lm_search(&spec, &opts)?;
    let inputs = json!({
        "ring": spec.to_string(),
        "budget": a.budget,
        "ceiling": opts.ceiling.as_ref().map(|c| c.to_string()),
        "all_ideals": a.all_ideals,
    });
    let mut text = format!(
        "best ratio {} at {} (colength {}, multiplicity {})\n{} ideals visited, {} scored, {}",
        report.best_ratio,
        report.witness.text,
        report.witness.colength,
        report.witness.multiplicity,
        report.ideals_visited,
        report.ideals_scored,
        if report.exhaustive { "exhaustive" } else { "not exhaustive" }
    );
    let status = if let Some(w) = &report.ceiling_violated {
        text.push_str(&format!("\nceiling exceeded by {} (colength {})", w.text, w.colength));
        Status::Violation
    } else if !report.exhaustive {
        Status::Resource
    } else {
        Status::Ok
    };
    let certificate = report.ceiling_violated.as_ref().unwrap_or(&report.witness);
    let certificate = to_value(certificate);
    let mut result = to_value(&report);
    if let Value::Object(m) = &mut result {
        m.remove("witness");
        m.remove("ceiling_violated");
    }
    let mut out = Outcome::new("lm-search", inputs, result, text);
    out.certificate = Some(certificate);
    out.status = status;
    Ok(out)
}

fn default_ring(id: InequalityId) -> &'static str {
    match id {
        InequalityId::Lech | InequalityId::Mumford2d | InequalityId::Mixed2dA | InequalityId::Mixed2dB => "poly:2",
        InequalityId::BestLechConj => "poly:4",
        InequalityId::SncSemistable => "xyz+T:1",
        InequalityId::ConeSemistable => "elliptic:3+T:1",
        _ => "poly:3",
    }
}

fn parse_var(spec: &RingSpec, text: &str) -> Result<usize> {
    let names = spec.names();
    if let Some(i) = names.iter().position(|n| n == text) {
        return Ok(i);
    }
    match text.trim_start_matches('x').parse::<usize>() {
        Ok(i) if i < names.len() => Ok(i),
        _ => Err(LechError::Input(format!("unknown variable `{}` (ring variables: {})", text, names.join(", ")))),
    }
}

fn parse_sets(text: &str) -> Result<Vec<Vec<u32>>> {
    text.split('|')
        .map(|part| {
            part.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| LechError::Input(format!("bad set element `{}`", s))))
                .collect()
        })
        .collect()
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let id: InequalityId = a.ineq.parse()?;
    if id == InequalityId::DilutedIeSets {
        let Some(sets) = &a.sets else {
            return Err(LechError::Input("DILUTED_IE_SETS needs --sets, e.g. \"1,2|2,3\"".into()));
        };
        let sets = parse_sets(sets)?;
        let report = verify_sets(&sets)?;
        let text = format!("{}: lhs {} rhs {} holds {}", id, report.lhs, report.rhs, report.holds);
        let mut out = Outcome::new("verify", json!({ "ineq": id.name(), "sets": sets }), to_value(&report), text);
        out.status = verdict(report.ok());
        return Ok(out);
    }
    let spec = ring(a.ring.as_deref().unwrap_or(default_ring(id)))?;
    let ideals: Vec<MonomialIdeal> = a
        .ideal
        .iter()
        .map(|s| ideal_in(&spec, s).and_then(|i| spec.canonical(&i)))
        .collect::<Result<_>>()?;
    let var = a.var.as_deref().map(|v| parse_var(&spec, v)).transpose()?;
    let report = verify(id, &spec, &ideals, var)?;
    let inputs = json!({
        "ineq": id.name(),
        "ring": spec.to_string(),
        "ideals": report.inputs,
        "var": var.map(|v| spec.names()[v].clone()),
    });
    let mut text = format!(
        "{}: lhs {} rhs {} {}{}",
        id,
        report.lhs,
        report.rhs,
        if report.holds { "holds" } else { "FAILS" },
        if report.equality { ", equality" } else { "" }
    );
    if report.expect_strict && report.equality {
        text.push_str(" (strict inequality expected)");
    }
    let mut out = Outcome::new("verify", inputs, to_value(&report), text);
    out.status = verdict(report.ok());
    if !report.ok() {
        out.certificate = Some(json!({ "ideals": report.inputs }));
    }
    Ok(out)
}

fn cmd_hunt(a: &HuntArgs, seed: u64) -> Result<Outcome> {
    let id: InequalityId = a.ineq.parse()?;
    if id == InequalityId::DilutedIeSets {
        let mut rng = XorShift::new(seed);
        let mut failure = None;
        for _ in 0..a.count {
            let sets = random_set_system(&mut rng, 8, 6);
            let report = verify_sets(&sets)?;
            if !report.ok() {
                failure = Some((sets, report));
                break;
            }
        }
        let inputs = json!({ "ineq": id.name(), "count": a.count, "seed": seed });
        let text = match &failure {
            Some((sets, _)) => format!("{}: counterexample {:?}", id, sets),
            None => format!("{}: {} random set systems, no failure", id, a.count),
        };
        let result = json!({ "checked": a.count, "failure": failure.as_ref().map(|(_, r)| to_value(r)) });
        let mut out = Outcome::new("hunt", inputs, result, text);
        if let Some((sets, _)) = failure {
            out.certificate = Some(json!({ "sets": sets }));
            out.status = Status::Violation;
        }
        return Ok(out);
    }
    let spec = ring(a.ring.as_deref().unwrap_or(default_ring(id)))?;
    let report = search_counterexample(id, &spec, a.budget)?;
    let inputs = json!({ "ineq": id.name(), "ring": spec.to_string(), "budget": a.budget });
    let mut text = format!(
        "{} on {}: {} cases up to colength {}, {}, {} equality cases",
        id,
        spec,
        report.checked,
        a.budget,
        if report.exhaustive { "exhaustive" } else { "not exhaustive" },
        report.equality_cases.len()
    );
    let mut out;
    if let Some(f) = &report.failure {
        text.push_str(&format!(
            "\n{} at {}: lhs {} rhs {}",
            if id.is_conjecture() { "counterexample" } else { "violation" },
            f.inputs.join(" ; "),
            f.lhs,
            f.rhs
        ));
        let cert = json!({ "ideals": f.inputs });
        out = Outcome::new("hunt", inputs, to_value(&report), text);
        out.certificate = Some(cert);
        out.status = Status::Violation;
    } else {
        out = Outcome::new("hunt", inputs, to_value(&report), text);
        if !report.exhaustive {
            out.status = Status::Resource;
        }
    }
    Ok(out)
}

fn cmd_bound(a: &BoundArgs) -> Result<Outcome> {
    if let Some(d) = a.large_mult {
        let c = large_mult_threshold(d)?;
        let inputs = json!({ "large_mult": d });
        return Ok(Outcome::new("bound", inputs, json!({ "threshold": c }), format!("C({}) = {:.4}", d, c)));
    }
    let text = a.series.as_deref().expect("required by clap");
    let series: SeriesSpec = text.parse()?;
    let inputs = json!({ "series": series.to_string(), "x": a.x });
    let mut lines = Vec::new();
    let mut result = json!({});
    if let Some(x) = a.x {
        let v = eval_bound(&series, x)?;
        lines.push(format!("bound at x = {}: {:.6}", x, v));
        result["value_at_x"] = json!(v);
    }
    let best = maximize_bound(&series)?;
    lines.push(format!("x* = {:.6}, value = {:.6}", best.x, best.value));
    result["x_star"] = json!(best.x);
    result["value"] = json!(best.value);
    match derivative_criterion(&series) {
        Ok(c) => {
            lines.push(format!(
                "f(1) = {}, f'(1) = {}, lim-unstable: {}",
                c.f1,
                c.fp1,
                if c.lim_unstable { "yes" } else { "no" }
            ));
            result["criterion"] = to_value(&c);
        }
        Err(LechError::Input(_)) => result["criterion"] = Value::Null,
        Err(e) => return Err(e),
    }
    Ok(Outcome::new("bound", inputs, result, lines.join("\n")))
}

fn parse_increments(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| LechError::Input(format!("bad increment `{}`", s))))
        .collect()
}

fn cmd_family(a: &FamilyArgs, seed: u64) -> Result<Outcome> {
    if let Some(count) = a.random {
        let mut rng = XorShift::new(seed);
        let mut failure = None;
        for _ in 0..count {
            let len = rng.range(1, 6) as usize;
            let increments: Vec<u64> = (0..len).map(|_| rng.range(0, 9)).collect();
            let (k, r) = (rng.range(0, 4) as u32, rng.range(0, 3) as u32);
            let (x, y) = family_colength_identity(&increments, k, r);
            if x != y {
                failure = Some(json!({ "increments": increments, "k": k, "r": r, "a": x.to_string(), "b": y.to_string() }));
                break;
            }
        }
        let text = match &failure {
            Some(f) => format!("identity fails at {}", f),
            None => format!("{} random instances, both sides agree", count),
        };
        let mut out = Outcome::new("family-check", json!({ "random": count, "seed": seed }), json!({ "failure": failure }), text);
        if failure.is_some() {
            out.certificate = failure;
            out.status = Status::Violation;
        }
        return Ok(out);
    }
    if let Some(text) = &a.increments {
        let increments = parse_increments(text)?;
        let (x, y) = family_colength_identity(&increments, a.k, a.r);
        let ok = x == y;
        let inputs = json!({ "increments": increments, "k": a.k, "r": a.r });
        let result = json!({ "side_a": x.to_string(), "side_b": y.to_string(), "matches": ok });
        let mut out = Outcome::new("family-check", inputs, result, format!("{} = {} ({})", x, y, if ok { "agree" } else { "MISMATCH" }));
        out.status = verdict(ok);
        return Ok(out);
    }
    let Some(text) = &a.ideal else {
        return Err(LechError::Input("family-check needs --increments, --ideal or --random".into()));
    };
    let spec = ring(&a.ring)?;
    poly_only(&spec, "family-check")?;
    if a.r == 0 {
        return Err(LechError::Input("the assembled family needs r >= 1".into()));
    }
    let i = ideal_in(&spec, text)?;
    let family = power_family(&i, a.big_n, a.closed)?;
    let increments = family_increments(&family)?;
    let (x, y) = family_colength_identity(&increments, a.k, a.r);
    let j = assemble_power_family(&family, a.k, a.r as usize)?;
    let direct = j.colength()?;
    let e_j = hs_multiplicity(&j, &RingSpec::poly(j.dim()))?.multiplicity;
    let a_coef = hs_multiplicity(&i, &spec)?.multiplicity;
    let floor = a_coef * (a.k as u64).pow(a.r) * (a.big_n as u64).pow(a.r + spec.dim() as u32);
    let colength_ok = x == y && x == direct.into();
    let mult_ok = e_j >= floor;
    let inputs = json!({
        "ring": spec.to_string(),
        "ideal": show(&spec, &i),
        "N": a.big_n,
        "k": a.k,
        "r": a.r,
        "closed": a.closed,
    });
    let result = json!({
        "increments": increments,
        "side_a": x.to_string(),
        "side_b": y.to_string(),
        "direct_colength": direct,
        "multiplicity": e_j,
        "multiplicity_floor": floor,
        "matches": colength_ok,
        "dominates": mult_ok,
    });
    let text = format!(
        "colength: {} = {} (direct {})\nmultiplicity {} >= {}: {}",
        x, y, direct, e_j, floor, mult_ok
    );
    let mut out = Outcome::new("family-check", inputs, result, text);
    out.status = verdict(colength_ok && mult_ok);
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Colength(a) => cmd_colength(a),
        Command::Mult(a) => cmd_mult(a),
        Command::Mixed(a) => cmd_mixed(a),
        Command::Closure(a) => cmd_closure(a),
        Command::Ratpow(a) => cmd_ratpow(a),
        Command::RatpowCheck(a) => cmd_ratpow_check(a),
        Command::LmSearch(a) => cmd_lm_search(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Hunt(a) => cmd_hunt(a, cli.seed),
        Command::Bound(a) => cmd_bound(a),
        Command::FamilyCheck(a) => cmd_family(a, cli.seed),
    }
}

fn emit_manifest(cli: &Cli, out: &Outcome, wall_ms: f64) -> std::io::Result<()> {
    if cli.no_manifest {
        return Ok(());
    }
    let argv: Vec<String> = std::env::args().collect();
    let manifest = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": argv.join(" "),
        "inputs": out.inputs,
        "seed": cli.seed,
        "wall_time_ms": wall_ms,
        "result": out.result,
    });
    let text = serde_json::to_string_pretty(&manifest).expect("serializable");
    match &cli.manifest {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            eprintln!("{}", text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("LECH_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let start = Instant::now();
    let out = match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out.record()).expect("serializable"));
    } else {
        println!("{}", out.text);
    }
    if let Err(e) = emit_manifest(&cli, &out, wall_ms) {
        eprintln!("error: cannot write manifest: {}", e);
        return ExitCode::from(2);
    }
    ExitCode::from(match out.status {
        Status::Ok => 0,
        Status::Violation => 1,
        Status::Resource => 3,
    })
}

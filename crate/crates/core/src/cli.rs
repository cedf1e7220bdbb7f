//! Command-line front end. [`dispatch`] parses arguments, runs one command
//! and returns the exit code with buffered output; the `ffice` binary only
//! prints it.
//!
//! Exit codes: 0 success, 1 mismatch or failed relation, 2 usage or input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::exactalg::{equal, to_json_value, EqualityMode, Monomial, RatFun, Var, DEFAULT_PROBABILISTIC_POINTS};
use crate::fmatrix::{dump, SiteContext};
use crate::models::{
    enumerate_with_count, partition_column_product, partition_fmatrix, transfer_with_count, Model, ModelError,
    ModelSpecA, ModelSpecC, PartitionShape,
};
use crate::relations::{run as run_relation, Relation, RelationReport};
use crate::weights::{render_table, table_entries, Table};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(name = "ffice", version, about = "Exact six-vertex models, F-matrices and their partition functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Compare by evaluation at random rational points instead of canonical forms.
    #[arg(long, global = true)]
    pub probabilistic: bool,
    /// Number of evaluation points in probabilistic mode.
    #[arg(long, global = true, default_value_t = DEFAULT_PROBABILISTIC_POINTS)]
    pub points: usize,
    /// Seed for probabilistic mode (recorded in every report).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Refuse probabilistic equality.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weight tables.
    Weights {
        #[command(subcommand)]
        action: WeightsCmd,
    },
    /// Check Yang-Baxter, unitarity, caduceus and free-fermion relations.
    Verify {
        #[arg(value_enum)]
        relation: RelationArg,
    },
    /// F-matrix data.
    Fmatrix {
        #[command(subcommand)]
        action: FmatrixCmd,
    },
    /// Partition function of one model by one method.
    Partition(PartitionArgs),
    /// Partition function by every applicable method, checked for agreement.
    Compare(ModelArgs),
}

#[derive(Subcommand, Debug)]
pub enum WeightsCmd {
    /// Print one table with pattern pictures.
    Show {
        #[arg(long, value_enum)]
        ice: IceArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum FmatrixCmd {
    /// Emit F, F* and Δ as JSON.
    Dump {
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_enum, default_value_t = TypeArg::A)]
        kind: TypeArg,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    /// Partition, e.g. 3,1,0; its length is the rank unless --rank is given.
    #[arg(long, allow_hyphen_values = false)]
    pub lambda: String,
    /// Number of rows (type A) or rank r (type C).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Evaluate at a point, e.g. v=1/4,z1=2,z2=3 (u, v, wK, zK accepted).
    #[arg(long)]
    pub numeric: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    pub method: MethodArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IceArg {
    Gamma,
    Delta,
    Gg,
    Gd,
    Dg,
    Dd,
    Cap,
}

impl IceArg {
    fn table(self) -> Table {
        match self {
            IceArg::Gamma => Table::Gamma,
            IceArg::Delta => Table::Delta,
            IceArg::Gg => Table::GammaGamma,
            IceArg::Gd => Table::GammaDelta,
            IceArg::Dg => Table::DeltaGamma,
            IceArg::Dd => Table::DeltaDelta,
            IceArg::Cap => Table::Cap,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationArg {
    FreeFermion,
    Rtt,
    Rrr,
    Unitarity,
    Caduceus,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeArg {
    A,
    C,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    TypeA,
    TypeC,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Enumerate,
    Transfer,
    Column,
    Fmatrix,
    Closed,
}

impl MethodArg {
    const ALL: [MethodArg; 5] = [MethodArg::Enumerate, MethodArg::Transfer, MethodArg::Column, MethodArg::Fmatrix, MethodArg::Closed];

    fn name(self) -> &'static str {
        match self {
            MethodArg::Enumerate => "enumerate",
            MethodArg::Transfer => "transfer",
            MethodArg::Column => "column",
            MethodArg::Fmatrix => "fmatrix",
            MethodArg::Closed => "closed",
        }
    }
}

/// Exit code plus buffered stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let g = &cli.global;
    if g.strict && g.probabilistic {
        return Outcome::usage("--probabilistic cannot be combined with --strict");
    }
    let ctx = RunContext {
        json: g.json,
        mode: if g.probabilistic {
            EqualityMode::Probabilistic { k: g.points.max(1), seed: g.seed }
        } else {
            EqualityMode::Canonical
        },
        seed: g.seed,
    };
    let mut out = match &cli.command {
        Command::Weights { action: WeightsCmd::Show { ice } } => weights_show(&ctx, *ice),
        Command::Verify { relation } => verify(&ctx, *relation),
        Command::Fmatrix { action: FmatrixCmd::Dump { n, kind } } => fmatrix_dump(&ctx, *n, *kind),
        Command::Partition(args) => partition(&ctx, args),
        Command::Compare(args) => compare(&ctx, args),
    };
    if g.probabilistic && !g.json {
        out.stdout.insert_str(0, &banner(g.points.max(1), g.seed));
    } else if g.probabilistic {
        out.stderr.insert_str(0, &banner(g.points.max(1), g.seed));
    }
    out
}

fn banner(k: usize, seed: u64) -> String {
    format!("*** probabilistic equality: {k} random points, seed {seed}; results are not proofs ***\n")
}

struct RunContext {
    json: bool,
    mode: EqualityMode,
    seed: u64,
}

impl RunContext {
    fn equality_json(&self) -> Value {
        match self.mode {
            EqualityMode::Canonical => json!("canonical"),
            EqualityMode::Probabilistic { k, seed } => json!({"probabilistic": {"points": k, "seed": seed}}),
        }
    }

    /// Report envelope shared by every JSON command.
    fn envelope(&self, command: &str, body: Value) -> String {
        let mut map = serde_json::Map::new();
        map.insert("version".into(), json!(VERSION));
        map.insert("command".into(), json!(command));
        map.insert("equality".into(), self.equality_json());
        map.insert("seed".into(), json!(self.seed));
        map.insert("results".into(), body);
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
        s.push('\n');
        s
    }
}

// ---------------------------------------------------------------------------
// weights

fn weights_show(ctx: &RunContext, ice: IceArg) -> Outcome {
    let t = ice.table();
    if ctx.json {
        let rows: Vec<Value> = table_entries(t)
            .iter()
            .map(|e| json!({"pattern": e.name, "spins": e.spins, "weight": to_json_value(&e.weight), "human": e.weight.to_string()}))
            .collect();
        return Outcome::ok(ctx.envelope("weights show", json!({"table": t.cli_name(), "entries": rows})));
    }
    Outcome::ok(render_table(t))
}

// ---------------------------------------------------------------------------
// verify

fn verify(ctx: &RunContext, which: RelationArg) -> Outcome {
    let relations: Vec<Relation> = match which {
        RelationArg::All => Relation::ALL.to_vec(),
        RelationArg::FreeFermion => vec![Relation::FreeFermion],
        RelationArg::Rtt => vec![Relation::Rtt],
        RelationArg::Rrr => vec![Relation::Rrr],
        RelationArg::Unitarity => vec![Relation::Unitarity],
        RelationArg::Caduceus => vec![Relation::Caduceus],
    };
    let mut reports: Vec<RelationReport> = Vec::new();
    for rel in relations.iter().copied() {
        let mut batch = run_relation(rel);
        for r in &mut batch {
            r.pass = equal(&r.lhs, &r.rhs, ctx.mode);
        }
        reports.extend(batch);
    }
    let all_pass = reports.iter().all(|r| r.pass);
    let code = if all_pass { EXIT_OK } else { EXIT_MISMATCH };
    let stdout = if ctx.json {
        ctx.envelope("verify", serde_json::to_value(&reports).expect("serializable"))
    } else {
        let mut s = String::new();
        for rel in &relations {
            let mine: Vec<&RelationReport> = reports.iter().filter(|r| r.relation == *rel).collect();
            let mut combos: Vec<&str> = mine.iter().map(|r| r.combo.as_str()).collect();
            combos.dedup();
            let passed = mine.iter().filter(|r| r.pass).count();
            let status = if passed == mine.len() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{status} {rel}: {passed}/{} ({} combination{} x {} boundaries)",
                mine.len(),
                combos.len(),
                if combos.len() == 1 { "" } else { "s" },
                mine.len() / combos.len().max(1)
            );
            for bad in mine.iter().filter(|r| !r.pass).take(3) {
                let _ = writeln!(s, "  {} {:?}: {} != {}", bad.combo, bad.boundary, bad.lhs, bad.rhs);
            }
        }
        s
    };
    Outcome { code, stdout, stderr: String::new() }
}

// ---------------------------------------------------------------------------
// fmatrix

fn fmatrix_dump(ctx: &RunContext, n: usize, kind: TypeArg) -> Outcome {
    let site_ctx = match kind {
        TypeArg::A => SiteContext::type_a(n),
        TypeArg::C if n.is_multiple_of(2) => SiteContext::type_c(n / 2),
        TypeArg::C => return Outcome::usage(format!("--type c needs an even --n, got {n}")),
    };
    match dump(&site_ctx) {
        Ok(d) => Outcome::ok(ctx.envelope("fmatrix dump", serde_json::to_value(&d).expect("serializable"))),
        Err(e) => Outcome::usage(e.to_string()),
    }
}

// ---------------------------------------------------------------------------
// partition and compare

/// Values given on the command line, keyed by the variable they fix.
/// `squared` marks values given for `v` or `z_k` rather than `u` or `w_k`.
#[derive(Debug, Default)]
struct NumericPoint {
    values: BTreeMap<Var, (BigRational, bool)>,
}

impl NumericPoint {
    fn parse(s: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (name, val) = item.split_once('=').ok_or_else(|| format!("expected name=value, got {item:?}"))?;
            let q = parse_rational(val.trim())?;
            let name = name.trim();
            let (var, squared) = match name {
                "u" => (Var::U, false),
                "v" => (Var::U, true),
                _ if name.starts_with('w') || name.starts_with('z') => {
                    let k: usize = name[1..].parse().map_err(|_| format!("unknown variable {name:?}"))?;
                    if k == 0 || k >= crate::exactalg::MAX_VARS {
                        return Err(format!("variable index out of range in {name:?}"));
                    }
                    (Var::w(k), name.starts_with('z'))
                }
                _ => return Err(format!("unknown variable {name:?}")),
            };
            if values.insert(var, (q, squared)).is_some() {
                return Err(format!("{name} given twice (or together with its square/root)"));
            }
        }
        Ok(NumericPoint { values })
    }

    /// Value of `z_k` (or of `v` for `k = 0`) when given.
    fn square_value(&self, var: Var) -> Option<BigRational> {
        self.values.get(&var).map(|(q, sq)| if *sq { q.clone() } else { q * q })
    }

    fn evaluate(&self, f: &RatFun) -> Result<BigRational, String> {
        // variables given through their squares need even exponents
        let halve: Vec<Var> = self.values.iter().filter(|(_, (_, sq))| *sq).map(|(v, _)| *v).collect();
        let even = f
            .num()
            .terms()
            .iter()
            .chain(f.den().terms())
            .all(|(m, _)| halve.iter().all(|&v| m.exp(v) % 2 == 0));
        if !even {
            return Err("the value involves square roots of the given parameters; pass u= or wK= instead".into());
        }
        let g = f.map_monomials(|m| {
            let mut out = *m;
            for &v in &halve {
                out.set_exp(v, m.exp(v) / 2);
            }
            out
        });
        let point = self.values.iter().map(|(v, (q, _))| (*v, q.clone())).collect();
        g.evaluate_at(&point).map_err(|e| e.to_string())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("bad rational {s:?}");
    match s.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn build_model(args: &ModelArgs) -> Result<Model, String> {
    let raw: Vec<&str> = args.lambda.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    let lambda: PartitionShape = args.lambda.parse().map_err(|e: ModelError| e.to_string())?;
    let rank = args.rank.unwrap_or(raw.len().max(lambda.length()));
    let model = match args.family {
        FamilyArg::TypeA => Model::A(ModelSpecA::new(rank, lambda).map_err(|e| e.to_string())?),
        FamilyArg::TypeC => Model::C(ModelSpecC::new(rank, lambda).map_err(|e| e.to_string())?),
    };
    Ok(model)
}

/// Rejects points where alternants or `Δ_C` vanish.
fn check_generic(model: &Model, point: &NumericPoint) -> Result<(), String> {
    let n = match model {
        Model::A(s) => s.n,
        Model::C(s) => s.r,
    };
    let z: Vec<Option<BigRational>> = (1..=n).map(|k| point.square_value(Var::w(k))).collect();
    for (i, zi) in z.iter().enumerate() {
        let Some(zi) = zi else { continue };
        if zi.is_zero() {
            return Err(format!("singular specialization: z{} = 0", i + 1));
        }
        if matches!(model, Model::C(_)) && zi.abs().is_one() {
            return Err(format!("singular specialization: z{} = ±1 makes Δ_C vanish", i + 1));
        }
        for (j, zj) in z.iter().enumerate().skip(i + 1) {
            let Some(zj) = zj else { continue };
            if zi == zj {
                return Err(format!("singular specialization: z{} = z{}", i + 1, j + 1));
            }
            if matches!(model, Model::C(_)) && (zi * zj).is_one() {
                return Err(format!("singular specialization: z{} z{} = 1 makes Δ_C vanish", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

struct MethodValue {
    method: MethodArg,
    value: RatFun,
    states: Option<u64>,
}

fn run_method(model: &Model, method: MethodArg) -> Result<MethodValue, ModelError> {
    let (value, states) = match method {
        MethodArg::Enumerate => {
            let r = enumerate_with_count(model)?;
            (r.value, Some(r.states))
        }
        MethodArg::Transfer => {
            let r = transfer_with_count(model)?;
            (r.value, Some(r.states))
        }
        MethodArg::Column => (partition_column_product(model)?, None),
        MethodArg::Fmatrix => (partition_fmatrix(model)?, None),
        MethodArg::Closed => (model.closed_form()?, None),
    };
    Ok(MethodValue { method, value, states })
}

fn family_name(model: &Model) -> &'static str {
    match model {
        Model::A(_) => "type-a",
        Model::C(_) => "type-c",
    }
}

fn model_json(model: &Model) -> Value {
    json!({
        "family": family_name(model),
        "lambda": model.lambda().parts(),
        "rank": match model { Model::A(s) => s.n, Model::C(s) => s.r },
        "rows": model.rows(),
        "columns": model.columns(),
    })
}

fn value_json(mv: &MethodValue, numeric: Option<&BigRational>) -> Value {
    let mut v = json!({
        "method": mv.method.name(),
        "value": to_json_value(&mv.value),
        "human": mv.value.to_string(),
    });
    if let Some(s) = mv.states {
        v["states"] = json!(s);
    }
    if let Some(q) = numeric {
        v["numeric"] = json!(q.to_string());
    }
    v
}

fn prepare(args: &ModelArgs) -> Result<(Model, Option<NumericPoint>), String> {
    let model = build_model(args)?;
    let point = match &args.numeric {
        Some(s) => {
            let p = NumericPoint::parse(s)?;
            check_generic(&model, &p)?;
            Some(p)
        }
        None => None,
    };
    Ok((model, point))
}

fn partition(ctx: &RunContext, args: &PartitionArgs) -> Outcome {
    let (model, point) = match prepare(&args.model) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let mv = match run_method(&model, args.method) {
        Ok(mv) => mv,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let numeric = match &point {
        Some(p) => match p.evaluate(&mv.value) {
            Ok(q) => Some(q),
            Err(e) => return Outcome::usage(e),
        },
        None => None,
    };
    if ctx.json {
        let body = json!({"model": model_json(&model), "result": value_json(&mv, numeric.as_ref())});
        return Outcome::ok(ctx.envelope("partition", body));
    }
    let mut s = match &numeric {
        Some(q) => format!("{q}\n"),
        None => format!("{}\n", mv.value),
    };
    if let Some(n) = mv.states {
        let _ = writeln!(s, "admissible states: {n}");
    }
    Outcome::ok(s)
}

/// First term (in canonical order) where two polynomials differ.
fn first_difference(a: &RatFun, b: &RatFun) -> String {
    fn diff(p: &crate::exactalg::ZPoly, q: &crate::exactalg::ZPoly) -> Option<String> {
        let show = |t: Option<&(Monomial, num_bigint::BigInt)>| match t {
            Some((m, c)) => RatFun::from_poly(crate::exactalg::ZPoly::term(*m, c.clone())).to_string(),
            None => "(none)".into(),
        };
        let n = p.terms().len().max(q.terms().len());
        (0..n).find(|&k| p.terms().get(k) != q.terms().get(k)).map(|k| format!("{} vs {}", show(p.terms().get(k)), show(q.terms().get(k))))
    }
    diff(a.num(), b.num())
        .map(|d| format!("numerator term: {d}"))
        .or_else(|| diff(a.den(), b.den()).map(|d| format!("denominator term: {d}")))
        .unwrap_or_else(|| "no canonical difference".into())
}

fn compare(ctx: &RunContext, args: &ModelArgs) -> Outcome {
    let (model, point) = match prepare(args) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for method in MethodArg::ALL {
        match run_method(&model, method) {
            Ok(mv) => results.push(mv),
            Err(ModelError::TooLarge { what, size, max }) => skipped.push((method, format!("{what} = {size} > {max}"))),
            Err(ModelError::FMatrix(crate::fmatrix::FMatrixError::LimitExceeded { n, max })) => {
                skipped.push((method, format!("N = {n} > {max}")))
            }
            Err(e) => return Outcome::usage(format!("{}: {e}", method.name())),
        }
    }
    if results.is_empty() {
        return Outcome::usage("no method applies within the size limits");
    }
    let reference = &results[0];
    let mismatch = results.iter().skip(1).find(|mv| !equal(&reference.value, &mv.value, ctx.mode));
    let mut numerics = Vec::new();
    if let Some(p) = &point {
        for mv in &results {
            match p.evaluate(&mv.value) {
                Ok(q) => numerics.push(Some(q)),
                Err(e) => return Outcome::usage(e),
            }
        }
    } else {
        numerics.resize(results.len(), None);
    }
    let code = if mismatch.is_some() { EXIT_MISMATCH } else { EXIT_OK };
    if ctx.json {
        let values: Vec<Value> = results.iter().zip(&numerics).map(|(mv, q)| value_json(mv, q.as_ref())).collect();
        let skipped: Vec<Value> = skipped.iter().map(|(m, why)| json!({"method": m.name(), "reason": why})).collect();
        let mut body = json!({"model": model_json(&model), "agree": mismatch.is_none(), "methods": values, "skipped": skipped});
        if let Some(bad) = mismatch {
            body["first_difference"] = json!({
                "methods": [reference.method.name(), bad.method.name()],
                "detail": first_difference(&reference.value, &bad.value),
            });
        }
        return Outcome { code, stdout: ctx.envelope("compare", body), stderr: String::new() };
    }
    let mut s = String::new();
    let shown = |k: usize| match &numerics[k] {
        Some(q) => q.to_string(),
        None => results[k].value.to_string(),
    };
    let _ = writeln!(s, "value: {}", shown(0));
    for (k, mv) in results.iter().enumerate() {
        let status = if equal(&reference.value, &mv.value, ctx.mode) { "agrees" } else { "DIFFERS" };
        let states = mv.states.map(|n| format!(" ({n} admissible states)")).unwrap_or_default();
        let _ = writeln!(s, "  {:<10} {status}{states}", mv.method.name());
        if status == "DIFFERS" {
            let _ = writeln!(s, "             {}", shown(k));
        }
    }
    for (m, why) in &skipped {
        let _ = writeln!(s, "  {:<10} skipped ({why})", m.name());
    }
    match mismatch {
        None => {
            let _ = writeln!(s, "all {} methods agree", results.len());
        }
        Some(bad) => {
            let _ = writeln!(s, "MISMATCH between {} and {}", reference.method.name(), bad.method.name());
            let _ = writeln!(s, "  first differing {}", first_difference(&reference.value, &bad.value));
        }
    }
    Outcome { code, stdout: s, stderr: String::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        dispatch(std::iter::once("ffice").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&[]).code, EXIT_USAGE);
        assert_eq!(run(&["verify", "nonsense"]).code, EXIT_USAGE);
        assert_eq!(run(&["partition", "type-a", "--lambda", "1,2"]).code, EXIT_USAGE);
        assert_eq!(run(&["verify", "rtt", "--strict", "--probabilistic"]).code, EXIT_USAGE);
        assert_eq!(run(&["fmatrix", "dump", "--n", "3", "--type", "c"]).code, EXIT_USAGE);
    }

    #[test]
    fn closed_type_c_rank_one() {
        let out = run(&["partition", "type-c", "--lambda", "0", "--method", "closed"]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.stdout.trim(), "-u*w1 + w1^-1");
    }

    #[test]
    fn numeric_evaluation() {
        let out = run(&["partition", "type-a", "--lambda", "1,0", "--numeric", "v=1/4,z1=2,z2=3"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        // (z2 - v z1)(z1 + z2) = (3 - 1/2) * 5
        assert_eq!(out.stdout.trim(), "25/2");
        let sing = run(&["partition", "type-a", "--lambda", "1,0", "--numeric", "v=1/4,z1=2,z2=2"]);
        assert_eq!(sing.code, EXIT_USAGE);
        assert!(sing.stderr.contains("singular"));
        let roots = run(&["partition", "type-c", "--lambda", "0", "--numeric", "v=4,z1=4"]);
        assert_eq!(roots.code, EXIT_USAGE);
        let ok = run(&["partition", "type-c", "--lambda", "0", "--numeric", "u=2,w1=3"]);
        // 1/3 - 2*3
        assert_eq!(ok.stdout.trim(), "-17/3");
    }

    #[test]
    fn compare_agrees() {
        let out = run(&["compare", "type-a", "--lambda", "1,0"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
        assert!(out.stdout.contains("all 5 methods agree"));
    }

    #[test]
    fn json_is_deterministic_and_labelled() {
        let a = run(&["compare", "type-c", "--lambda", "1", "--json"]);
        let b = run(&["compare", "type-c", "--lambda", "1", "--json"]);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["version"], VERSION);
        assert_eq!(v["equality"], "canonical");
        assert_eq!(v["seed"], 0);
        assert_eq!(v["results"]["agree"], true);
    }

    #[test]
    fn probabilistic_prints_banner() {
        let out = run(&["verify", "unitarity", "--probabilistic", "--seed", "7"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.starts_with("*** probabilistic"));
    }

    #[test]
    fn first_difference_reports_a_term() {
        let a = crate::exactalg::parse_human("z1 + z2").unwrap();
        let b = crate::exactalg::parse_human("z1 + 2*z2").unwrap();
        assert!(first_difference(&a, &b).starts_with("numerator term"));
    }
}

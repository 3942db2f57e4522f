use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use caustic_core::arith::ext::render_t;
use caustic_core::caustic::delta::delta1_estimate;
use caustic_core::caustic::report::{self, CausticClassReport, PathSelection, ReportOptions};
use caustic_core::caustic::terms::Theorem1Terms;
use caustic_core::caustic::verify::verify;
use caustic_core::caustic::{base_points, Source};
use caustic_core::curve::point::render_point;
use caustic_core::curve::PlaneCurve;
use caustic_core::parse::{parse_extension, parse_point};
use caustic_core::CausticError;

#[derive(Parser)]
#[command(name = "caustic", version, about = "Class of caustics by reflection of plane algebraic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: the three computations of mclass and the class.
    Class(ClassArgs),
    /// Terms of the closed formula.
    Terms(SourceArgs),
    /// Base points of the reflected map.
    BasePoints(SourceArgs),
    /// Local data of every branch at every base point.
    Branches(SourceArgs),
    /// Class of the mirror, by polar curves and by the valuation ledger.
    DualDegree(CurveArgs),
    /// All computations plus the structural self-checks.
    Verify {
        #[command(flatten)]
        args: SourceArgs,
        /// Number of random matrices for the equivariance check.
        #[arg(long, default_value_t = 20)]
        matrices: usize,
    },
    /// Brocard-Lemoyne count and its corrections.
    BlCompare(SourceArgs),
    /// One row per source.
    Table(TableArgs),
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// Homogeneous polynomial in x, y, z over Q(i).
    #[arg(long, allow_hyphen_values = true)]
    curve: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
    /// Truncation cap for branch series, in powers of the local coordinate.
    #[arg(long)]
    max_trunc: Option<usize>,
}

#[derive(Args, Clone)]
struct PathArgs {
    /// Modulus in t of an extension for source coordinates.
    #[arg(long)]
    ext: Option<String>,
    /// Degree of the reflected map onto the caustic: a number or `auto`.
    #[arg(long, value_parser = parse_delta1)]
    delta1: Option<Delta1>,
    #[arg(long, value_enum, default_value_t = Paths::All)]
    paths: Paths,
}

#[derive(Args, Clone)]
struct SourceArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Source point `a:b:c`.
    #[arg(long, allow_hyphen_values = true)]
    source: String,
    #[command(flatten)]
    opts: PathArgs,
}

#[derive(Args, Clone)]
struct ClassArgs {
    #[command(flatten)]
    inner: SourceArgs,
    /// Also run each path alone and report its wall time. Output is then no longer byte-stable.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Clone)]
struct TableArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Source points `a:b:c`; repeat the flag for more rows.
    #[arg(long, required = true, allow_hyphen_values = true)]
    source: Vec<String>,
    #[command(flatten)]
    opts: PathArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Paths {
    T1,
    Ledger,
    Flemma,
    All,
}

impl From<Paths> for PathSelection {
    fn from(p: Paths) -> Self {
        match p {
            Paths::T1 => PathSelection::Theorem1,
            Paths::Ledger => PathSelection::Ledger,
            Paths::Flemma => PathSelection::FundamentalLemma,
            Paths::All => PathSelection::All,
        }
    }
}

#[derive(Clone, Copy)]
enum Delta1 {
    Fixed(usize),
    Auto,
}

fn parse_delta1(s: &str) -> Result<Delta1, String> {
    if s == "auto" {
        return Ok(Delta1::Auto);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(Delta1::Fixed(k)),
        _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
    }
}

const DELTA1_TRIALS: usize = 3;

enum Failure {
    Error(CausticError),
    /// The report was printed but its computations disagree.
    Inconsistent(Vec<String>),
}

impl From<CausticError> for Failure {
    fn from(e: CausticError) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(), Failure>;

fn exit_code(e: &CausticError) -> u8 {
    match e {
        CausticError::Parse(_)
        | CausticError::ZeroPolynomial
        | CausticError::NotReduced
        | CausticError::DegreeTooSmall(_) => 1,
        CausticError::Degenerate(_) | CausticError::LineComponent => 2,
        _ => 3,
    }
}

fn load_curve(a: &CurveArgs) -> Result<PlaneCurve, CausticError> {
    let c = PlaneCurve::parse(&a.curve)?;
    Ok(match a.max_trunc {
        Some(n) => c.with_max_trunc(n),
        None => c,
    })
}

fn load_source(text: &str, ext: &Option<String>) -> Result<Source, CausticError> {
    match ext {
        None => Ok(Source::rational(parse_point(text, None)?)),
        Some(m) => {
            let ctx = parse_extension(m)?;
            let coords = parse_point(text, Some(&ctx))?;
            Ok(Source { ctx: Some(ctx), coords })
        }
    }
}

fn options(curve: &PlaneCurve, src: &Source, c: &CurveArgs, p: &PathArgs) -> Result<ReportOptions, CausticError> {
    let delta1 = match p.delta1 {
        None => None,
        Some(Delta1::Fixed(k)) => Some(k),
        Some(Delta1::Auto) => Some(delta1_estimate(curve, src, DELTA1_TRIALS, c.seed)?),
    };
    Ok(ReportOptions { paths: p.paths.into(), delta1, seed: c.seed })
}

/// Input echo plus the payload, with stable key order.
fn envelope(c: &CurveArgs, source: Option<&str>, ext: &Option<String>, body: impl Serialize) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("tool".into(), json!("caustic"));
    out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    out.insert("curve".into(), json!(c.curve));
    if let Some(s) = source {
        out.insert("source".into(), json!(s));
    }
    if let Some(e) = ext {
        out.insert("ext".into(), json!(e));
    }
    out.insert("seed".into(), json!(c.seed));
    match serde_json::to_value(body).expect("serializable report") {
        Value::Object(m) => out.extend(m),
        v => {
            out.insert("result".into(), v);
        }
    }
    Value::Object(out)
}

fn print_json(v: &Value) {
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("serializable value"));
}

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn terms_line(t: &Theorem1Terms) -> String {
    format!(
        "g={} f={} f'={} g'={} q'={} mu_I={} mu_J={} mu_S={} c'={}",
        t.g, t.f, t.f_prime, t.g_prime, t.q_prime, t.mu_i, t.mu_j, t.mu_s, t.c_prime
    )
}

fn print_report(r: &CausticClassReport) {
    println!("degree       {}", r.d);
    println!("dual degree  {}", r.dual_degree);
    println!("terms        {}", terms_line(&r.terms));
    println!(
        "mclass       theorem1={} ledger={} fundamental-lemma={}",
        opt(r.mclass_theorem1),
        opt(r.mclass_ledger),
        opt(r.mclass_flemma)
    );
    println!("delta1       {}", r.delta1);
    println!("class        {}", opt(r.class));
    println!("consistent   {}", r.consistent);
}

fn finish(r: &CausticClassReport) -> Outcome {
    if r.consistent {
        Ok(())
    } else {
        Err(Failure::Inconsistent(r.diagnostics.clone()))
    }
}

/// Wall time in milliseconds of each path run on its own.
fn path_timings(curve: &PlaneCurve, src: &Source, opts: &ReportOptions) -> Result<Vec<(&'static str, u128)>, CausticError> {
    let mut out = Vec::new();
    for (name, paths) in
        [("t1", PathSelection::Theorem1), ("ledger", PathSelection::Ledger), ("flemma", PathSelection::FundamentalLemma)]
    {
        let start = Instant::now();
        report::mclass(curve, src, &ReportOptions { paths, ..opts.clone() })?;
        out.push((name, start.elapsed().as_millis()));
    }
    Ok(out)
}

fn class(args: &ClassArgs) -> Outcome {
    let a = &args.inner;
    let curve = load_curve(&a.curve)?;
    let src = load_source(&a.source, &a.opts.ext)?;
    let opts = options(&curve, &src, &a.curve, &a.opts)?;
    let r = report::mclass(&curve, &src, &opts)?;
    let timings = if args.timing { Some(path_timings(&curve, &src, &opts)?) } else { None };
    if a.curve.json {
        let mut v = envelope(&a.curve, Some(&a.source), &a.opts.ext, &r);
        if let (Some(t), Value::Object(m)) = (&timings, &mut v) {
            let t: serde_json::Map<String, Value> = t.iter().map(|(k, ms)| (k.to_string(), json!(ms))).collect();
            m.insert("timing_ms".into(), Value::Object(t));
        }
        print_json(&v);
    } else {
        print_report(&r);
        if let Some(t) = &timings {
            let parts: Vec<String> = t.iter().map(|(k, ms)| format!("{k}={ms}ms")).collect();
            println!("timing       {}", parts.join(" "));
        }
    }
    finish(&r)
}

fn terms(a: &SourceArgs) -> Outcome {
    let curve = load_curve(&a.curve)?;
    let src = load_source(&a.source, &a.opts.ext)?;
    let t = report::theorem1_terms(&curve, &src)?;
    if a.curve.json {
        print_json(&envelope(&a.curve, Some(&a.source), &a.opts.ext, &t));
    } else {
        println!("{}", terms_line(&t));
        println!("source at infinity: {}", t.source_at_infinity);
    }
    Ok(())
}

#[derive(Serialize)]
struct BasePointRow {
    point: String,
    /// Modulus of the context of the coordinates, if any.
    context: Option<String>,
    count: usize,
}

fn base_points_cmd(a: &SourceArgs) -> Outcome {
    let curve = load_curve(&a.curve)?;
    let src = load_source(&a.source, &a.opts.ext)?;
    caustic_core::caustic::degeneracy_check(&curve, &src)?.into_result()?;
    let rows: Vec<BasePointRow> = base_points(&curve, &src)?
        .iter()
        .map(|s| BasePointRow {
            point: render_point(&s.point),
            context: s.ctx.as_ref().map(|c| render_t(c.modulus())),
            count: s.weight(),
        })
        .collect();
    if a.curve.json {
        print_json(&envelope(&a.curve, Some(&a.source), &a.opts.ext, json!({ "base_points": rows })));
    } else {
        for r in &rows {
            match &r.context {
                Some(m) => println!("{}  over t: {} = 0  ({} points)", r.point, m, r.count),
                None => println!("{}", r.point),
            }
        }
    }
    Ok(())
}

fn branches(a: &SourceArgs) -> Outcome {
    let curve = load_curve(&a.curve)?;
    let src = load_source(&a.source, &a.opts.ext)?;
    let opts = options(&curve, &src, &a.curve, &a.opts)?;
    let r = report::mclass(&curve, &src, &opts)?;
    if a.curve.json {
        print_json(&envelope(&a.curve, Some(&a.source), &a.opts.ext, json!({ "branches": r.branches })));
    } else {
        println!("{:<32} {:>6} {:>4} {:>3} {:>5} {:>6} {:>3} {:>8}", "point", "count", "case", "e", "i(T)", "beta1", "h", "h(map)");
        for b in &r.branches {
            println!(
                "{:<32} {:>6} {:>4} {:>3} {:>5} {:>6} {:>3} {:>8}",
                b.point,
                b.weight,
                b.case,
                b.e,
                b.i_tangent,
                b.beta1.as_deref().unwrap_or("-"),
                b.h,
                b.h_direct
            );
        }
    }
    Ok(())
}

fn dual_degree(a: &CurveArgs) -> Outcome {
    let curve = load_curve(a)?;
    let d = curve.dual_degree_paths()?;
    if a.json {
        print_json(&envelope(a, None, &None, json!({ "dual_degree": d.polar, "polar": d.polar, "ledger": d.ledger })));
    } else {
        println!("dual degree {} (polars {}, ledger {})", d.polar, d.polar, d.ledger);
    }
    Ok(())
}

fn verify_cmd(a: &SourceArgs, matrices: usize) -> Outcome {
    let curve = load_curve(&a.curve)?;
    let src = load_source(&a.source, &a.opts.ext)?;
    let opts = options(&curve, &src, &a.curve, &a.opts)?;
    let v = verify(&curve, &src, &opts, matrices)?;
    if a.curve.json {
        print_json(&envelope(&a.curve, Some(&a.source), &a.opts.ext, &v));
    } else {
        print_report(&v.report);
        for c in &v.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                println!("{mark}  {}", c.name);
            } else {
                println!("{mark}  {}: {}", c.name, c.detail);
            }
        }
    }
    if v.passed() {
        Ok(())
    } else {
        let mut d = v.report.diagnostics.clone();
        d.extend(v.checks.iter().filter(|c| !c.passed).map(|c| format!("check failed: {}", c.name)));
        Err(Failure::Inconsistent(d))
    }
}

fn bl_compare(a: &SourceArgs) -> Outcome {
    let curve = load_curve(&a.curve)?;
    let src = load_source(&a.source, &a.opts.ext)?;
    let bl = report::brocard_lemoyne(&curve, &src)?;
    let opts = options(&curve, &src, &a.curve, &a.opts)?;
    let r = report::mclass(&curve, &src, &opts)?;
    let m = r.mclass();
    let agrees = m == Some(bl.corrected());
    if a.curve.json {
        let body = json!({
            "brocard_lemoyne": bl,
            "correction_sum": bl.corrections.iter().sum::<usize>(),
            "mclass": m,
            "consistent": agrees && r.consistent,
        });
        print_json(&envelope(&a.curve, Some(&a.source), &a.opts.ext, body));
    } else {
        println!(
            "hatted terms  g^={} f^={} f'^={} g'^={} q'^={}",
            bl.g_hat, bl.f_hat, bl.f_prime_hat, bl.g_prime_hat, bl.q_prime_hat
        );
        println!("Brocard-Lemoyne  {}", bl.value);
        let [a0, a1, a2, a3] = bl.corrections;
        println!("corrections      {a0} + {a1} + {a2} + {a3}");
        println!("corrected        {}", bl.corrected());
        println!("mclass           {}", opt(m));
    }
    if agrees {
        finish(&r)
    } else {
        Err(Failure::Inconsistent(vec![format!(
            "Brocard-Lemoyne with corrections gives {}, mclass is {}",
            bl.corrected(),
            opt(m)
        )]))
    }
}

fn table(a: &TableArgs) -> Outcome {
    let curve = load_curve(&a.curve)?;
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for s in &a.source {
        let src = load_source(s, &a.opts.ext)?;
        let opts = options(&curve, &src, &a.curve, &a.opts)?;
        let r = report::mclass(&curve, &src, &opts)?;
        diagnostics.extend(r.diagnostics.iter().map(|d| format!("{s}: {d}")));
        rows.push((s.clone(), r));
    }
    if a.curve.json {
        let list: Vec<Value> = rows.iter().map(|(s, r)| envelope(&a.curve, Some(s), &a.opts.ext, r)).collect();
        print_json(&Value::Array(list));
    } else {
        println!("{:<36} {:>6} {:>6} {:>10}", "source", "mclass", "class", "consistent");
        for (s, r) in &rows {
            println!("{:<36} {:>6} {:>6} {:>10}", s, opt(r.mclass()), opt(r.class), r.consistent);
        }
    }
    if rows.iter().all(|(_, r)| r.consistent) {
        Ok(())
    } else {
        Err(Failure::Inconsistent(diagnostics))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let out = match &cli.command {
        Command::Class(a) => class(a),
        Command::Terms(a) => terms(a),
        Command::BasePoints(a) => base_points_cmd(a),
        Command::Branches(a) => branches(a),
        Command::DualDegree(a) => dual_degree(a),
        Command::Verify { args, matrices } => verify_cmd(args, *matrices),
        Command::BlCompare(a) => bl_compare(a),
        Command::Table(a) => table(a),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Inconsistent(diags)) => {
            for d in diags {
                eprintln!("{d}");
            }
            ExitCode::from(3)
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use meanbound::config::SuiteConfig;
use meanbound::error::{Error, Result};
use meanbound::matrix_io::read_spd;
use meanbound::number::parse_real;
use meanbound::report::{to_csv, Document, SuiteReport, TrialRecord};
use meanbound::{run_comparison_suite, run_operator_suite, run_scalar_suite, run_suites};
use meanbound_core::operator::evaluate_operator;
use meanbound_core::scalar::{compare_gap_bounds, evaluate, weighted_geometric, REPORTED_SM2_GAP};
use meanbound_core::{Branch, Depth, Family, OperatorFamily, ScalarPair, Weight};
use serde_json::json;

#[derive(Parser)]
#[command(name = "meanbound", version, about = "Evaluate and verify Young/Heinz mean inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scalar bound at a point.
    Bound(BoundArgs),
    /// Evaluate every scalar family and branch at a point.
    CheckScalar(PointArgs),
    /// Check an operator bound on two matrix files.
    CheckOperator(OperatorArgs),
    /// Compare the reverse gap bounds at a point.
    Compare(PointArgs),
    /// Run seeded verification suites.
    Suite(SuiteArgs),
    /// Reproduce the worked example at a = 1, b = 16, v = 1/8.
    Repro(FormatArg),
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    family: String,
    /// i / ii (lemma / proposition for zhao-wu-reverse).
    #[arg(long)]
    branch: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    /// Weight; fractions such as 1/8 are accepted.
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct OperatorArgs {
    /// theorem-t6, theorem-t66, corollary-c3 or corollary-c33.
    #[arg(long)]
    family: String,
    #[arg(long)]
    branch: String,
    /// Matrix file for A.
    #[arg(long = "a-file")]
    a_file: PathBuf,
    /// Matrix file for B.
    #[arg(long = "b-file")]
    b_file: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum SuiteKind {
    #[default]
    All,
    Scalar,
    Operator,
    Comparison,
}

#[derive(Args)]
struct SuiteArgs {
    /// Flat key = value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Which suites to run; `all` follows the family selection.
    #[arg(long, value_enum, default_value_t)]
    kind: SuiteKind,
    /// Overridden by MEANBOUND_SEED when set.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated families, or all / scalar / operator / comparison.
    #[arg(long)]
    families: Option<String>,
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    depths: Option<String>,
    #[arg(long = "v-range", allow_hyphen_values = true)]
    v_range: Option<String>,
    #[arg(long = "scalar-range")]
    scalar_range: Option<String>,
    #[arg(long = "cond-max")]
    cond_max: Option<String>,
    #[arg(long)]
    margin: Option<String>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long = "record-all")]
    record_all: bool,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Exit code 2: the input was rejected before anything was evaluated.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<meanbound_core::BoundError> for InputError {
    fn from(e: meanbound_core::BoundError) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = std::result::Result<bool, InputError>;

fn real(name: &str, s: &str) -> std::result::Result<f64, InputError> {
    parse_real(s).map_err(|e| InputError(format!("--{name}: {e}")))
}

fn print_records(format: Format, doc: &Document, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", doc.to_json()),
        Format::Csv => print!("{}", to_csv(&doc.results)),
        Format::Text => print!("{}", text()),
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn record_text(r: &TrialRecord) -> String {
    let mut s = format!("family: {}", r.family);
    if let Some(b) = &r.branch {
        s += &format!("\nbranch: {b}");
    }
    let i = &r.inputs;
    for (k, v) in [("a", i.a), ("b", i.b), ("v", i.v)] {
        if let Some(v) = v {
            s += &format!("\n{k}: {v}");
        }
    }
    if let Some(n) = i.n {
        s += &format!("\nn: {n}");
    }
    if let Some(d) = i.dim {
        s += &format!("\ndim: {d}");
    }
    s += &format!(
        "\nlhs: {}\nrhs: {}\ngap: {}\nhypothesis_ok: {}\nholds: {}\n",
        fmt_opt(r.lhs),
        fmt_opt(r.rhs),
        fmt_opt(r.gap),
        r.hypothesis_ok,
        r.holds
    );
    if let Some(d) = r.degenerate {
        s += &format!("degenerate: {d}\n");
    }
    s
}

fn parse_branch(family: Family, branch: Option<&str>) -> std::result::Result<(Branch, Option<String>), InputError> {
    if family == Family::ZhaoWuReverse {
        return match branch.unwrap_or("lemma") {
            "lemma" | "i" => Ok((Branch::I, Some("lemma".into()))),
            "proposition" | "ii" => Ok((Branch::II, Some("proposition".into()))),
            b => Err(InputError(format!("unknown form {b:?} (expected lemma or proposition)"))),
        };
    }
    if family.branches().is_empty() {
        return Ok((Branch::I, None));
    }
    let b = branch.ok_or_else(|| InputError(format!("{} requires --branch i or ii", family.name())))?;
    match Branch::parse(b) {
        Some(br @ (Branch::I | Branch::II)) => Ok((br, Some(br.name().into()))),
        _ => Err(InputError(format!("unknown branch {b:?} (expected i or ii)"))),
    }
}

fn cmd_bound(args: BoundArgs) -> CmdResult {
    let family = Family::parse(&args.family).ok_or_else(|| InputError(format!("unknown family {:?}", args.family)))?;
    let p = ScalarPair::new(real("a", &args.a)?, real("b", &args.b)?)?;
    let w = Weight::new(real("v", &args.v)?)?;
    let n = match (family.uses_depth(), args.n) {
        (true, None) => return Err(InputError(format!("{} requires --n", family.name()))),
        (_, n) => Depth::new(n.unwrap_or(1))?,
    };
    let (branch, label) = parse_branch(family, args.branch.as_deref())?;
    let r = evaluate(family, p, w, n, branch)?;
    let rec = TrialRecord::from_bound(&r, label, None);
    let config = json!({"command": "bound", "family": family.name(), "branch": rec.branch, "a": p.a(), "b": p.b(), "v": w.value(), "n": r.n});
    let doc = Document::new(config, vec![rec.clone()]);
    print_records(args.format, &doc, || record_text(&rec));
    Ok(!r.violated())
}

fn cmd_check_scalar(args: PointArgs) -> CmdResult {
    let p = ScalarPair::new(real("a", &args.a)?, real("b", &args.b)?)?;
    let w = Weight::new(real("v", &args.v)?)?;
    let n = Depth::new(args.n)?;
    let mut results = Vec::new();
    for f in Family::ALL {
        if f.uses_depth() && n.get() < f.min_depth() {
            continue;
        }
        let branches: Vec<(Branch, Option<String>)> = match f {
            Family::ZhaoWuReverse => vec![(Branch::I, Some("lemma".into())), (Branch::II, Some("proposition".into()))],
            _ if f.branches().is_empty() => vec![(Branch::I, None)],
            _ => f.branches().iter().map(|b| (*b, Some(b.name().to_string()))).collect(),
        };
        for (b, label) in branches {
            let r = evaluate(f, p, w, n, b)?;
            results.push(TrialRecord::from_bound(&r, label, None));
        }
    }
    let config = json!({"command": "check-scalar", "a": p.a(), "b": p.b(), "v": w.value(), "n": n.get()});
    let doc = Document::new(config, results);
    print_records(args.format, &doc, || {
        let mut s = format!("{:<24} {:<12} {:>24} {:>10} {:>6}\n", "family", "branch", "gap", "hypothesis", "holds");
        for r in &doc.results {
            s += &format!(
                "{:<24} {:<12} {:>24} {:>10} {:>6}\n",
                r.family,
                r.branch.as_deref().unwrap_or("-"),
                fmt_opt(r.gap),
                r.hypothesis_ok,
                r.holds
            );
        }
        s
    });
    Ok(doc.failures.is_empty())
}

fn cmd_check_operator(args: OperatorArgs) -> CmdResult {
    let family = OperatorFamily::parse(&args.family)
        .ok_or_else(|| InputError(format!("unknown operator family {:?}", args.family)))?;
    let branch = match Branch::parse(&args.branch) {
        Some(b @ (Branch::I | Branch::II)) => b,
        _ => return Err(InputError(format!("unknown branch {:?} (expected i or ii)", args.branch))),
    };
    let w = Weight::new(real("v", &args.v)?)?;
    let n = Depth::new(args.n)?;
    let a = read_spd(&args.a_file)?;
    let b = read_spd(&args.b_file)?;
    let r = evaluate_operator(family, &a, &b, w, n, branch).map_err(|e| InputError(e.to_string()))?;
    let rec = TrialRecord::from_operator(&r, None);
    let config = json!({
        "command": "check-operator",
        "family": family.name(),
        "branch": branch.name(),
        "a_file": args.a_file,
        "b_file": args.b_file,
        "v": w.value(),
        "n": n.get(),
    });
    let doc = Document::new(config, vec![rec.clone()]);
    print_records(args.format, &doc, || {
        format!("{}min_eig_gap: {}\ntol: {}\n", record_text(&rec), r.min_eig_gap, r.tol)
    });
    Ok(!r.violated())
}

fn cmd_compare(args: PointArgs) -> CmdResult {
    let p = ScalarPair::new(real("a", &args.a)?, real("b", &args.b)?)?;
    let w = Weight::new(real("v", &args.v)?)?;
    let r = compare_gap_bounds(p, w, Depth::new(args.n)?)?;
    let value = json!({
        "tool_version": meanbound::report::TOOL_VERSION,
        "config": {"command": "compare", "a": r.a, "b": r.b, "v": r.v, "n": r.n},
        "true_gap": r.true_gap,
        "entries": r.entries.iter().map(|e| json!({"label": e.label, "value": e.value, "hypothesis_ok": e.hypothesis_ok})).collect::<Vec<_>>(),
        "dominance": r.dominance.iter().map(|d| json!({"tighter": d.tighter, "looser": d.looser, "margin": d.margin})).collect::<Vec<_>>(),
        "tightest": r.tightest().map(|e| e.label),
    });
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializes")),
        Format::Csv => {
            println!("label,value,hypothesis_ok");
            for e in &r.entries {
                println!("{},{},{}", e.label, json!(e.value), e.hypothesis_ok);
            }
        }
        Format::Text => {
            println!("true gap: {}", r.true_gap);
            for e in &r.entries {
                let flag = if e.hypothesis_ok { "" } else { "  (hypothesis not met)" };
                println!("{:<10} {}{}", e.label, e.value, flag);
            }
            if let Some(t) = r.tightest() {
                println!("tightest: {}", t.label);
            }
        }
    }
    Ok(true)
}

fn suite_config(args: &SuiteArgs) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
        cfg.apply_kv(&text)?;
    }
    let pairs = [
        ("trials", args.trials.map(|x| x.to_string())),
        ("families", args.families.clone()),
        ("dims", args.dims.clone()),
        ("depths", args.depths.clone()),
        ("v_range", args.v_range.clone()),
        ("scalar_range", args.scalar_range.clone()),
        ("cond_max", args.cond_max.clone()),
        ("margin", args.margin.clone()),
        ("grid", args.grid.map(|x| x.to_string())),
        ("seed", args.seed.map(|x| x.to_string())),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    if let Ok(seed) = std::env::var("MEANBOUND_SEED") {
        cfg.set("seed", &seed)?;
    }
    if args.record_all {
        cfg.record_all = true;
    }
    Ok(cfg)
}

fn suite_text(r: &SuiteReport) -> String {
    let mut s = format!(
        "{:<11} {:<24} {:>8} {:>8} {:>8} {:>8}  {}\n",
        "suite", "family", "trials", "passes", "fails", "skips", "worst gap"
    );
    for f in &r.summaries {
        s += &format!(
            "{:<11} {:<24} {:>8} {:>8} {:>8} {:>8}  {}\n",
            f.suite,
            f.family,
            f.trials,
            f.passes,
            f.failures,
            f.skips,
            fmt_opt(f.worst_gap)
        );
    }
    s += &format!("failures: {}\n", r.total_failures());
    s
}

fn cmd_suite(args: SuiteArgs) -> CmdResult {
    let cfg = suite_config(&args)?;
    cfg.validate()?;
    let report = match args.kind {
        SuiteKind::All => run_suites(&cfg),
        SuiteKind::Scalar => run_scalar_suite(&cfg),
        SuiteKind::Operator => run_operator_suite(&cfg),
        SuiteKind::Comparison => run_comparison_suite(&cfg),
    }?;
    if let Some(out) = &args.out {
        fs::write(out, report.to_json()).map_err(|source| Error::Io { path: out.clone(), source })?;
    }
    match args.format {
        Format::Json if args.out.is_none() => println!("{}", report.to_json()),
        Format::Csv => print!("{}", to_csv(&report.results)),
        _ => print!("{}", suite_text(&report)),
    }
    Ok(report.total_failures() == 0)
}

fn cmd_repro(args: FormatArg) -> CmdResult {
    let p = ScalarPair::new(1.0, 16.0)?;
    let w = Weight::new(0.125)?;
    let r = compare_gap_bounds(p, w, Depth::new(2)?)?;
    let e19 = r.entry("(19)").map(|e| e.value).unwrap_or(f64::NAN);
    let e15 = r.entry("(15)").map(|e| e.value).unwrap_or(f64::NAN);
    let full_rhs = e19 + weighted_geometric(p, w);
    let tighter = if e19 < e15 { "(19)" } else { "(15)" };
    let ok = e19 == 4.875 && e19 < e15;
    match args.format {
        Format::Json | Format::Csv => {
            let value = json!({
                "tool_version": meanbound::report::TOOL_VERSION,
                "config": {"command": "repro", "a": 1.0, "b": 16.0, "v": 0.125, "n": 2},
                "main_n2_gap_bound": {"label": "(19)", "value": e19},
                "sm_n2_gap_bound": {"label": "(15)", "recomputed": e15, "reported": REPORTED_SM2_GAP},
                "main_n2_full_rhs": full_rhs,
                "tighter": tighter,
                "holds": ok,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
        }
        Format::Text => {
            println!("point: a = 1, b = 16, v = 1/8, n = 2");
            println!("(19): {e19}");
            println!("(15) recomputed: {e15:.7}");
            println!("(15) reported: {REPORTED_SM2_GAP}");
            println!("(5) full rhs: {full_rhs:.7}");
            println!("tighter: {tighter}");
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(a),
        Command::CheckScalar(a) => cmd_check_scalar(a),
        Command::CheckOperator(a) => cmd_check_operator(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Suite(a) => cmd_suite(a),
        Command::Repro(a) => cmd_repro(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qideal_core::fuzzy;
use qideal_core::ideal::{classify_ideal, enumerate_ideals, ideal_from_sequence, IdealClass};
use qideal_core::io::{self, FileKind, FiniteOrder};
use qideal_core::qorder::{check_map_and_adjunction, QMap};
use qideal_core::quantale::AnyQuantale;
use qideal_core::scott::{generate_scott_structure, Mode};
use qideal_core::suites::{self, Params, Shape, SuiteOptions, SuiteResult, Verdict};
use qideal_core::{Budget, Error};

/// Fuzzy ideals, ideal completions and Scott Q-(co)topologies on finite
/// quantale-valued ordered sets.
#[derive(Parser)]
#[command(name = "qideal", version)]
struct Cli {
    /// Seed for random instance generation.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Cap on enumerated fuzzy sets, maps and pair checks.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Float tolerance for the interval backend.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Directory for the JSON report and witness files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate an instance file of any kind.
    Validate { file: PathBuf },
    /// Run the three ideal deciders on a fuzzy set.
    Classify { qorder: PathBuf, fuzzyset: PathBuf },
    /// List the ideals of one class.
    Enumerate {
        qorder: PathBuf,
        #[arg(long, default_value = "flat")]
        class: String,
    },
    /// Generate the Scott topology or cotopology of a class.
    Scott {
        qorder: PathBuf,
        #[arg(long, default_value = "flat")]
        class: String,
        #[arg(long, default_value = "top")]
        mode: String,
    },
    /// Run a named check; `--list` shows them all.
    Check {
        suite: Option<String>,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Look for an ideal in one class but not another over generated instances.
    SearchCounterexample {
        /// e.g. `quantale=godel_chain,n=4,points=3,count=200,separate=flat/irr`
        #[arg(long)]
        shape: String,
    },
}

/// Exit status: 0 pass, 1 fail or finding, 2 usage or budget.
enum Status {
    Pass,
    Fail,
    Usage,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded { .. } | Error::PowerTooLarge { .. }) => Status::Usage,
                Some(Error::Format(_) | Error::UnknownSuite(_)) | None => Status::Usage,
                Some(_) => Status::Fail,
            }
        }
    };
    ExitCode::from(match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Usage => 2,
    })
}

fn budget(cli: &Cli) -> Budget {
    cli.budget.map_or_else(Budget::default, Budget::with_limit)
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Reads a Q-order file, or the base of a fuzzy-set or sequence file.
fn load_qorder(path: &Path) -> anyhow::Result<FiniteOrder> {
    let v = io::read_json(path)?;
    let v = v.get("base").unwrap_or(&v);
    Ok(io::qorder_from_json(v, &dir_of(path))?)
}

/// A file reference to `path` usable from inside `out`.
fn base_ref(path: &Path) -> Value {
    json!(std::fs::canonicalize(path).unwrap_or_else(|_| path.to_path_buf()))
}

fn emit(cli: &Cli, report: &Value, summary: &str) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(report)?);
    eprintln!("{summary}");
    if let Some(out) = &cli.out {
        io::write_json(&out.join("report.json"), report)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Classify { qorder, fuzzyset } => {
            let a = load_qorder(qorder)?;
            let v = io::read_json(fuzzyset)?;
            let values = v.get("values").ok_or_else(|| anyhow!("fuzzy-set file has no `values`"))?;
            let phi = io::fuzzy_values(&a, values)?;
            let r = classify_ideal(&a, &phi, &budget(cli))?;
            let witness = |w: &Option<_>| w.as_ref().map(|f| io::failure_json(&a, f));
            let report = json!({
                "phi": fuzzy::format(a.quantale(), &phi),
                "lower": r.lower,
                "inhabited": r.inhabited,
                "flat": r.flat,
                "irreducible": r.irreducible,
                "forward_cauchy": r.forward_cauchy,
                "flat_witness": witness(&r.flat_witness),
                "irreducible_witness": witness(&r.irreducible_witness),
                "forward_cauchy_witness": witness(&r.forward_cauchy_witness),
            });
            let summary = format!(
                "lower {} inhabited {} flat {} irreducible {} forward Cauchy {}",
                r.lower, r.inhabited, r.flat, r.irreducible, r.forward_cauchy
            );
            emit(cli, &report, &summary)?;
            Ok(Status::Pass)
        }
        Command::Enumerate { qorder, class } => {
            let a = load_qorder(qorder)?;
            let class: IdealClass = class.parse()?;
            let ideals = enumerate_ideals(&a, class, &budget(cli))?;
            let shown: Vec<String> = ideals.iter().map(|p| fuzzy::format(a.quantale(), p)).collect();
            if let Some(out) = &cli.out {
                for (k, phi) in ideals.iter().enumerate() {
                    let file = io::fuzzy_set_to_json(&a, phi, base_ref(qorder));
                    io::write_json(&out.join(format!("ideal-{k}.json")), &file)?;
                }
            }
            let report = json!({"class": class, "count": ideals.len(), "ideals": shown});
            emit(cli, &report, &format!("{} {class} ideals", ideals.len()))?;
            Ok(Status::Pass)
        }
        Command::Scott { qorder, class, mode } => {
            let a = load_qorder(qorder)?;
            let class: IdealClass = class.parse()?;
            let mode: Mode = mode.parse()?;
            let s = generate_scott_structure(&a, class, mode, &budget(cli))?;
            let shown: Vec<String> = s.members.iter().map(|p| fuzzy::format(a.quantale(), p)).collect();
            let files: Vec<String> = (0..s.members.len()).map(|k| format!("member-{k}.json")).collect();
            if let Some(out) = &cli.out {
                for (phi, f) in s.members.iter().zip(&files) {
                    io::write_json(&out.join(f), &io::fuzzy_set_to_json(&a, phi, base_ref(qorder)))?;
                }
            }
            let report = json!({
                "mode": s.mode,
                "class": s.class,
                "members": shown,
                "files": if cli.out.is_some() { json!(files) } else { Value::Null },
                "axioms": s.axioms,
                "stratified": s.axioms.stratified(),
                "co_stratified": s.axioms.co_stratified(),
                "strong": s.axioms.strong(),
            });
            let summary = format!(
                "{} {mode} members for class {class}; axioms 1-5: {:?}",
                s.members.len(),
                s.axioms.holds
            );
            emit(cli, &report, &summary)?;
            Ok(Status::Pass)
        }
        Command::Check { suite, params, list } => {
            if *list || suite.is_none() {
                for s in suites::SUITES {
                    println!("{s}");
                }
                return Ok(if *list { Status::Pass } else { Status::Usage });
            }
            let mut p = Params::new();
            for kv in params {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| anyhow!("--param expects k=v, got `{kv}`"))?;
                p.insert(k.to_string(), v.to_string());
            }
            let opts = SuiteOptions {
                seed: cli.seed,
                budget: budget(cli),
                tolerance: cli.tolerance,
            };
            let r = suites::run_suite(suite.as_deref().unwrap_or_default(), &p, &opts)?;
            finish_suite(cli, &r)
        }
        Command::SearchCounterexample { shape } => {
            let shape: Shape = shape.parse()?;
            let opts = SuiteOptions {
                seed: cli.seed,
                budget: budget(cli),
                tolerance: cli.tolerance,
            };
            let r = suites::search_counterexample(&shape, &opts)?;
            finish_suite(cli, &r)
        }
    }
}

fn finish_suite(cli: &Cli, r: &SuiteResult) -> anyhow::Result<Status> {
    let report = serde_json::to_value(r)?;
    let summary = format!(
        "{} {:?}: {} ({:.1} ms)",
        r.suite, r.verdict, r.summary, r.elapsed_ms
    );
    emit(cli, &report, &summary)?;
    if let Some(out) = &cli.out {
        for w in &r.witnesses {
            io::write_json(&out.join(&w.file), &w.content)?;
        }
    }
    Ok(match r.verdict {
        Verdict::Pass => Status::Pass,
        Verdict::Fail | Verdict::Finding => Status::Fail,
        Verdict::Budget => Status::Usage,
    })
}

fn validate(cli: &Cli, file: &Path) -> anyhow::Result<Status> {
    let v = io::read_json(file)?;
    let dir = dir_of(file);
    let kind = io::detect_kind(&v)?;
    let result: Result<(Value, String), Error> = match kind {
        FileKind::Quantale => io::quantale_from_json(&v, &dir).map(|q| {
            let (size, props) = match &q {
                AnyQuantale::Finite(f) => (json!(f.labels().len()), q.properties()),
                AnyQuantale::Interval(_) => (json!("interval"), q.properties()),
            };
            let report = json!({"kind": "quantale", "valid": true, "size": size, "properties": props});
            (report, "valid quantale".to_string())
        }),
        FileKind::QOrder => io::qorder_from_json(&v, &dir).map(|a| {
            let report = json!({
                "kind": "qorder",
                "valid": true,
                "points": a.len(),
                "separated": a.is_separated(),
            });
            (report, format!("valid Q-order on {} points", a.len()))
        }),
        FileKind::FuzzySet => io::fuzzy_set_from_json(&v, &dir).and_then(|(a, phi)| {
            let c = fuzzy::classify(&a, &phi)?;
            let report = json!({
                "kind": "fuzzy_set",
                "valid": true,
                "phi": fuzzy::format(a.quantale(), &phi),
                "lower": c.lower,
                "upper": c.upper,
                "inhabited": c.inhabited,
            });
            Ok((report, format!("fuzzy set: lower {} upper {}", c.lower, c.upper)))
        }),
        FileKind::Sequence => io::sequence_from_json(&v, &dir).and_then(|(a, s)| {
            let phi = ideal_from_sequence(&a, &s)?;
            let report = json!({
                "kind": "sequence",
                "valid": true,
                "forward_cauchy": true,
                "generated": fuzzy::format(a.quantale(), &phi),
            });
            Ok((report, "forward Cauchy sequence".to_string()))
        }),
        FileKind::Map => io::map_from_json(&v, &dir).and_then(|(a, b, m)| {
            let f = QMap::new(&a, &b, m)?;
            let r = check_map_and_adjunction(&f, None)?;
            let report = json!({"kind": "map", "valid": true, "order_preserving": r.order_preserving});
            Ok((report, format!("map: order preserving {}", r.order_preserving)))
        }),
    };
    match result {
        Ok((report, summary)) => {
            emit(cli, &report, &summary)?;
            Ok(Status::Pass)
        }
        Err(e @ Error::Format(_)) => Err(e).with_context(|| format!("reading {}", file.display())),
        Err(e) => {
            let report = json!({"valid": false, "error": e.to_string()});
            emit(cli, &report, &format!("invalid: {e}"))?;
            Ok(Status::Fail)
        }
    }
}

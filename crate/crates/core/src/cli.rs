//! Command-line front end. [`run`] takes the argument vector and two writers
//! and returns the process exit code, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or budget error,
//! 3 internal-consistency failure (two routes disagree).

use std::io::Write;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::laws::{self, convergence_report, ConvergenceReport, Param};
use crate::par::{self, Execution};
use crate::paths;
use crate::series::{self, default_identity_order, Coefficient, Series};
use crate::tableaux::{self, word_to_tableau, YTable};
use crate::util::{decimal_string, factorial};
use crate::words::{self, EnumerationBudget, HReading, Word, WordClass, WordClassSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;

const CSV_HELP: &str = "\
CSV columns:
  enumerate --list       word
  count --table          n,k,value
  series                 power,coefficient
  dist                   m,probability,fraction
  dist --converge        param,n,quantity,value,target,gap
  verify identity        check,k,order,pass,first_mismatch";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "tcnet", version, about = "Exact counting and identity checks for tree-child networks", after_help = CSV_HELP)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text", alias = "emit")]
    pub format: Format,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Run every inner loop sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,

    /// Write a JSON run manifest to this path.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    /// Write the main output to this path instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(flatten)]
    pub budgets: Budgets,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy, Serialize)]
pub struct Budgets {
    /// Longest word (2n+k) that will be enumerated.
    #[arg(long, global = true, env = "TCNET_MAX_WORD_LEN", default_value_t = 24)]
    pub max_word_len: usize,

    /// Largest n accepted by the table and distribution routines.
    #[arg(long, global = true, env = "TCNET_MAX_DP_N", default_value_t = 5000)]
    pub max_dp_n: usize,

    /// Largest truncation order accepted by the series routines.
    #[arg(long, global = true, env = "TCNET_MAX_ORDER", default_value_t = 400)]
    pub max_order: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate or count a word class.
    Enumerate {
        #[arg(long)]
        class: WordClass,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Print the words, one per line.
        #[arg(long)]
        list: bool,
        /// Reading of the H-class restriction.
        #[arg(long, value_enum, default_value = "seen")]
        h_reading: HReadingArg,
    },
    /// b_{n,k} or c_{n,k} from one model, or a whole table.
    Count {
        #[arg(long, value_enum, default_value = "paths")]
        model: Model,
        #[arg(long, value_enum, ignore_case = true)]
        seq: Seq,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Emit all (n, k) with n <= max-n, k <= min(n, max-k).
        #[arg(long)]
        table: bool,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Number of tree-child networks with n leaves and k reticulations.
    Tc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Identity checks.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Tableau of a word.
    Tableau {
        #[arg(long)]
        from_word: String,
        #[arg(long)]
        class: WordClass,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Truncated generating functions.
    Series {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        order: usize,
    },
    /// Exact distribution of X, Y or Z, or a moment-convergence table.
    Dist {
        #[arg(long)]
        param: Param,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        converge: bool,
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        #[arg(long, default_value_t = 4)]
        r_max: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyWhat {
    /// The tableau identity and/or the generating-function identity.
    Identity {
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        #[arg(long, default_value_t = 150)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        max_k: usize,
        /// Fixed series order (default 2k+40 per k).
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HReadingArg {
    Seen,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Paths,
    Dyck,
    Tableaux,
    Series,
    Words,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Seq {
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Tableaux,
    Series,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Which {
    D,
    E,
    B,
    C,
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => EXIT_USAGE,
            Failure::Lib(Error::Consistency(_) | Error::Series(_)) => EXIT_CONSISTENCY,
            Failure::Lib(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("error: {m}"),
            Failure::Io(e) => format!("error: {e}"),
            Failure::Lib(e @ (Error::Consistency(_) | Error::Series(_))) => {
                format!("CONSISTENCY FAILURE: {e}")
            }
            Failure::Lib(e) => format!("error: {e}"),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn budget(what: &'static str, requested: usize, limit: usize) -> std::result::Result<(), Failure> {
    if requested > limit {
        return Err(Error::Budget { what, requested, limit }.into());
    }
    Ok(())
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn big(v: &BigUint) -> String {
    v.to_string()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            let _ = writeln!(err, "error: --jobs must be positive");
            return EXIT_USAGE;
        }
        par::configure_threads(jobs);
    }
    if cli.sequential {
        par::set_execution(Execution::Sequential);
    }
    for (name, v) in [
        ("max-word-len", cli.budgets.max_word_len),
        ("max-dp-n", cli.budgets.max_dp_n),
        ("max-order", cli.budgets.max_order),
    ] {
        if v == 0 {
            let _ = writeln!(err, "error: budget {name} must be positive");
            return EXIT_USAGE;
        }
    }

    let start = Instant::now();
    let mut buf: Vec<u8> = Vec::new();
    let result = dispatch(&cli, &mut buf);
    let code = match &result {
        Ok(c) => *c,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message());
            f.exit_code()
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &buf),
        None => out.write_all(&buf),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if let Some(path) = &cli.manifest {
        let manifest = json!({
            "tool": "tcnet",
            "version": env!("CARGO_PKG_VERSION"),
            "argv": argv,
            "format": cli.format,
            "budgets": cli.budgets,
            "jobs": cli.jobs,
            "execution": format!("{:?}", par::execution()),
            "parallel_feature": cfg!(feature = "parallel"),
            "started_unix": SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
                .saturating_sub(start.elapsed().as_secs()),
            "elapsed_ms": start.elapsed().as_millis() as u64,
            "exit_code": code,
        });
        if let Err(e) = std::fs::write(path, to_json(&manifest) + "\n") {
            let _ = writeln!(err, "error: cannot write manifest: {e}");
            return EXIT_USAGE;
        }
    }
    code
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Outcome {
    let f = cli.format;
    let b = cli.budgets;
    match &cli.command {
        Command::Enumerate { class, n, k, list, h_reading } => {
            cmd_enumerate(out, f, b, *class, *n, *k, *list, *h_reading)
        }
        Command::Count { model, seq, n, k, table, max_n, max_k } => {
            if *table {
                let max_n = max_n.ok_or_else(|| Failure::Usage("--table needs --max-n".into()))?;
                cmd_count_table(out, f, b, *model, *seq, max_n, max_k.unwrap_or(max_n))
            } else {
                let (Some(n), Some(k)) = (n, k) else {
                    return Err(Failure::Usage("count needs --n and --k (or --table --max-n)".into()));
                };
                cmd_count(out, f, b, *model, *seq, *n, *k)
            }
        }
        Command::Tc { n, k } => {
            budget("n", *n, b.max_dp_n)?;
            let v = tableaux::tc_count(*n, *k)?;
            match f {
                Format::Json => writeln!(out, "{}", to_json(&json!({"n": n, "k": k, "value": big(&v)})))?,
                Format::Csv => writeln!(out, "n,k,value\n{n},{k},{v}")?,
                Format::Text => writeln!(out, "{v}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { what: VerifyWhat::Identity { mode, max_n, max_k, order } } => {
            cmd_verify(out, f, b, *mode, *max_n, *max_k, *order)
        }
        Command::Tableau { from_word, class, n, k } => {
            let spec = WordClassSpec::new(*class, *n, *k)?;
            let word = Word::parse(from_word, *n)?;
            let t = word_to_tableau(&word, &spec)?;
            match f {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&t).expect("serializable"))?,
                _ => {
                    for row in t.rows().iter().rev() {
                        let cells: Vec<String> = row
                            .iter()
                            .map(|c| c.map_or(".".to_string(), |v| v.to_string()))
                            .collect();
                        writeln!(out, "{}", cells.join(if f == Format::Csv { "," } else { "\t" }))?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Series { which, k, order } => cmd_series(out, f, b, *which, *k, *order),
        Command::Dist { param, n, converge, n_list, r_max } => {
            if *converge {
                let list = n_list.clone().unwrap_or_else(|| laws::DEFAULT_N_LIST.to_vec());
                for &m in &list {
                    budget("n", m, b.max_dp_n)?;
                }
                let report = convergence_report(*param, &list, *r_max)?;
                write_convergence(out, f, &report)?;
                Ok(EXIT_OK)
            } else {
                let n = n.ok_or_else(|| Failure::Usage("dist needs --n (or --converge)".into()))?;
                budget("n", n, b.max_dp_n)?;
                let d = laws::dist(*param, n)?;
                write_dist(out, f, &d)?;
                Ok(EXIT_OK)
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    out: &mut Vec<u8>,
    f: Format,
    b: Budgets,
    class: WordClass,
    n: usize,
    k: usize,
    list: bool,
    h: HReadingArg,
) -> Outcome {
    let spec = WordClassSpec::new(class, n, k)?;
    let budget = EnumerationBudget { max_length: b.max_word_len };
    let reading = match h {
        HReadingArg::Seen => HReading::SeenSoFar,
        HReadingArg::All => HReading::AllLetters,
    };
    let listing = if list || f == Format::Json && list {
        Some(words::enumerate_with(&spec, budget, reading)?)
    } else {
        None
    };
    let count = match &listing {
        Some(w) => w.len() as u64,
        None => words::count_with(&spec, budget, reading)?,
    };
    match f {
        Format::Json => {
            let mut v = json!({"class": class, "n": n, "k": spec.k, "count": count});
            if let Some(ws) = &listing {
                v["words"] = Value::from(ws.iter().map(Word::render).collect::<Vec<_>>());
            }
            writeln!(out, "{}", to_json(&v))?;
        }
        Format::Csv => match &listing {
            Some(ws) => {
                writeln!(out, "word")?;
                for w in ws {
                    writeln!(out, "{}", w.render())?;
                }
            }
            None => writeln!(out, "class,n,k,count\n{class},{n},{},{count}", spec.k)?,
        },
        Format::Text => match &listing {
            Some(ws) => {
                for w in ws {
                    writeln!(out, "{}", w.render())?;
                }
            }
            None => writeln!(out, "{count}")?,
        },
    }
    Ok(EXIT_OK)
}

/// One value of `b` or `c` from the chosen model.
fn single_count(model: Model, seq: Seq, n: usize, k: usize, b: Budgets) -> std::result::Result<BigUint, Failure> {
    if k > n {
        return Err(Error::Domain(format!("need 0 <= k <= n, got n={n}, k={k}")).into());
    }
    Ok(match (model, seq) {
        (Model::Paths, Seq::B) => paths::b_path_count(n, k)?,
        (Model::Paths, Seq::C) => paths::c_path_count(n, k)?,
        (Model::Dyck, Seq::B) => paths::dyck_b_count(n, k)?,
        (Model::Dyck, Seq::C) => paths::dyck_c_count(n, k)?,
        (Model::Tableaux, Seq::B) => tableaux::y_count(n, n - k, k),
        (Model::Tableaux, Seq::C) => tableaux::y_count(k, 0, n),
        (Model::Series, Seq::B) => {
            budget("order", 2 * n + 1, b.max_order)?;
            let s = series::b_k_series(k, 2 * n + 1)?;
            s.coeff(2 * n).to_biguint().ok_or_else(|| Error::Consistency("negative coefficient".into()))?
        }
        (Model::Series, Seq::C) => {
            let e = n + 1 - k;
            budget("order", e + 1, b.max_order)?;
            let s = series::c_k_series(k, e + 1)?;
            let v = s.coeff(e) * BigRational::from_integer(BigInt::from(factorial(e)));
            if !v.is_integer() {
                return Err(Error::Consistency(format!("non-integer c_{{{n},{k}}} = {v}")).into());
            }
            v.to_integer().to_biguint().ok_or_else(|| Error::Consistency("negative coefficient".into()))?
        }
        (Model::Words, seq) => {
            let spec = match seq {
                Seq::B => WordClassSpec::b(n, k)?,
                Seq::C => WordClassSpec::c(n, k)?,
            };
            BigUint::from(words::count_with(&spec, EnumerationBudget { max_length: b.max_word_len }, HReading::default())?)
        }
    })
}

fn cmd_count(out: &mut Vec<u8>, f: Format, b: Budgets, model: Model, seq: Seq, n: usize, k: usize) -> Outcome {
    budget("n", n, b.max_dp_n)?;
    let v = single_count(model, seq, n, k, b)?;
    match f {
        Format::Json => writeln!(
            out,
            "{}",
            to_json(&json!({"model": model, "seq": seq, "n": n, "k": k, "value": big(&v)}))
        )?,
        Format::Csv => writeln!(out, "n,k,value\n{n},{k},{v}")?,
        Format::Text => writeln!(out, "{v}")?,
    }
    Ok(EXIT_OK)
}

fn cmd_count_table(
    out: &mut Vec<u8>,
    f: Format,
    b: Budgets,
    model: Model,
    seq: Seq,
    max_n: usize,
    max_k: usize,
) -> Outcome {
    budget("n", max_n, b.max_dp_n)?;
    let max_k = max_k.min(max_n);
    let table: Vec<Vec<BigUint>> = match (model, seq) {
        (Model::Paths, Seq::B) => paths::b_table(max_n, max_k),
        (Model::Paths, Seq::C) => paths::c_table(max_n, max_k),
        (Model::Tableaux, _) => {
            let t = YTable::build(max_n, max_n);
            (0..=max_n)
                .map(|n| {
                    (0..=n.min(max_k))
                        .map(|k| match seq {
                            Seq::B => t.b(n, k).unwrap().clone(),
                            Seq::C => t.c(n, k).unwrap().clone(),
                        })
                        .collect()
                })
                .collect()
        }
        _ => (0..=max_n)
            .map(|n| (0..=n.min(max_k)).map(|k| single_count(model, seq, n, k, b)).collect())
            .collect::<std::result::Result<_, _>>()?,
    };
    match f {
        Format::Json => {
            let rows: Vec<Value> = table
                .iter()
                .enumerate()
                .flat_map(|(n, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(k, v)| json!({"n": n, "k": k, "value": big(v)}))
                })
                .collect();
            writeln!(out, "{}", to_json(&json!({"model": model, "seq": seq, "rows": rows})))?;
        }
        _ => {
            writeln!(out, "n,k,value")?;
            for (n, row) in table.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    writeln!(out, "{n},{k},{v}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    out: &mut Vec<u8>,
    f: Format,
    b: Budgets,
    mode: Mode,
    max_n: usize,
    max_k: usize,
    order: Option<usize>,
) -> Outcome {
    let mut pass = true;
    let mut doc = json!({});
    let mut lines: Vec<String> = Vec::new();
    let mut csv: Vec<String> = vec!["check,k,order,pass,first_mismatch".into()];
    if matches!(mode, Mode::Tableaux | Mode::Both) {
        budget("n", max_n, b.max_dp_n)?;
        let r = tableaux::verify_tableau_identity(max_n);
        pass &= r.pass;
        let ce = r.first_counterexample.map(|(n, k)| json!({"n": n, "k": k}));
        doc["tableaux"] = json!({"max_n": r.n_max, "checked": r.checked, "pass": r.pass, "first_counterexample": ce});
        lines.push(format!(
            "tableaux  n<={:<4} checked {:>6}  {}",
            r.n_max,
            r.checked,
            if r.pass { "PASS" } else { "FAIL" }
        ));
        if let Some((n, k)) = r.first_counterexample {
            lines.push(format!("  first counterexample: n={n}, k={k}"));
        }
        csv.push(format!(
            "tableaux,,{},{},{}",
            r.n_max,
            r.pass,
            r.first_counterexample.map(|(n, k)| format!("{n}:{k}")).unwrap_or_default()
        ));
    }
    if matches!(mode, Mode::Series | Mode::Both) {
        let order_for = |k: usize| order.unwrap_or_else(|| default_identity_order(k));
        budget("order", order_for(max_k), b.max_order)?;
        let r = series::verify_gf_identities(max_k, order_for)?;
        pass &= r.pass;
        doc["series"] = json!({"max_k": max_k, "pass": r.pass, "reports": r.reports});
        lines.push(format!("series    k<={max_k}"));
        for rep in &r.reports {
            lines.push(format!(
                "  k={:<3} order {:<4} {}{}",
                rep.k,
                rep.order,
                if rep.pass { "PASS" } else { "FAIL" },
                rep.first_mismatch.map(|i| format!("  first mismatch at z^{i}")).unwrap_or_default()
            ));
            csv.push(format!(
                "series,{},{},{},{}",
                rep.k,
                rep.order,
                rep.pass,
                rep.first_mismatch.map(|i| i.to_string()).unwrap_or_default()
            ));
        }
    }
    doc["pass"] = json!(pass);
    match f {
        Format::Json => writeln!(out, "{}", to_json(&doc))?,
        Format::Csv => writeln!(out, "{}", csv.join("\n"))?,
        Format::Text => {
            writeln!(out, "{}", lines.join("\n"))?;
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAIL })
}

fn series_payload<T: Coefficient + std::fmt::Display>(
    out: &mut Vec<u8>,
    f: Format,
    which: Which,
    k: usize,
    s: &Series<T>,
) -> std::io::Result<()> {
    match f {
        Format::Json => writeln!(
            out,
            "{}",
            to_json(&json!({"which": which, "k": k, "order": s.order(), "coeffs": s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()}))
        ),
        Format::Csv => {
            writeln!(out, "power,coefficient")?;
            for (i, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{i},{c}")?;
            }
            Ok(())
        }
        Format::Text => writeln!(out, "{s}"),
    }
}

fn cmd_series(out: &mut Vec<u8>, f: Format, b: Budgets, which: Which, k: usize, order: usize) -> Outcome {
    if order == 0 {
        return Err(Failure::Usage("--order must be positive".into()));
    }
    budget("order", order, b.max_order)?;
    match which {
        Which::D => series_payload(out, f, which, k, &series::dyck_series(order))?,
        Which::E => series_payload(out, f, which, k, &series::e_series(order))?,
        Which::B => series_payload(out, f, which, k, &series::b_k_series(k, order)?)?,
        Which::C => series_payload(out, f, which, k, &series::c_k_series(k, order)?)?,
    }
    Ok(EXIT_OK)
}

fn write_dist(out: &mut Vec<u8>, f: Format, d: &laws::DistTable) -> std::io::Result<()> {
    let rows: Vec<(usize, String, String)> = d
        .masses()
        .iter()
        .map(|(&m, q)| (m, decimal_string(q, 12), q.to_string()))
        .collect();
    match f {
        Format::Json => {
            let masses: Vec<Value> = rows
                .iter()
                .map(|(m, dec, frac)| json!({"m": m, "probability": dec, "fraction": frac}))
                .collect();
            writeln!(
                out,
                "{}",
                to_json(&json!({"param": d.param(), "n": d.n(), "total": big(d.total()), "masses": masses}))
            )
        }
        Format::Csv => {
            writeln!(out, "m,probability,fraction")?;
            for (m, dec, frac) in rows {
                writeln!(out, "{m},{dec},{frac}")?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{}_{}  total {}", d.param(), d.n(), d.total())?;
            for (m, dec, frac) in rows {
                writeln!(out, "{m:>6}  {dec}  {frac}")?;
            }
            Ok(())
        }
    }
}

fn write_convergence(out: &mut Vec<u8>, f: Format, r: &ConvergenceReport) -> std::io::Result<()> {
    match f {
        Format::Json => writeln!(out, "{}", to_json(r)),
        Format::Csv => {
            writeln!(out, "param,n,quantity,value,target,gap")?;
            for row in &r.rows {
                writeln!(
                    out,
                    "{},{},m{},{:.10},{:.10},{:.10}",
                    r.param, row.n, row.r, row.empirical, row.target, row.gap
                )?;
            }
            for e in &r.extras {
                writeln!(out, "{},{},{},{:.10},{:.10},{:.10}", r.param, e.n, e.name, e.value, e.target, e.gap)?;
            }
            Ok(())
        }
        Format::Text => {
            writeln!(out, "{}  n_list {:?}  r_max {}", r.param, r.n_list, r.r_max)?;
            for row in &r.rows {
                writeln!(
                    out,
                    "  n={:<6} r={}  moment {:.6}  target {:.6}  gap {:+.6}",
                    row.n, row.r, row.empirical, row.target, row.gap
                )?;
            }
            for e in &r.extras {
                writeln!(
                    out,
                    "  n={:<6} {:<18} {:.6}  target {:.6}  gap {:+.6}",
                    e.n, e.name, e.value, e.target, e.gap
                )?;
            }
            for d in &r.doubling {
                writeln!(
                    out,
                    "  doubling r={} {}->{}: |{:.6}| -> |{:.6}|  {}",
                    d.r,
                    d.n,
                    d.n2,
                    d.gap_n,
                    d.gap_2n,
                    if d.pass { "shrinks" } else { "DOES NOT SHRINK" }
                )?;
            }
            Ok(())
        }
    }
}

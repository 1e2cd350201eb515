use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use peterson::classes::MAX_TABLE_RANK;
use peterson::verify::run_all;
use peterson::{
    monk_expand_with, p_restriction, presentation_with, product_in_basis_with,
    restriction_closed_form, Evaluation, IndexSubset, PetersonClass,
};

/// Largest rank accepted by commands that never build full tables.
const MAX_RANK: usize = 64;

#[derive(Parser)]
#[command(
    name = "peterson",
    version,
    about = "Schubert calculus on Peterson varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Compute every value through the subword-sum evaluator.
    #[arg(long, global = true)]
    oracle: bool,

    /// Worker threads: a positive count or "auto".
    #[arg(long, default_value = "auto", global = true)]
    parallel: String,

    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Rank {
    /// The rank n; subsets live in {1, ..., n-1}.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List every fixed point w_A.
    FixedPoints {
        #[arg(value_name = "N")]
        rank: Option<usize>,
        #[arg(long = "n", conflicts_with = "rank")]
        n: Option<usize>,
    },
    /// Print p_{v_A}(w_B).
    Restrict {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        class: String,
        #[arg(long)]
        at: String,
    },
    /// Print p_{v_A} at every fixed point.
    ClassTable {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        class: String,
    },
    /// Expand p_i * p_{v_A} in the basis.
    Monk {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        class: String,
        /// Drop the t-multiple (ordinary cohomology).
        #[arg(long)]
        ordinary: bool,
    },
    /// Expand p_{v_A} * p_{v_A'} in the basis.
    Product {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Run the property suites at every rank from 2 to n.
    Verify {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Emit the Monk relations presenting the cohomology ring.
    Presentation {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        ordinary: bool,
    },
}

/// A problem with the invocation itself.
#[derive(Debug)]
struct Usage(String);

enum Failure {
    Usage(Usage),
    Internal(anyhow::Error),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<peterson::Error> for Failure {
    fn from(e: peterson::Error) -> Self {
        Failure::Internal(e.into())
    }
}

struct Output {
    body: String,
    passed: bool,
}

fn rank(flag: &str, n: usize, max: usize) -> Result<usize, Usage> {
    if !(2..=max).contains(&n) {
        return Err(Usage(format!(
            "{flag}: rank must be between 2 and {max}, got {n}"
        )));
    }
    Ok(n)
}

fn subset(flag: &str, n: usize, raw: &str) -> Result<IndexSubset, Usage> {
    let raw = if raw.trim() == "∅" { "" } else { raw };
    IndexSubset::parse(n, raw).map_err(|e| Usage(format!("{flag}: {e}")))
}

fn render_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn csv_line(fields: &[&str]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(fields).expect("in-memory write");
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let evaluation = if cli.oracle {
        Evaluation::Oracle
    } else {
        Evaluation::default()
    };
    let mut passed = true;
    let body = match &cli.command {
        Command::FixedPoints { rank: pos, n } => {
            let Some(n) = pos.or(*n) else {
                return Err(Usage("fixed-points: missing rank N".into()).into());
            };
            let n = rank("N", n, MAX_TABLE_RANK)?;
            let mut subsets: Vec<IndexSubset> = IndexSubset::all(n).collect();
            subsets.sort();
            match cli.format {
                Format::Text => subsets
                    .iter()
                    .map(|a| format!("{a} ↦ {}\n", a.fixed_point()))
                    .collect(),
                Format::Json => render_json(&Value::Array(
                    subsets
                        .iter()
                        .map(|a| json!({"subset": a, "fixed_point": a.fixed_point()}))
                        .collect(),
                )),
                Format::Csv => {
                    let mut out = csv_line(&["subset", "fixed_point"]);
                    for a in &subsets {
                        let w = a.fixed_point().one_line();
                        let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                        out += &csv_line(&[&a.to_csv(), &w.join(",")]);
                    }
                    out
                }
            }
        }
        Command::Restrict { rank: r, class, at } => {
            let n = rank("--n", r.n, MAX_RANK)?;
            let a = subset("--class", n, class)?;
            let b = subset("--at", n, at)?;
            let value = match evaluation {
                Evaluation::ClosedForm => restriction_closed_form(&a, &b)?,
                Evaluation::Oracle => p_restriction(&a.basis_element(), &b)?,
            };
            match cli.format {
                Format::Text => format!("{value}\n"),
                Format::Json => render_json(&json!({
                    "n": n,
                    "class": a,
                    "at": b,
                    "value": value.to_string(),
                })),
                Format::Csv => {
                    csv_line(&["class", "at", "value"])
                        + &csv_line(&[&a.to_csv(), &b.to_csv(), &value.to_string()])
                }
            }
        }
        Command::ClassTable { rank: r, class } => {
            let n = rank("--n", r.n, MAX_TABLE_RANK)?;
            let a = subset("--class", n, class)?;
            let table = PetersonClass::basis_with(&a, evaluation)?;
            match cli.format {
                Format::Text => table.to_string(),
                Format::Json => render_json(&table.to_json()),
                Format::Csv => table.to_csv(),
            }
        }
        Command::Monk {
            rank: r,
            i,
            class,
            ordinary,
        } => {
            let n = rank("--n", r.n, MAX_RANK)?;
            if *i == 0 || *i >= n {
                return Err(Usage(format!("--i: {i} is out of range 1..={}", n - 1)).into());
            }
            let a = subset("--class", n, class)?;
            let mut expansion = monk_expand_with(*i, &a, evaluation)?;
            if *ordinary {
                expansion = expansion.forget_t();
            }
            match cli.format {
                Format::Text => format!("{expansion}\n"),
                Format::Json => render_json(&expansion.to_json()),
                Format::Csv => expansion.to_csv(),
            }
        }
        Command::Product {
            rank: r,
            left,
            right,
        } => {
            let n = rank("--n", r.n, MAX_TABLE_RANK)?;
            let a = subset("--left", n, left)?;
            let a2 = subset("--right", n, right)?;
            let product = product_in_basis_with(&a, &a2, evaluation)?;
            match cli.format {
                Format::Text => format!("p{{{}}} * p{{{}}} = {product}\n", a.to_csv(), a2.to_csv()),
                Format::Json => render_json(&json!({
                    "n": n,
                    "left": a,
                    "right": a2,
                    "terms": product.to_json(),
                })),
                Format::Csv => product.to_csv(),
            }
        }
        Command::Verify { rank: r, max_n } => {
            let n = rank("--n", r.n, MAX_TABLE_RANK)?;
            if n > *max_n {
                return Err(Usage(format!(
                    "--n: {n} exceeds --max-n {max_n}; raise --max-n to run larger ranks"
                ))
                .into());
            }
            let reports = run_all(n, evaluation)?;
            passed = reports.iter().all(|r| r.passed());
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for report in &reports {
                        writeln!(out, "{report}").expect("string write");
                    }
                    let failed = reports.iter().filter(|r| !r.passed()).count();
                    writeln!(
                        out,
                        "{} of {} suites passed",
                        reports.len() - failed,
                        reports.len()
                    )
                    .expect("string write");
                    out
                }
                Format::Json => render_json(&Value::Array(
                    reports
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "suite": r.suite.name(),
                                "checks": r.checks,
                                "passed": r.passed(),
                                "failures": r.failures,
                            })
                        })
                        .collect(),
                )),
                Format::Csv => {
                    let mut out = csv_line(&["n", "suite", "checks", "status"]);
                    for r in &reports {
                        let status = if r.passed() { "pass" } else { "fail" };
                        out += &csv_line(&[
                            &r.n.to_string(),
                            r.suite.name(),
                            &r.checks.to_string(),
                            status,
                        ]);
                    }
                    out
                }
            }
        }
        Command::Presentation { rank: r, ordinary } => {
            let n = rank("--n", r.n, MAX_TABLE_RANK)?;
            let relations = presentation_with(n, !ordinary, evaluation)?;
            match cli.format {
                Format::Text => relations
                    .iter()
                    .map(|r| {
                        let flag = if r.trivial { "  [trivial]" } else { "" };
                        format!("{}{flag}\n", r.expansion)
                    })
                    .collect(),
                Format::Json => render_json(&Value::Array(
                    relations.iter().map(|r| r.to_json()).collect(),
                )),
                Format::Csv => {
                    let mut out = csv_line(&["i", "class", "relation", "trivial"]);
                    for r in &relations {
                        out += &csv_line(&[
                            &r.expansion.i().to_string(),
                            &r.expansion.class().to_csv(),
                            &r.expansion.to_string(),
                            &r.trivial.to_string(),
                        ]);
                    }
                    out
                }
            }
        }
    };
    Ok(Output { body, passed })
}

fn configure_threads(parallel: &str) -> Result<(), Usage> {
    if parallel == "auto" {
        return Ok(());
    }
    let threads: usize = parallel.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Usage(format!(
            "--parallel: expected a positive count or \"auto\", got {parallel:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Usage(format!("--parallel: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(&cli.parallel)
        .map_err(Failure::from)
        .and_then(|()| run(&cli))
        .and_then(|output| {
            match &cli.out {
                Some(path) => fs::write(path, &output.body)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", output.body),
            }
            Ok(output.passed)
        });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(Usage(message))) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

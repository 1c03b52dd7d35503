//! `edrlab`: classify small rings, check 2×2 matrices, compute unit maps and Smith
//! forms, search integer witnesses, and run the theorem sweep.

mod output;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use edrlab_core::classify::{Classifier, FlagId, DEFAULT_BUDGET};
use edrlab_core::constructive::{cr3_witness, eq4_witness, snf};
use edrlab_core::lab::{hunt, sweep, CaseVerdict, Corpus, HuntQuery, SweepConfig, TheoremId};
use edrlab_core::lift::{prop4, PropSelection};
use edrlab_core::mat::parse_matrix;
use edrlab_core::ring::{make_finite_ring, make_ring, RingHandle};
use edrlab_core::units::upsilon_image;
use edrlab_core::{Truth, Verdict};
use num_bigint::BigInt;
use output::{Format, Table};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "edrlab",
    version,
    about = "Exact experiments on elementary divisor rings"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Largest search space (matrix count or scan size) explored before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = positive)]
    budget_nodes: u64,
    /// Worker threads for the sweep; 0 picks the number of CPUs.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Exit with status 3 when any result is UNKNOWN.
    #[arg(long, global = true)]
    strict_unknown: bool,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn positive(s: &str) -> std::result::Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate ring-level flags.
    Classify {
        #[arg(long, required_unless_present = "batch")]
        ring: Vec<String>,
        /// File with one ring spec per line; `#` starts a comment.
        #[arg(long)]
        batch: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        flags: String,
    },
    /// Matrix-level checks.
    Matrix {
        #[command(subcommand)]
        action: MatrixAction,
    },
    /// The product map U(R/Rac) × U(R/Rbc) → U(R/Rc).
    Upsilon {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Smith normal form certificate over ℤ or F_p[x].
    Snf {
        /// `Z` or `PolyF:p=<p>,D=<d>`.
        #[arg(long, default_value = "Z")]
        base: String,
        #[arg(long)]
        mat: String,
    },
    /// Coprime (e, f) for the integer shortcut criterion.
    Cr3 {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        s: BigInt,
        #[arg(long, default_value_t = 30)]
        bound: u64,
    },
    /// Integer solution (s, l, z) of the single-equation criterion.
    Eq4 {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        u: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        t: BigInt,
        #[arg(long, default_value_t = 30)]
        bound: u64,
    },
    /// Run theorem checks over a corpus.
    Verify {
        /// `default` or a comma list of ring specs.
        #[arg(long, default_value = "default", conflicts_with = "ring")]
        corpus: String,
        /// A single ring instead of a corpus.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value = "all")]
        theorems: String,
    },
    /// First corpus ring or matrix satisfying a query.
    Hunt {
        /// Boolean expression over flag, tag and matrix atoms.
        #[arg(long)]
        query: String,
        #[arg(long, default_value = "default")]
        corpus: String,
    },
}

#[derive(Subcommand, Debug)]
enum MatrixAction {
    /// Extendability, liftability and non-fullness of a unimodular 2×2 matrix.
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        mat: String,
        /// `all` or a comma list of se,e,dl,wdl,nf.
        #[arg(long, default_value = "all")]
        props: String,
    },
}

/// Outcome class of a run, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Unknown,
    Counterexample,
}

struct Run {
    value: Value,
    table: Table,
    status: Status,
}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    anyhow!("{e}")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(status) => ExitCode::from(match status {
            Status::Ok => 0,
            Status::Counterexample => 1,
            Status::Unknown if cli.global.strict_unknown => 3,
            Status::Unknown => 0,
        }),
        Err(e) => {
            eprintln!("edrlab: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<Status> {
    let run = dispatch(&cli.command, &cli.global)?;
    let format = match cli.global.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Pretty => Format::Pretty,
    };
    let text = output::render(format, &run.value, &run.table)?;
    match &cli.global.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(run.status)
}

fn dispatch(cmd: &Command, g: &Global) -> Result<Run> {
    match cmd {
        Command::Classify { ring, batch, flags } => classify(ring, batch.as_ref(), flags, g),
        Command::Matrix {
            action: MatrixAction::Check { ring, mat, props },
        } => matrix_check(ring, mat, props),
        Command::Upsilon { ring, a, b, c } => upsilon(ring, a, b, c),
        Command::Snf { base, mat } => smith(base, mat),
        Command::Cr3 { a, b, s, bound } => {
            let v = cr3_witness(a, b, s, *bound);
            let input = json!({ "a": a.to_string(), "b": b.to_string(), "s": s.to_string(), "bound": bound });
            Ok(witness_run(
                input,
                v.map(|w| json!({ "e": w.e.to_string(), "f": w.f.to_string(), "route": w.route })),
            ))
        }
        Command::Eq4 { a, u, t, bound } => {
            let v = eq4_witness(a, u, t, *bound).map_err(usage)?;
            let input = json!({ "a": a.to_string(), "u": u.to_string(), "t": t.to_string(), "bound": bound });
            Ok(witness_run(
                input,
                v.map(
                    |w| json!({ "s": w.s.to_string(), "l": w.l.to_string(), "z": w.z.to_string() }),
                ),
            ))
        }
        Command::Verify {
            corpus,
            ring,
            theorems,
        } => verify(ring.as_deref().unwrap_or(corpus), theorems, g),
        Command::Hunt { query, corpus } => hunt_run(query, corpus, g),
    }
}

fn classify(rings: &[String], batch: Option<&PathBuf>, flags: &str, g: &Global) -> Result<Run> {
    let ids = FlagId::parse_list(flags).map_err(usage)?;
    let mut specs: Vec<String> = rings.to_vec();
    if let Some(path) = batch {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        specs.extend(
            text.lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(str::to_string),
        );
    }
    let mut reports = Vec::new();
    let mut status = Status::Ok;
    let mut table = Table::new(
        ["ring", "size"]
            .into_iter()
            .map(String::from)
            .chain(ids.iter().map(|f| f.name().to_string()))
            .collect(),
    );
    for spec in &specs {
        let r = make_finite_ring(spec).map_err(usage)?;
        let report = Classifier::new(r, g.budget_nodes).report(&ids);
        let mut row = vec![report.ring.clone(), report.size.to_string()];
        for id in &ids {
            let f = &report.flags[id.name()];
            if f.value == Truth::Unknown {
                status = Status::Unknown;
            }
            row.push(f.value.as_str().to_string());
        }
        table.push(row);
        reports.push(serde_json::to_value(&report)?);
    }
    let value = if rings.len() == 1 && batch.is_none() {
        reports.pop().expect("one report")
    } else {
        Value::Array(reports)
    };
    Ok(Run {
        value,
        table,
        status,
    })
}

fn matrix_check(ring: &str, mat: &str, props: &str) -> Result<Run> {
    let r = make_finite_ring(ring).map_err(usage)?;
    let m = parse_matrix(r.as_ref(), mat).map_err(usage)?;
    let m2 = m
        .as_m2()
        .ok_or_else(|| usage("matrix check needs a 2×2 matrix"))?;
    let sel = PropSelection::parse(props).map_err(usage)?;
    let report = prop4(&r, m2, sel).map_err(usage)?;
    let violations = report.diagram_violations();
    let mut value = serde_json::to_value(&report)?;
    value["ring"] = json!(r.spec());
    value["diagram_violations"] = json!(violations);
    let status = if violations.is_empty() {
        Status::Ok
    } else {
        Status::Counterexample
    };
    Ok(Run {
        table: Table::from_object(&value),
        value,
        status,
    })
}

fn upsilon(ring: &str, a: &str, b: &str, c: &str) -> Result<Run> {
    let r = make_finite_ring(ring).map_err(usage)?;
    let p = |s: &str| r.parse_elem(s).map_err(usage);
    let (a, b, c) = (p(a)?, p(b)?, p(c)?);
    if !r.is_unimodular2(a, b) {
        return Err(usage("(a, b) must be unimodular"));
    }
    let img = upsilon_image(&r, a, b, c);
    let mut value = serde_json::to_value(&img)?;
    value["ring"] = json!(r.spec());
    Ok(Run {
        table: Table::from_object(&value),
        value,
        status: Status::Ok,
    })
}

fn smith(base: &str, mat: &str) -> Result<Run> {
    let base = if base.trim() == "Z" { "Int:H=1" } else { base };
    let value = match make_ring(base).map_err(usage)? {
        RingHandle::Integers(z) => {
            let m = parse_matrix(&z, mat).map_err(usage)?;
            snf(&m.to_rows()).map_err(usage)?.to_json()
        }
        RingHandle::PolyOverField(p) => {
            let m = parse_matrix(&p, mat).map_err(usage)?;
            snf(&m.to_rows()).map_err(usage)?.to_json()
        }
        RingHandle::Finite(_) => bail!(usage("snf needs base Z or PolyF:p=<p>,D=<d>")),
    };
    let status = if value["verified"] == true {
        Status::Ok
    } else {
        Status::Counterexample
    };
    Ok(Run {
        table: Table::from_object(&value),
        value,
        status,
    })
}

fn witness_run(input: Value, v: Verdict<Value>) -> Run {
    let (verdict, status, witness) = match v {
        Verdict::Holds(w) => ("FOUND", Status::Ok, w),
        Verdict::Fails => ("NONE", Status::Ok, Value::Null),
        Verdict::Unknown => ("UNKNOWN", Status::Unknown, Value::Null),
    };
    let value = json!({ "input": input, "verdict": verdict, "witness": witness });
    Run {
        table: Table::from_object(&value),
        value,
        status,
    }
}

fn verify(corpus: &str, theorems: &str, g: &Global) -> Result<Run> {
    let ids = TheoremId::parse_list(theorems).map_err(usage)?;
    let corpus = Corpus::named(corpus).map_err(usage)?;
    let cfg = SweepConfig {
        budget: g.budget_nodes,
        seed: g.seed,
        threads: g.threads,
    };
    let report = sweep(&corpus, &ids, &cfg);
    let status = if report.summary.counterexample > 0 {
        Status::Counterexample
    } else if report.summary.unknown > 0 {
        Status::Unknown
    } else {
        Status::Ok
    };
    let mut table = Table::new(
        ["theorem", "ring", "verdict", "evidence"]
            .map(String::from)
            .to_vec(),
    );
    for c in &report.cases {
        let verdict = serde_json::to_value(c.verdict)?;
        table.push(vec![
            c.theorem.to_string(),
            c.ring.clone(),
            verdict.as_str().unwrap_or_default().to_string(),
            c.evidence.to_string(),
        ]);
    }
    debug_assert!(report
        .cases
        .iter()
        .all(|c| c.verdict != CaseVerdict::Counterexample || !c.evidence.is_null()));
    Ok(Run {
        value: serde_json::to_value(&report)?,
        table,
        status,
    })
}

fn hunt_run(query: &str, corpus: &str, g: &Global) -> Result<Run> {
    let q = HuntQuery::parse(query).map_err(usage)?;
    let corpus = Corpus::named(corpus).map_err(usage)?;
    let out = hunt(&q, &corpus, g.budget_nodes);
    let status = if out.hit.is_none() && !out.undecided.is_empty() {
        Status::Unknown
    } else {
        Status::Ok
    };
    let value = serde_json::to_value(&out)?;
    Ok(Run {
        table: Table::from_object(&value),
        value,
        status,
    })
}

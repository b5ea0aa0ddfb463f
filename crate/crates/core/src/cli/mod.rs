//! Command-line front end. Every command prints one JSON report.

mod cache;
mod config;
mod report;
mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use cache::{cache_path, load_or_enumerate, CacheOutcome};
pub use config::{KRange, RunConfig};
pub use report::{error_object, strip_timings, ArithmeticSummary, Envelope};
pub use suite::{run_suite, CriterionOutcome, Profile, Status};

use crate::dynamics::alternating_projection_run;
use crate::error::{QgvError, Result};
use crate::fix::{generator_family, SubgroupDescriptor};
use crate::generation::{check_generation, one_singleton_rank, prop_diff_condition3, ygram_check, Arithmetic};
use crate::linalg::gram;
use crate::partition::FamilyKind;

#[derive(Parser, Debug)]
#[command(name = "qgverify", version, about = "Exact checks of fixed-point spaces of free orthogonal quantum groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Optional key=value config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of primes for modular ranks (at least 2).
    #[arg(long, global = true)]
    primes: Option<usize>,
    /// Skip exact certification of deficient modular ranks.
    #[arg(long, global = true)]
    no_escalation: bool,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    dense_limit: Option<u64>,
    /// Omit timings so repeated runs produce identical bytes.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List a partition family.
    Enumerate {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: usize,
    },
    /// Gram matrix of a subgroup's generator family.
    Gram {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        rank: bool,
        /// Also dump the matrix as triplets to this path.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Compare the intersection of two fixed spaces with the full one.
    CheckGeneration {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: Option<String>,
    },
    /// Rank of the x_p family.
    PropDiff {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: Option<String>,
    },
    /// Rank of the one-singleton family (odd degrees).
    Roland {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: Option<String>,
    },
    /// Rank of the y family.
    Ygram {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: Option<String>,
    },
    /// Alternating projections between two fixed spaces.
    Dynamics {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        #[arg(long)]
        tol: Option<f64>,
        /// Write an "m,distance" table here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(long, default_value = "ci")]
        profile: String,
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u32>>,
    },
}

fn build_config(g: &GlobalOpts) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        cfg.apply_file(path)?;
    }
    cfg.apply_env(|k| std::env::var(k).ok())?;
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(p) = g.primes {
        cfg.prime_count = p;
    }
    if g.no_escalation {
        cfg.bareiss_escalation = false;
    }
    if let Some(d) = &g.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    if let Some(w) = g.workers {
        cfg.parallelism = w;
    }
    if let Some(l) = g.dense_limit {
        cfg.dense_limit = l;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn degrees(k: &Option<String>, cfg: &RunConfig) -> Result<KRange> {
    match k {
        Some(s) => s.parse(),
        None => Ok(cfg.k_range),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Runs `f` for each degree on the worker pool, keeping degree order.
fn per_degree<T: Send>(ks: Vec<usize>, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    ks.into_par_iter().map(f).collect()
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Result<(String, Value, Value, ArithmeticSummary)> {
    let opts = cfg.rank_options();
    Ok(match cmd {
        Command::Enumerate { kind, k } => {
            let kind: FamilyKind = kind.parse()?;
            let outcome = load_or_enumerate(kind, *k, cfg.cache_dir.as_deref())?;
            let items: Vec<String> = outcome.partitions.iter().map(|p| p.encoding()).collect();
            (
                "enumerate".into(),
                json!({"kind": kind.tag(), "k": k}),
                json!({"count": items.len(), "items": items, "cache_hit": outcome.hit, "warning": outcome.warning}),
                ArithmeticSummary::exact(),
            )
        }
        Command::Gram { family, k, rank, dump } => {
            let d: SubgroupDescriptor = family.parse()?;
            let fam = generator_family(&d, *k)?;
            let g = gram(&fam)?;
            let q = g.to_qmatrix();
            if let Some(path) = dump {
                q.write_triplets(std::io::BufWriter::new(std::fs::File::create(path)?))?;
            }
            let matrix: Vec<Vec<String>> =
                (0..q.rows()).map(|i| q.row(i).iter().map(ToString::to_string).collect()).collect();
            let mut results = json!({"size": g.size(), "labels": fam.labels(), "matrix": matrix});
            let mut arith = ArithmeticSummary::exact();
            if *rank {
                let r = g.rank(&opts);
                arith = ArithmeticSummary::merge([&Arithmetic::from_results([&r])]);
                results["rank"] = to_value(&r);
            }
            ("gram".into(), json!({"family": d.to_string(), "k": k}), results, arith)
        }
        Command::CheckGeneration { a, b, k } => {
            let (da, db): (SubgroupDescriptor, SubgroupDescriptor) = (a.parse()?, b.parse()?);
            let ks = degrees(k, cfg)?;
            let reports = per_degree(ks.iter().collect(), |k| check_generation(&da, &db, k, &opts))?;
            let generated_up_to = reports
                .iter()
                .take_while(|r| r.verdict == crate::generation::Verdict::GeneratedAtK)
                .last()
                .map(|r| r.k);
            let arith = ArithmeticSummary::merge(reports.iter().map(|r| &r.arithmetic));
            (
                "check-generation".into(),
                json!({"a": da.to_string(), "b": db.to_string(), "k": ks.to_string()}),
                json!({"reports": to_value(&reports), "generated_up_to": generated_up_to}),
                arith,
            )
        }
        Command::PropDiff { n, k } | Command::Ygram { n, k } | Command::Roland { n, k } => {
            let ks = degrees(k, cfg)?;
            let (name, list): (&str, Vec<usize>) = match cmd {
                Command::PropDiff { .. } => ("prop-diff", ks.iter().collect()),
                Command::Ygram { .. } => ("ygram", ks.iter().collect()),
                _ if ks.lo == ks.hi => ("roland", vec![ks.lo]),
                _ => ("roland", ks.iter().filter(|k| k % 2 == 1).collect()),
            };
            let reports = per_degree(list, |k| match name {
                "prop-diff" => prop_diff_condition3(*n, k, &opts),
                "ygram" => ygram_check(*n, k, &opts),
                _ => one_singleton_rank(*n, k, &opts),
            })?;
            let arith = ArithmeticSummary::merge(reports.iter().map(|r| &r.arithmetic));
            (name.into(), json!({"N": n, "k": ks.to_string()}), json!({"reports": to_value(&reports)}), arith)
        }
        Command::Dynamics { a, b, k, max_iter, tol, csv } => {
            let (da, db): (SubgroupDescriptor, SubgroupDescriptor) = (a.parse()?, b.parse()?);
            let tol = tol.unwrap_or(cfg.float_tol);
            let r = alternating_projection_run(&da, &db, *k, *max_iter, tol, cfg.dense_limit, &opts)?;
            if let Some(path) = csv {
                std::fs::write(path, r.run.to_csv())?;
            }
            (
                "dynamics".into(),
                json!({"a": da.to_string(), "b": db.to_string(), "k": k, "max_iter": max_iter, "tol": tol}),
                to_value(&r),
                ArithmeticSummary { mode: "float64".into(), primes: vec![] },
            )
        }
        Command::Suite { profile, only } => {
            let profile: Profile = profile.parse()?;
            let outcomes = run_suite(profile, only.as_deref(), cfg)?;
            let passed = outcomes.iter().all(|o| matches!(o.status, Status::Pass | Status::Exploratory));
            (
                "suite".into(),
                json!({"profile": profile, "only": only}),
                json!({"all_passed": passed, "criteria": to_value(&outcomes)}),
                ArithmeticSummary { mode: "modular".into(), primes: vec![] },
            )
        }
    })
}

fn emit(out: &Option<PathBuf>, v: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("json") + "\n";
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run_parsed(cli: &Cli) -> Result<()> {
    let start = Instant::now();
    let cfg = build_config(&cli.global)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| QgvError::Resource(format!("worker pool: {e}")))?;
    let (command, params, mut results, arithmetic) = pool.install(|| execute(&cli.command, &cfg))?;
    if cli.global.no_timing {
        strip_timings(&mut results);
    }
    let mut env = Envelope::new(&command, params, &cfg, results, arithmetic);
    if !cli.global.no_timing {
        env.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    emit(&cli.global.out, &to_value(&env))
}

/// Entry point of the `qgverify` binary; returns the process exit code.
/// Mathematical verdicts never affect the exit code, only operational errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let err = QgvError::Parse(e.to_string().trim().to_string());
            println!("{}", serde_json::to_string_pretty(&error_object(&err)).expect("json"));
            return 2;
        }
    };
    match run_parsed(&cli) {
        Ok(()) => 0,
        Err(e) => {
            let obj = error_object(&e);
            let text = serde_json::to_string_pretty(&obj).expect("json");
            // errors go to --out as well, so scripts find them where they expect the report
            if let Some(path) = &cli.global.out {
                let _ = std::fs::write(path, format!("{text}\n"));
            }
            println!("{text}");
            1
        }
    }
}

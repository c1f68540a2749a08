mod pipeline;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hodge_matroid::corpus::{corpus, CorpusEntry};
use hodge_matroid::linalg::Rational;
use hodge_matroid::matroid::io;
use hodge_matroid::{Error, Exec, Filter, Matroid, Subset};
use rayon::prelude::*;

use pipeline::{Ctx, Degrees, Ell, FanCheck, TopHeavyMode};
use report::{EntryReport, MatroidDescriptor, Report};

const THREADS_VAR: &str = "HODGE_MATROID_THREADS";

#[derive(Parser)]
#[command(
    name = "hodge-matroid",
    version,
    about = "Matroid invariants, Bergman fans and Chow ring checks"
)]
struct Cli {
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Record per-check runtimes (reports are then no longer byte-stable).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Matroid file, or `@name` for a bundled corpus entry.
    file: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the flat axioms and summarize the matroid.
    Validate(Input),
    /// Characteristic polynomial, μ, Whitney numbers and f-vector checks.
    Invariants(Input),
    /// Build the Chow ring of a filter of flats.
    Chow {
        #[command(flatten)]
        input: Input,
        /// `full`, `top`, or `;`-separated flats such as `{0,1};{2,3}`;
        /// the upward closure is taken.
        #[arg(long, default_value = "full")]
        filter: String,
        /// Compare μ from degrees of α and β with the lattice computation.
        #[arg(long)]
        mu: bool,
    },
    /// Poincaré duality, Hard Lefschetz and Hodge-Riemann checks.
    Hodge {
        #[command(flatten)]
        input: Input,
        /// `default` for c(P) = |P|(n-|P|), or a file of `{subset} value` lines.
        #[arg(long, default_value = "default")]
        ell: String,
        /// `all` or a single degree.
        #[arg(long, default_value = "all")]
        k: String,
    },
    /// Validity, unimodularity, purity and ampleness for the Bergman fan.
    Fan {
        #[command(flatten)]
        input: Input,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "valid,unimodular,pure,ample"
        )]
        check: Vec<FanCheck>,
        /// Filter of flats, as for `chow`.
        #[arg(long, default_value = "full")]
        filter: String,
    },
    /// Rank of λ^(q-p) on the graded Möbius algebra and flat matchings.
    Topheavy {
        #[command(flatten)]
        input: Input,
        #[arg(long, requires = "q", conflicts_with = "sweep")]
        p: Option<usize>,
        #[arg(long, requires = "p", conflicts_with = "sweep")]
        q: Option<usize>,
        /// Every pair 0 <= p <= min(q, r - q).
        #[arg(long)]
        sweep: bool,
    },
    /// Run every pipeline on the bundled corpus.
    Corpus {
        #[arg(long)]
        all: bool,
        /// Entry names, when not running `--all`.
        names: Vec<String>,
    },
}

/// Usage or input problems; exit code 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

fn is_axiom_error(e: &Error) -> bool {
    matches!(
        e,
        Error::AxiomViolation { .. } | Error::ExchangeViolation { .. } | Error::CircuitViolation(_)
    )
}

fn load(source: &str) -> Result<CorpusEntry, Error> {
    if let Some(name) = source.strip_prefix('@') {
        let mut e = hodge_matroid::corpus::entry(name)?
            .ok_or_else(|| Error::BadParameters(format!("no corpus entry {name:?}")))?;
        if !e.realizations.is_empty() {
            e.matroid.set_known_representable(Some(true));
        }
        return Ok(e);
    }
    let file = io::read_file(Path::new(source))?;
    Ok(CorpusEntry {
        name: file.name,
        matroid: file.matroid,
        graph: file.graph,
        realizations: file.matrix.into_iter().collect(),
    })
}

fn parse_filter(m: &Matroid, arg: &str) -> Result<Filter, UsageError> {
    match arg.trim() {
        "full" => return Ok(Filter::full(m)),
        "top" => return Ok(Filter::top(m)),
        _ => {}
    }
    let mut given = Vec::new();
    for part in arg.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let s: Subset = part
            .parse()
            .map_err(|e| UsageError(format!("--filter: {e}")))?;
        if !m.is_flat(s) || s.is_empty() {
            return Err(UsageError(format!("--filter: {s} is not a nonempty flat")));
        }
        given.push(s);
    }
    let closed: Vec<Subset> = m
        .flats()
        .iter()
        .copied()
        .filter(|&f| f == m.ground() || given.iter().any(|g| g.is_subset_of(f)))
        .collect();
    Ok(Filter::new(m, &closed)?)
}

fn parse_ell(arg: &str) -> Result<Ell, UsageError> {
    if arg == "default" {
        return Ok(Ell::Default);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| UsageError(format!("--ell {arg}: {e}")))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || {
            UsageError(format!(
                "--ell {arg}, line {}: expected `{{subset}} value`",
                i + 1
            ))
        };
        let close = line.find('}').ok_or_else(bad)?;
        let subset: Subset = line[..=close].parse().map_err(|_| bad())?;
        let value: Rational = line[close + 1..].trim().parse().map_err(|_| bad())?;
        values.push((subset, value));
    }
    Ok(Ell::Custom(values))
}

fn parse_degrees(arg: &str, m: &Matroid) -> Result<Degrees, UsageError> {
    if arg == "all" {
        return Ok(Degrees::All);
    }
    let k: usize = arg
        .parse()
        .map_err(|_| UsageError(format!("--k: expected `all` or an integer, got {arg:?}")))?;
    let r = m.rank().saturating_sub(1);
    if k > r {
        return Err(UsageError(format!("--k {k} exceeds r = {r}")));
    }
    Ok(Degrees::One(k))
}

fn entry_report(e: &CorpusEntry, checks: Vec<report::CheckResult>) -> EntryReport {
    EntryReport {
        matroid: MatroidDescriptor::new(&e.name, &e.matroid),
        checks,
    }
}

fn corpus_entry_checks(e: &CorpusEntry, ctx: Ctx) -> Vec<report::CheckResult> {
    let m = &e.matroid;
    let mut checks = pipeline::validate_checks(m, ctx);
    checks.extend(pipeline::invariant_checks(m, ctx));
    checks.extend(pipeline::oracle_checks(e, ctx));
    if e.is_geometry() {
        let full = Filter::full(m);
        checks.extend(pipeline::chow_checks(m, &full, true, ctx));
        checks.extend(pipeline::hodge_checks(m, &Ell::Default, Degrees::All, ctx));
        let all = [
            FanCheck::Valid,
            FanCheck::Unimodular,
            FanCheck::Pure,
            FanCheck::Ample,
        ];
        checks.extend(pipeline::fan_checks(m, &full, &all, ctx));
    } else {
        for stage in ["chow", "hodge", "fan"] {
            checks.push(report::CheckResult::skipped(
                stage,
                "not a combinatorial geometry",
            ));
        }
    }
    checks.extend(pipeline::topheavy_checks(m, TopHeavyMode::Sweep, ctx));
    checks
}

fn run(cli: &Cli) -> Result<Report, UsageError> {
    let ctx = Ctx {
        exec: Exec::Parallel,
        timings: cli.timings,
    };
    let single =
        |command: &str,
         requested: &[&str],
         input: &Input,
         f: &dyn Fn(&CorpusEntry) -> Result<Vec<report::CheckResult>, UsageError>| {
            let e = load(&input.file)?;
            let checks = f(&e)?;
            let requested = requested.iter().map(|s| s.to_string()).collect();
            Ok::<_, UsageError>(Report::new(
                command,
                requested,
                vec![entry_report(&e, checks)],
            ))
        };
    match &cli.command {
        Command::Validate(input) => match load(&input.file) {
            Ok(e) => Ok(Report::new(
                "validate",
                vec!["flat-axioms".into()],
                vec![entry_report(&e, pipeline::validate_checks(&e.matroid, ctx))],
            )),
            Err(err) if is_axiom_error(&err) => {
                let name = Path::new(&input.file)
                    .file_stem()
                    .map_or(input.file.clone(), |s| s.to_string_lossy().into_owned());
                let entry = EntryReport {
                    matroid: MatroidDescriptor::invalid(&name),
                    checks: vec![pipeline::axiom_failure(&err)],
                };
                Ok(Report::new(
                    "validate",
                    vec!["flat-axioms".into()],
                    vec![entry],
                ))
            }
            Err(err) => Err(err.into()),
        },
        Command::Invariants(input) => single("invariants", &["invariants"], input, &|e| {
            Ok(pipeline::invariant_checks(&e.matroid, ctx))
        }),
        Command::Chow { input, filter, mu } => single("chow", &["chow"], input, &|e| {
            let f = parse_filter(&e.matroid, filter)?;
            Ok(pipeline::chow_checks(&e.matroid, &f, *mu, ctx))
        }),
        Command::Hodge { input, ell, k } => {
            let ell = parse_ell(ell)?;
            single(
                "hodge",
                &["poincare-duality", "hard-lefschetz", "hodge-riemann"],
                input,
                &|e| {
                    let degrees = parse_degrees(k, &e.matroid)?;
                    Ok(pipeline::hodge_checks(&e.matroid, &ell, degrees, ctx))
                },
            )
        }
        Command::Fan {
            input,
            check,
            filter,
        } => {
            let names: Vec<&str> = check
                .iter()
                .map(|c| match c {
                    FanCheck::Valid => "valid",
                    FanCheck::Unimodular => "unimodular",
                    FanCheck::Pure => "pure",
                    FanCheck::Ample => "ample",
                })
                .collect();
            single("fan", &names, input, &|e| {
                let f = parse_filter(&e.matroid, filter)?;
                Ok(pipeline::fan_checks(&e.matroid, &f, check, ctx))
            })
        }
        Command::Topheavy { input, p, q, sweep } => {
            let mode = match (p, q, sweep) {
                (Some(p), Some(q), false) => TopHeavyMode::Pair(*p, *q),
                (None, None, true) => TopHeavyMode::Sweep,
                _ => return Err(UsageError("give either --p and --q, or --sweep".into())),
            };
            let e = load(&input.file)?;
            let checks = pipeline::topheavy_checks(&e.matroid, mode, ctx);
            Ok(Report::new(
                "topheavy",
                vec!["topheavy".into()],
                vec![entry_report(&e, checks)],
            ))
        }
        Command::Corpus { all, names } => {
            let entries = corpus()?;
            let selected: Vec<CorpusEntry> = if *all {
                entries
            } else if names.is_empty() {
                return Err(UsageError("give --all or entry names".into()));
            } else {
                names
                    .iter()
                    .map(|n| {
                        entries
                            .iter()
                            .find(|e| &e.name == n)
                            .cloned()
                            .ok_or_else(|| UsageError(format!("no corpus entry {n:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let inner = Ctx {
                exec: Exec::Sequential,
                ..ctx
            };
            let reports: Vec<EntryReport> = selected
                .par_iter()
                .map(|e| {
                    let mut e = e.clone();
                    if !e.realizations.is_empty() {
                        e.matroid.set_known_representable(Some(true));
                    }
                    entry_report(&e, corpus_entry_checks(&e, inner))
                })
                .collect();
            let requested = [
                "validate",
                "invariants",
                "oracles",
                "chow",
                "hodge",
                "fan",
                "topheavy",
            ];
            Ok(Report::new(
                "corpus",
                requested.iter().map(|s| s.to_string()).collect(),
                reports,
            ))
        }
    }
}

fn configure_threads() -> Result<(), UsageError> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        UsageError(format!(
            "{THREADS_VAR} must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| UsageError(format!("{THREADS_VAR}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = configure_threads().and_then(|()| run(&cli));
    let mut report = match outcome {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if cli.timings {
        report.total_runtime_ms = Some((start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
    }
    match cli.json.as_deref() {
        Some(p) if p == Path::new("-") => print!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json()) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
            print!("{}", report.to_text());
        }
        None => print!("{}", report.to_text()),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

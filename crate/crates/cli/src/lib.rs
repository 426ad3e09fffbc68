//! Command-line front end. [`run`] does all the work so that tests can drive
//! it in-process; the binary only forwards its arguments and exit code.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wonderful::hasse::HasseDiagram;
use wonderful::oracle::{run_suite, SuiteConfig, SweepResult, SUITES};
use wonderful::partitions::{components_cross, components_with_orbit_closure, CrossComponents};
use wonderful::wire::{IntersectVerdict, StratumRecord};
use wonderful::{BuildOptions, CartanDatum, CoxeterSystem, DiagramAutomorphism, SimpleSubset, StratumKind, WonderfulContext};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wonderful", version, about = "Weyl group combinatorics of wonderful compactifications")]
pub struct Cli {
    /// Type label such as B3 or A1xA1, or a path to a Cartan matrix file.
    #[arg(long = "type", global = true, default_value = "A2")]
    pub type_label: String,
    /// Diagram automorphism as a comma-separated image list; identity if omitted.
    #[arg(long, global = true)]
    pub delta: Option<String>,
    /// Twist of the Frobenius-graph orbits; identity if omitted.
    #[arg(long, global = true)]
    pub twist: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Largest Weyl group to enumerate.
    #[arg(long, global = true, env = "WONDERFUL_CAP", default_value_t = 100_000)]
    pub cap: usize,
    /// Worker threads for verification; all cores if omitted.
    #[arg(long, global = true, env = "WONDERFUL_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate strata of one kind, optionally over a single J.
    ListStrata {
        #[arg(long, value_parser = parse_kind)]
        kind: StratumKind,
        /// Comma-separated simple root indices; empty for the empty set.
        #[arg(long = "J")]
        j: Option<String>,
    },
    /// Decide whether two strata over the same J meet.
    Intersect {
        /// Stratum record as JSON, e.g. {"kind":"piece","J":[0],"w":[1]}.
        first: String,
        second: String,
    },
    /// Irreducible components of closure(X) ∩ closure(Z_K), or of
    /// closure(X) ∩ closure(Y) with --with.
    Components {
        stratum: String,
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long = "with")]
        with: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Covering relation of a closure poset.
    Hasse {
        #[arg(long, value_parser = parse_kind)]
        kind: StratumKind,
    },
}

fn parse_kind(s: &str) -> Result<StratumKind, String> {
    StratumKind::parse(s).ok_or_else(|| format!("unknown kind {s:?}"))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Falsified(String),
    Io(std::io::Error),
}

impl From<wonderful::Error> for Failure {
    fn from(e: wonderful::Error) -> Self {
        match e {
            wonderful::Error::Falsified(m) => Failure::Falsified(m),
            e => Failure::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Documents go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            if code == EXIT_PASS {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Falsified(m)) => {
            let _ = writeln!(err, "falsified: {m}");
            EXIT_FALSIFIED
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_PASS,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn context(cli: &Cli) -> Result<WonderfulContext, Failure> {
    let cartan = if Path::new(&cli.type_label).is_file() {
        CartanDatum::from_file(Path::new(&cli.type_label))?
    } else {
        CartanDatum::from_label(&cli.type_label)?
    };
    let opts = BuildOptions { group_cap: cli.cap, ..BuildOptions::default() };
    let sys = Arc::new(CoxeterSystem::build_with(cartan, opts)?);
    let auto = |spec: &Option<String>| match spec {
        Some(s) => DiagramAutomorphism::parse(sys.cartan(), s),
        None => Ok(DiagramAutomorphism::identity(sys.rank())),
    };
    let delta = auto(&cli.delta)?;
    let twist = auto(&cli.twist)?;
    Ok(WonderfulContext::new(sys.clone(), delta)?.with_twist(twist)?)
}

fn subset(spec: &str, rank: usize) -> Result<SimpleSubset, Failure> {
    let mut j = SimpleSubset::EMPTY;
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part.parse().map_err(|_| Failure::Usage(format!("bad subset {spec:?}")))?;
        if i >= rank {
            return Err(Failure::Usage(format!("index {i} exceeds the rank {rank}")));
        }
        j = j.union(SimpleSubset::singleton(i));
    }
    Ok(j)
}

fn record(ctx: &WonderfulContext, spec: &str) -> Result<wonderful::StratumRef, Failure> {
    let rec: StratumRecord =
        serde_json::from_str(spec).map_err(|e| Failure::Usage(format!("malformed stratum {spec:?}: {e}")))?;
    Ok(rec.to_stratum(ctx)?)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}").map_err(Failure::Io)
}

fn emit_text(out: &mut dyn Write, lines: impl IntoIterator<Item = String>) -> Result<(), Failure> {
    for l in lines {
        writeln!(out, "{l}").map_err(Failure::Io)?;
    }
    Ok(())
}

fn no_dot(cli: &Cli) -> Result<(), Failure> {
    if cli.output == Output::Dot {
        return Err(Failure::Usage("--output dot is only available for hasse".into()));
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(n) = cli.workers {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let ctx = context(cli)?;
    let sys = ctx.sys();
    match &cli.command {
        Command::ListStrata { kind, j } => {
            no_dot(cli)?;
            let strata = match j {
                Some(j) => ctx.strata_over(*kind, subset(j, sys.rank())?),
                None => ctx.enumerate_strata(*kind),
            };
            if cli.output == Output::Text {
                emit_text(out, strata.iter().map(|s| s.describe(sys)))?;
            } else {
                let recs: Vec<StratumRecord> = strata.iter().map(|s| StratumRecord::new(&ctx, s)).collect();
                emit_json(out, &recs)?;
            }
        }
        Command::Intersect { first, second } => {
            no_dot(cli)?;
            let (a, b) = (record(&ctx, first)?, record(&ctx, second)?);
            let v = IntersectVerdict::compute(&ctx, &a, &b)?;
            if cli.output == Output::Text {
                emit_text(out, [format!("nonempty: {}", v.nonempty)])?;
            } else {
                emit_json(out, &v)?;
            }
        }
        Command::Components { stratum, k, with } => {
            no_dot(cli)?;
            let x = record(&ctx, stratum)?;
            let pairs: Vec<Vec<StratumRecord>> = match (k, with) {
                (Some(k), None) => components_with_orbit_closure(&ctx, &x, subset(k, sys.rank())?)?
                    .iter()
                    .map(|c| vec![StratumRecord::new(&ctx, c)])
                    .collect(),
                (None, Some(y)) => match components_cross(&ctx, &x, &record(&ctx, y)?)? {
                    CrossComponents::Disjoint => Vec::new(),
                    CrossComponents::Components(ps) => {
                        ps.iter().map(|(a, b)| vec![StratumRecord::new(&ctx, a), StratumRecord::new(&ctx, b)]).collect()
                    }
                },
                _ => return Err(Failure::Usage("components needs exactly one of --K and --with".into())),
            };
            if cli.output == Output::Text {
                emit_text(
                    out,
                    pairs.iter().map(|p| {
                        p.iter()
                            .map(|r| r.to_stratum(&ctx).map(|s| s.describe(sys)).unwrap_or_default())
                            .collect::<Vec<_>>()
                            .join(" & ")
                    }),
                )?;
            } else if k.is_some() {
                let flat: Vec<&StratumRecord> = pairs.iter().map(|p| &p[0]).collect();
                emit_json(out, &flat)?;
            } else {
                emit_json(out, &pairs)?;
            }
        }
        Command::Verify { suite, timing } => {
            no_dot(cli)?;
            if !SUITES.contains(&suite.as_str()) {
                return Err(Failure::Usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))));
            }
            let mut cfg = SuiteConfig::new(ctx.system.clone());
            if cli.delta.is_some() {
                cfg = cfg.with_deltas(vec![ctx.delta.clone()]);
            }
            let mut result: SweepResult = run_suite(suite, &cfg)?;
            if !timing {
                result.wall_time_us = None;
            }
            if cli.output == Output::Text {
                let mut lines = vec![format!(
                    "{} on {}: {} cases, {} failures",
                    result.suite, result.type_label, result.cases, result.failure_count
                )];
                lines.extend(result.failures.iter().map(|f| format!("  {}: {}", f.check, f.witness)));
                lines.extend(result.notes.iter().map(|(k, v)| format!("  note {k} = {v}")));
                emit_text(out, lines)?;
            } else {
                emit_json(out, &result)?;
            }
            return Ok(if result.passed() { EXIT_PASS } else { EXIT_FALSIFIED });
        }
        Command::Hasse { kind } => {
            let h = HasseDiagram::build(&ctx, *kind)?;
            match cli.output {
                Output::Json => {
                    let nodes: Vec<StratumRecord> = h.nodes.iter().map(|s| StratumRecord::new(&ctx, s)).collect();
                    emit_json(out, &HasseRecord { nodes, covers: h.covers.clone() })?;
                }
                _ => write!(out, "{}", h.to_dot(&ctx)).map_err(Failure::Io)?,
            }
        }
    }
    Ok(EXIT_PASS)
}

#[derive(Debug, Serialize)]
struct HasseRecord {
    nodes: Vec<StratumRecord>,
    covers: Vec<(usize, usize)>,
}

use std::ffi::OsString;
use std::io::{self, BufReader, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use beta_trees::bicubic::{to_map, to_tree};
use beta_trees::enumerate::{trees, Stat};
use beta_trees::involution::{eval_expr, parse_expr, parse_literal};
use beta_trees::series::solve_f;
use beta_trees::tree::parse_tree;
use beta_trees::verify::{gf_check, joint_distribution_with, run_check, Check, Driver, Sequential, TreeFold, VerifyReport};
use beta_trees::{g, BetaTree, BicubicMap, Semantics};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cache::Cache;
use crate::codec::{coefficients, DistJson, ExprJson, MapJson, MapStatsJson, ReportJson, StatsJson, TreeJson};
use crate::dot::map_to_dot;
use crate::error::CliError;
use crate::oeis::{cross_check, Sequence};
use crate::parallel::Parallel;

/// Exit status for a completed command whose checks all passed.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification ran and failed.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for bad flags or malformed input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "beta-trees", version, about = "Explore β(0,1)-trees, the involution g and rooted bicubic maps")]
pub struct Cli {
    /// Worker threads for enumeration-heavy commands (1 = sequential).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Directory for finished verification reports.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Statistics of one tree.
    Stats {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// Image of a tree under g.
    G {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value = "text")]
        format: DataFormat,
    },
    /// Decomposition expression of a tree.
    Expr {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value = "rho-mu")]
        semantics: SemanticsArg,
        #[arg(long, value_enum, default_value = "text")]
        format: DataFormat,
    },
    /// Evaluates an expression literal or JSON expression.
    Eval {
        #[arg(long)]
        expr: String,
        /// Required for JSON input; literals name their own operators.
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: DataFormat,
    },
    /// Lists or counts all trees on a number of nodes.
    Enumerate {
        #[arg(long)]
        nodes: u32,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: EnumFormat,
    },
    /// Joint distribution of two statistics.
    Dist {
        #[arg(long)]
        nodes: u32,
        /// Two statistic names separated by a comma, e.g. root,rmod.
        #[arg(long, value_parser = parse_pair)]
        pair: (Stat, Stat),
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// Fixed points of g.
    FixedPoints {
        #[arg(long)]
        nodes: u32,
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: DataFormat,
    },
    /// Rooted bicubic maps.
    Map {
        #[command(subcommand)]
        command: MapCommand,
    },
    /// Solves the functional equation for the (root, rmod) series.
    Gf {
        #[arg(long, default_value_t = 12)]
        order: u32,
        /// Print all coefficients as JSON instead of checking them.
        #[arg(long)]
        dump: bool,
    },
    /// Runs one check, or all of them.
    Verify {
        /// Check name or `all`.
        #[arg(value_parser = parse_checks)]
        check: Checks,
        /// Upper size bound; each check has its own default.
        #[arg(long)]
        max_nodes: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        /// Local A003645 b-file; the built-in terms are used otherwise.
        #[arg(long, value_name = "FILE")]
        oeis: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MapCommand {
    /// The map of a tree.
    FromTree {
        tree: String,
        #[arg(long, value_enum, default_value = "json")]
        format: MapFormat,
    },
    /// The tree of a map.
    ToTree {
        #[command(flatten)]
        input: MapInput,
        #[arg(long, value_enum, default_value = "text")]
        format: DataFormat,
    },
    /// Size and the five statistics of a map.
    Stats {
        #[command(flatten)]
        input: MapInput,
    },
    /// Applies the root rotation `times` times.
    Phi {
        #[command(flatten)]
        input: MapInput,
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: MapFormat,
    },
}

#[derive(Args, Debug)]
pub struct MapInput {
    /// Map JSON, `@path` to read it from a file, or `-` for stdin.
    #[arg(required_unless_present = "tree", conflicts_with = "tree")]
    pub map: Option<String>,
    /// Build the map from this tree instead.
    #[arg(long)]
    pub tree: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumFormat {
    Jsonl,
    Text,
    Count,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapFormat {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemanticsArg {
    RhoMu,
    SigmaNu,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Semantics {
        match s {
            SemanticsArg::RhoMu => Semantics::RhoMu,
            SemanticsArg::SigmaNu => Semantics::SigmaNu,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checks(pub Vec<Check>);

fn parse_checks(s: &str) -> Result<Checks, String> {
    if s == "all" {
        return Ok(Checks(Check::ALL.to_vec()));
    }
    s.parse().map(|c| Checks(vec![c])).map_err(|e: beta_trees::verify::UnknownCheck| {
        let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
        format!("{e}; expected one of {} or all", names.join(", "))
    })
}

fn parse_pair(s: &str) -> Result<(Stat, Stat), String> {
    let names: Vec<&str> = Stat::ALL.iter().map(|c| c.name()).collect();
    let stat = |p: &str| p.trim().parse::<Stat>().map_err(|_| format!("unknown statistic '{p}'; expected one of {}", names.join(", ")));
    match s.split_once(',') {
        Some((a, b)) => Ok((stat(a)?, stat(b)?)),
        None => Err("expected two statistics separated by a comma".into()),
    }
}

/// Either driver, chosen from `--jobs`.
enum AnyDriver {
    Sequential(Sequential),
    Parallel(Parallel),
}

impl AnyDriver {
    fn new(jobs: Option<usize>) -> Result<AnyDriver, CliError> {
        Ok(match jobs {
            Some(1) => AnyDriver::Sequential(Sequential),
            _ => AnyDriver::Parallel(Parallel::new(jobs)?),
        })
    }
}

impl Driver for AnyDriver {
    fn fold<F: TreeFold>(&self, n: u32, fold: &F) -> F::Acc {
        match self {
            AnyDriver::Sequential(d) => d.fold(n, fold),
            AnyDriver::Parallel(d) => d.fold(n, fold),
        }
    }
}

struct Count;

impl TreeFold for Count {
    type Acc = u64;

    fn init(&self) -> u64 {
        0
    }

    fn visit(&self, acc: &mut u64, _: &BetaTree) {
        *acc += 1;
    }

    fn merge(&self, into: &mut u64, other: u64) {
        *into += other;
    }
}

struct FixedPoints {
    collect: bool,
}

impl TreeFold for FixedPoints {
    type Acc = (u64, Vec<BetaTree>);

    fn init(&self) -> Self::Acc {
        (0, Vec::new())
    }

    fn visit(&self, acc: &mut Self::Acc, t: &BetaTree) {
        if g(t) == *t {
            acc.0 += 1;
            if self.collect {
                acc.1.push(t.clone());
            }
        }
    }

    fn merge(&self, into: &mut Self::Acc, other: Self::Acc) {
        into.0 += other.0;
        into.1.extend(other.1);
    }
}

#[derive(Serialize)]
struct FixedPointsJson {
    nodes: u32,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trees: Option<Vec<String>>,
}

/// Parses argv and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_tree(text: &str) -> Result<BetaTree, CliError> {
    if text.trim_start().starts_with('{') {
        let j: TreeJson = serde_json::from_str(text)?;
        Ok(j.to_tree()?)
    } else {
        Ok(parse_tree(text)?)
    }
}

fn read_map(input: &MapInput) -> Result<BicubicMap, CliError> {
    if let Some(tree) = &input.tree {
        return Ok(to_map(&read_tree(tree)?)?);
    }
    let arg = input.map.as_deref().unwrap_or_default();
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        let mut s = String::new();
        BufReader::new(std::fs::File::open(path)?).read_to_string(&mut s)?;
        s
    } else {
        arg.to_string()
    };
    let j: MapJson = serde_json::from_str(&text)?;
    j.to_map()
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_tree(out: &mut dyn Write, t: &BetaTree, format: DataFormat) -> Result<(), CliError> {
    match format {
        DataFormat::Text => Ok(writeln!(out, "{t}")?),
        DataFormat::Json => write_json(out, &TreeJson::from(t)),
    }
}

fn write_map(out: &mut dyn Write, m: &BicubicMap, format: MapFormat) -> Result<(), CliError> {
    match format {
        MapFormat::Json => write_json(out, &MapJson::from(m)),
        MapFormat::Dot => Ok(write!(out, "{}", map_to_dot(m))?),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Stats { tree, format } => {
            let s = read_tree(&tree)?.statistics();
            match format {
                DataFormat::Json => write_json(out, &StatsJson::from(s))?,
                DataFormat::Text => writeln!(
                    out,
                    "root={} sub={} rzero={} rmod={} open={} exc={} nodes={} edges={}",
                    s.root, s.sub, s.rzero, s.rmod, s.open, s.exc, s.nodes, s.edges
                )?,
            }
        }
        Command::G { tree, format } => write_tree(out, &g(&read_tree(&tree)?), format)?,
        Command::Expr { tree, semantics, format } => {
            let e = parse_expr(&read_tree(&tree)?, semantics.into());
            match format {
                DataFormat::Text => writeln!(out, "{}", e.to_literal(semantics.into()))?,
                DataFormat::Json => write_json(out, &ExprJson::from(&e))?,
            }
        }
        Command::Eval { expr, semantics, format } => {
            let (e, sem) = if expr.trim_start().starts_with('{') {
                let j: ExprJson = serde_json::from_str(&expr)?;
                let sem = semantics
                    .ok_or_else(|| CliError::Usage("--semantics is required for JSON expressions".into()))?;
                (j.to_expr(), Semantics::from(sem))
            } else {
                let (e, named) = parse_literal(&expr)?;
                let sem = match (named, semantics.map(Semantics::from)) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(CliError::Usage("--semantics contradicts the operators in the literal".into()))
                    }
                    (Some(a), _) | (None, Some(a)) => a,
                    (None, None) => {
                        return Err(CliError::Usage("the literal is ε; pass --semantics".into()));
                    }
                };
                (e, sem)
            };
            write_tree(out, &eval_expr(&e, sem)?, format)?;
        }
        Command::Enumerate { nodes, format } => match format {
            EnumFormat::Count => writeln!(out, "{}", AnyDriver::new(jobs)?.fold(nodes, &Count))?,
            EnumFormat::Text => {
                for t in trees(nodes) {
                    writeln!(out, "{t}")?;
                }
            }
            EnumFormat::Jsonl => {
                for t in trees(nodes) {
                    serde_json::to_writer(&mut *out, &TreeJson::from(&t))?;
                    writeln!(out)?;
                }
            }
        },
        Command::Dist { nodes, pair, format } => {
            let table = joint_distribution_with(&AnyDriver::new(jobs)?, nodes, pair);
            match format {
                DataFormat::Json => write_json(out, &DistJson::new(nodes, pair, &table))?,
                DataFormat::Text => {
                    writeln!(out, "{} {} count", pair.0, pair.1)?;
                    for ((a, b), c) in table.iter() {
                        writeln!(out, "{a} {b} {c}")?;
                    }
                    writeln!(out, "total {}", table.total())?;
                }
            }
        }
        Command::FixedPoints { nodes, list, format } => {
            let (count, mut found) = AnyDriver::new(jobs)?.fold(nodes, &FixedPoints { collect: list });
            found.sort();
            let codes: Vec<String> = found.iter().map(|t| t.to_string()).collect();
            match format {
                DataFormat::Json => write_json(out, &FixedPointsJson { nodes, count, trees: list.then_some(codes) })?,
                DataFormat::Text => {
                    writeln!(out, "{count}")?;
                    for c in codes {
                        writeln!(out, "{c}")?;
                    }
                }
            }
        }
        Command::Map { command } => match command {
            MapCommand::FromTree { tree, format } => write_map(out, &to_map(&read_tree(&tree)?)?, format)?,
            MapCommand::ToTree { input, format } => write_tree(out, &to_tree(&read_map(&input)?)?, format)?,
            MapCommand::Stats { input } => write_json(out, &MapStatsJson::of(&read_map(&input)?))?,
            MapCommand::Phi { input, times, format } => {
                let mut m = read_map(&input)?;
                for _ in 0..times {
                    m = m.phi();
                }
                write_map(out, &m, format)?;
            }
        },
        Command::Gf { order, dump } => {
            if dump {
                write_json(out, &coefficients(&solve_f(order as usize)?))?;
            } else {
                let driver = AnyDriver::new(jobs)?;
                let report = timed(|| Ok(gf_check(&driver, order, order.min(9))))?;
                writeln!(out, "{report}")?;
                return Ok(if report.passed { EXIT_OK } else { EXIT_FAILED });
            }
        }
        Command::Verify { check, max_nodes, report, oeis } => {
            let seq = match oeis {
                Some(path) => Sequence::read_bfile(BufReader::new(std::fs::File::open(path)?))?,
                None => Sequence::embedded(),
            };
            let cache = cli.cache_dir.map(Cache::new);
            let driver = AnyDriver::new(jobs)?;
            let mut reports = Vec::new();
            for c in check.0 {
                let n = max_nodes.unwrap_or(c.default_max());
                let mut r = match cache.as_ref().and_then(|cache| cache.load(c, n)) {
                    Some(r) => r,
                    None => {
                        let r = timed(|| Ok(run_check(&driver, c, n)))?;
                        if let Some(cache) = &cache {
                            cache.store(&r)?;
                        }
                        r
                    }
                };
                cross_check(&mut r, &seq);
                if report == ReportFormat::Text {
                    writeln!(out, "{r}")?;
                    out.flush()?;
                }
                reports.push(r);
            }
            if report == ReportFormat::Json {
                let json: Vec<ReportJson> = reports.iter().map(ReportJson::from).collect();
                write_json(out, &json)?;
            }
            return Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILED });
        }
    }
    Ok(EXIT_OK)
}

fn timed(f: impl FnOnce() -> Result<VerifyReport, CliError>) -> Result<VerifyReport, CliError> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(r)
}

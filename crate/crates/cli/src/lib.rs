//! `sytd`: count, enumerate, sample, and analyse standard Young tableaux.
//!
//! Every record goes to stdout as one JSON object per line (or CSV for
//! `bounded --format csv`). Exit status is 0 on success, 1 on a domain error
//! and 2 on a usage error; errors are reported on stderr as
//! `{"error": <name>, "message": <text>}`.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use syt_descents::enumerate::{enumerate_syt, DEFAULT_GUARD};
use syt_descents::rational::{approx, Rational};
use syt_descents::sample::{exhaustive_audit, sample_syt_par, DEFAULT_AUDIT_GUARD};
use syt_descents::stats::{boundedness_scan, normalized_variance, shape_stats, MomentReport, ShapeFamily};
use syt_descents::tableau::FSpec;
use syt_descents::verify::{run_suite, SuiteConfig};
use syt_descents::{parse_partition, DescentSet, Error, Partition, Tableau};

#[derive(Debug, Parser)]
#[command(name = "sytd", version, about = "Exact descent statistics on standard Young tableaux")]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Maximum number of tableaux an enumeration may walk.
    #[arg(long, global = true, env = "SYT_GUARD", default_value_t = DEFAULT_GUARD)]
    guard: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of standard Young tableaux of a shape.
    Count { shape: String },
    /// List every tableau of a shape with its descent set.
    Enumerate {
        shape: String,
        /// Emit at most this many tableaux; the total is still counted.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Draw uniform random tableaux.
    Sample {
        shape: String,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SampleFormat::Json)]
        format: SampleFormat,
    },
    /// Sort every filling of the shape and report how often each tableau appears.
    Audit {
        shape: String,
        /// Maximum number of fillings (n!) to walk.
        #[arg(long, default_value_t = DEFAULT_AUDIT_GUARD)]
        max_fillings: u64,
    },
    /// Mean, variance and normalized variance of a descent function.
    Stats {
        shape: String,
        /// ones | identity | squares | geometric:<r> | list:<v1>,<v2>,...
        #[arg(long = "f", default_value = "ones")]
        f: String,
    },
    /// Check every closed form against enumeration for all shapes up to --max-n.
    Verify {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        audit_max_n: usize,
        /// Draws for the sampler frequency check.
        #[arg(long, default_value_t = 100_000)]
        draws: u64,
    },
    /// Trajectory of min_c and V/E² along a family of shapes.
    Bounded {
        /// two-row | hook | column | list:<shape>;<shape>;...
        #[arg(long)]
        family: String,
        #[arg(long = "f", default_value = "ones")]
        f: String,
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 50)]
        to: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Jsonl)]
        format: TableFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SampleFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Jsonl,
    Csv,
}

enum Failure {
    Usage(Error),
    Domain(Error),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(std::io::Error::other(e))
    }
}

fn shape_arg(text: &str) -> Result<Partition, Failure> {
    parse_partition(text).map_err(Failure::Usage)
}

fn f_arg(text: &str) -> Result<FSpec, Failure> {
    text.parse().map_err(Failure::Usage)
}

fn line(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

#[derive(Serialize)]
struct CountRecord<'a> {
    shape: &'a Partition,
    n: usize,
    syt_count: String,
}

#[derive(Serialize)]
struct TableauRecord<'a> {
    tableau: &'a Tableau,
    descents: DescentSet,
}

#[derive(Serialize)]
struct EnumerateSummary<'a> {
    shape: &'a Partition,
    syt_count: String,
    emitted: u64,
}

#[derive(Serialize)]
struct DrawRecord<'a> {
    draw: usize,
    tableau: &'a Tableau,
}

#[derive(Serialize)]
struct Coefficient {
    value: String,
    approx: f64,
}

#[derive(Serialize)]
struct Coefficients {
    c_conj: Coefficient,
    c_self: Coefficient,
    d_self: Coefficient,
    d_conj: Coefficient,
    e_self: Coefficient,
    e_conj: Coefficient,
}

#[derive(Serialize)]
struct StatsRecord<'a> {
    shape: &'a Partition,
    n: usize,
    f: String,
    syt_count: String,
    coefficients: Coefficients,
    #[serde(flatten)]
    moments: &'a MomentReport,
}

#[derive(Serialize)]
struct VerifySummary {
    checks: usize,
    failed: usize,
}

fn coefficient(r: &Rational) -> Coefficient {
    Coefficient { value: r.to_string(), approx: approx(r) }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": "ThreadPool", "message": e.to_string() }));
            return 1;
        }
    };
    let result = pool.install(|| execute(&cli, out));
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "{}", json!({ "error": e.name(), "message": e.to_string() }));
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{}", json!({ "error": e.name(), "message": e.to_string() }));
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "{}", json!({ "error": "Io", "message": e.to_string() }));
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32, Failure> {
    match &cli.command {
        Command::Count { shape } => {
            let shape = shape_arg(shape)?;
            let count = shape.count_syt()?;
            line(out, &CountRecord { shape: &shape, n: shape.size(), syt_count: count.to_string() })?;
        }
        Command::Enumerate { shape, limit } => {
            let shape = shape_arg(shape)?;
            let mut total = 0u64;
            for t in enumerate_syt(&shape, cli.guard)? {
                if limit.is_none_or(|l| total < l) {
                    line(out, &TableauRecord { tableau: &t, descents: t.descent_set() })?;
                }
                total += 1;
            }
            let emitted = limit.map_or(total, |l| l.min(total));
            line(out, &EnumerateSummary { shape: &shape, syt_count: total.to_string(), emitted })?;
        }
        Command::Sample { shape, count, seed, format } => {
            let shape = shape_arg(shape)?;
            for (i, t) in sample_syt_par(&shape, *count, *seed).iter().enumerate() {
                match format {
                    SampleFormat::Json => line(out, &DrawRecord { draw: i, tableau: t })?,
                    SampleFormat::Text => writeln!(out, "{}\n", t.to_text())?,
                }
            }
        }
        Command::Audit { shape, max_fillings } => {
            let shape = shape_arg(shape)?;
            line(out, &exhaustive_audit(&shape, *max_fillings)?)?;
        }
        Command::Stats { shape, f } => {
            let shape = shape_arg(shape)?;
            let spec = f_arg(f)?;
            let fun = spec.build(shape.size())?;
            let stats = shape_stats(&shape)?;
            let moments = normalized_variance(&shape, &fun)?;
            let record = StatsRecord {
                shape: &shape,
                n: shape.size(),
                f: spec.tag(),
                syt_count: stats.count.to_string(),
                coefficients: Coefficients {
                    c_conj: coefficient(&stats.c_conj),
                    c_self: coefficient(&stats.c_self),
                    d_self: coefficient(&stats.d_self),
                    d_conj: coefficient(&stats.d_conj),
                    e_self: coefficient(&stats.e_self),
                    e_conj: coefficient(&stats.e_conj),
                },
                moments: &moments,
            };
            line(out, &record)?;
        }
        Command::Verify { max_n, audit_max_n, draws } => {
            let cfg = SuiteConfig {
                max_n: *max_n,
                count_max_n: (*max_n).max(12),
                audit_max_n: *audit_max_n,
                sampler_draws: *draws,
                guard: cli.guard,
                ..SuiteConfig::default()
            };
            let outcomes = run_suite(cfg)?;
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            for o in &outcomes {
                line(out, o)?;
            }
            line(out, &VerifySummary { checks: outcomes.len(), failed })?;
            return Ok(if failed == 0 { 0 } else { 1 });
        }
        Command::Bounded { family, f, from, to, format } => {
            let family: ShapeFamily = family.parse().map_err(Failure::Usage)?;
            let spec = f_arg(f)?;
            let report = boundedness_scan(&family, &spec, *from..=*to)?;
            match format {
                TableFormat::Jsonl => {
                    for row in &report.rows {
                        line(out, row)?;
                    }
                }
                TableFormat::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record([
                        "m",
                        "shape",
                        "n",
                        "lambda_1",
                        "q",
                        "lhs",
                        "rhs_unit",
                        "min_c",
                        "normalized_variance",
                        "sup_min_c",
                        "sup_normalized_variance",
                    ])?;
                    let opt = |r: &Option<Rational>| r.as_ref().map_or("undefined".to_string(), |r| r.to_string());
                    for row in &report.rows {
                        w.write_record([
                            row.m.to_string(),
                            row.shape.to_string(),
                            row.n.to_string(),
                            row.lambda_1.to_string(),
                            row.q().to_string(),
                            row.lhs.to_string(),
                            row.rhs_unit.to_string(),
                            row.min_c.to_string(),
                            opt(&row.moments.normalized_variance),
                            row.running_sup_min_c.to_string(),
                            opt(&row.running_sup_normalized_variance),
                        ])?;
                    }
                    w.flush()?;
                }
            }
        }
    }
    Ok(0)
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aczel_core::constants::{compare_remark, remark_reproduced, RemarkRow};
use aczel_core::functions::{by_id, catalog};
use aczel_core::sampler::{
    aczel_sequences, derive_seed, random_commuting_pair, random_hermitian_in, random_hpd,
    random_sandwich_pair_with_options, random_unit_vector, tightest_sandwich, SandwichOptions, DEFAULT_COND_MAX,
};
use aczel_core::verifier::{run_suite, tightness_table, InequalityCase, SuiteConfig, TightnessRecord};
use aczel_core::{HermitianMatrix, SandwichPair};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "aczel",
    version,
    about = "Check reverse-Young and operator Aczél inequalities on seeded random inputs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; standard output when omitted. The bare values `csv` and
    /// `json` select the format instead.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn resolve(&self, default: Format) -> (Format, Option<&Path>) {
        match (&self.output, self.format) {
            (Some(p), None) if p.as_os_str() == "json" => (Format::Json, None),
            (Some(p), None) if p.as_os_str() == "csv" => (Format::Csv, None),
            (p, f) => (f.unwrap_or(default), p.as_deref()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SampleKind {
    Hpd,
    Hermitian,
    Sandwich,
    Commuting,
    Vector,
    Sequences,
}

#[derive(Subcommand)]
enum Command {
    /// Run the seeded verification suite; exit 1 on any failed trial.
    Verify {
        /// Comma-separated case ids; all cases when omitted.
        #[arg(long, value_delimiter = ',')]
        cases: Vec<InequalityCase>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_COND_MAX)]
        cond_max: f64,
        /// Write the inputs of each failed trial here as JSON.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reproduce the published constant comparisons; exit 1 on mismatch.
    Remark {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reverse constants next to the realized ratio, for sampled or loaded pairs.
    Compare {
        /// JSON file with `a`, `b` (matrix documents) and optional `s`, `t`.
        #[arg(long, conflicts_with_all = ["dim", "s", "t", "count", "seed", "cond_max"])]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0.5)]
        s: f64,
        #[arg(long, default_value_t = 2.0)]
        t: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_COND_MAX)]
        cond_max: f64,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value = "RECIP")]
        function: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Emit generated inputs as JSON.
    Sample {
        #[arg(long, value_enum)]
        kind: SampleKind,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_COND_MAX)]
        cond_max: f64,
        /// Interval bounds for `hermitian` and `commuting`, sandwich constants for `sandwich`.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        /// Sequence length.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Sequence exponent.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the decreasing-function catalog.
    Catalog {
        #[command(flatten)]
        out: OutputArgs,
    },
}

enum Failure {
    Usage(String),
    Failed,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(path: Option<&Path>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_field(x: Option<f64>) -> String {
    x.map(|v| format!("{v:e}")).unwrap_or_default()
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cases: Vec<InequalityCase>,
    dims: Vec<usize>,
    trials: usize,
    seed: u64,
    tol: f64,
    cond_max: f64,
    dump_dir: Option<PathBuf>,
    out: OutputArgs,
) -> Result<(), Failure> {
    let config = SuiteConfig {
        cases: if cases.is_empty() {
            InequalityCase::ALL.to_vec()
        } else {
            cases
        },
        dims,
        trials,
        master_seed: seed,
        tol,
        cond_max,
        keep_records: false,
    };
    let report = run_suite(&config)?;
    let (format, path) = out.resolve(Format::Csv);
    let body = match format {
        Format::Csv => report.to_csv()?,
        Format::Json => report.to_json()? + "\n",
    };
    emit(path, &body)?;
    if let Some(dir) = dump_dir {
        fs::create_dir_all(&dir)?;
        for f in &report.failures {
            let name = format!("{}_{}.json", f.report.case_id, f.report.trial_seed.unwrap_or_default());
            fs::write(dir.join(name), to_json(f)?)?;
        }
    }
    for e in &report.errors {
        eprintln!("{} dim {} seed {}: {}", e.case_id, e.dim, e.trial_seed, e.message);
    }
    eprintln!(
        "{} cases, {} failures, {} errors",
        report.cases.len(),
        report.total_failures(),
        report.errors.len()
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

#[derive(Serialize)]
struct RemarkOutput<'a> {
    rows: Vec<&'a RemarkRow>,
    /// Case 2(ii) evaluated with the printed `max{…}` formula.
    literal: Vec<&'a RemarkRow>,
    reproduced: bool,
}

fn remark(out: OutputArgs) -> Result<(), Failure> {
    let rows = compare_remark();
    let ok = remark_reproduced(&rows);
    let (format, path) = out.resolve(Format::Csv);
    let body = match format {
        Format::Json => to_json(&RemarkOutput {
            rows: rows.iter().filter(|r| !r.informational).collect(),
            literal: rows.iter().filter(|r| r.informational).collect(),
            reproduced: ok,
        })?,
        Format::Csv => {
            let mut s = String::from(
                "case_id,alpha,s,t,lhs_constant,rhs_constant,difference,paper_value,abs_error,informational\n",
            );
            for r in &rows {
                s += &format!(
                    "{},{},{},{},{:.8},{:.8},{:.8},{},{:e},{}\n",
                    r.case_id,
                    r.alpha,
                    r.s,
                    r.t,
                    r.lhs_constant,
                    r.rhs_constant,
                    r.difference,
                    r.paper_value,
                    r.abs_error,
                    r.informational
                );
            }
            s
        }
    };
    emit(path, &body)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

#[derive(Deserialize)]
struct PairFile {
    a: HermitianMatrix,
    b: HermitianMatrix,
    s: Option<f64>,
    t: Option<f64>,
}

fn load_pair(path: &Path) -> Result<SandwichPair, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let file: PairFile = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let (lo, hi) = tightest_sandwich(&file.a, &file.b)?;
    Ok(SandwichPair {
        s: file.s.unwrap_or(lo),
        t: file.t.unwrap_or(hi),
        a: file.a,
        b: file.b,
    })
}

const COMPARE_HEADER: &str = "s,t,alpha,function_id,kantorovich,dragomir,fm,specht,realized_ratio,tightest,dominated\n";

fn compare_csv(records: &[TightnessRecord]) -> String {
    let mut s = String::from(COMPARE_HEADER);
    for r in records {
        s += &format!(
            "{},{},{},{},{:e},{:e},{},{:e},{:e},{},{}\n",
            r.s,
            r.t,
            r.alpha,
            r.function_id,
            r.kantorovich,
            r.dragomir,
            csv_field(r.fm),
            r.specht,
            r.realized_ratio,
            r.tightest,
            r.dominated
        );
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn compare(
    input: Option<PathBuf>,
    dim: usize,
    s: f64,
    t: f64,
    count: usize,
    seed: u64,
    cond_max: f64,
    alpha: f64,
    function: &str,
    out: OutputArgs,
) -> Result<(), Failure> {
    let g = by_id(function)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Failure::Usage(format!("--alpha must lie in [0, 1], got {alpha}")));
    }
    let pairs = match input {
        Some(path) => vec![load_pair(&path)?],
        None => {
            let opts = SandwichOptions {
                cond_max,
                identity_a: false,
            };
            (0..count)
                .map(|i| random_sandwich_pair_with_options(dim, s, t, derive_seed(seed, i as u64), opts))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let records = pairs
        .iter()
        .map(|p| tightness_table(p, alpha, &g))
        .collect::<Result<Vec<_>, _>>()?;
    let (format, path) = out.resolve(Format::Csv);
    let body = match format {
        Format::Csv => compare_csv(&records),
        Format::Json => to_json(&records)?,
    };
    emit(path, &body)?;
    if records.iter().all(|r| r.dominated) {
        Ok(())
    } else {
        Err(Failure::Failed)
    }
}

#[allow(clippy::too_many_arguments)]
fn sample(
    kind: SampleKind,
    dim: usize,
    seed: u64,
    cond_max: f64,
    s: Option<f64>,
    t: Option<f64>,
    n: usize,
    p: f64,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let value = match kind {
        SampleKind::Hpd => serde_json::to_value(random_hpd(dim, cond_max, seed)?)?,
        SampleKind::Hermitian => {
            serde_json::to_value(random_hermitian_in(dim, s.unwrap_or(0.0), t.unwrap_or(1.0), seed)?)?
        }
        SampleKind::Sandwich => {
            let opts = SandwichOptions {
                cond_max,
                identity_a: false,
            };
            serde_json::to_value(random_sandwich_pair_with_options(
                dim,
                s.unwrap_or(0.5),
                t.unwrap_or(2.0),
                seed,
                opts,
            )?)?
        }
        SampleKind::Commuting => {
            let (a, b) = random_commuting_pair(dim, s.unwrap_or(0.01), t.unwrap_or(0.99), seed)?;
            serde_json::json!({ "a": a, "b": b })
        }
        SampleKind::Vector => {
            let v = random_unit_vector(dim, seed)?;
            serde_json::json!({
                "real": v.iter().map(|z| z.re).collect::<Vec<_>>(),
                "imag": v.iter().map(|z| z.im).collect::<Vec<_>>(),
            })
        }
        SampleKind::Sequences => serde_json::to_value(aczel_sequences(n, p, seed)?)?,
    };
    emit(output.as_deref(), &to_json(&value)?)
}

fn list_catalog(out: OutputArgs) -> Result<(), Failure> {
    let (format, path) = out.resolve(Format::Json);
    let body = match format {
        Format::Json => to_json(&catalog())?,
        Format::Csv => {
            let mut s = String::from("id,domain_lo,domain_hi,operator_concave\n");
            for g in catalog() {
                let d = g.domain();
                s += &format!("{},{},{},{}\n", g.id(), d.lo, d.hi, g.operator_concave());
            }
            s
        }
    };
    emit(path, &body)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            cases,
            dims,
            trials,
            seed,
            tol,
            cond_max,
            dump_dir,
            out,
        } => verify(cases, dims, trials, seed, tol, cond_max, dump_dir, out),
        Command::Remark { out } => remark(out),
        Command::Compare {
            input,
            dim,
            s,
            t,
            count,
            seed,
            cond_max,
            alpha,
            function,
            out,
        } => compare(input, dim, s, t, count, seed, cond_max, alpha, &function, out),
        Command::Sample {
            kind,
            dim,
            seed,
            cond_max,
            s,
            t,
            n,
            p,
            output,
        } => sample(kind, dim, seed, cond_max, s, t, n, p, output),
        Command::Catalog { out } => list_catalog(out),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own parse errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed) => ExitCode::from(EXIT_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

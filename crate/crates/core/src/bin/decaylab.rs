//! Command-line front end: reproducible decay-function experiments,
//! small-determinant tables, and bound reports with CSV/JSON output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use decaylab::bounds::{
    fit_exponent, liouville_effective_constant, mac_optimality, mac_optimality_threshold,
    parse_rational, tau_convergents, verify_bounds, DeltaMode, DmtQuery,
};
use decaylab::codes::CodeConfig;
use decaylab::report::{
    decay_record_json, decay_rows_to_fit_points, read_decay_csv, sequence_record_json,
    write_decay_csv, write_sequence_csv,
};
use decaylab::ring::RingElem;
use decaylab::search::{decay, decay_series, SearchBox, SearchOptions, SeriesMode, DEFAULT_BUDGET};
use decaylab::sequences::{factor_z5n, table_rows, z_element};
use decaylab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "decaylab",
    version,
    about = "Exact determinant-decay experiments for a two-user lattice code"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the decay function D(N1, N2) or a series of values
    Decay(DecayArgs),
    /// Small-determinant table rows and exact factorization checks
    Sequence(SequenceArgs),
    /// Approximation bounds, exponent fits, and the DMT region
    Bounds(BoundsArgs),
    /// Randomized self-test of the exact ring arithmetic
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct DecayArgs {
    /// Coordinate range for user 1
    #[arg(long)]
    n1: Option<u32>,
    /// Coordinate range for user 2
    #[arg(long)]
    n2: Option<u32>,
    /// Sweep a series of boxes instead of a single one
    #[arg(long, value_enum)]
    series: Option<SeriesArg>,
    /// Largest N of the series
    #[arg(long)]
    nmax: Option<u32>,
    /// Twist element γ, e.g. "i" or "1" (rendering grammar a+bi+cτ+diτ)
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all available)
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Reduced-pair budget; DECAYLAB_BUDGET overrides the default
    #[arg(long)]
    budget: Option<u128>,
    /// Run even if the budget is exceeded
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesArg {
    Equal,
    #[value(alias = "fixed_second")]
    FixedSecond,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SequenceSelector {
    /// Emit the five balanced-split rows (n = 5, 10, 15, 20, 25)
    #[arg(long)]
    table1: bool,
    /// Verify the exact factorization of z_{5n} at this n and print it
    #[arg(long)]
    factor: Option<u32>,
}

#[derive(Args)]
struct SequenceArgs {
    #[command(flatten)]
    selector: SequenceSelector,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(subcommand)]
    command: BoundsCommand,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Convergent qualities of τ against the effective Liouville constant
    Liouville {
        #[arg(long)]
        max_k: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the MAC optimality condition at multiplexing gain r
    Dmt {
        /// Exact rational, e.g. 1/5
        #[arg(long)]
        r: String,
        /// Substitute a measured decay exponent for the derived 2r
        #[arg(long)]
        delta_emp: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a decay exponent through a decay CSV (N = n1, D = sqrt(detsq))
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical bound constants K_emp and C_emp from a decay CSV
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0xDECA)]
    seed: u64,
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        let code = match err {
            Error::BudgetExceeded { .. } => 3,
            _ => 2,
        };
        std::process::exit(code);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Decay(args) => run_decay(args),
        Command::Sequence(args) => run_sequence(args),
        Command::Bounds(args) => run_bounds(args.command),
        Command::Check(args) => run_check(args),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn budget_from(args_budget: Option<u128>) -> u128 {
    args_budget
        .or_else(|| {
            std::env::var("DECAYLAB_BUDGET")
                .ok()
                .and_then(|value| value.parse::<u128>().ok())
        })
        .unwrap_or(DEFAULT_BUDGET)
}

fn run_decay(args: DecayArgs) -> Result<()> {
    let gamma = match &args.gamma {
        Some(text) => text.parse::<RingElem>().map_err(Error::Parse)?,
        None => RingElem::i(),
    };
    let cfg = CodeConfig::with_gamma(gamma);
    let opts = SearchOptions {
        workers: args.workers,
        budget: budget_from(args.budget),
        force: args.force,
    };

    let (records, single) = match (args.series, args.nmax, args.n1, args.n2) {
        (Some(series), Some(nmax), None, None) => {
            let mode = match series {
                SeriesArg::Equal => SeriesMode::Equal,
                SeriesArg::FixedSecond => SeriesMode::FixedSecond,
            };
            (decay_series(nmax, mode, &cfg, &opts)?, false)
        }
        (None, None, Some(n1), Some(n2)) => {
            (vec![decay(SearchBox::new(n1, n2)?, &cfg, &opts)?], true)
        }
        _ => {
            return Err(Error::InvalidParameter(
                "pass either --n1 and --n2, or --series with --nmax".into(),
            ))
        }
    };

    let mut out = open_output(&args.out)?;
    match args.format {
        Format::Csv => write_decay_csv(&records, &mut out)?,
        Format::Json => {
            let value = if single {
                decay_record_json(&records[0])
            } else {
                serde_json::Value::Array(records.iter().map(decay_record_json).collect())
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn run_sequence(args: SequenceArgs) -> Result<()> {
    let mut out = open_output(&args.out)?;
    if args.selector.table1 {
        let records = table_rows()?;
        match args.format {
            Format::Csv => write_sequence_csv(&records, &mut out)?,
            Format::Json => {
                let value =
                    serde_json::Value::Array(records.iter().map(sequence_record_json).collect());
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            }
        }
        out.flush()?;
        return Ok(());
    }

    let n = args
        .selector
        .factor
        .expect("clap group guarantees one selector");
    if !(1..=10_000).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "factorization index must be in 1..=10000, got {n}"
        )));
    }
    let (z_n, m_a, m_b) = factor_z5n(n)?;
    let product = z_n.mul(&m_a).mul(&m_b);
    let z_5n = z_element(5 * n)?;
    let confirmed = product == z_5n;
    let j = decaylab::sequences::parity_factor_index(n);
    match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "n": n,
                "j": j,
                "z_n": z_n.to_string(),
                "m_j": m_a.to_string(),
                "m_j_plus_2": m_b.to_string(),
                "z_5n": z_5n.to_string(),
                "confirmed": confirmed,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Csv => {
            writeln!(
                out,
                "z_{} = z_{} · m_{}({n}) · m_{}({n})",
                5 * n,
                n,
                j,
                j + 2
            )?;
            writeln!(out, "z_{n}      = {z_n}")?;
            writeln!(out, "m_{j}({n})   = {m_a}")?;
            writeln!(out, "m_{}({n})   = {m_b}", j + 2)?;
            writeln!(out, "z_{}     = {z_5n}", 5 * n)?;
            writeln!(
                out,
                "identity: {}",
                if confirmed {
                    "confirmed (exact)"
                } else {
                    "FAILED"
                }
            )?;
        }
    }
    out.flush()?;
    if confirmed {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "factorization identity failed at n = {n}"
        )))
    }
}

fn run_bounds(command: BoundsCommand) -> Result<()> {
    match command {
        BoundsCommand::Liouville { max_k, format, out } => {
            if max_k < 1 {
                return Err(Error::InvalidParameter("--max-k must be ≥ 1".into()));
            }
            let convergents = tau_convergents(max_k)?;
            let constant = liouville_effective_constant();
            let min = convergents
                .iter()
                .min_by(|a, b| a.quality.total_cmp(&b.quality))
                .expect("nonempty");
            let tail = convergents.last().expect("nonempty");
            let mut writer = open_output(&out)?;
            match format {
                ReportFormat::Text => {
                    writeln!(
                        writer,
                        "convergents scanned: {} (k ≤ {max_k})",
                        convergents.len()
                    )?;
                    writeln!(writer, "liouville constant:  {constant}")?;
                    writeln!(
                        writer,
                        "min quality:         {} (at h/k = {}/{})",
                        min.quality, min.h, min.k
                    )?;
                    writeln!(
                        writer,
                        "tail quality:        {} (at h/k = {}/{})",
                        tail.quality, tail.h, tail.k
                    )?;
                    writeln!(
                        writer,
                        "reference limit:     1/sqrt(5) ≈ {}",
                        1.0 / 5f64.sqrt()
                    )?;
                }
                ReportFormat::Json => {
                    let value = serde_json::json!({
                        "max_k": max_k,
                        "convergents_scanned": convergents.len(),
                        "liouville_constant": constant,
                        "min_quality": min.quality,
                        "min_quality_at": { "h": min.h.to_string(), "k": min.k.to_string() },
                        "tail_quality": tail.quality,
                        "tail_quality_at": { "h": tail.h.to_string(), "k": tail.k.to_string() },
                        "reference_limit": 1.0 / 5f64.sqrt(),
                    });
                    writeln!(writer, "{}", serde_json::to_string_pretty(&value)?)?;
                }
            }
            writer.flush()?;
            Ok(())
        }
        BoundsCommand::Dmt {
            r,
            delta_emp,
            format,
            out,
        } => {
            let r = parse_rational(&r)?;
            let delta_mode = match delta_emp {
                Some(value) => DeltaMode::Empirical(value),
                None => DeltaMode::TwoR,
            };
            let report = mac_optimality(&DmtQuery { r, delta_mode })?;
            let mut writer = open_output(&out)?;
            match format {
                ReportFormat::Text => {
                    if report.optimal {
                        writeln!(writer, "{} ≤ {} : optimal", report.lhs, report.rhs)?;
                    } else {
                        writeln!(writer, "{} > {} : not optimal", report.lhs, report.rhs)?;
                    }
                }
                ReportFormat::Json => {
                    let mut value = report.to_json();
                    value["threshold"] = serde_json::json!({
                        "exact": mac_optimality_threshold().to_string(),
                    });
                    writeln!(writer, "{}", serde_json::to_string_pretty(&value)?)?;
                }
            }
            writer.flush()?;
            Ok(())
        }
        BoundsCommand::Fit { input, format, out } => {
            let file = File::open(&input)?;
            let rows = read_decay_csv(file)?;
            let fit = fit_exponent(&decay_rows_to_fit_points(&rows))?;
            let mut writer = open_output(&out)?;
            match format {
                ReportFormat::Text => {
                    writeln!(writer, "delta    = {:.3}", fit.delta)?;
                    writeln!(writer, "constant = {}", fit.constant)?;
                    writeln!(writer, "residual = {}", fit.residual)?;
                    writeln!(writer, "samples  = {}", fit.sample_count)?;
                }
                ReportFormat::Json => {
                    writeln!(writer, "{}", serde_json::to_string_pretty(&fit.to_json())?)?;
                }
            }
            writer.flush()?;
            Ok(())
        }
        BoundsCommand::Verify { input, format, out } => {
            let file = File::open(&input)?;
            let rows = read_decay_csv(file)?;
            let records: Result<Vec<_>> = rows.iter().map(|row| row.to_record()).collect();
            let report = verify_bounds(&records?)?;
            let mut writer = open_output(&out)?;
            match format {
                ReportFormat::Text => {
                    writeln!(
                        writer,
                        "K_emp = {} (min N1·N2·D at N1 = {}, N2 = {})",
                        report.k_emp, report.k_emp_at.0, report.k_emp_at.1
                    )?;
                    match (report.c_emp, report.c_emp_at) {
                        (Some(c), Some(at)) => writeln!(
                            writer,
                            "C_emp = {c} (max N·D over the (N, 1) series at N = {})",
                            at.0
                        )?,
                        _ => writeln!(writer, "C_emp = n/a (no (N, 1) records)")?,
                    }
                    writeln!(writer, "records = {}", report.record_count)?;
                }
                ReportFormat::Json => {
                    writeln!(
                        writer,
                        "{}",
                        serde_json::to_string_pretty(&report.to_json())?
                    )?;
                }
            }
            writer.flush()?;
            Ok(())
        }
    }
}

fn run_check(args: CheckArgs) -> Result<()> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(args.seed);
    let random_elem = |rng: &mut StdRng| {
        RingElem::from_i64(
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(-1_000_000..=1_000_000),
            rng.gen_range(-1_000_000..=1_000_000),
        )
    };

    let mut failures = 0u64;
    for _ in 0..args.trials {
        let x = random_elem(&mut rng);
        let y = random_elem(&mut rng);
        let z = random_elem(&mut rng);
        let ok = x.mul(&y) == y.mul(&x)
            && x.mul(&y).mul(&z) == x.mul(&y.mul(&z))
            && x.mul(&y.add(&z)) == x.mul(&y).add(&x.mul(&z))
            && x.sigma().mul(&y.sigma()) == x.mul(&y).sigma()
            && x.mul(&y).abs_squared() == x.abs_squared().mul(&y.abs_squared());
        if !ok {
            failures += 1;
        }
    }

    let alpha = RingElem::alpha();
    let identities = RingElem::tau().pow(3) == alpha
        && alpha.sigma().mul(&alpha) == RingElem::from_i64(-1, 0, 0, 0)
        && RingElem::i().mul(&RingElem::i()) == RingElem::from_i64(-1, 0, 0, 0);

    println!(
        "ring property suite: {}/{} randomized trials passed (seed {}); fixed identities: {}",
        args.trials - failures,
        args.trials,
        args.seed,
        if identities { "ok" } else { "FAILED" }
    );
    if failures == 0 && identities {
        Ok(())
    } else {
        Err(Error::InvalidParameter("self-test failed".into()))
    }
}

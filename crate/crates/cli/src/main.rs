//! `cfml` — enumerate continued fractions with bounded partial quotients,
//! tally how often each denominator occurs, and test the analytic heuristic
//! for those counts against the exact data.

mod csvio;
mod error;
mod manifest;
mod svg;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use cfml_core::{
    compare, enumerate, fit_growth, partial_sum_check, EnumConfig, SpfSieve,
};

use crate::csvio::{atomic_write, fmt_real};
use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::svg::ScatterSpec;

#[derive(Parser)]
#[command(
    name = "cfml",
    version,
    about = "Continued fractions with bounded partial quotients: exact denominator \
             multiplicities and the heuristic that predicts them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the semigroup up to a denominator bound and write mult.csv
    Enumerate(EnumerateArgs),
    /// Fit ball growth, evaluate the heuristic, and write compare.csv
    Compare(CompareArgs),
    /// Residue-class error profile of enumerated denominators
    Equidist(EquidistArgs),
    /// Oracle-equivalence sweeps; exit code 0 only if every check passes
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Largest allowed partial quotient
    #[arg(long, default_value_t = 5)]
    alphabet: u32,
    /// Denominator cutoff N
    #[arg(long)]
    max_n: u64,
    /// Worker threads (default: CFML_THREADS, then the CPU count)
    #[arg(long)]
    threads: Option<usize>,
    /// Output CSV; the run manifest lands beside it
    #[arg(long, default_value = "mult.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    /// Multiplicity CSV produced by `enumerate`
    #[arg(long = "in")]
    input: PathBuf,
    /// Fit-window fraction in (0, 1)
    #[arg(long, default_value_t = 0.5)]
    window: f64,
    #[arg(long, default_value = "compare.csv")]
    out: PathBuf,
    /// Optional SVG scatter of ratio against n
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct EquidistArgs {
    #[arg(long, default_value_t = 5)]
    alphabet: u32,
    #[arg(long)]
    max_n: u64,
    /// Collect residues for moduli 1..=this
    #[arg(long, default_value_t = 30)]
    moduli: u32,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "equi.csv")]
    out: PathBuf,
    /// Optional SVG of normalized error against modulus
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Closed-form local factors against SL2 brute force, exact equality
    Cbar {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7,8,9,11,25,27")]
        prime_powers: Vec<u64>,
        #[arg(long, default_value_t = 12)]
        n_max: i64,
    },
    /// Möbius-form Ramanujan sums against the exponential sum
    Ramanujan {
        #[arg(long, default_value_t = 200)]
        q_max: u64,
        #[arg(long, default_value_t = 200)]
        n_max: i64,
    },
    /// Mean of the singular series against its limit 1
    AvgSingular {
        #[arg(long, default_value_t = 1_000_000)]
        n_max: u64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => error::EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            if e.code == error::EXIT_USAGE {
                eprintln!("run `cfml --help` for usage");
            }
            std::process::exit(e.code);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Equidist(args) => cmd_equidist(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn resolve_threads(flag: Option<usize>) -> Result<usize, CliError> {
    let threads = match flag {
        Some(t) => t,
        None => match std::env::var("CFML_THREADS") {
            Ok(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("CFML_THREADS must be an integer, got `{s}`")))?,
            Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        },
    };
    if threads == 0 {
        return Err(CliError::usage("thread count must be at least 1"));
    }
    Ok(threads)
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let threads = resolve_threads(args.threads)?;
    let config = EnumConfig::new(args.alphabet, args.max_n).with_workers(threads);
    let (table, _) = enumerate(&config)?;

    let csv = csvio::mult_csv(&table);
    atomic_write(&args.out, csv.as_bytes())?;

    let mut m = RunManifest::new("enumerate");
    m.alphabet = Some(args.alphabet);
    m.max_n = Some(args.max_n);
    m.threads = Some(threads);
    m.record_output(&args.out, csv.as_bytes());
    m.seconds = start.elapsed().as_secs_f64();
    m.write_beside(&args.out)?;

    println!(
        "wrote {}: {} rows, {} semigroup elements with denominator <= {}",
        args.out.display(),
        table.bound() - 1,
        table.total_nodes(),
        args.max_n
    );
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), CliError> {
    let start = Instant::now();
    if !(args.window > 0.0 && args.window < 1.0) {
        return Err(CliError::usage(format!(
            "window fraction must lie strictly between 0 and 1, got {}",
            args.window
        )));
    }
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::io(format!("reading {}: {e}", args.input.display())))?;
    let table = csvio::parse_mult_csv(&text, &args.input)?;
    let sieve = SpfSieve::new(table.bound().max(2))?;
    let fit = fit_growth::<f64>(&table, args.window)?;
    let records = compare(&table, &fit, &sieve)?;
    let check = partial_sum_check::<f64>(&table, &fit, &sieve, table.bound())?;

    let csv = csvio::compare_csv(&records);
    atomic_write(&args.out, csv.as_bytes())?;

    let mut m = RunManifest::new("compare");
    m.max_n = Some(table.bound());
    m.window = Some(args.window);
    m.record_output(&args.out, csv.as_bytes());

    if let Some(plot) = &args.plot {
        let points: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, r.ratio)).collect();
        let image = svg::scatter(
            &points,
            &ScatterSpec {
                title: "exact multiplicity / heuristic",
                x_label: "n",
                y_label: "ratio",
                reference_y: Some(1.0),
            },
        );
        atomic_write(plot, image.as_bytes())?;
        m.record_output(plot, image.as_bytes());
    }

    m.seconds = start.elapsed().as_secs_f64();
    m.write_beside(&args.out)?;

    println!("# ratio column = exact mult / heuristic");
    println!("c = {}", fmt_real(fit.c));
    println!("two_delta = {}", fmt_real(fit.two_delta));
    println!("partial_sum_check = {}", fmt_real(check));
    Ok(())
}

fn cmd_equidist(args: EquidistArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let threads = resolve_threads(args.threads)?;
    if args.moduli < 1 {
        return Err(CliError::usage("at least one modulus is required"));
    }
    let config = EnumConfig::new(args.alphabet, args.max_n)
        .with_workers(threads)
        .with_residue_moduli(args.moduli);
    let (_, hist) = enumerate(&config)?;
    let hist = hist.expect("residue collection enabled");

    let csv = csvio::equi_csv(&hist)?;
    atomic_write(&args.out, csv.as_bytes())?;

    let mut m = RunManifest::new("equidist");
    m.alphabet = Some(args.alphabet);
    m.max_n = Some(args.max_n);
    m.moduli = Some(args.moduli);
    m.threads = Some(threads);
    m.record_output(&args.out, csv.as_bytes());

    if let Some(plot) = &args.plot {
        let points: Vec<(f64, f64)> = (1..=hist.max_modulus())
            .map(|mm| Ok((mm as f64, hist.normalized_largest_error::<f64>(mm)?)))
            .collect::<Result<_, cfml_core::Error>>()?;
        let image = svg::scatter(
            &points,
            &ScatterSpec {
                title: "largest residue-class error, normalized",
                x_label: "modulus m",
                y_label: "normalized largest error",
                reference_y: None,
            },
        );
        atomic_write(plot, image.as_bytes())?;
        m.record_output(plot, image.as_bytes());
    }

    m.seconds = start.elapsed().as_secs_f64();
    m.write_beside(&args.out)?;

    println!(
        "wrote {}: moduli 1..={} over {} matrices",
        args.out.display(),
        args.moduli,
        hist.total()
    );
    Ok(())
}

fn cmd_verify(command: VerifyCommand) -> Result<(), CliError> {
    let report = match command {
        VerifyCommand::Cbar { prime_powers, n_max } => verify::cbar(&prime_powers, n_max)?,
        VerifyCommand::Ramanujan { q_max, n_max } => verify::ramanujan(q_max, n_max)?,
        VerifyCommand::AvgSingular { n_max } => verify::avg_singular(n_max)?,
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::io(format!("encoding report: {e}")))?;
    println!("{json}");
    if !report.all_pass {
        let first = report.first_counterexample().unwrap_or("unknown case");
        return Err(CliError::verify(format!("verification failed: {first}")));
    }
    Ok(())
}

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use delta_partitions::output::{render_stats, write_partition, Format};
use delta_partitions::{Enumerator, Params};

mod bench;
mod verify;

use bench::{DeltaSpec, NRange};

/// Enumerate and count set partitions whose blocks all have more than
/// DELTA elements (δ-partitions of {1..N}).
///
/// Partitions are printed as restricted growth strings: element i carries
/// the label of its block, labels appear in first-use order starting at 1.
/// DELTA is meant to be below N; larger values are accepted with a warning
/// and produce no partitions.
#[derive(Debug, Parser)]
#[command(name = "dpart", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stream every δ-partition to stdout in lexicographic order.
    Enum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        delta: usize,
        /// rgs ("1 2 2 1"), blocks ("{1,4}{2,3}") or jsonl ({"rgs":[1,2,2,1]})
        #[arg(long, default_value = "rgs")]
        format: Format,
        /// Stop after this many partitions.
        #[arg(long)]
        limit: Option<u64>,
        /// Print a JSON stats record to stderr when done.
        #[arg(long)]
        stats: bool,
        /// Suppress the partition stream and warnings.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Print the exact number of δ-partitions.
    Count {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        delta: usize,
        #[arg(long)]
        stats: bool,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Compare the pruned search against generate-and-test for every
    /// n <= MAX_N and delta < n.
    Verify {
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        /// Only print failures.
        #[arg(long, short)]
        quiet: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time the pruned search and generate-and-test; CSV on stdout.
    Bench {
        /// Single value or inclusive range, e.g. 8 or 1..20
        #[arg(long)]
        n: NRange,
        /// K, n-K (relative to each n), a range A..B, or "all" (0..n-1)
        #[arg(long, default_value = "all")]
        delta: DeltaSpec,
        /// Timed runs per cell; the minimum is reported.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
        /// Skip any run that would assign more than this many elements.
        #[arg(long, default_value_t = 100_000_000)]
        node_budget: u64,
    },
}

fn warn_degenerate(params: Params, quiet: bool) {
    if params.is_degenerate() && !quiet {
        eprintln!(
            "warning: delta ({}) >= n ({}); no partition has every block larger than delta",
            params.delta(),
            params.n()
        );
    }
}

fn params(n: u64, delta: usize) -> Params {
    Params::new(n as usize, delta).expect("n >= 1 is enforced by the argument parser")
}

fn cmd_enum(
    params: Params,
    format: Format,
    limit: Option<u64>,
    stats: bool,
    quiet: bool,
) -> io::Result<()> {
    warn_degenerate(params, quiet);
    let start = Instant::now();
    let mut it = Enumerator::new(params);
    let stdout = io::stdout();
    let mut out = BufWriter::with_capacity(1 << 16, stdout.lock());
    let mut emitted = 0u64;
    while limit.is_none_or(|l| emitted < l) {
        let Some(view) = it.next_solution() else {
            break;
        };
        emitted += 1;
        if !quiet {
            write_partition(&mut out, &view, format)?;
        }
    }
    out.flush()?;
    if stats {
        eprintln!(
            "{}",
            render_stats(it.stats(), params, start.elapsed()).to_json()
        );
    }
    Ok(())
}

fn cmd_count(params: Params, stats: bool, quiet: bool) -> io::Result<()> {
    warn_degenerate(params, quiet);
    let start = Instant::now();
    let mut it = Enumerator::new(params);
    let total = it.count_remaining();
    let mut out = io::stdout().lock();
    writeln!(out, "{total}")?;
    out.flush()?;
    if stats {
        eprintln!(
            "{}",
            render_stats(it.stats(), params, start.elapsed()).to_json()
        );
    }
    Ok(())
}

fn finish(result: io::Result<ExitCode>) -> ExitCode {
    match result {
        Ok(code) => code,
        // downstream closed the pipe (e.g. `| head`): not an error
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enum {
            n,
            delta,
            format,
            limit,
            stats,
            quiet,
        } => cmd_enum(params(n, delta), format, limit, stats, quiet).map(|()| ExitCode::SUCCESS),
        Command::Count {
            n,
            delta,
            stats,
            quiet,
        } => cmd_count(params(n, delta), stats, quiet).map(|()| ExitCode::SUCCESS),
        Command::Verify {
            max_n,
            quiet,
            inject_fault,
        } => {
            let mut out = io::stdout().lock();
            verify::run(&mut out, max_n as usize, quiet, inject_fault).map(|ok| {
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            })
        }
        Command::Bench {
            n,
            delta,
            reps,
            node_budget,
        } => {
            let mut out = io::stdout().lock();
            bench::run(&mut out, n, delta, reps, node_budget).map(|()| ExitCode::SUCCESS)
        }
    };
    finish(result)
}

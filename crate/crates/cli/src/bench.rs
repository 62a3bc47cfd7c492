use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use delta_partitions::oracle::{naive_delta_partitions_with, unpruned_node_count};
use delta_partitions::{Enumerator, Params, SearchStats};
use num_bigint::BigUint;

pub const CSV_HEADER: &str = "n,delta,smart_nodes,smart_ns,naive_nodes,naive_ns,solutions";
const SKIPPED: &str = "skipped";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaSpec {
    Fixed(usize),
    /// `n - k`
    BelowN(usize),
    Range(usize, usize),
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError(String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

fn parse_range(s: &str) -> Result<(usize, usize), SpecError> {
    let bad = || SpecError(format!("expected N or A..B, got {s:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let (lo, hi) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if lo > hi {
                return Err(SpecError(format!("empty range {s:?}")));
            }
            Ok((lo, hi))
        }
        None => num(s).map(|v| (v, v)),
    }
}

impl FromStr for NRange {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = parse_range(s)?;
        if lo == 0 {
            return Err(SpecError("n must be at least 1".to_owned()));
        }
        Ok(NRange { lo, hi })
    }
}

impl FromStr for DeltaSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "all" {
            return Ok(DeltaSpec::All);
        }
        if let Some(k) = s.strip_prefix("n-") {
            return k
                .parse()
                .map(DeltaSpec::BelowN)
                .map_err(|_| SpecError(format!("expected n-K, got {s:?}")));
        }
        match parse_range(s)? {
            (a, b) if a == b && !s.contains("..") => Ok(DeltaSpec::Fixed(a)),
            (a, b) => Ok(DeltaSpec::Range(a, b)),
        }
    }
}

impl DeltaSpec {
    pub fn deltas(self, n: usize) -> Vec<usize> {
        match self {
            DeltaSpec::Fixed(d) => vec![d],
            DeltaSpec::BelowN(k) => n.checked_sub(k).into_iter().collect(),
            DeltaSpec::Range(a, b) => (a..=b).collect(),
            DeltaSpec::All => (0..n).collect(),
        }
    }
}

/// Minimum wall time over `reps` runs of `f`, with the result of the last.
fn timed<T>(reps: u32, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let value = f();
        best = best.min(start.elapsed());
        last = Some(value);
    }
    (last.expect("reps >= 1"), best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub n: usize,
    pub delta: usize,
    /// `None` when the run hit the node budget.
    pub smart: Option<(SearchStats, Duration)>,
    pub naive: Option<(SearchStats, Duration)>,
}

pub fn measure(params: Params, reps: u32, node_budget: u64) -> Cell {
    let (smart_stats, smart_time) = timed(reps, || {
        let mut it = Enumerator::new(params).with_node_limit(node_budget);
        while it.next_solution().is_some() {}
        (!it.truncated()).then(|| *it.stats())
    });

    let naive = if unpruned_node_count(params.n()) > BigUint::from(node_budget) {
        None
    } else {
        let (stats, time) = timed(reps, || {
            naive_delta_partitions_with(params, |_| {}).expect("valid params")
        });
        Some((stats, time))
    };

    Cell {
        n: params.n(),
        delta: params.delta(),
        smart: smart_stats.map(|s| (s, smart_time)),
        naive,
    }
}

impl Cell {
    pub fn csv_row(&self) -> String {
        let pair = |run: Option<(SearchStats, Duration)>| match run {
            Some((s, t)) => format!("{},{}", s.nodes, t.as_nanos()),
            None => format!("{SKIPPED},{SKIPPED}"),
        };
        let solutions = self
            .smart
            .or(self.naive)
            .map_or_else(|| SKIPPED.to_owned(), |(s, _)| s.solutions.to_string());
        format!(
            "{},{},{},{},{}",
            self.n,
            self.delta,
            pair(self.smart),
            pair(self.naive),
            solutions
        )
    }
}

pub fn run<W: Write>(
    out: &mut W,
    n: NRange,
    delta: DeltaSpec,
    reps: u32,
    node_budget: u64,
) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for n in n.lo..=n.hi {
        for d in delta.deltas(n) {
            let params = Params::new(n, d).expect("n >= 1");
            writeln!(out, "{}", measure(params, reps, node_budget).csv_row())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!("1..20".parse::<NRange>().unwrap(), NRange { lo: 1, hi: 20 });
        assert_eq!(
            "1..=20".parse::<NRange>().unwrap(),
            NRange { lo: 1, hi: 20 }
        );
        assert_eq!("8".parse::<NRange>().unwrap(), NRange { lo: 8, hi: 8 });
        assert!("0..3".parse::<NRange>().is_err());
        assert!("5..3".parse::<NRange>().is_err());

        assert_eq!("n-1".parse::<DeltaSpec>().unwrap(), DeltaSpec::BelowN(1));
        assert_eq!("2".parse::<DeltaSpec>().unwrap(), DeltaSpec::Fixed(2));
        assert_eq!("0..2".parse::<DeltaSpec>().unwrap(), DeltaSpec::Range(0, 2));
        assert_eq!("all".parse::<DeltaSpec>().unwrap(), DeltaSpec::All);
        assert!("n-x".parse::<DeltaSpec>().is_err());

        assert_eq!(DeltaSpec::All.deltas(3), vec![0, 1, 2]);
        assert_eq!(DeltaSpec::BelowN(1).deltas(5), vec![4]);
        assert!(DeltaSpec::BelowN(4).deltas(3).is_empty());
    }

    #[test]
    fn skips_over_budget() {
        let cell = measure(Params::new(10, 0).unwrap(), 1, 1000);
        assert!(cell.smart.is_none() && cell.naive.is_none());
        assert_eq!(
            cell.csv_row(),
            "10,0,skipped,skipped,skipped,skipped,skipped"
        );
    }

    #[test]
    fn smart_beats_naive() {
        let cell = measure(Params::new(8, 2).unwrap(), 1, u64::MAX);
        let (smart, _) = cell.smart.unwrap();
        let (naive, _) = cell.naive.unwrap();
        assert!(smart.nodes < naive.nodes);
        assert_eq!(smart.solutions, naive.solutions);
    }
}

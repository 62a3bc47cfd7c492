//! Text and JSON renderings of partitions and run statistics.
//!
//! All element indices are 1-based.

use std::fmt::{self, Write as _};
use std::io;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{Params, PartitionView, SearchStats};

/// Output encoding for partitions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Format {
    /// Space-separated labels: `1 2 2 1`.
    #[default]
    Rgs,
    /// Blocks in label order: `{1,4}{2,3}`.
    Blocks,
    /// One JSON object per line: `{"rgs":[1,2,2,1]}`.
    Jsonl,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Rgs, Format::Blocks, Format::Jsonl];

    pub fn name(self) -> &'static str {
        match self {
            Format::Rgs => "rgs",
            Format::Blocks => "blocks",
            Format::Jsonl => "jsonl",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown format {0:?} (expected rgs, blocks or jsonl)")]
    UnknownFormat(String),
    #[error("invalid label {0:?}")]
    BadLabel(String),
    #[error("malformed block list: {0}")]
    BadBlocks(String),
    #[error("not a restricted growth string: {0}")]
    NotCanonical(String),
}

impl FromStr for Format {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Format::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ParseError::UnknownFormat(s.to_owned()))
    }
}

pub fn render_rgs(view: &PartitionView<'_>) -> String {
    let mut out = String::with_capacity(view.len() * 2);
    for (i, label) in view.labels().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{label}");
    }
    out
}

pub fn render_blocks(view: &PartitionView<'_>) -> String {
    let mut out = String::new();
    for block in view.blocks() {
        out.push('{');
        for (i, element) in block.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{element}");
        }
        out.push('}');
    }
    out
}

#[derive(Serialize)]
struct JsonLine<'a> {
    rgs: &'a [usize],
}

pub fn render_jsonl(view: &PartitionView<'_>) -> String {
    serde_json::to_string(&JsonLine { rgs: view.labels() }).expect("labels serialize")
}

pub fn render(view: &PartitionView<'_>, format: Format) -> String {
    match format {
        Format::Rgs => render_rgs(view),
        Format::Blocks => render_blocks(view),
        Format::Jsonl => render_jsonl(view),
    }
}

/// Write one rendered partition followed by a newline.
pub fn write_partition<W: io::Write>(
    out: &mut W,
    view: &PartitionView<'_>,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Rgs => {
            let mut first = true;
            for label in view.labels() {
                if !first {
                    out.write_all(b" ")?;
                }
                first = false;
                write!(out, "{label}")?;
            }
            out.write_all(b"\n")
        }
        _ => writeln!(out, "{}", render(view, format)),
    }
}

fn check_canonical(labels: &[usize], src: &str) -> Result<(), ParseError> {
    let mut max = 0;
    for &l in labels {
        if l == 0 || l > max + 1 {
            return Err(ParseError::NotCanonical(src.to_owned()));
        }
        max = max.max(l);
    }
    if labels.is_empty() {
        return Err(ParseError::NotCanonical(src.to_owned()));
    }
    Ok(())
}

/// Parse the `rgs` rendering back into labels.
pub fn parse_rgs(line: &str) -> Result<Vec<usize>, ParseError> {
    let labels = line
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseError::BadLabel(tok.to_owned()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_canonical(&labels, line)?;
    Ok(labels)
}

/// Parse the `blocks` rendering back into labels. Blocks must cover
/// `1..=n` exactly once and appear in order of their smallest element.
pub fn parse_blocks(line: &str) -> Result<Vec<usize>, ParseError> {
    let bad = |why: &str| ParseError::BadBlocks(format!("{why} in {line:?}"));
    let body = line.trim();
    let inner = body
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| bad("missing braces"))?;

    let mut blocks = Vec::new();
    for chunk in inner.split("}{") {
        let block = chunk
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| ParseError::BadLabel(tok.to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }

    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut labels = vec![0usize; n];
    for (b, block) in blocks.iter().enumerate() {
        for &e in block {
            if e == 0 || e > n || labels[e - 1] != 0 {
                return Err(bad("element out of range or repeated"));
            }
            labels[e - 1] = b + 1;
        }
    }
    check_canonical(&labels, line)?;
    Ok(labels)
}

/// Run summary, serialized as a single JSON object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub n: usize,
    pub delta: usize,
    pub nodes: u64,
    pub prunes_deficit: u64,
    pub forced_branches: u64,
    pub solutions: u64,
    pub elapsed_ns: u128,
}

pub fn render_stats(stats: &SearchStats, params: Params, elapsed: Duration) -> StatsRecord {
    StatsRecord {
        n: params.n(),
        delta: params.delta(),
        nodes: stats.nodes,
        prunes_deficit: stats.prunes_deficit,
        forced_branches: stats.forced_branches,
        solutions: stats.solutions,
        elapsed_ns: elapsed.as_nanos(),
    }
}

impl StatsRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

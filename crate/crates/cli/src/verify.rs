use std::io::{self, Write};

use delta_partitions::oracle::naive_delta_partitions;
use delta_partitions::{enumerate, Params};

fn show(p: Option<&Vec<usize>>) -> String {
    match p {
        Some(labels) => labels
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        None => "<end of stream>".to_owned(),
    }
}

/// Returns `Ok(false)` on the first mismatch, after reporting it.
pub fn run<W: Write>(
    out: &mut W,
    max_n: usize,
    quiet: bool,
    inject_fault: bool,
) -> io::Result<bool> {
    for n in 1..=max_n {
        for delta in 0..n {
            let params = Params::new(n, delta).expect("n >= 1");
            let mut smart = Vec::new();
            enumerate(params, |v| smart.push(v.to_vec())).expect("valid params");
            if inject_fault && n == max_n {
                smart.pop();
            }
            let naive = naive_delta_partitions(n, delta)
                .expect("valid params")
                .partitions;

            if smart == naive {
                if !quiet {
                    writeln!(out, "PASS n={n} delta={delta} partitions={}", smart.len())?;
                }
                continue;
            }
            let at = smart
                .iter()
                .zip(&naive)
                .position(|(a, b)| a != b)
                .unwrap_or(smart.len().min(naive.len()));
            writeln!(
                out,
                "FAIL n={n} delta={delta}: first difference at index {at}: smart={} naive={}",
                show(smart.get(at)),
                show(naive.get(at)),
            )?;
            return Ok(false);
        }
    }
    Ok(true)
}

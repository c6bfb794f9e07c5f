//! Equal-width histogram of scan ratios.
//!
//! The bin edges need the ratio range first, so every source is traversed
//! twice: files are simply re-read, internal scans recomputed. Only stdin is
//! buffered (ratios only), since it cannot be rewound.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use zeck_core::SystemPair;

use crate::commands::{for_each_row, ScanRange};
use crate::format::fmt_float;
use crate::{CliError, CliResult};

pub enum RatioSource {
    File(PathBuf),
    Stdin,
    /// Ratios are rounded to `digits` as `scan` prints them, so the histogram
    /// matches one computed from the scan's CSV output.
    Scan {
        pair: Box<SystemPair>,
        range: ScanRange,
        digits: usize,
    },
}

/// One histogram bin; `cdf` is the fraction of rows in this bin or below.
#[derive(Debug, Clone, PartialEq)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    pub cdf: f64,
}

/// Extracts the ratio column from CSV lines, skipping the header.
fn visit_csv(reader: impl BufRead, f: &mut dyn FnMut(f64)) -> CliResult<()> {
    let mut column = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let Some(col) = column else {
            column = Some(
                fields
                    .iter()
                    .position(|h| *h == "ratio")
                    .ok_or_else(|| CliError::Usage("input has no `ratio` column".into()))?,
            );
            continue;
        };
        let value = fields
            .get(col)
            .and_then(|v| v.parse::<f64>().ok())
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::Usage(format!("line {}: malformed ratio", i + 1)))?;
        f(value);
    }
    Ok(())
}

fn visit(source: &RatioSource, f: &mut dyn FnMut(f64)) -> CliResult<()> {
    match source {
        RatioSource::File(path) => {
            let file = File::open(path).map_err(|e| {
                CliError::Usage(format!("cannot open {}: {e}", path.display()))
            })?;
            visit_csv(BufReader::new(file), f)
        }
        RatioSource::Stdin => visit_csv(std::io::stdin().lock(), f),
        RatioSource::Scan {
            pair,
            range,
            digits,
        } => for_each_row(pair, range, |row| {
            let printed = fmt_float(row.ratio, *digits);
            f(printed.parse().expect("formatted floats parse back"));
            Ok(())
        }),
    }
}

/// Histogram of a stream that can be visited twice.
pub fn histogram_two_pass(
    bins: usize,
    mut visit_all: impl FnMut(&mut dyn FnMut(f64)) -> CliResult<()>,
) -> CliResult<Vec<Bin>> {
    if bins == 0 {
        return Err(CliError::Usage("--bins must be at least 1".into()));
    }
    let (mut min, mut max, mut total) = (f64::INFINITY, f64::NEG_INFINITY, 0u64);
    visit_all(&mut |r| {
        min = min.min(r);
        max = max.max(r);
        total += 1;
    })?;
    if total == 0 {
        return Err(CliError::Usage("empty input: no ratio rows".into()));
    }
    let width = (max - min) / bins as f64;
    let mut counts = vec![0u64; bins];
    visit_all(&mut |r| {
        let idx = if width > 0.0 {
            (((r - min) / width) as usize).min(bins - 1)
        } else {
            0
        };
        counts[idx] += 1;
    })?;
    let mut cumulative = 0u64;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &count)| {
            cumulative += count;
            let lo = min + width * i as f64;
            let hi = if i + 1 == bins { max } else { min + width * (i + 1) as f64 };
            Bin {
                lo,
                hi,
                count,
                cdf: cumulative as f64 / total as f64,
            }
        })
        .collect())
}

pub fn histogram(source: &RatioSource, bins: usize) -> CliResult<Vec<Bin>> {
    match source {
        RatioSource::Stdin => {
            let mut ratios = Vec::new();
            visit(source, &mut |r| ratios.push(r))?;
            histogram_two_pass(bins, |f| {
                ratios.iter().for_each(|&r| f(r));
                Ok(())
            })
        }
        _ => histogram_two_pass(bins, |f| visit(source, f)),
    }
}

/// Writes `bin_lo,bin_hi,count,cdf` CSV.
pub fn cmd_stats(source: &RatioSource, bins: usize, digits: usize, out: &mut dyn Write) -> CliResult<()> {
    let hist = histogram(source, bins)?;
    writeln!(out, "bin_lo,bin_hi,count,cdf")?;
    for b in hist {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_float(b.lo, digits),
            fmt_float(b.hi, digits),
            b.count,
            fmt_float(b.cdf, digits)
        )?;
    }
    Ok(())
}

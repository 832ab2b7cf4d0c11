//! Per-game measurement records and their csv / json-lines layouts.

use std::collections::BTreeMap;
use std::io::Write;

use blackpeg_core::Phase;
use serde::{Deserialize, Serialize};

use crate::error::RunError;
use crate::game::{GameConfig, GameResult};

pub const CSV_HEADER: &str =
    "n,k,mode,seed,phase_zero,phase_singles,phase_signed,phase_census,phase_final,total,n_t,millis";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub k: u32,
    pub mode: String,
    pub seed: u64,
    pub phase_zero: usize,
    pub phase_singles: usize,
    pub phase_signed: usize,
    pub phase_census: usize,
    pub phase_final: usize,
    pub total: usize,
    pub n_t: usize,
    /// Wall time; 0 unless timing was requested, which keeps files
    /// reproducible by default.
    pub millis: u64,
}

impl BenchRecord {
    pub fn new(config: &GameConfig, result: &GameResult, timing: bool) -> Self {
        let c = &result.counts;
        BenchRecord {
            n: config.n,
            k: config.k,
            mode: config.mode.name().to_owned(),
            seed: config.seed,
            phase_zero: c.get(Phase::Zero),
            phase_singles: c.get(Phase::Singles),
            phase_signed: c.get(Phase::Signed),
            phase_census: c.get(Phase::Census),
            phase_final: c.get(Phase::Final),
            total: c.total(),
            n_t: config.n.next_power_of_two(),
            millis: if timing { result.millis } else { 0 },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Jsonl,
    Csv,
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), RunError> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write>(records: &[BenchRecord], mut out: W) -> Result<(), RunError> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_human<W: Write>(records: &[BenchRecord], mut out: W) -> Result<(), RunError> {
    for r in records {
        writeln!(
            out,
            "n={} k={} mode={} seed={}: {} queries (zero {}, singles {}, signed {}, census {}, final {})",
            r.n, r.k, r.mode, r.seed, r.total, r.phase_zero, r.phase_singles, r.phase_signed, r.phase_census,
            r.phase_final
        )?;
    }
    Ok(())
}

pub fn write_records<W: Write>(records: &[BenchRecord], format: Format, out: W) -> Result<(), RunError> {
    match format {
        Format::Human => write_human(records, out),
        Format::Jsonl => write_jsonl(records, out),
        Format::Csv => write_csv(records, out),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub k: u32,
    pub trials: usize,
    pub mean_total: f64,
    pub max_total: usize,
    pub mean_singles: f64,
}

/// Per-`(n, k)` aggregates, sorted by `(n, k)`. Independent of record order.
pub fn summarize(records: &[BenchRecord]) -> Vec<Summary> {
    let mut groups: BTreeMap<(usize, u32), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.n, r.k)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((n, k), rs)| {
            let trials = rs.len();
            let sum: usize = rs.iter().map(|r| r.total).sum();
            let singles: usize = rs.iter().map(|r| r.phase_singles).sum();
            Summary {
                n,
                k,
                trials,
                mean_total: sum as f64 / trials as f64,
                max_total: rs.iter().map(|r| r.total).max().unwrap_or(0),
                mean_singles: singles as f64 / trials as f64,
            }
        })
        .collect()
}

//! Transcripts as json-lines: one object per query,
//! `{"seq":1,"phase":"zero","query":[1,1,1],"black":1,"white":null}`.

use std::io::{BufRead, Write};

use blackpeg_core::{Color, TranscriptEntry};
use serde::{Deserialize, Serialize};

use crate::error::RunError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptLine {
    /// 1-based query number.
    pub seq: usize,
    pub phase: String,
    pub query: Vec<Color>,
    pub black: usize,
    pub white: Option<usize>,
}

impl TranscriptLine {
    pub fn from_entry(seq: usize, e: &TranscriptEntry) -> Self {
        TranscriptLine {
            seq,
            phase: e.phase.name().to_owned(),
            query: e.query.0.clone(),
            black: e.answer.black,
            white: e.answer.white,
        }
    }
}

pub fn write_transcript<W: Write>(entries: &[TranscriptEntry], mut out: W) -> Result<(), RunError> {
    for (i, e) in entries.iter().enumerate() {
        serde_json::to_writer(&mut out, &TranscriptLine::from_entry(i + 1, e))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_transcript<R: BufRead>(input: R) -> Result<Vec<TranscriptLine>, RunError> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

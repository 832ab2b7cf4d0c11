//! Playing against a person who holds the codeword.

use std::io::{BufRead, Write};

use blackpeg_core::{Answer, Codemaker, Error, Mode, Query};

use crate::error::RunError;
use crate::game::{play_with, GameConfig};

/// Prints each query and reads the peg counts from `input`.
///
/// Out-of-range or malformed counts are re-prompted on the spot; deeper
/// inconsistencies surface later as protocol violations from the solver.
pub struct HumanCodemaker<R, W> {
    input: R,
    output: W,
    n: usize,
    mode: Mode,
    round: usize,
}

impl<R: BufRead, W: Write> HumanCodemaker<R, W> {
    pub fn new(input: R, output: W, n: usize, mode: Mode) -> Self {
        HumanCodemaker { input, output, n, mode, round: 0 }
    }

    pub fn output(&mut self) -> &mut W {
        &mut self.output
    }

    fn read_count(&mut self, label: &str, max: usize) -> Result<usize, Error> {
        let io = |e: std::io::Error| Error::Codemaker(e.to_string());
        loop {
            write!(self.output, "{label} pegs> ").map_err(io)?;
            self.output.flush().map_err(io)?;
            let mut line = String::new();
            if self.input.read_line(&mut line).map_err(io)? == 0 {
                return Err(Error::Codemaker("input closed before the game ended".into()));
            }
            match line.trim().parse::<usize>() {
                Ok(v) if v <= max => return Ok(v),
                _ => writeln!(self.output, "enter a whole number from 0 to {max}").map_err(io)?,
            }
        }
    }
}

impl<R: BufRead, W: Write> Codemaker for HumanCodemaker<R, W> {
    fn answer(&mut self, query: &Query) -> Result<Answer, Error> {
        self.round += 1;
        let colors: Vec<String> = query.iter().map(u32::to_string).collect();
        writeln!(self.output, "Query #{}: {}", self.round, colors.join(" "))
            .map_err(|e| Error::Codemaker(e.to_string()))?;
        let black = self.read_count("black", self.n)?;
        let white = match self.mode {
            Mode::BlackPeg => None,
            Mode::BlackWhite => Some(self.read_count("white", self.n - black)?),
        };
        Ok(Answer { black, white })
    }
}

#[derive(Debug)]
pub struct PlayReport {
    /// Queries answered before the game ended or stopped.
    pub queries: usize,
    pub result: Result<Query, Error>,
}

/// Runs the solver against a person and reports the outcome on `output`.
pub fn play_interactive<R: BufRead, W: Write>(
    config: &GameConfig,
    input: R,
    output: W,
) -> Result<PlayReport, RunError> {
    let human = HumanCodemaker::new(input, output, config.n, config.mode.into());
    let (mut session, result) = play_with(config, human)?;
    let queries = session.total_queries();
    let out = session.codemaker_mut().output();
    match &result {
        Ok(q) => {
            let colors: Vec<String> = q.iter().map(u32::to_string).collect();
            writeln!(out, "Solved: {} after {queries} queries.", colors.join(" "))?;
        }
        Err(Error::Protocol(v)) => writeln!(
            out,
            "The answers are inconsistent with every codeword (noticed after query #{queries}): {v}."
        )?,
        Err(e) => writeln!(out, "Stopped after {queries} answered queries: {e}.")?,
    }
    out.flush()?;
    Ok(PlayReport { queries, result })
}

//! One game from configuration to finished session.

use std::time::Instant;

use blackpeg_core::pipeline::baseline_scan;
use blackpeg_core::{
    solve, Codemaker, Codeword, Color, HiddenCodeword, Mode, PhaseCounts, Query, Session, SolveOptions,
    TranscriptEntry, ZeroFinder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::RunError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ModeArg {
    #[default]
    Black,
    Bw,
}

impl ModeArg {
    pub fn name(self) -> &'static str {
        match self {
            ModeArg::Black => "black",
            ModeArg::Bw => "bw",
        }
    }
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Black => Mode::BlackPeg,
            ModeArg::Bw => Mode::BlackWhite,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ZeroFinderArg {
    #[default]
    Det,
    Rand,
}

impl From<ZeroFinderArg> for ZeroFinder {
    fn from(z: ZeroFinderArg) -> ZeroFinder {
        match z {
            ZeroFinderArg::Det => ZeroFinder::Deterministic,
            ZeroFinderArg::Rand => ZeroFinder::Randomized,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Strategy {
    /// Linear-query solver.
    #[default]
    Main,
    /// Position-by-position scan, about n k queries.
    Baseline,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodewordSource {
    /// Drawn uniformly from `[k]^n` using the game seed.
    Random,
    Explicit(Vec<Color>),
}

#[derive(Clone, Debug)]
pub struct GameConfig {
    pub n: usize,
    pub k: Color,
    pub mode: ModeArg,
    pub seed: u64,
    pub codeword: CodewordSource,
    pub zero_finder: ZeroFinderArg,
    pub strategy: Strategy,
    pub census_early_stop: bool,
    pub record_transcript: bool,
}

impl GameConfig {
    pub fn new(n: usize, k: Color) -> Self {
        GameConfig {
            n,
            k,
            mode: ModeArg::Black,
            seed: 0,
            codeword: CodewordSource::Random,
            zero_finder: ZeroFinderArg::Det,
            strategy: Strategy::Main,
            census_early_stop: true,
            record_transcript: false,
        }
    }

    pub fn options(&self) -> SolveOptions {
        SolveOptions { zero_finder: self.zero_finder.into(), census_early_stop: self.census_early_stop }
    }

    pub fn validate(&self) -> Result<(), RunError> {
        if self.n == 0 || self.k == 0 {
            return Err(RunError::usage("n and k must both be at least 1"));
        }
        if self.mode == ModeArg::Bw && self.k as usize > self.n {
            return Err(RunError::usage(
                "black-white mode is only supported for k <= n; with more colors use --mode black",
            ));
        }
        Ok(())
    }
}

/// The generator driving the solver's random choices.
pub fn solver_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent stream from the same seed, used to draw codewords, so the
/// solver sees the same random choices whether the codeword is drawn or
/// given.
pub fn codeword_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

pub fn random_codeword<R: Rng>(n: usize, k: Color, rng: &mut R) -> Vec<Color> {
    (0..n).map(|_| rng.gen_range(1..=k)).collect()
}

#[derive(Clone, Debug)]
pub struct GameResult {
    pub codeword: Vec<Color>,
    pub solution: Query,
    pub counts: PhaseCounts,
    pub transcript: Option<Vec<TranscriptEntry>>,
    pub millis: u64,
}

/// Plays with any codemaker; the session is returned even when the game
/// fails, so callers can report where it stopped.
pub fn play_with<C: Codemaker>(
    config: &GameConfig,
    codemaker: C,
) -> Result<(Session<C>, Result<Query, blackpeg_core::Error>), RunError> {
    config.validate()?;
    let mut session = Session::new(codemaker, config.n, config.k, config.mode.into())?;
    if config.record_transcript {
        session = session.record_transcript();
    }
    let mut rng = solver_rng(config.seed);
    let outcome = match config.strategy {
        Strategy::Main => solve(&mut session, &mut rng, config.options()),
        Strategy::Baseline => baseline_scan(&mut session),
    };
    Ok((session, outcome))
}

/// Plays one game against an honest in-memory codemaker.
pub fn run_game(config: &GameConfig) -> Result<GameResult, RunError> {
    config.validate()?;
    let codeword = match &config.codeword {
        CodewordSource::Random => random_codeword(config.n, config.k, &mut codeword_rng(config.seed)),
        CodewordSource::Explicit(c) => c.clone(),
    };
    if codeword.len() != config.n {
        return Err(RunError::usage(format!(
            "codeword has {} positions but n = {}",
            codeword.len(),
            config.n
        )));
    }
    let hidden = HiddenCodeword::new(Codeword::new(codeword.clone(), config.k)?, config.mode.into());
    let start = Instant::now();
    let (session, outcome) = play_with(config, hidden)?;
    let millis = start.elapsed().as_millis() as u64;
    let solution = outcome?;
    Ok(GameResult {
        codeword,
        solution,
        counts: session.counts(),
        transcript: session.transcript().map(<[_]>::to_vec),
        millis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use blackpeg_core::Phase;

    #[test]
    fn explicit_codeword() {
        let mut cfg = GameConfig::new(4, 4);
        cfg.codeword = CodewordSource::Explicit(vec![4, 1, 1, 3]);
        let r = run_game(&cfg).unwrap();
        assert_eq!(r.solution.0, vec![4, 1, 1, 3]);
        assert_eq!(r.counts.get(Phase::Final), 1);
    }

    #[test]
    fn codeword_stream_is_independent_of_solver_stream() {
        let mut a = solver_rng(9);
        let mut b = codeword_rng(9);
        let x: Vec<u32> = (0..8).map(|_| a.gen()).collect();
        let y: Vec<u32> = (0..8).map(|_| b.gen()).collect();
        assert_ne!(x, y);
    }

    #[test]
    fn random_codeword_solves_with_same_transcript_as_explicit() {
        let mut cfg = GameConfig::new(12, 12);
        cfg.seed = 77;
        cfg.record_transcript = true;
        let random = run_game(&cfg).unwrap();
        cfg.codeword = CodewordSource::Explicit(random.codeword.clone());
        let explicit = run_game(&cfg).unwrap();
        assert_eq!(random.transcript, explicit.transcript);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = GameConfig::new(3, 5);
        cfg.mode = ModeArg::Bw;
        assert!(matches!(run_game(&cfg), Err(RunError::Usage { .. })));
        let mut cfg = GameConfig::new(3, 3);
        cfg.codeword = CodewordSource::Explicit(vec![1, 2]);
        assert!(matches!(run_game(&cfg), Err(RunError::Usage { .. })));
        cfg.codeword = CodewordSource::Explicit(vec![1, 2, 4]);
        assert!(matches!(run_game(&cfg), Err(RunError::Solver(_))));
        assert!(GameConfig::new(0, 3).validate().is_err());
    }

    #[test]
    fn bw_mode_with_fewer_colors() {
        let mut cfg = GameConfig::new(6, 3);
        cfg.mode = ModeArg::Bw;
        cfg.seed = 4;
        cfg.record_transcript = true;
        let r = run_game(&cfg).unwrap();
        assert_eq!(r.solution.0, r.codeword);
        assert!(r.transcript.unwrap().iter().all(|e| e.answer.white.is_some()));
    }
}

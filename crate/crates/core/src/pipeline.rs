//! End-to-end strategies.
//!
//! All of them funnel into one `n`-color strategy over "virtual" colors
//! `1..=n`: disjoint singles, a zero string, the signed solver through the
//! pair simulation, then one final guess. The general-`k` strategies only
//! change how virtual colors are turned into raw ones:
//!
//! - `k = n`: unchanged.
//! - `2 <= k < n`: a zero string `z` over `1..=k` is found first, and a
//!   virtual color above `k` at position `i` is sent as `z_i`, which never
//!   scores.
//! - `k > n` (black pegs only): one monochromatic query per color counts how
//!   often it appears; virtual colors map onto the colors present, padded
//!   with a color known to be absent.

use alloc::vec::Vec;
use core::convert::Infallible;

use rand::Rng;

use crate::engine::{Codemaker, Color, Mode, Phase, Query, Session};
use crate::error::{Error, Violation};
use crate::reduction::{
    find_disjoint_singles, find_zero_deterministic, find_zero_randomized, RawOracle, SignedSimulator,
};
use crate::solver::run_signed_solver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ZeroFinder {
    /// `n + 1` queries, no randomness.
    #[default]
    Deterministic,
    /// Uniform samples until one scores zero; about 4 queries on average.
    Randomized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub zero_finder: ZeroFinder,
    /// Stop the color census once the counts reach `n`.
    pub census_early_stop: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { zero_finder: ZeroFinder::Deterministic, census_early_stop: true }
    }
}

enum Palette {
    // Virtual colors above `k` fall back to the zero string.
    Clamp { k: Color, zero: Vec<Color> },
    // Virtual color `j` is raw color `table[j - 1]`.
    Lookup(Vec<Color>),
}

struct Recolored<'a, O: ?Sized> {
    inner: &'a mut O,
    palette: Palette,
    buf: Vec<Color>,
}

impl<'a, O: RawOracle + ?Sized> Recolored<'a, O> {
    fn new(inner: &'a mut O, palette: Palette) -> Self {
        let buf = alloc::vec![0; inner.n()];
        Recolored { inner, palette, buf }
    }
}

impl<O: RawOracle + ?Sized> RawOracle for Recolored<'_, O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn ask(&mut self, query: &[Color], phase: Phase) -> Result<usize, Error> {
        match &self.palette {
            Palette::Clamp { k, zero } => {
                for ((out, &c), &z) in self.buf.iter_mut().zip(query).zip(zero) {
                    *out = if c > *k { z } else { c };
                }
            }
            Palette::Lookup(table) => {
                for (out, &c) in self.buf.iter_mut().zip(query) {
                    *out = table[c as usize - 1];
                }
            }
        }
        self.inner.ask(&self.buf, phase)
    }
}

enum ZeroSource {
    Find(ZeroFinder),
    Known(Query),
}

/// The `n`-color strategy. Returns the codeword in virtual colors; the
/// caller makes the final guess.
fn solve_virtual<O, R>(oracle: &mut O, rng: &mut R, zero: ZeroSource) -> Result<Vec<Color>, Error>
where
    O: RawOracle + ?Sized,
    R: Rng + ?Sized,
{
    let n = oracle.n();
    if n == 1 {
        return Ok(alloc::vec![1]);
    }
    let singles = find_disjoint_singles(oracle, rng)?;
    let zero = match zero {
        ZeroSource::Known(q) => q,
        ZeroSource::Find(ZeroFinder::Deterministic) => find_zero_deterministic(oracle, n as Color)?.query,
        ZeroSource::Find(ZeroFinder::Randomized) => find_zero_randomized(oracle, rng)?.query,
    };
    let map = singles.into_color_map(zero)?;
    let solution = run_signed_solver(&mut SignedSimulator::new(oracle, &map))?;
    Ok(map.to_raw(&solution.permutation).0)
}

// Succeeds by returning `Error::Won`.
fn final_guess<O: RawOracle + ?Sized>(oracle: &mut O, guess: &[Color]) -> Error {
    match oracle.ask(guess, Phase::Final) {
        Ok(black) => Violation::FinalGuessRejected { black }.into(),
        Err(e) => e,
    }
}

fn conclude<C: Codemaker>(session: &Session<C>, outcome: Result<Infallible, Error>) -> Result<Query, Error> {
    let Err(e) = outcome;
    match e {
        Error::Won => Ok(session.solution().cloned().expect("won session has a solution")),
        e => Err(e),
    }
}

/// Picks the strategy for the session's `(n, k, mode)` and plays it to the
/// end. Returns the winning query.
pub fn solve<C, R>(session: &mut Session<C>, rng: &mut R, options: SolveOptions) -> Result<Query, Error>
where
    C: Codemaker,
    R: Rng + ?Sized,
{
    let (n, k) = (session.n(), session.k() as usize);
    if k == 1 {
        let e = final_guess(session, &alloc::vec![1; n]);
        return conclude(session, Err(e));
    }
    match k.cmp(&n) {
        core::cmp::Ordering::Equal => solve_equal(session, rng, options),
        core::cmp::Ordering::Less => solve_fewer_colors(session, rng, options),
        core::cmp::Ordering::Greater => solve_more_colors_blackpeg(session, rng, options),
    }
}

/// `k = n`.
pub fn solve_equal<C, R>(session: &mut Session<C>, rng: &mut R, options: SolveOptions) -> Result<Query, Error>
where
    C: Codemaker,
    R: Rng + ?Sized,
{
    if session.k() as usize != session.n() {
        return Err(Error::Usage("solve_equal needs k = n"));
    }
    let outcome = (|| {
        let guess = solve_virtual(session, rng, ZeroSource::Find(options.zero_finder))?;
        Err(final_guess(session, &guess))
    })();
    conclude(session, outcome)
}

/// `2 <= k <= n`.
pub fn solve_fewer_colors<C, R>(
    session: &mut Session<C>,
    rng: &mut R,
    _options: SolveOptions,
) -> Result<Query, Error>
where
    C: Codemaker,
    R: Rng + ?Sized,
{
    let k = session.k();
    if k < 2 || k as usize > session.n() {
        return Err(Error::Usage("solve_fewer_colors needs 2 <= k <= n"));
    }
    let outcome = (|| {
        // A zero over the true palette doubles as the virtual one: its
        // colors are all at most k and pass through unchanged.
        let zero = find_zero_deterministic(session, k)?.query;
        let mut oracle = Recolored::new(session, Palette::Clamp { k, zero: zero.0.clone() });
        let guess = solve_virtual(&mut oracle, rng, ZeroSource::Known(zero))?;
        Err(final_guess(&mut oracle, &guess))
    })();
    conclude(session, outcome)
}

/// `k > n`, black pegs only.
pub fn solve_more_colors_blackpeg<C, R>(
    session: &mut Session<C>,
    rng: &mut R,
    options: SolveOptions,
) -> Result<Query, Error>
where
    C: Codemaker,
    R: Rng + ?Sized,
{
    let (n, k) = (session.n(), session.k());
    if (k as usize) <= n {
        return Err(Error::Usage("solve_more_colors_blackpeg needs k > n"));
    }
    if session.mode() != Mode::BlackPeg {
        return Err(Error::Usage(
            "black-white play with more colors than positions is not supported; use black-peg mode",
        ));
    }
    let outcome = (|| {
        let mut counts = alloc::vec![0usize; k as usize];
        let mut total = 0;
        for color in 1..=k {
            if options.census_early_stop && total == n {
                break;
            }
            let b = session.ask_raw(color)?;
            counts[color as usize - 1] = b;
            total += b;
            if total > n {
                return Err(Violation::CensusMismatch { total, n }.into());
            }
        }
        if total != n {
            return Err(Violation::CensusMismatch { total, n }.into());
        }
        let present: Vec<Color> = (1..=k).filter(|&c| counts[c as usize - 1] > 0).collect();
        let absent = (1..=k).find(|&c| counts[c as usize - 1] == 0).expect("k > n leaves a color out");
        let m = present.len();
        let mut table = present;
        table.resize(n, absent);
        let zero = if m < n {
            ZeroSource::Known(Query::monochrome(n, n as Color))
        } else {
            ZeroSource::Find(options.zero_finder)
        };
        let mut oracle = Recolored::new(session, Palette::Lookup(table));
        let guess = solve_virtual(&mut oracle, rng, zero)?;
        Err(final_guess(&mut oracle, &guess))
    })();
    conclude(session, outcome)
}

trait CensusExt {
    fn ask_raw(&mut self, color: Color) -> Result<usize, Error>;
}

impl<C: Codemaker> CensusExt for Session<C> {
    fn ask_raw(&mut self, color: Color) -> Result<usize, Error> {
        let q = Query::monochrome(self.n(), color);
        RawOracle::ask(self, &q, Phase::Census)
    }
}

/// Position-by-position scan against a zero string. Uses at most
/// `(n + 1) + n (k - 2) + 1` queries; the scan and the closing guess are
/// tagged [`Phase::Final`].
pub fn baseline_scan<C: Codemaker>(session: &mut Session<C>) -> Result<Query, Error> {
    let (n, k) = (session.n(), session.k());
    let outcome = (|| {
        if k == 1 {
            return Err(final_guess(session, &alloc::vec![1; n]));
        }
        let zero = find_zero_deterministic(session, k)?.query;
        let mut probe = zero.0.clone();
        let mut guess = zero.0.clone();
        for pos in 0..n {
            let mut candidates = (1..=k).filter(|&c| c != zero[pos]).peekable();
            while let Some(color) = candidates.next() {
                if candidates.peek().is_none() {
                    guess[pos] = color;
                    break;
                }
                probe[pos] = color;
                let b = RawOracle::ask(session, &probe, Phase::Final)?;
                if b == 1 {
                    guess[pos] = color;
                    break;
                }
            }
            probe[pos] = zero[pos];
        }
        Err(final_guess(session, &guess))
    })();
    conclude(session, outcome)
}

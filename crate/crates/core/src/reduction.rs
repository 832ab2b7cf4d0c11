//! Reductions from raw black-peg Mastermind to signed permutation
//! Mastermind.
//!
//! Three steps, in pipeline order:
//!
//! 1. [`find_disjoint_singles`] samples `n` strings `f^(1..n)`, pairwise
//!    different at every position, each scoring exactly one black peg. Color
//!    `j` of the reduced game at position `i` stands for raw color `f^(j)_i`,
//!    which turns any codeword into a permutation of `1..=n`.
//! 2. [`find_zero_deterministic`] (or [`find_zero_randomized`]) finds a
//!    string `z` with no black pegs, used as filler.
//! 3. [`SignedSimulator`] answers a signed query with two raw queries.

use alloc::vec::Vec;

use rand::Rng;

use crate::engine::{Codemaker, Color, Phase, Query, Session, SignedQuery};
use crate::error::{Error, Violation};
use crate::solver::SignedOracle;

/// Rejected samples allowed per randomized stage, as a multiple of `n`.
pub const ITERATION_CAP_FACTOR: usize = 64;

/// A source of black-peg answers over colors `1..=k`.
///
/// Implementations return [`Error::Won`] as soon as a query matches the
/// codeword, so that strategies stop at the first winning query.
pub trait RawOracle {
    fn n(&self) -> usize;

    fn ask(&mut self, query: &[Color], phase: Phase) -> Result<usize, Error>;
}

impl<C: Codemaker> RawOracle for Session<C> {
    fn n(&self) -> usize {
        Session::n(self)
    }

    fn ask(&mut self, query: &[Color], phase: Phase) -> Result<usize, Error> {
        let answer = Session::ask(self, query, phase)?;
        if self.is_won() {
            return Err(Error::Won);
        }
        Ok(answer.black)
    }
}

impl<O: RawOracle + ?Sized> RawOracle for &mut O {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn ask(&mut self, query: &[Color], phase: Phase) -> Result<usize, Error> {
        (**self).ask(query, phase)
    }
}

/// A string known to score zero black pegs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroString {
    pub query: Query,
    /// Raw queries spent finding it.
    pub cost: usize,
}

/// Finds a zero string with exactly `n + 1` queries over colors 1 and 2.
///
/// Asks the all-ones string, then each all-ones string with a single 2.
/// When the single 2 at position `i` loses a peg, `c_i = 1` and position `i`
/// gets a 2; otherwise `c_i != 1` and it keeps its 1.
pub fn find_zero_deterministic<O: RawOracle + ?Sized>(
    oracle: &mut O,
    k: Color,
) -> Result<ZeroString, Error> {
    if k < 2 {
        return Err(Error::Usage("a zero string needs at least two colors"));
    }
    let n = oracle.n();
    let mut probe = alloc::vec![1; n];
    let base = oracle.ask(&probe, Phase::Zero)?;
    let mut zero = alloc::vec![1; n];
    for i in 0..n {
        probe[i] = 2;
        let b = oracle.ask(&probe, Phase::Zero)?;
        probe[i] = 1;
        if b + 1 == base {
            zero[i] = 2;
        }
    }
    Ok(ZeroString { query: Query(zero), cost: n + 1 })
}

/// Samples uniform strings over `1..=n` until one scores zero.
///
/// Each sample succeeds with probability at least `(1 - 1/n)^n >= 1/4`.
/// Gives up with [`Error::IterationCap`] after `64 n` failures.
pub fn find_zero_randomized<O, R>(oracle: &mut O, rng: &mut R) -> Result<ZeroString, Error>
where
    O: RawOracle + ?Sized,
    R: Rng + ?Sized,
{
    let n = oracle.n();
    if n < 2 {
        return Err(Error::Usage("a zero string needs at least two colors"));
    }
    let cap = ITERATION_CAP_FACTOR * n;
    let mut probe = alloc::vec![0; n];
    for attempt in 1..=cap {
        for slot in probe.iter_mut() {
            *slot = rng.gen_range(1..=n as Color);
        }
        if oracle.ask(&probe, Phase::Zero)? == 0 {
            return Ok(ZeroString { query: Query(probe), cost: attempt });
        }
    }
    Err(Error::IterationCap { stage: "zero string search", attempts: cap })
}

/// The disjoint singles `f^(1..n)` together with the zero string: the
/// dictionary between reduced colors and raw colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorMap {
    n: usize,
    // Position-major: row `i` holds `f^(n)_i, ..., f^(1)_i`.
    table: Vec<Color>,
    zero: Query,
}

impl ColorMap {
    /// Assembles a map from explicit singles; `singles[j - 1]` is `f^(j)`.
    pub fn from_singles(singles: &[Query], zero: Query) -> Result<Self, Error> {
        let n = singles.len();
        if zero.len() != n || singles.iter().any(|f| f.len() != n) {
            return Err(Error::LengthMismatch { expected: n, found: zero.len() });
        }
        let mut table = alloc::vec![0; n * n];
        for (j, f) in singles.iter().enumerate() {
            for (i, &color) in f.iter().enumerate() {
                table[i * n + (n - 1 - j)] = color;
            }
        }
        let mut seen = alloc::vec![false; n + 1];
        for row in table.chunks(n) {
            seen.iter_mut().for_each(|s| *s = false);
            for &color in row {
                if color == 0 || color as usize > n || core::mem::replace(&mut seen[color as usize], true) {
                    return Err(Error::Usage("singles must cover every color once per position"));
                }
            }
        }
        Ok(ColorMap { n, table, zero })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> &Query {
        &self.zero
    }

    /// Raw color `f^(j)_pos` standing for reduced color `j` at `pos`.
    pub fn raw_color(&self, j: Color, pos: usize) -> Color {
        self.table[pos * self.n + (self.n - j as usize)]
    }

    /// `f^(j)` as a full raw query.
    pub fn single(&self, j: Color) -> Query {
        Query((0..self.n).map(|pos| self.raw_color(j, pos)).collect())
    }

    /// Translates a reduced-color codeword back to raw colors.
    pub fn to_raw(&self, reduced: &[Color]) -> Query {
        Query(reduced.iter().enumerate().map(|(pos, &j)| self.raw_color(j, pos)).collect())
    }

    /// The permutation a raw codeword becomes under this map: reduced color
    /// `j` sits at `pos` iff `f^(j)_pos = c_pos`.
    pub fn induced_codeword(&self, raw: &[Color]) -> Vec<Color> {
        raw.iter()
            .enumerate()
            .map(|(pos, &c)| {
                let row = &self.table[pos * self.n..(pos + 1) * self.n];
                row.iter()
                    .position(|&x| x == c)
                    .map_or(0, |t| (self.n - t) as Color)
            })
            .collect()
    }
}

/// Output of [`find_disjoint_singles`].
#[derive(Clone, Debug)]
pub struct Singles {
    n: usize,
    table: Vec<Color>,
    /// Raw queries spent, accepted and rejected.
    pub samples: usize,
}

impl Singles {
    pub fn single(&self, j: Color) -> Query {
        let n = self.n;
        Query((0..n).map(|pos| self.table[pos * n + (n - j as usize)]).collect())
    }

    pub fn into_color_map(self, zero: Query) -> Result<ColorMap, Error> {
        if zero.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: zero.len() });
        }
        Ok(ColorMap { n: self.n, table: self.table, zero })
    }
}

/// Randomized search for `n` disjoint strings with one black peg each.
///
/// Every position keeps the colors not yet used by an accepted string, as the
/// live prefix of its row. A sample draws one live color per position,
/// independently and uniformly; if it scores exactly one black peg it is
/// accepted and each drawn color is swapped to the end of its prefix, which
/// both removes it from the candidates and stores `f^(j)` in place.
///
/// At stage `j` the success probability is
/// `(1 - 1/(n-j+1))^(n-j) >= 1/e`, so the expected total is at most `e n`.
/// The last stage always succeeds. A stage rejecting `64 n` samples in a row
/// returns [`Error::IterationCap`].
pub fn find_disjoint_singles<O, R>(oracle: &mut O, rng: &mut R) -> Result<Singles, Error>
where
    O: RawOracle + ?Sized,
    R: Rng + ?Sized,
{
    let n = oracle.n();
    let mut table: Vec<Color> = (0..n).flat_map(|_| 1..=n as Color).collect();
    let mut picks = alloc::vec![0usize; n];
    let mut probe = alloc::vec![0 as Color; n];
    let cap = ITERATION_CAP_FACTOR * n;
    let mut samples = 0;
    for live in (1..=n).rev() {
        let mut rejected = 0;
        loop {
            for pos in 0..n {
                let idx = if live == 1 { 0 } else { rng.gen_range(0..live) };
                picks[pos] = idx;
                probe[pos] = table[pos * n + idx];
            }
            samples += 1;
            let black = oracle.ask(&probe, Phase::Singles)?;
            if black == 1 {
                break;
            }
            rejected += 1;
            if live == 1 {
                // The forced last string must score one; anything else means
                // an earlier answer was wrong.
                return Err(Violation::ForcedSingleRejected { black }.into());
            }
            if rejected >= cap {
                return Err(Error::IterationCap { stage: "disjoint singles", attempts: rejected });
            }
        }
        for (pos, &idx) in picks.iter().enumerate() {
            table.swap(pos * n + idx, pos * n + live - 1);
        }
    }
    Ok(Singles { n, table, samples })
}

/// Answers signed queries over the reduced game with two raw queries each.
///
/// `q+` takes `f^(j)_i` wherever the signed query holds `+j` and the zero
/// string elsewhere; `q-` does the same for the entries `-j`. The signed
/// answer is `b(q+) - b(q-)`.
pub struct SignedSimulator<'a, O: ?Sized> {
    oracle: &'a mut O,
    map: &'a ColorMap,
    plus: Vec<Color>,
    minus: Vec<Color>,
}

impl<'a, O: RawOracle + ?Sized> SignedSimulator<'a, O> {
    pub fn new(oracle: &'a mut O, map: &'a ColorMap) -> Self {
        let zero = map.zero().0.clone();
        SignedSimulator { oracle, map, plus: zero.clone(), minus: zero }
    }
}

/// Simulates one signed query; see [`SignedSimulator`].
pub fn simulate_signed_query<O: RawOracle + ?Sized>(
    oracle: &mut O,
    map: &ColorMap,
    query: &SignedQuery,
) -> Result<i32, Error> {
    SignedSimulator::new(oracle, map).query(query)
}

impl<O: RawOracle + ?Sized> SignedOracle for SignedSimulator<'_, O> {
    fn n(&self) -> usize {
        self.map.n()
    }

    fn query(&mut self, query: &SignedQuery) -> Result<i32, Error> {
        if query.n() != self.map.n() {
            return Err(Error::LengthMismatch { expected: self.map.n(), found: query.n() });
        }
        for &(pos, v) in query.entries() {
            let raw = self.map.raw_color(v.unsigned_abs(), pos);
            if v > 0 {
                self.plus[pos] = raw;
            } else {
                self.minus[pos] = raw;
            }
        }
        let plus = self.oracle.ask(&self.plus, Phase::Signed);
        let minus = match plus {
            Ok(_) => self.oracle.ask(&self.minus, Phase::Signed),
            Err(_) => Ok(0),
        };
        let zero = &self.map.zero().0;
        for &(pos, _) in query.entries() {
            self.plus[pos] = zero[pos];
            self.minus[pos] = zero[pos];
        }
        Ok(plus? as i32 - minus? as i32)
    }
}

//! Codewords, queries, peg arithmetic and query accounting.
//!
//! Positions are 0-based in every API of this crate; colors are 1-based
//! (`1..=k`), so `0` is free to mean "blank" inside a [`SignedQuery`].

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Violation};

pub type Color = u32;

/// The hidden string chosen by the codemaker.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    entries: Vec<Color>,
    k: Color,
}

impl Codeword {
    pub fn new(entries: Vec<Color>, k: Color) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::Usage("a codeword needs at least one position"));
        }
        check_colors(&entries, k)?;
        Ok(Codeword { entries, k })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn into_inner(self) -> Vec<Color> {
        self.entries
    }
}

impl Deref for Codeword {
    type Target = [Color];

    fn deref(&self) -> &[Color] {
        &self.entries
    }
}

/// A raw guess: one color per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Query(pub Vec<Color>);

impl Query {
    pub fn monochrome(n: usize, color: Color) -> Self {
        Query(alloc::vec![color; n])
    }
}

impl Deref for Query {
    type Target = [Color];

    fn deref(&self) -> &[Color] {
        &self.0
    }
}

impl From<Vec<Color>> for Query {
    fn from(v: Vec<Color>) -> Self {
        Query(v)
    }
}

fn check_colors(entries: &[Color], k: Color) -> Result<(), Error> {
    // Branch-free scan first; the common case has no bad entry.
    if !entries.iter().fold(false, |bad, &c| bad | (c.wrapping_sub(1) >= k)) {
        return Ok(());
    }
    match entries.iter().find(|&&c| c == 0 || c > k) {
        Some(&color) => Err(Error::ColorOutOfRange { color, k }),
        None => Ok(()),
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// A query of signed permutation Mastermind.
///
/// Stored sparsely: only the support (positions with a nonzero entry) is
/// kept, sorted by position. Entries range over `-n..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedQuery {
    n: usize,
    entries: Vec<(usize, i32)>,
}

impl SignedQuery {
    /// The all-blank query. Its answer is 0 against every codeword.
    pub fn blank(n: usize) -> Self {
        SignedQuery { n, entries: Vec::new() }
    }

    pub fn from_dense(values: &[i32]) -> Result<Self, Error> {
        let n = values.len();
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(pos, &v)| (pos, v))
            .collect();
        Self::from_sparse(n, entries)
    }

    /// Builds a query from `(position, value)` pairs. Zero values are
    /// dropped; positions must be strictly increasing.
    pub fn from_sparse(n: usize, mut entries: Vec<(usize, i32)>) -> Result<Self, Error> {
        entries.retain(|&(_, v)| v != 0);
        let mut prev = None;
        for &(pos, v) in &entries {
            if pos >= n {
                return Err(Error::LengthMismatch { expected: n, found: pos + 1 });
            }
            if v.unsigned_abs() as usize > n {
                return Err(Error::SignedEntryOutOfRange { value: v, n });
            }
            if prev.is_some_and(|p| p >= pos) {
                return Err(Error::Usage("signed query positions must be strictly increasing"));
            }
            prev = Some(pos);
        }
        Ok(SignedQuery { n, entries })
    }

    /// `color` at every position of `positions`, blank elsewhere.
    pub(crate) fn fill(n: usize, positions: core::ops::Range<usize>, color: Color) -> Self {
        let entries = positions.map(|pos| (pos, color as i32)).collect();
        SignedQuery { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonzero `(position, value)` pairs in increasing position order.
    pub fn entries(&self) -> &[(usize, i32)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(pos, _)| pos)
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_blank(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, pos: usize) -> i32 {
        self.entries
            .binary_search_by_key(&pos, |&(p, _)| p)
            .map_or(0, |idx| self.entries[idx].1)
    }

    pub fn to_dense(&self) -> Vec<i32> {
        let mut out = alloc::vec![0; self.n];
        for &(pos, v) in &self.entries {
            out[pos] = v;
        }
        out
    }

    /// Range of answers this query can possibly receive against a
    /// permutation codeword.
    pub fn answer_bounds(&self) -> (i32, i32) {
        let pos = self.entries.iter().filter(|&&(_, v)| v > 0).count() as i32;
        let neg = self.entries.len() as i32 - pos;
        (-neg, pos)
    }

    /// Element-wise `self + sign * other` for queries with disjoint supports.
    pub(crate) fn disjoint_add(&self, other: &SignedQuery, sign: i32) -> Result<SignedQuery, Error> {
        check_len(self.n, other.n)?;
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().copied(),
                (None, Some(&&(p, v))) => {
                    b.next();
                    Some((p, sign * v))
                }
                (Some(&&(pa, _)), Some(&&(pb, vb))) => match pa.cmp(&pb) {
                    Ordering::Less => a.next().copied(),
                    Ordering::Greater => {
                        b.next();
                        Some((pb, sign * vb))
                    }
                    Ordering::Equal => return Err(Error::Usage("query supports overlap")),
                },
            };
            entries.extend(next);
        }
        Ok(SignedQuery { n: self.n, entries })
    }
}

impl fmt::Display for SignedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dense = self.to_dense();
        f.write_str("(")?;
        for (i, v) in dense.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Black-peg count, plus the white-peg count in black-white mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Answer {
    pub black: usize,
    pub white: Option<usize>,
}

impl Answer {
    pub fn black(black: usize) -> Self {
        Answer { black, white: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    BlackPeg,
    BlackWhite,
}

/// Number of positions where `q` agrees with `c`.
pub fn black_pegs(c: &[Color], q: &[Color]) -> Result<usize, Error> {
    check_len(c.len(), q.len())?;
    Ok(c.iter().zip(q).filter(|(a, b)| a == b).count())
}

/// Extra matches obtainable by permuting `q`: the color-count overlap of the
/// two strings minus the black pegs.
pub fn white_pegs(c: &[Color], q: &[Color]) -> Result<usize, Error> {
    let black = black_pegs(c, q)?;
    let mut cs = c.to_vec();
    let mut qs = q.to_vec();
    cs.sort_unstable();
    qs.sort_unstable();
    // Sorted-merge intersection size = sum over colors of min(count_c, count_q).
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < cs.len() && j < qs.len() {
        match cs[i].cmp(&qs[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    Ok(common - black)
}

/// `|{i : c_i = q_i}| - |{i : c_i = -q_i}|`; blank entries contribute nothing.
pub fn signed_black_pegs(c: &[Color], q: &SignedQuery) -> Result<i32, Error> {
    check_len(c.len(), q.n())?;
    Ok(q.entries
        .iter()
        .map(|&(pos, v)| {
            let color = c[pos] as i64;
            match v as i64 {
                x if x == color => 1,
                x if x == -color => -1,
                _ => 0,
            }
        })
        .sum())
}

/// Anything that can score a raw query: a hidden codeword, a person at a
/// terminal, a recorded transcript.
pub trait Codemaker {
    fn answer(&mut self, query: &Query) -> Result<Answer, Error>;
}

impl<C: Codemaker + ?Sized> Codemaker for &mut C {
    fn answer(&mut self, query: &Query) -> Result<Answer, Error> {
        (**self).answer(query)
    }
}

/// An honest codemaker holding the codeword in memory.
#[derive(Clone, Debug)]
pub struct HiddenCodeword {
    codeword: Codeword,
    mode: Mode,
}

impl HiddenCodeword {
    pub fn new(codeword: Codeword, mode: Mode) -> Self {
        HiddenCodeword { codeword, mode }
    }

    pub fn codeword(&self) -> &Codeword {
        &self.codeword
    }
}

impl Codemaker for HiddenCodeword {
    fn answer(&mut self, query: &Query) -> Result<Answer, Error> {
        let black = black_pegs(&self.codeword, query)?;
        let white = match self.mode {
            Mode::BlackPeg => None,
            Mode::BlackWhite => Some(white_pegs(&self.codeword, query)?),
        };
        Ok(Answer { black, white })
    }
}

/// What a raw query was spent on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    /// Finding a string with no black pegs.
    Zero,
    /// Sampling the disjoint singles.
    Singles,
    /// Raw query pairs simulating signed queries.
    Signed,
    /// Monochromatic queries counting each color.
    Census,
    /// Guessing the deduced codeword; also the per-position scan of the
    /// baseline strategy.
    Final,
}

impl Phase {
    pub const ALL: [Phase; 5] = [Phase::Zero, Phase::Singles, Phase::Signed, Phase::Census, Phase::Final];

    pub fn name(self) -> &'static str {
        match self {
            Phase::Zero => "zero",
            Phase::Singles => "singles",
            Phase::Signed => "signed",
            Phase::Census => "census",
            Phase::Final => "final",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PhaseCounts([usize; 5]);

impl PhaseCounts {
    pub fn get(&self, phase: Phase) -> usize {
        self.0[phase.index()]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    fn bump(&mut self, phase: Phase) {
        self.0[phase.index()] += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub phase: Phase,
    pub query: Query,
    pub answer: Answer,
}

/// One game against a codemaker. Every raw query of every strategy passes
/// through [`Session::ask`], which validates it, tags it with a [`Phase`]
/// and optionally records it.
pub struct Session<C> {
    codemaker: C,
    n: usize,
    k: Color,
    mode: Mode,
    counts: PhaseCounts,
    transcript: Option<Vec<TranscriptEntry>>,
    solution: Option<Query>,
}

impl<C: Codemaker> Session<C> {
    pub fn new(codemaker: C, n: usize, k: Color, mode: Mode) -> Result<Self, Error> {
        if n == 0 || k == 0 {
            return Err(Error::Usage("n and k must both be at least 1"));
        }
        Ok(Session {
            codemaker,
            n,
            k,
            mode,
            counts: PhaseCounts::default(),
            transcript: None,
            solution: None,
        })
    }

    /// Keep every query and answer, not just the per-phase counts.
    pub fn record_transcript(mut self) -> Self {
        self.transcript = Some(Vec::new());
        self
    }

    pub fn ask(&mut self, query: &[Color], phase: Phase) -> Result<Answer, Error> {
        if self.solution.is_some() {
            return Err(Error::AlreadyWon);
        }
        check_len(self.n, query.len())?;
        check_colors(query, self.k)?;
        let query = Query(query.to_vec());
        let mut answer = self.codemaker.answer(&query)?;
        if self.mode == Mode::BlackPeg {
            answer.white = None;
        }
        let total = answer.black + answer.white.unwrap_or(0);
        if total > self.n {
            return Err(Violation::AnswerOutOfRange {
                black: answer.black as i64,
                white: answer.white.map(|w| w as i64),
            }
            .into());
        }
        self.counts.bump(phase);
        if answer.black == self.n {
            self.solution = Some(query.clone());
        }
        if let Some(log) = &mut self.transcript {
            log.push(TranscriptEntry { phase, query, answer });
        }
        Ok(answer)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn counts(&self) -> PhaseCounts {
        self.counts
    }

    pub fn total_queries(&self) -> usize {
        self.counts.total()
    }

    pub fn is_won(&self) -> bool {
        self.solution.is_some()
    }

    /// The query that scored `n` black pegs, once there is one.
    pub fn solution(&self) -> Option<&Query> {
        self.solution.as_ref()
    }

    pub fn transcript(&self) -> Option<&[TranscriptEntry]> {
        self.transcript.as_deref()
    }

    pub fn codemaker(&self) -> &C {
        &self.codemaker
    }

    pub fn codemaker_mut(&mut self) -> &mut C {
        &mut self.codemaker
    }
}

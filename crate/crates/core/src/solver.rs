//! Signed permutation Mastermind in at most `9 n_T` signed queries.
//!
//! Two recursive procedures move every token of the information tree to a
//! leaf:
//!
//! - `Preprocess(T)` token-queries every color at the root, then every color
//!   at the left child, and recurses into the two left grandchildren. It uses
//!   at most `3 n_T` zero-one queries and leaves each token on a leaf or on a
//!   right child hanging off a left-left/left-right spine.
//! - `Solve(T)` runs `Solve(T_LL)`, `Solve(T_LR)` and `Preprocess(T_R)` side
//!   by side. Their subtrees are disjoint, so one request from each can be
//!   answered with two queries ([`combine3`] / [`decode3`]). Afterwards it
//!   runs `Solve(T_R)`. At most `6 n_T` queries.
//!
//! Both procedures are written as resumable [`Process`]es: `poll` yields the
//! next signed query the process wants answered, `answer` feeds the result
//! back. A parent `Solve` drives its children this way and itself looks like
//! a process to its own parent, so only the outermost loop ever talks to a
//! [`SignedOracle`].

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::engine::{signed_black_pegs, Color, SignedQuery};
use crate::error::{Error, Violation};
use crate::infotree::{extract_codeword, slide_token, token_query, TokenState, TreeShape, Vertex};

/// Answers signed queries against a hidden permutation.
pub trait SignedOracle {
    fn n(&self) -> usize;

    fn query(&mut self, query: &SignedQuery) -> Result<i32, Error>;
}

impl<O: SignedOracle + ?Sized> SignedOracle for &mut O {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn query(&mut self, query: &SignedQuery) -> Result<i32, Error> {
        (**self).query(query)
    }
}

/// Evaluates signed queries directly against a known permutation.
#[derive(Clone, Debug)]
pub struct PermutationOracle {
    perm: Vec<Color>,
    queries: usize,
}

impl PermutationOracle {
    pub fn new(perm: Vec<Color>) -> Result<Self, Error> {
        let n = perm.len();
        let mut seen = alloc::vec![false; n];
        for &c in &perm {
            match seen.get_mut((c as usize).wrapping_sub(1)) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::Usage("codeword is not a permutation of 1..=n")),
            }
        }
        Ok(PermutationOracle { perm, queries: 0 })
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn permutation(&self) -> &[Color] {
        &self.perm
    }
}

impl SignedOracle for PermutationOracle {
    fn n(&self) -> usize {
        self.perm.len()
    }

    fn query(&mut self, query: &SignedQuery) -> Result<i32, Error> {
        self.queries += 1;
        signed_black_pegs(&self.perm, query)
    }
}

/// Packs two arbitrary queries and one zero-one query with pairwise
/// disjoint supports into `w1 = q1 + q2 + s` and `w2 = q1 - q2`.
pub fn combine3(
    q1: &SignedQuery,
    q2: &SignedQuery,
    s: &SignedQuery,
) -> Result<(SignedQuery, SignedQuery), Error> {
    let mut colors = s.entries().iter().map(|&(_, v)| v);
    if let Some(first) = colors.next() {
        if first <= 0 || colors.any(|v| v != first) {
            return Err(Error::Usage("third query of a round must be a token query"));
        }
    }
    let w2 = q1.disjoint_add(q2, -1)?;
    let w1 = q1.disjoint_add(q2, 1)?.disjoint_add(s, 1)?;
    Ok((w1, w2))
}

/// Recovers `(b(q1), b(q2), b(s))` from `b(w1)` and `b(w2)`.
///
/// `b(w1) + b(w2) = 2 b(q1) + b(s)` with `b(s)` in `{0, 1}`, so `b(s)` is the
/// parity of the sum (taken nonnegative), and the rest follows.
pub fn decode3(bw1: i32, bw2: i32) -> (i32, i32, i32) {
    let bs = (bw1 + bw2).rem_euclid(2);
    let bq1 = (bw1 + bw2 - bs) / 2;
    let bq2 = (bw1 - bw2 - bs) / 2;
    (bq1, bq2, bs)
}

fn check_bounds(query: &SignedQuery, answer: i32) -> Result<(), Error> {
    let (min, max) = query.answer_bounds();
    if answer < min || answer > max {
        return Err(Violation::DecodedOutOfRange { value: answer, min, max }.into());
    }
    Ok(())
}

#[derive(Debug)]
pub enum Step {
    Request(SignedQuery),
    Done,
}

/// A `Preprocess` or `Solve` run on one subtree, suspended at its next
/// query. Calls must alternate: `poll` until it yields a request, then
/// `answer` that request, then `poll` again.
#[derive(Debug)]
pub enum Process {
    Preprocess(Preprocess),
    Solve(Solve),
}

impl Process {
    pub fn preprocess(root: Vertex) -> Self {
        Process::Preprocess(Preprocess::new(root))
    }

    pub fn solve(root: Vertex) -> Self {
        Process::Solve(Solve::new(root))
    }

    pub fn poll(&mut self, shape: &TreeShape, tokens: &mut TokenState) -> Result<Step, Error> {
        match self {
            Process::Preprocess(p) => p.poll(shape, tokens),
            Process::Solve(p) => p.poll(shape, tokens),
        }
    }

    pub fn answer(&mut self, shape: &TreeShape, tokens: &mut TokenState, answer: i32) -> Result<(), Error> {
        match self {
            Process::Preprocess(p) => p.answer(shape, tokens, answer),
            Process::Solve(p) => p.answer(shape, tokens, answer),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PreStage {
    Start,
    Base,
    Root,
    Left,
    LeftLeft,
    LeftRight,
    Done,
}

#[derive(Debug)]
pub struct Preprocess {
    root: Vertex,
    stage: PreStage,
    // Tokens still to query at the current vertex, last one first.
    queue: Vec<Color>,
    pending: Option<Color>,
    child: Option<Box<Preprocess>>,
}

impl Preprocess {
    pub fn new(root: Vertex) -> Self {
        Preprocess { root, stage: PreStage::Start, queue: Vec::new(), pending: None, child: None }
    }

    fn load_queue(&mut self, tokens: &TokenState, v: Vertex) {
        self.queue.clear();
        self.queue.extend_from_slice(tokens.tokens_at(v));
        self.queue.sort_unstable_by(|a, b| b.cmp(a));
    }

    pub fn poll(&mut self, shape: &TreeShape, tokens: &mut TokenState) -> Result<Step, Error> {
        debug_assert!(self.pending.is_none(), "poll called with an unanswered request");
        loop {
            match self.stage {
                PreStage::Start => {
                    if shape.is_leaf(self.root) || shape.is_phantom(self.root) {
                        self.stage = PreStage::Done;
                    } else if shape.width(self.root) == 2 {
                        self.stage = PreStage::Base;
                    } else {
                        self.load_queue(tokens, self.root);
                        self.stage = PreStage::Root;
                    }
                }
                PreStage::Base => {
                    let here = tokens.tokens_at(self.root);
                    let positions = shape.positions(self.root).len();
                    if here.len() > positions {
                        return Err(Violation::TooManyTokens { tokens: here.len(), positions }.into());
                    }
                    match *here {
                        [] => self.stage = PreStage::Done,
                        [color] if shape.is_phantom(self.root.right()) => {
                            // Only one real position: nothing to ask.
                            tokens.descend(shape, color, self.root.left())?;
                            self.stage = PreStage::Done;
                        }
                        _ => {
                            self.load_queue(tokens, self.root);
                            let color = self.queue.pop().expect("nonempty");
                            self.pending = Some(color);
                            return Ok(Step::Request(token_query(shape, tokens, color)?));
                        }
                    }
                }
                PreStage::Root | PreStage::Left => {
                    if let Some(color) = self.queue.pop() {
                        self.pending = Some(color);
                        return Ok(Step::Request(token_query(shape, tokens, color)?));
                    }
                    if self.stage == PreStage::Root {
                        self.load_queue(tokens, self.root.left());
                        self.stage = PreStage::Left;
                    } else {
                        self.child = Some(Box::new(Preprocess::new(self.root.left().left())));
                        self.stage = PreStage::LeftLeft;
                    }
                }
                PreStage::LeftLeft | PreStage::LeftRight => {
                    let child = self.child.as_mut().expect("child process");
                    match child.poll(shape, tokens)? {
                        Step::Request(q) => return Ok(Step::Request(q)),
                        Step::Done if self.stage == PreStage::LeftLeft => {
                            self.child = Some(Box::new(Preprocess::new(self.root.left().right())));
                            self.stage = PreStage::LeftRight;
                        }
                        Step::Done => {
                            self.child = None;
                            self.stage = PreStage::Done;
                        }
                    }
                }
                PreStage::Done => return Ok(Step::Done),
            }
        }
    }

    pub fn answer(&mut self, shape: &TreeShape, tokens: &mut TokenState, answer: i32) -> Result<(), Error> {
        match self.stage {
            PreStage::Base => {
                let color = self.pending.take().ok_or(Error::Usage("no pending request"))?;
                slide_token(shape, tokens, color, answer)?;
                // With two tokens on two leaves the other one is forced.
                if let Some(other) = self.queue.pop() {
                    let to = if answer == 1 { self.root.right() } else { self.root.left() };
                    tokens.descend(shape, other, to)?;
                }
                self.stage = PreStage::Done;
                Ok(())
            }
            PreStage::Root | PreStage::Left => {
                let color = self.pending.take().ok_or(Error::Usage("no pending request"))?;
                slide_token(shape, tokens, color, answer)
            }
            PreStage::LeftLeft | PreStage::LeftRight => {
                self.child.as_mut().expect("child process").answer(shape, tokens, answer)
            }
            _ => Err(Error::Usage("no pending request")),
        }
    }
}

#[derive(Debug)]
enum Round {
    Idle,
    // A single unfinished child; its request went out unchanged.
    PassThrough { slot: usize, query: SignedQuery },
    AwaitFirst { queries: [SignedQuery; 3], active: [bool; 3], w2: SignedQuery },
    SendSecond { queries: [SignedQuery; 3], active: [bool; 3], bw1: i32, w2: SignedQuery },
    AwaitSecond { queries: [SignedQuery; 3], active: [bool; 3], bw1: i32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SolveStage {
    Start,
    Lockstep,
    Right,
    Done,
}

#[derive(Debug)]
pub struct Solve {
    root: Vertex,
    stage: SolveStage,
    // Solve(T_LL), Solve(T_LR), Preprocess(T_R); `None` once finished.
    children: [Option<Box<Process>>; 3],
    round: Round,
    right: Option<Box<Solve>>,
}

impl Solve {
    pub fn new(root: Vertex) -> Self {
        Solve {
            root,
            stage: SolveStage::Start,
            children: [None, None, None],
            round: Round::Idle,
            right: None,
        }
    }

    pub fn poll(&mut self, shape: &TreeShape, tokens: &mut TokenState) -> Result<Step, Error> {
        loop {
            match self.stage {
                SolveStage::Start => {
                    if shape.width(self.root) <= 2 || shape.is_phantom(self.root) {
                        self.stage = SolveStage::Done;
                    } else {
                        let l = self.root.left();
                        self.children = [
                            Some(Box::new(Process::solve(l.left()))),
                            Some(Box::new(Process::solve(l.right()))),
                            Some(Box::new(Process::preprocess(self.root.right()))),
                        ];
                        self.stage = SolveStage::Lockstep;
                    }
                }
                SolveStage::Lockstep => {
                    match core::mem::replace(&mut self.round, Round::Idle) {
                        Round::SendSecond { queries, active, bw1, w2 } => {
                            self.round = Round::AwaitSecond { queries, active, bw1 };
                            return Ok(Step::Request(w2));
                        }
                        Round::Idle => {}
                        _ => return Err(Error::Usage("poll called with an unanswered request")),
                    }
                    if let Some(step) = self.start_round(shape, tokens)? {
                        return Ok(step);
                    }
                    self.right = Some(Box::new(Solve::new(self.root.right())));
                    self.stage = SolveStage::Right;
                }
                SolveStage::Right => {
                    match self.right.as_mut().expect("right solve").poll(shape, tokens)? {
                        Step::Request(q) => return Ok(Step::Request(q)),
                        Step::Done => {
                            self.right = None;
                            self.stage = SolveStage::Done;
                        }
                    }
                }
                SolveStage::Done => return Ok(Step::Done),
            }
        }
    }

    // Collects one request from every unfinished child. Returns `None` when
    // all three are finished.
    fn start_round(&mut self, shape: &TreeShape, tokens: &mut TokenState) -> Result<Option<Step>, Error> {
        let n = shape.n();
        let mut queries = [SignedQuery::blank(n), SignedQuery::blank(n), SignedQuery::blank(n)];
        let mut active = [false; 3];
        for (slot, child) in self.children.iter_mut().enumerate() {
            if let Some(process) = child {
                match process.poll(shape, tokens)? {
                    Step::Request(q) => {
                        queries[slot] = q;
                        active[slot] = true;
                    }
                    Step::Done => *child = None,
                }
            }
        }
        match active.iter().filter(|&&a| a).count() {
            0 => Ok(None),
            1 => {
                let slot = active.iter().position(|&a| a).expect("one active");
                let query = core::mem::replace(&mut queries[slot], SignedQuery::blank(n));
                self.round = Round::PassThrough { slot, query: query.clone() };
                Ok(Some(Step::Request(query)))
            }
            _ => {
                let (w1, w2) = combine3(&queries[0], &queries[1], &queries[2])?;
                self.round = Round::AwaitFirst { queries, active, w2 };
                Ok(Some(Step::Request(w1)))
            }
        }
    }

    pub fn answer(&mut self, shape: &TreeShape, tokens: &mut TokenState, answer: i32) -> Result<(), Error> {
        match self.stage {
            SolveStage::Lockstep => match core::mem::replace(&mut self.round, Round::Idle) {
                Round::PassThrough { slot, query } => {
                    check_bounds(&query, answer)?;
                    self.child(slot).answer(shape, tokens, answer)
                }
                Round::AwaitFirst { queries, active, w2 } => {
                    let (min, max) = queries.iter().map(SignedQuery::answer_bounds).fold((0, 0), |acc, b| {
                        (acc.0 + b.0, acc.1 + b.1)
                    });
                    if answer < min || answer > max {
                        return Err(Violation::DecodedOutOfRange { value: answer, min, max }.into());
                    }
                    self.round = Round::SendSecond { queries, active, bw1: answer, w2 };
                    Ok(())
                }
                Round::AwaitSecond { queries, active, bw1 } => {
                    let (b1, b2, bs) = decode3(bw1, answer);
                    for (slot, b) in [b1, b2, bs].into_iter().enumerate() {
                        check_bounds(&queries[slot], b)?;
                        if active[slot] {
                            self.child(slot).answer(shape, tokens, b)?;
                        }
                    }
                    Ok(())
                }
                Round::Idle | Round::SendSecond { .. } => Err(Error::Usage("no pending request")),
            },
            SolveStage::Right => self.right.as_mut().expect("right solve").answer(shape, tokens, answer),
            _ => Err(Error::Usage("no pending request")),
        }
    }

    fn child(&mut self, slot: usize) -> &mut Process {
        self.children[slot].as_mut().expect("active child")
    }
}

fn drive<O: SignedOracle + ?Sized>(
    process: &mut Process,
    shape: &TreeShape,
    tokens: &mut TokenState,
    oracle: &mut O,
) -> Result<usize, Error> {
    let mut count = 0;
    while let Step::Request(q) = process.poll(shape, tokens)? {
        let b = oracle.query(&q)?;
        count += 1;
        check_bounds(&q, b)?;
        process.answer(shape, tokens, b)?;
    }
    Ok(count)
}

/// Runs `Preprocess` on the whole tree; all tokens must start at the root.
/// Returns the number of signed queries asked.
pub fn preprocess<O: SignedOracle + ?Sized>(
    shape: &TreeShape,
    tokens: &mut TokenState,
    oracle: &mut O,
) -> Result<usize, Error> {
    drive(&mut Process::preprocess(Vertex::ROOT), shape, tokens, oracle)
}

/// Runs `Solve` on a preprocessed tree. Returns the number of signed
/// queries asked.
pub fn solve<O: SignedOracle + ?Sized>(
    shape: &TreeShape,
    tokens: &mut TokenState,
    oracle: &mut O,
) -> Result<usize, Error> {
    drive(&mut Process::solve(Vertex::ROOT), shape, tokens, oracle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SolverStats {
    pub preprocess: usize,
    pub solve: usize,
}

impl SolverStats {
    pub fn total(&self) -> usize {
        self.preprocess + self.solve
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSolution {
    pub permutation: Vec<Color>,
    pub stats: SolverStats,
}

/// Recovers the hidden permutation behind `oracle`: `Preprocess`, then
/// `Solve`, then read the leaves.
pub fn run_signed_solver<O: SignedOracle + ?Sized>(oracle: &mut O) -> Result<SignedSolution, Error> {
    let shape = TreeShape::new(oracle.n())?;
    let mut tokens = TokenState::new(&shape);
    run_signed_solver_on(&shape, &mut tokens, oracle)
}

/// [`run_signed_solver`] on caller-provided token state, e.g. one carrying a
/// witness.
pub fn run_signed_solver_on<O: SignedOracle + ?Sized>(
    shape: &TreeShape,
    tokens: &mut TokenState,
    oracle: &mut O,
) -> Result<SignedSolution, Error> {
    let pre = preprocess(shape, tokens, oracle)?;
    let sol = solve(shape, tokens, oracle)?;
    let permutation = extract_codeword(shape, tokens)?;
    Ok(SignedSolution { permutation, stats: SolverStats { preprocess: pre, solve: sol } })
}
